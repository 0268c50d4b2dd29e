"""Command-line front end.

Three commands over a JSON model spec: `classify` an ideal literal to its
idempotent form, `decompose` a model into idempotents and constituent
groups, and `verify` the property suites (regularity, idempotent
uniqueness, exactness, semigroup oracle cross-checks) with seeded
randomness.  Machine-readable reports are JSON with sorted keys and no
timestamps, so a fixed seed reproduces them byte for byte.

Exit codes: 0 pass, 1 usage or parse error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import __version__
from .groups import (
    MalformedElementError,
    ValueGroup,
    describe_component,
    is_strongly_discrete,
    value_group_from_json,
    value_group_to_json,
)
from . import cuts as C
from . import polyext as X
from . import pruefer as P
from . import sampling as S
from . import semigroups as SG


class UsageError(Exception):
    """Bad invocation or unparseable input; maps to exit code 1."""


# === input loading ===

def _read_json(path_or_inline: str, what: str):
    text = path_or_inline
    if not text.lstrip().startswith(("{", "[")):
        try:
            with open(text, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError(f"cannot read {what} {path_or_inline!r}: {e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"{what}: line {e.lineno}, column {e.colno}: {e.msg}") from e


def load_model(path: str):
    data = _read_json(path, "spec file")
    if not isinstance(data, dict) or "kind" not in data:
        raise UsageError("spec file: top level must be an object with a 'kind' field")
    kind = data["kind"]
    try:
        if kind == "valuation":
            if "group" not in data:
                raise UsageError("spec file: kind 'valuation' wants a 'group' field")
            return kind, value_group_from_json(data["group"])
        if kind == "pruefer_fc":
            vals = data.get("valuations")
            if not isinstance(vals, list) or not vals:
                raise UsageError("spec file: kind 'pruefer_fc' wants a nonempty 'valuations' list")
            groups = []
            for i, v in enumerate(vals):
                try:
                    groups.append(value_group_from_json(v))
                except (ValueError, TypeError) as e:
                    raise UsageError(f"spec file: valuations[{i}]: {e}") from e
            return kind, P.PrueferModel(tuple(groups))
        if kind == "poly_ext":
            if "base" not in data:
                raise UsageError("spec file: kind 'poly_ext' wants a 'base' field")
            return kind, X.PolyExtModel(value_group_from_json(data["base"]))
    except UsageError:
        raise
    except (ValueError, TypeError) as e:
        raise UsageError(f"spec file: {e}") from e
    raise UsageError(
        f"spec file: unknown kind {kind!r} (expected valuation, pruefer_fc, or poly_ext)"
    )


def model_echo(kind: str, model) -> dict:
    if kind == "valuation":
        return {"kind": kind, "group": value_group_to_json(model)}
    if kind == "pruefer_fc":
        return {"kind": kind, "valuations": [value_group_to_json(g) for g in model.valuations]}
    return {"kind": kind, "base": value_group_to_json(model.base)}


# === report fragments ===

def form_json(form: C.IdempotentForm) -> dict:
    return {
        "variant": form.variant,
        "levels": list(form.overring.levels),
        "max_ideal_components": sorted(i + 1 for i in form.open_components),
    }


def format_form(form: C.IdempotentForm) -> str:
    levels = ", ".join(str(l) for l in form.overring.levels)
    if not form.open_components:
        return f"overring at localization levels ({levels})"
    comps = ", ".join(str(i + 1) for i in sorted(form.open_components))
    return (f"idempotent maximal ideals of the overring at levels ({levels}), "
            f"components {{{comps}}}")


def _poly_idem_json(idem) -> dict:
    if isinstance(idem, X.TLinkedOverring):
        return {"variant": "overring", "level": idem.prime_level}
    return {"variant": "idempotent_max_class", "level": idem.prime_level}


def _poly_idem_text(idem) -> str:
    if isinstance(idem, X.TLinkedOverring):
        return f"V_p[X] for the prime at level {idem.prime_level}"
    return f"p[X]-type idempotent class at level {idem.prime_level}"


def _regularity_json(w: C.RegularityWitness) -> dict:
    return {
        "idempotent": C.cut_to_json(w.idempotent),
        "shift": None if w.shift is None else [str(q) for q in w.shift],
    }


# === classify ===

def cmd_classify(kind: str, model, ideal_arg: str) -> dict:
    data = _read_json(ideal_arg, "ideal literal")
    report = {"command": "classify", "model": model_echo(kind, model)}
    try:
        if kind == "valuation":
            cut = C.cut_from_json(data)
            C.validate_cut(model, cut)
            canon = C.normalize(model, cut)
            form = C.classify_idempotent(model, canon)
            report["ideal"] = C.cut_to_json(canon)
            report["idempotent_form"] = form_json(form)
            report["witness"] = C.cut_to_json(C.form_cut(model, form))
            report["regularity"] = _regularity_json(C.is_regular(model, canon))
        elif kind == "pruefer_fc":
            a = P.tuple_from_json(model, data)
            form = P.classify_idempotent(model, a)
            report["ideal"] = P.tuple_to_json(a)
            report["idempotent_form"] = form_json(form)
            report["witness"] = P.tuple_to_json(P.form_tuple(model, form))
            report["regularity"] = [
                _regularity_json(C.is_regular(g, c))
                for g, c in zip(model.valuations, a.cuts)
            ]
        else:
            s = X.sym_from_json(model, data)
            idem = X.classify(model, s)
            report["ideal"] = X.sym_to_json(s)
            report["idempotent_form"] = _poly_idem_json(idem)
            report["scope"] = "extended classes"
            report["regularity"] = _regularity_json(C.is_regular(model.base, s.coeff.rep))
    except (C.MalformedCutError, MalformedElementError) as e:
        raise UsageError(f"ideal literal: {e}") from e
    return report


def _render_classify(report: dict) -> list[str]:
    lines = [f"model: {json.dumps(report['model'], sort_keys=True)}"]
    lines.append(f"canonical ideal: {json.dumps(report['ideal'], sort_keys=True)}")
    f = report["idempotent_form"]
    if "levels" in f:
        if f["variant"] == "ring":
            lines.append(f"idempotent: overring at levels {f['levels']}")
        else:
            lines.append(
                f"idempotent: maximal ideals at components {f['max_ideal_components']} "
                f"of the overring at levels {f['levels']}"
            )
    else:
        lines.append(f"idempotent: {f['variant']} at level {f['level']}")
    return lines


# === decompose ===

def _valuation_idempotent_entries(g: ValueGroup) -> list[dict]:
    entries = []
    for lvl in range(1, g.rank + 1):
        entries.append({
            "idempotent": C.cut_to_json(C.ring_cut(g, lvl)),
            "kind": "overring",
            "level": lvl,
            "group": "trivial (canonical closed classes are principal)",
        })
        comp = g.components[lvl - 1]
        if comp.dense:
            entries.append({
                "idempotent": C.cut_to_json(C.prime_cut(g, lvl)),
                "kind": "idempotent_prime",
                "level": lvl,
                "group": f"classes of rationals modulo {describe_component(comp)} "
                         "(representable part)",
            })
    return entries


def cmd_decompose(kind: str, model) -> dict:
    report = {"command": "decompose", "model": model_echo(kind, model)}
    if kind == "valuation":
        entries = _valuation_idempotent_entries(model)
        report["idempotents"] = entries
        report["idempotent_count"] = len(entries)
        report["strongly_discrete"] = is_strongly_discrete(model)
    elif kind == "pruefer_fc":
        forms = sorted(
            P.enumerate_idempotent_forms(model),
            key=lambda f: (f.overring.levels, sorted(f.open_components)),
        )
        entries = []
        for f in forms:
            localized = [
                f"component {i + 1}: classes of rationals modulo "
                f"{describe_component(model.valuations[i].components[f.overring.levels[i] - 1])}"
                for i in sorted(f.open_components)
            ]
            entries.append({
                "form": form_json(f),
                "class_group": "trivial (computed with principality certificate)",
                "localized_groups": localized,
            })
        report["idempotents"] = entries
        report["idempotent_count"] = len(entries)
    else:
        dec = X.decompose(model)
        entries = []
        for idem, grp in zip(dec.idempotents, dec.groups):
            entries.append({
                "idempotent": _poly_idem_json(idem),
                "group": grp.description,
                "group_trivial": grp.trivial,
            })
        report["idempotents"] = entries
        report["idempotent_count"] = len(entries)
        report["scope"] = dec.scope
        report["strongly_discrete"] = is_strongly_discrete(model.base)
    return report


def _render_decompose(report: dict) -> list[str]:
    lines = [f"model: {json.dumps(report['model'], sort_keys=True)}"]
    lines.append(f"idempotents: {report['idempotent_count']}")
    for e in report["idempotents"]:
        if "form" in e:
            levels = e["form"]["levels"]
            comps = e["form"]["max_ideal_components"]
            head = (f"  overring levels {levels}" if not comps
                    else f"  max ideals at components {comps}, overring levels {levels}")
            lines.append(head)
            for loc in e["localized_groups"]:
                lines.append(f"    {loc}")
        elif "idempotent" in e and isinstance(e["idempotent"], dict) and "variant" in e["idempotent"]:
            lines.append(f"  {e['idempotent']['variant']} at level {e['idempotent']['level']}"
                         f": {e['group']}")
        else:
            lines.append(f"  level {e['level']} {e['kind']}: {e['group']}")
    if "scope" in report:
        lines.append(f"scope: {report['scope']}")
    return lines


# === verify ===

def _check(name: str, instances: int, failures: list) -> dict:
    return {
        "name": name,
        "instances": instances,
        "failures": failures[:10],
        "failure_count": len(failures),
        "passed": not failures,
    }


def _valuation_idempotent_cuts(g: ValueGroup) -> list[C.Cut]:
    out = []
    for lvl in range(1, g.rank + 1):
        out.append(C.ring_cut(g, lvl))
        if g.components[lvl - 1].dense:
            out.append(C.prime_cut(g, lvl))
    return out


def _verify_valuation(g: ValueGroup, samples: int, rng: random.Random) -> list[dict]:
    checks = []

    failures = []
    for _ in range(samples):
        a = S.random_cut(rng, g)
        try:
            C.is_regular(g, a)
        except C.InternalInconsistencyError as e:
            failures.append(f"{C.format_cut(a)}: {e}")
    checks.append(_check("regularity", samples, failures))

    idems = _valuation_idempotent_cuts(g)
    failures = []
    for _ in range(samples):
        a = S.random_cut(rng, g)
        hits = [j for j in idems if C.group_membership(g, a, j)]
        want = C.idempotent_cut(g, a)
        if hits != [want]:
            failures.append(
                f"{C.format_cut(a)}: memberships {[C.format_cut(h) for h in hits]}, "
                f"construction {C.format_cut(want)}"
            )
    checks.append(_check("idempotent_uniqueness", samples, failures))

    failures = []
    for _ in range(samples):
        a = S.random_cut(rng, g)
        lvl = rng.randint(a.level, g.rank)
        over = C.t_closure_over(g, lvl, a)
        base = C.t_closure(g, a)
        if over != base:
            failures.append(f"{C.format_cut(a)} at level {lvl}: {C.format_cut(over)}"
                            f" vs {C.format_cut(base)}")
    checks.append(_check("overring_transfer", samples, failures))

    vm = C.ValuationClassModel(g)
    failures = []
    for _ in range(3):
        seeds = [vm.class_of(S.random_cut(rng, g)) for _ in range(5)]
        closure = SG.sample_closure(vm, seeds, 256)
        if not closure.saturated:
            failures.append("sampled closure did not saturate within budget 256")
            continue
        rep = SG.cross_check(closure, vm)
        failures.extend(rep.mismatches)
    checks.append(_check("semigroup_cross_check", 3, failures))
    return checks


def _random_tuple(rng: random.Random, model: P.PrueferModel) -> P.IdealTuple:
    return P.IdealTuple(tuple(S.random_cut(rng, g) for g in model.valuations))


def _verify_pruefer(model: P.PrueferModel, samples: int, rng: random.Random) -> list[dict]:
    checks = []

    failures = []
    for _ in range(samples):
        a = _random_tuple(rng, model)
        sq = P.mul(model, a, a)
        back = P.t_closure(model, P.mul(model, sq, P.quotient(model, a, sq)))
        if back != a:
            failures.append(f"tuple regularity failed at {P.tuple_to_json(a)}")
        for g, c in zip(model.valuations, a.cuts):
            try:
                C.is_regular(g, c)
            except C.InternalInconsistencyError as e:
                failures.append(f"{C.format_cut(c)}: {e}")
    checks.append(_check("regularity", samples, failures))

    forms = P.enumerate_idempotent_forms(model)
    failures = []
    for _ in range(samples):
        a = _random_tuple(rng, model)
        hits = [f for f in forms if P.group_membership(model, a, f)]
        if hits != [P.classify_idempotent(model, a)]:
            failures.append(f"membership not unique at {P.tuple_to_json(a)}")
    checks.append(_check("idempotent_uniqueness", samples, failures))

    failures = []
    total = 0
    for form in sorted(forms, key=lambda f: (f.overring.levels, sorted(f.open_components))):
        rep = P.verify_exact_sequence(model, form, samples, rng)
        total += samples
        failures.extend(f"{format_form(form)}: {msg}" for msg in rep.failures)
    checks.append(_check("exact_sequence", total, failures))

    pm = P.PrueferClassModel(model)
    failures = []
    for _ in range(3):
        seeds = [pm.class_of(_random_tuple(rng, model)) for _ in range(4)]
        closure = SG.sample_closure(pm, seeds, 256)
        if not closure.saturated:
            failures.append("sampled closure did not saturate within budget 256")
            continue
        rep = SG.cross_check(closure, pm)
        failures.extend(rep.mismatches)
    checks.append(_check("semigroup_cross_check", 3, failures))
    return checks


def _verify_polyext(model: X.PolyExtModel, samples: int, rng: random.Random) -> list[dict]:
    checks = []
    g = model.base

    failures = []
    for _ in range(samples):
        a = S.random_cut(rng, g)
        try:
            C.is_regular(g, a)
        except C.InternalInconsistencyError as e:
            failures.append(f"{C.format_cut(a)}: {e}")
    checks.append(_check("regularity", samples, failures))

    dec = X.decompose(model)
    failures = []
    for _ in range(samples):
        s = X.extended_class(model, S.random_cut(rng, g))
        if X.classify(model, s) not in dec.idempotents:
            failures.append(f"classification of {X.sym_to_json(s)} missing from decomposition")
    checks.append(_check("classification_consistency", samples, failures))

    detector_ok = (not X.t_idempotent_primes(model)) == is_strongly_discrete(g)
    checks.append(_check("strongly_discrete_detector", 1,
                         [] if detector_ok else ["detector disagrees with component density"]))

    pm = X.PolyClassModel(model)
    failures = []
    for _ in range(3):
        seeds = [pm.class_of(X.extended_class(model, S.random_cut(rng, g))) for _ in range(5)]
        closure = SG.sample_closure(pm, seeds, 256)
        if not closure.saturated:
            failures.append("sampled closure did not saturate within budget 256")
            continue
        rep = SG.cross_check(closure, pm)
        failures.extend(rep.mismatches)
    checks.append(_check("semigroup_cross_check", 3, failures))
    return checks


def _check_fixture(text: str) -> dict:
    failures = []
    try:
        s = SG.from_fixture(text)
        if not SG.is_clifford(s):
            failures.append("fixture table is not Clifford")
        else:
            for e in sorted(SG.idempotents(s)):
                SG.constituent_group(s, e)
    except SG.MalformedTableError as e:
        failures.append(f"fixture rejected: {e}")
    return _check("fixture_table", 1, failures)


def cmd_verify(kind: str, model, samples: int, seed: int, fixture: str | None) -> dict:
    rng = random.Random(seed)
    if kind == "valuation":
        checks = _verify_valuation(model, samples, rng)
    elif kind == "pruefer_fc":
        checks = _verify_pruefer(model, samples, rng)
    else:
        checks = _verify_polyext(model, samples, rng)
    if fixture is not None:
        try:
            with open(fixture, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError(f"cannot read fixture {fixture!r}: {e}") from e
        checks.append(_check_fixture(text))
    return {
        "command": "verify",
        "model": model_echo(kind, model),
        "provenance": {
            "package": "tclass",
            "version": __version__,
            "seed": seed,
            "samples": samples,
        },
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }


def _render_verify(report: dict) -> list[str]:
    lines = [f"model: {json.dumps(report['model'], sort_keys=True)}"]
    prov = report["provenance"]
    lines.append(f"seed: {prov['seed']}  samples: {prov['samples']}")
    for c in report["checks"]:
        status = "pass" if c["passed"] else "FAIL"
        lines.append(f"check {c['name']}: {status} ({c['instances']} instances)")
        for msg in c["failures"]:
            lines.append(f"  counterexample: {msg}")
    lines.append("result: " + ("pass" if report["passed"] else "FAIL"))
    return lines


# === entry point ===

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="tclass",
                     description="t-class semigroup computations for valuation-type domains")
    sub = parser.add_subparsers(dest="command", required=True)

    cl = sub.add_parser("classify", help="classify an ideal literal to its idempotent form")
    cl.add_argument("spec", help="model spec file (JSON)")
    cl.add_argument("--ideal", required=True, help="ideal literal: a file path or inline JSON")
    cl.add_argument("--json", dest="json_out", help="write the machine-readable report here")

    de = sub.add_parser("decompose", help="enumerate idempotents and constituent groups")
    de.add_argument("spec")
    de.add_argument("--json", dest="json_out")

    ve = sub.add_parser("verify", help="run the property suites")
    ve.add_argument("spec")
    ve.add_argument("--samples", type=int, default=100)
    ve.add_argument("--seed", type=int, default=0)
    ve.add_argument("--json", dest="json_out")
    ve.add_argument("--fixture", help="also validate a semigroup table fixture")
    return parser


def _emit(report: dict, json_out: str | None, lines: list[str]) -> None:
    for line in lines:
        print(line)
    if json_out:
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
        with open(json_out, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        kind, model = load_model(args.spec)
        if args.command == "classify":
            report = cmd_classify(kind, model, args.ideal)
            _emit(report, args.json_out, _render_classify(report))
            return 0
        if args.command == "decompose":
            report = cmd_decompose(kind, model)
            _emit(report, args.json_out, _render_decompose(report))
            return 0
        if args.samples < 0:
            raise UsageError("--samples must be nonnegative")
        report = cmd_verify(kind, model, args.samples, args.seed, args.fixture)
        _emit(report, args.json_out, _render_verify(report))
        return 0 if report["passed"] else 2
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
