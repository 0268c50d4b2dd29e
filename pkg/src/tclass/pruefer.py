"""Finite-character intersections of independent valuation domains.

The model is R = V_1 cap ... cap V_k with pairwise independent valuations.
Independence buys two structural facts this module leans on everywhere:
ideal arithmetic is componentwise on value-set cuts, and every value tuple
is realized by a field element, so a tuple is principal exactly when each
component cut is.  Classification lands on the same two-branch picture as
the single valuation case, and the decomposition of a constituent group is
an exact sequence: the class group of the stabilizer overring injects, the
componentwise localization classes project out.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .groups import ValueGroup, is_member, truncate
from . import cuts as C
from .cuts import (
    CLOSED,
    OPEN,
    Cut,
    CutClass,
    DomainMismatchError,
    IdempotentForm,
    InternalInconsistencyError,
    NotInGroupError,
    OverringSpec,
)


@dataclass(frozen=True)
class PrueferModel:
    """k independent valuations presented by their value groups."""

    valuations: tuple[ValueGroup, ...]

    def __post_init__(self):
        object.__setattr__(self, "valuations", tuple(self.valuations))
        if not self.valuations:
            raise ValueError("need at least one valuation")

    @property
    def k(self) -> int:
        return len(self.valuations)


@dataclass(frozen=True)
class IdealTuple:
    """One canonical cut per component; the fractional ideal it denotes is
    the intersection of the componentwise preimages."""

    cuts: tuple[Cut, ...]

    def __post_init__(self):
        object.__setattr__(self, "cuts", tuple(self.cuts))


def _check(model: PrueferModel, a: IdealTuple) -> None:
    if len(a.cuts) != model.k:
        raise DomainMismatchError(f"tuple has {len(a.cuts)} components, model has {model.k}")


def normalize_tuple(model: PrueferModel, a: IdealTuple) -> IdealTuple:
    _check(model, a)
    return IdealTuple(tuple(C.normalize(g, c) for g, c in zip(model.valuations, a.cuts)))


def mul(model: PrueferModel, a: IdealTuple, b: IdealTuple) -> IdealTuple:
    _check(model, a)
    _check(model, b)
    return IdealTuple(tuple(
        C.mul(g, x, y) for g, x, y in zip(model.valuations, a.cuts, b.cuts)
    ))


def quotient(model: PrueferModel, a: IdealTuple, b: IdealTuple) -> IdealTuple:
    _check(model, a)
    _check(model, b)
    return IdealTuple(tuple(
        C.quotient(g, x, y) for g, x, y in zip(model.valuations, a.cuts, b.cuts)
    ))


def t_closure(model: PrueferModel, a: IdealTuple) -> IdealTuple:
    # Trivial here for the same reason as in one valuation: each component
    # cut is a union of principal sub-cuts, and independence realizes every
    # needed value tuple.
    return IdealTuple(tuple(C.t_closure(g, c) for g, c in zip(model.valuations, a.cuts)))


def principal(model: PrueferModel, a: IdealTuple) -> bool:
    """Principal iff every component is a closed member-boundary cut of full
    level; the approximation theorem then realizes the value tuple."""
    a = normalize_tuple(model, a)
    for g, c in zip(model.valuations, a.cuts):
        if c.side != CLOSED or c.level != g.rank:
            return False
        if not all(is_member(comp, q) for comp, q in zip(g.components, c.boundary)):
            return False
    return True


def stabilizer(model: PrueferModel, a: IdealTuple) -> OverringSpec:
    """T = (A : A), recorded by its localization level in each component."""
    a = normalize_tuple(model, a)
    levels = []
    for g, c in zip(model.valuations, a.cuts):
        s = C.stabilizer(g, c)
        if s != C.ring_cut(g, c.level):
            raise InternalInconsistencyError("component stabilizer disagrees with its level")
        levels.append(c.level)
    return OverringSpec(tuple(levels))


def ring_tuple(model: PrueferModel, t: OverringSpec) -> IdealTuple:
    if len(t.levels) != model.k:
        raise DomainMismatchError("overring has wrong number of components")
    return IdealTuple(tuple(C.ring_cut(g, l) for g, l in zip(model.valuations, t.levels)))


def form_tuple(model: PrueferModel, form: IdempotentForm) -> IdealTuple:
    """The canonical idempotent tuple a form names."""
    cuts = []
    for i, (g, l) in enumerate(zip(model.valuations, form.overring.levels)):
        cuts.append(C.prime_cut(g, l) if i in form.open_components else C.ring_cut(g, l))
    return IdealTuple(tuple(cuts))


def classify_idempotent(model: PrueferModel, a: IdealTuple) -> IdempotentForm:
    """The unique idempotent whose constituent group holds a's class:
    the stabilizer overring when every component is side-closed, otherwise
    the intersection of that overring's idempotent maximal ideals at the
    side-open components.  Cross-checked against the construction
    (A (T:A))_t computed componentwise."""
    a = normalize_tuple(model, a)
    t = stabilizer(model, a)
    opens = frozenset(i for i, c in enumerate(a.cuts) if c.side == OPEN)
    form = IdempotentForm(t, opens)
    witness = t_closure(model, mul(model, a, quotient(model, ring_tuple(model, t), a)))
    if witness != form_tuple(model, form):
        raise InternalInconsistencyError("witness idempotent disagrees with tuple classification")
    return form


def is_idempotent_tuple(model: PrueferModel, a: IdealTuple) -> bool:
    a = normalize_tuple(model, a)
    return mul(model, a, a) == a


def tmax_containing(model: PrueferModel, a: IdealTuple) -> frozenset[int]:
    """Indices of the t-maximal ideals of R containing the tuple (0-based)."""
    a = normalize_tuple(model, a)
    out = set()
    for i, (g, c) in enumerate(zip(model.valuations, a.cuts)):
        if C.is_subset(g, c, C.max_ideal_cut(g)):
            out.add(i)
    return frozenset(out)


def wedge(model: PrueferModel, i: int, j: int) -> None:
    """Largest common prime of the i-th and j-th maximal ideals.

    Independence means there is none; the return value None encodes the
    zero ideal.  Asking about a component against itself is a caller bug.
    """
    if not (0 <= i < model.k and 0 <= j < model.k):
        raise DomainMismatchError("component index out of range")
    if i == j:
        raise ValueError("wedge wants two distinct components")
    return None


# === classes and groups ===

@dataclass(frozen=True)
class TupleClass:
    """A tuple modulo principal tuples.  Principality is componentwise, so
    the class is just the vector of component cut classes."""

    reps: tuple[CutClass, ...]


def class_of(model: PrueferModel, a: IdealTuple) -> TupleClass:
    _check(model, a)
    return TupleClass(tuple(C.class_of(g, c) for g, c in zip(model.valuations, a.cuts)))


def tuple_of_class(model: PrueferModel, x: TupleClass) -> IdealTuple:
    return IdealTuple(tuple(r.rep for r in x.reps))


def group_membership(model: PrueferModel, a: IdealTuple, form: IdempotentForm) -> bool:
    a = normalize_tuple(model, a)
    j = form_tuple(model, form)
    return all(
        C.group_membership(g, x, y)
        for g, x, y in zip(model.valuations, a.cuts, j.cuts)
    )


def group_mul(model: PrueferModel, x: TupleClass, y: TupleClass,
              form: IdempotentForm) -> TupleClass:
    j = form_tuple(model, form)
    return TupleClass(tuple(
        C.group_mul(g, a, b, c)
        for g, a, b, c in zip(model.valuations, x.reps, y.reps, j.cuts)
    ))


def group_inv(model: PrueferModel, x: TupleClass, form: IdempotentForm) -> TupleClass:
    j = form_tuple(model, form)
    return TupleClass(tuple(
        C.group_inv(g, a, c) for g, a, c in zip(model.valuations, x.reps, j.cuts)
    ))


def group_identity(model: PrueferModel, form: IdempotentForm) -> TupleClass:
    return class_of(model, form_tuple(model, form))


@dataclass(frozen=True)
class TrivialClassGroup:
    """Cl(T) for a semilocal intersection: computed trivial, not assumed.

    The certificate is operational: hand any t-invertible tuple over T to
    `show_principal` and get back the realizing component shifts.  The
    group interface (identity, op, inv on tuple classes over T) stays
    available so the embedding arrow runs against a live group.
    """

    overring: OverringSpec

    def identity(self, model: PrueferModel) -> TupleClass:
        return class_of(model, ring_tuple(model, self.overring))

    def op(self, model: PrueferModel, x: TupleClass, y: TupleClass) -> TupleClass:
        form = IdempotentForm(self.overring, frozenset())
        return group_mul(model, x, y, form)

    def inv(self, model: PrueferModel, x: TupleClass) -> TupleClass:
        form = IdempotentForm(self.overring, frozenset())
        return group_inv(model, x, form)

    def show_principal(self, model: PrueferModel, a: IdealTuple) -> tuple:
        """Realizing shift vector for a t-invertible tuple over T; raises if
        the tuple is not invertible (some component open or off the group)."""
        a = normalize_tuple(model, a)
        t = ring_tuple(model, self.overring)
        inv = quotient(model, t, a)
        if t_closure(model, mul(model, a, inv)) != t:
            raise NotInGroupError("tuple is not t-invertible over the overring")
        shifts = []
        for g, c in zip(model.valuations, a.cuts):
            if c.side != CLOSED or not all(
                is_member(comp, q) for comp, q in zip(g.components, c.boundary)
            ):
                raise InternalInconsistencyError(
                    "invertible tuple with a non-realizable component boundary"
                )
            lift = list(c.boundary) + [Fraction(0)] * (g.rank - c.level)
            shifts.append(g.element(lift))
        return tuple(shifts)


def class_group(model: PrueferModel, t: OverringSpec) -> TrivialClassGroup:
    if len(t.levels) != model.k:
        raise DomainMismatchError("overring has wrong number of components")
    return TrivialClassGroup(t)


# === the exact sequence 0 -> Cl(T) -> G -> prod of localized groups -> 0 ===

def psi_localize(model: PrueferModel, a: IdealTuple, form: IdempotentForm) -> tuple[CutClass, ...]:
    """Project a group member to its localization classes, one per side-open
    component, each read in the value group truncated at that component's
    level (the value group of the localization)."""
    a = normalize_tuple(model, a)
    if not group_membership(model, a, form):
        raise NotInGroupError("tuple class lies outside the constituent group")
    out = []
    for i in sorted(form.open_components):
        g = model.valuations[i]
        gt = truncate(g, form.overring.levels[i])
        out.append(C.class_of(gt, a.cuts[i]))
    return tuple(out)


def phi_embed(model: PrueferModel, x: TupleClass, form: IdempotentForm) -> TupleClass:
    """Push a class over T into the constituent group by multiplying into
    the idempotent and t-closing."""
    j = form_tuple(model, form)
    prod = t_closure(model, mul(model, tuple_of_class(model, x), j))
    return class_of(model, prod)


def _random_group_member(rng: random.Random, model: PrueferModel,
                         form: IdempotentForm) -> IdealTuple:
    from .sampling import random_member, random_rational

    cuts = []
    for i, (g, lvl) in enumerate(zip(model.valuations, form.overring.levels)):
        boundary = [random_member(rng, g.components[k]) for k in range(lvl - 1)]
        if i in form.open_components:
            boundary.append(random_rational(rng, g.components[lvl - 1]))
            cuts.append(C.normalize(g, Cut(lvl, tuple(boundary), OPEN)))
        else:
            boundary.append(random_member(rng, g.components[lvl - 1]))
            cuts.append(C.normalize(g, Cut(lvl, tuple(boundary), CLOSED)))
    return IdealTuple(tuple(cuts))


def _random_target(rng: random.Random, model: PrueferModel,
                   form: IdempotentForm) -> tuple[CutClass, ...]:
    from .sampling import random_rational

    out = []
    for i in sorted(form.open_components):
        g = model.valuations[i]
        lvl = form.overring.levels[i]
        gt = truncate(g, lvl)
        boundary = [Fraction(0)] * (lvl - 1)
        boundary.append(random_rational(rng, g.components[lvl - 1]))
        out.append(C.class_of(gt, Cut(lvl, tuple(boundary), OPEN)))
    return tuple(out)


def _lift_target(model: PrueferModel, form: IdempotentForm,
                 target: tuple[CutClass, ...]) -> IdealTuple:
    """Componentwise preimage: plant each target representative at its
    component, keep the idempotent elsewhere."""
    j = form_tuple(model, form)
    cuts = list(j.cuts)
    for r, i in zip(target, sorted(form.open_components)):
        g = model.valuations[i]
        cuts[i] = C.normalize(g, Cut(r.rep.level, r.rep.boundary, r.rep.side))
    return IdealTuple(tuple(cuts))


@dataclass
class ExactnessReport:
    form: IdempotentForm
    samples: int
    homomorphism_checks: int = 0
    kernel_checks: int = 0
    injectivity_checks: int = 0
    surjectivity_checks: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_exact_sequence(model: PrueferModel, form: IdempotentForm,
                          samples: int, rng: random.Random) -> ExactnessReport:
    """Sampled exactness of 0 -> Cl(T) -> G -> prod G_i -> 0.

    Cl(T) is computed trivial, so exactness amounts to: the embedded class
    is the identity and is the whole kernel (injectivity of the projection),
    the projection is a homomorphism, and every sampled target vector lifts.
    Failures carry the offending tuples; they indicate arithmetic bugs and
    are never swallowed.
    """
    rep = ExactnessReport(form=form, samples=samples)
    cl = class_group(model, form.overring)
    ident = psi_localize(model, form_tuple(model, form), form)

    embedded = phi_embed(model, cl.identity(model), form)
    if embedded != group_identity(model, form):
        rep.failures.append(f"embedding of Cl(T) identity missed the group identity: {embedded}")

    for _ in range(samples):
        a = _random_group_member(rng, model, form)
        b = _random_group_member(rng, model, form)
        ab = t_closure(model, mul(model, a, b))

        pa, pb, pab = (psi_localize(model, x, form) for x in (a, b, ab))
        want = tuple(
            C.group_mul(truncate(model.valuations[i], form.overring.levels[i]),
                        x, y,
                        C.prime_cut(truncate(model.valuations[i], form.overring.levels[i]),
                                    form.overring.levels[i]))
            for x, y, i in zip(pa, pb, sorted(form.open_components))
        )
        rep.homomorphism_checks += 1
        if pab != want:
            rep.failures.append(f"projection not multiplicative at {a} * {b}")

        rep.kernel_checks += 1
        if pa == ident and class_of(model, a) != group_identity(model, form):
            rep.failures.append(f"kernel element outside the embedded image: {a}")
        rep.injectivity_checks += 1
        if pa == pb and class_of(model, a) != class_of(model, b):
            rep.failures.append(f"projection identified distinct classes: {a} vs {b}")

        target = _random_target(rng, model, form)
        lift = _lift_target(model, form, target)
        rep.surjectivity_checks += 1
        if psi_localize(model, lift, form) != target:
            rep.failures.append(f"constructed preimage missed its target {target}")

    return rep


def enumerate_idempotent_forms(model: PrueferModel) -> list[IdempotentForm]:
    """All canonical idempotent tuples of the model, as forms: each
    component picks a level and, when dense there, optionally its
    idempotent maximal ideal."""
    per_component = []
    for g in model.valuations:
        opts = []
        for lvl in range(1, g.rank + 1):
            opts.append((lvl, False))
            if g.components[lvl - 1].dense:
                opts.append((lvl, True))
        per_component.append(opts)

    forms = []

    def rec(i, levels, opens):
        if i == model.k:
            forms.append(IdempotentForm(OverringSpec(tuple(levels)), frozenset(opens)))
            return
        for lvl, is_open in per_component[i]:
            rec(i + 1, levels + [lvl], opens | ({i} if is_open else set()))

    rec(0, [], set())
    return forms


# === JSON and adapters ===

def tuple_to_json(a: IdealTuple) -> dict:
    return {"cuts": [C.cut_to_json(c) for c in a.cuts]}


def tuple_from_json(model: PrueferModel, data) -> IdealTuple:
    if not isinstance(data, dict) or set(data) != {"cuts"}:
        raise C.MalformedCutError("ideal tuple literal wants exactly the key 'cuts'")
    cuts = data["cuts"]
    if not isinstance(cuts, list) or len(cuts) != model.k:
        raise C.MalformedCutError(f"expected {model.k} component cuts")
    out = []
    for i, (g, item) in enumerate(zip(model.valuations, cuts)):
        try:
            c = C.cut_from_json(item)
            C.validate_cut(g, c)
        except Exception as e:
            raise C.MalformedCutError(f"component {i + 1}: {e}") from e
        out.append(C.normalize(g, c))
    return IdealTuple(tuple(out))


class PrueferClassModel:
    """Duck-typed handle the semigroup oracle multiplies through."""

    def __init__(self, model: PrueferModel):
        self.model = model

    def class_of(self, a: IdealTuple) -> TupleClass:
        return class_of(self.model, a)

    def mul(self, x: TupleClass, y: TupleClass) -> TupleClass:
        prod = t_closure(self.model, mul(
            self.model, tuple_of_class(self.model, x), tuple_of_class(self.model, y)))
        return class_of(self.model, prod)

    def is_idempotent_class(self, x: TupleClass) -> bool:
        return self.mul(x, x) == x

    def idempotent_of(self, x: TupleClass) -> TupleClass:
        a = tuple_of_class(self.model, x)
        return class_of(self.model, form_tuple(self.model, classify_idempotent(self.model, a)))

    def describe(self, x: TupleClass) -> str:
        return "(" + ", ".join(C.format_cut(r.rep) for r in x.reps) + ")"
