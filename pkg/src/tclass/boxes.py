"""Box-truncated set arithmetic: the independent oracle for cut operations.

Everything here works pointwise on finite member lattices inside the box
[-8, 8]^rank and never consults the boundary-arithmetic formulas it checks.
Products come from minima of enumerated value sets (the sumset of two upper
sets of a totally ordered group is the upper set at the sum of their
minima), and residuals quantify over the enumerated divisor set through its
minimum, the worst case.

Resolution bookkeeping keeps the verdicts exact instead of approximate.
Minima live on a lattice refined beyond the one check points live on, and
each verdict is bracketed between two formula-free facts: clearing the
enumerated minima certifies membership, staying at or under the formal
boundary combination certifies exclusion.  The two disagree only on the
sub-resolution band a lattice enumeration inherently cannot decide (an
unattained infimum whose denominator lies outside the member lattice, e.g.
an edge at 19/12 over the dyadics); points there are skipped, every other
point gets an exact verdict.  The price is a budget: boundary coordinates
up to |3|, check coordinates up to |4|, denominators capped at 64.  Callers
stay inside those margins; the module raises rather than degrade silently.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .groups import DISCRETE, LOCALIZED, RATIONALS, ValueGroup
from .cuts import CLOSED, Cut, member

LO, HI = -8, 8
MAX_BOUNDARY = 3
MAX_COORD = 4
DEN_CAP = 64


def _s_part(comp, d: int) -> int:
    if comp.kind == RATIONALS:
        return d
    out = 1
    if comp.kind == LOCALIZED:
        for p in comp.primes:
            while d % p == 0:
                d //= p
                out *= p
    return out


def _check_den(comp) -> int:
    if comp.kind == DISCRETE:
        return 1
    if comp.kind == RATIONALS:
        return 4
    p = min(comp.primes)
    return 4 if p == 2 else p


def lattice_dens(g: ValueGroup, cuts, strict_discrete: bool = True):
    """Per-component (fine, fine2) lattice denominators adequate for `cuts`."""
    fine, fine2 = [], []
    for idx, comp in enumerate(g.components):
        dc = _check_den(comp)
        present = {dc}
        for c in cuts:
            if c.level > idx:
                present.add(c.boundary[idx].denominator)
        big = math.lcm(*present)
        if comp.kind == DISCRETE:
            if strict_discrete and big != 1:
                raise ValueError("canonical cuts keep integer coordinates at discrete components")
            fine.append(1)
            fine2.append(1)
            continue
        if comp.kind == RATIONALS:
            f = 2 * big
            f2 = 2 * f
        else:
            p = min(comp.primes)
            f = math.lcm(*(_s_part(comp, d) for d in present))
            while f <= big:
                f *= p
            f2 = f * p
        if f2 > DEN_CAP:
            raise ValueError(
                f"component {idx + 1} needs lattice denominator {f2} > {DEN_CAP}; "
                "keep boundary denominators small"
            )
        fine.append(f)
        fine2.append(f2)
    return fine, fine2


def _floor_on(q: Fraction, d: int) -> Fraction:
    return Fraction(math.floor(q * d), d)


def _assert_small_boundary(a: Cut) -> None:
    if any(abs(q) > MAX_BOUNDARY for q in a.boundary):
        raise ValueError(f"box oracle wants |boundary| <= {MAX_BOUNDARY}")


def lex_min(g: ValueGroup, a: Cut, dens) -> tuple:
    """Lex-least member of the cut's upper set on the box lattice.

    Prefer agreeing with the boundary for as long as its coordinates sit on
    the lattice; the first off-lattice coordinate gets rounded up and frees
    the rest to drop to the box floor.
    """
    _assert_small_boundary(a)

    def go(k: int) -> list:
        q, d = a.boundary[k], dens[k]
        scaled = q * d
        if k == a.level - 1:
            n = math.ceil(scaled) if a.side == CLOSED else math.floor(scaled) + 1
            return [Fraction(n, d)]
        if scaled.denominator == 1:
            return [q] + go(k + 1)
        return [Fraction(math.ceil(scaled), d)] + [Fraction(LO)] * (a.level - 1 - k)

    coords = go(0) + [Fraction(LO)] * (g.rank - a.level)
    return tuple(coords)


def _targets_for(g: ValueGroup, fine, prefix) -> list:
    m = len(prefix)
    base = [_floor_on(prefix[k], fine[k]) for k in range(m)]
    tails = (Fraction(0), Fraction(-2), Fraction(2))
    out = []
    for dlast in range(-3, 4):
        top = base[m - 1] + Fraction(dlast, fine[m - 1])
        if abs(top) > HI:
            continue
        for t in tails:
            out.append(tuple(base[: m - 1] + [top] + [t] * (g.rank - m)))
    if m >= 2:
        for db in (-1, 1):
            coords = list(base)
            coords[m - 2] += Fraction(db, fine[m - 2])
            out.append(tuple(coords + [Fraction(0)] * (g.rank - m)))
    return out


def sample_points(g: ValueGroup, cuts, rng, n_random: int = 16, extra_prefixes=(),
                  strict_discrete: bool = True) -> list:
    """Member points that exercise the edges of the given cuts: lattice
    neighborhoods of every boundary prefix plus seeded random lattice points."""
    fine, _ = lattice_dens(g, cuts, strict_discrete=strict_discrete)
    pts = set()
    for c in cuts:
        pts.update(_targets_for(g, fine, c.boundary))
    for prefix in extra_prefixes:
        if prefix:
            pts.update(_targets_for(g, fine, tuple(prefix)))
    for _ in range(n_random):
        coords = []
        for idx, comp in enumerate(g.components):
            dc = _check_den(comp)
            coords.append(Fraction(rng.randint(-MAX_COORD * dc, MAX_COORD * dc), dc))
        pts.add(tuple(coords))
    return sorted(pts)


def check_mul(g: ValueGroup, a: Cut, b: Cut, predicted: Cut, rng, n_random: int = 16) -> list:
    """Pointwise mismatches between `predicted` and the box sumset of a and b.

    The sumset verdict at x brackets the truth between two formula-free
    facts: x is in the sumset whenever it clears the sum of the enumerated
    minima (actual members), and only if its prefix clears the formal sum of
    the boundaries (the unattained infimum).  The two disagree exactly on
    the sub-resolution band between infimum and enumerated edge; points in
    that band are skipped, everywhere else the verdict is exact.
    """
    _, fine2 = lattice_dens(g, (a, b, predicted))
    ma = lex_min(g, a, fine2)
    mb = lex_min(g, b, fine2)
    edge = tuple(x + y for x, y in zip(ma, mb))
    m = min(a.level, b.level)
    formal = tuple(a.boundary[k] + b.boundary[k] for k in range(m))
    mismatches = []
    for x in sample_points(g, (a, b, predicted), rng, n_random, extra_prefixes=(formal,)):
        got = x >= edge
        if not got and x[:m] > formal:
            continue
        want = member(g, predicted, x)
        if got != want:
            mismatches.append(f"at {x}: box says {got}, cut arithmetic says {want}")
    return mismatches


def check_quotient(g: ValueGroup, a: Cut, b: Cut, predicted: Cut, rng, n_random: int = 16) -> list:
    """Pointwise mismatches between `predicted` and the box residual (A : B).

    A shift passes the box test iff adding the worst (least) enumerated
    member of B stays inside A.  For an open divisor that least member sits
    one refined-lattice step above the true infimum, so each verdict is
    double-checked against the virtual infimum (the boundary itself, never
    enumerated): where the two agree the verdict is exact, where they
    disagree the point lies in the sub-resolution band and is skipped.
    """
    _, fine2 = lattice_dens(g, (a, b, predicted))
    mb = lex_min(g, b, fine2)
    virt = list(mb)
    virt[b.level - 1] = b.boundary[b.level - 1]
    m = min(a.level, b.level)
    ediff = tuple(a.boundary[k] - b.boundary[k] for k in range(m))
    mismatches = []
    for x in sample_points(g, (a, b, predicted), rng, n_random, extra_prefixes=(ediff,)):
        got = member(g, a, tuple(c + d for c, d in zip(x, mb)))
        low = member(g, a, tuple(c + d for c, d in zip(x, virt)))
        if got != low:
            continue
        want = member(g, predicted, x)
        if got != want:
            mismatches.append(f"at {x}: box says {got}, cut arithmetic says {want}")
    return mismatches


def check_same_set(g: ValueGroup, a: Cut, b: Cut, rng, n_random: int = 16) -> list:
    """Pointwise agreement of two cut literals as sets; used to validate
    normalization and canonical uniqueness without any formula in the loop."""
    mismatches = []
    for x in sample_points(g, (a, b), rng, n_random, strict_discrete=False):
        ina, inb = member(g, a, x), member(g, b, x)
        if ina != inb:
            mismatches.append(f"at {x}: {ina} vs {inb}")
    return mismatches
