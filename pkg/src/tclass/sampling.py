"""Seeded random generators for cuts, tuples, and group elements.

Everything stays inside the box oracle's budget on purpose: boundary
coordinates in [-3, 3] and denominators small enough that the oracle's
lattice refinement never exceeds its cap of 64.  Generators take an
explicit random.Random so every caller is reproducible from a seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .groups import DISCRETE, LOCALIZED, RATIONALS, ArchComponent, ValueGroup, is_member
from .cuts import CLOSED, OPEN, Cut, normalize


def den_choices(comp: ArchComponent) -> tuple[int, ...]:
    """Boundary denominators the box oracle can afford at this component."""
    if comp.kind == DISCRETE:
        return (1,)
    if comp.kind == RATIONALS:
        return (1, 2, 3, 4)
    p = min(comp.primes)
    if p == 2:
        return (1, 2, 3, 4)
    if p == 3:
        return (1, 2, 3)
    return (1, 2)


def random_rational(rng: random.Random, comp: ArchComponent, span: int = 2) -> Fraction:
    """A boundary coordinate, not necessarily a member of the component."""
    d = rng.choice(den_choices(comp))
    return Fraction(rng.randint(-span * d, span * d), d)


def random_member(rng: random.Random, comp: ArchComponent, span: int = 2) -> Fraction:
    members = [d for d in den_choices(comp) if is_member(comp, Fraction(1, d))]
    d = rng.choice(members)
    return Fraction(rng.randint(-span * d, span * d), d)


def random_element(rng: random.Random, g: ValueGroup, span: int = 2) -> tuple:
    return g.element([random_member(rng, c, span) for c in g.components])


def random_cut(rng: random.Random, g: ValueGroup, level: int | None = None) -> Cut:
    """A canonical cut with member coordinates below the top."""
    if level is None:
        level = rng.randint(1, g.rank)
    boundary = [random_member(rng, g.components[k]) for k in range(level - 1)]
    boundary.append(random_rational(rng, g.components[level - 1]))
    side = rng.choice((CLOSED, OPEN))
    return normalize(g, Cut(level, tuple(boundary), side))


def random_raw_cut(rng: random.Random, g: ValueGroup) -> Cut:
    """An arbitrary well-formed literal; may denote a non-canonical set."""
    level = rng.randint(1, g.rank)
    boundary = []
    for k in range(level):
        comp = g.components[k]
        dens = (1, 2, 3) if comp.kind == DISCRETE else den_choices(comp)
        d = rng.choice(dens)
        boundary.append(Fraction(rng.randint(-2 * d, 2 * d), d))
    return Cut(level, tuple(boundary), rng.choice((CLOSED, OPEN)))
