"""Totally ordered abelian groups built as lexicographic towers of
archimedean subgroups of Q.

A group is a finite tuple of components, most significant first.  Elements
are tuples of Fractions, one coordinate per component, compared
lexicographically.  The convex subgroups of such a tower are exactly the
suffix kernels H_i = {x : x_1 = ... = x_i = 0} for i = 0..n, so a convex
subgroup is represented by its index i alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

DISCRETE = "Z"
RATIONALS = "Q"
LOCALIZED = "Zloc"


class MalformedElementError(ValueError):
    pass


class UndefinedQuotientError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class ArchComponent:
    """One archimedean slot of the tower: Z, all of Q, or Z localized so
    that denominators draw their prime factors from a fixed finite set."""

    kind: str
    primes: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.kind not in (DISCRETE, RATIONALS, LOCALIZED):
            raise ValueError(f"unknown component kind {self.kind!r}")
        object.__setattr__(self, "primes", frozenset(self.primes))
        if self.kind == LOCALIZED:
            if not self.primes:
                raise ValueError("a localized component needs at least one prime")
            for p in self.primes:
                if not _is_prime(p):
                    raise ValueError(f"{p} is not prime")
        elif self.primes:
            raise ValueError(f"{self.kind} component takes no primes")

    @property
    def dense(self) -> bool:
        # Z is the only archimedean subgroup here with a least positive element.
        return self.kind != DISCRETE


Z = ArchComponent(DISCRETE)
Q = ArchComponent(RATIONALS)


def Zloc(*primes: int) -> ArchComponent:
    return ArchComponent(LOCALIZED, frozenset(primes))


def is_member(comp: ArchComponent, q: Fraction) -> bool:
    """Membership of a rational in the component (not just its divisible hull)."""
    if comp.kind == RATIONALS:
        return True
    if comp.kind == DISCRETE:
        return q.denominator == 1
    d = q.denominator
    for p in comp.primes:
        while d % p == 0:
            d //= p
    return d == 1


@dataclass(frozen=True)
class ValueGroup:
    components: tuple[ArchComponent, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("a value group needs at least one component")
        object.__setattr__(self, "components", comps)

    @property
    def rank(self) -> int:
        return len(self.components)

    def element(self, coords) -> tuple[Fraction, ...]:
        """Validated element constructor: one member coordinate per component."""
        xs = tuple(Fraction(c) for c in coords)
        if len(xs) != self.rank:
            raise MalformedElementError(
                f"expected {self.rank} coordinates, got {len(xs)}"
            )
        for pos, (c, comp) in enumerate(zip(xs, self.components)):
            if not is_member(comp, c):
                raise MalformedElementError(
                    f"coordinate {pos + 1} = {c} is not a member of {describe_component(comp)}"
                )
        return xs

    def zero(self) -> tuple[Fraction, ...]:
        return (Fraction(0),) * self.rank


def add(g: ValueGroup, a, b):
    if len(a) != g.rank or len(b) != g.rank:
        raise MalformedElementError("rank mismatch")
    return tuple(x + y for x, y in zip(a, b))


def neg(g: ValueGroup, a):
    return tuple(-x for x in a)


def compare(g: ValueGroup, a, b) -> int:
    """Lexicographic order, most significant coordinate first: -1, 0 or 1."""
    ta, tb = tuple(a), tuple(b)
    return (ta > tb) - (ta < tb)


def convex_subgroups(g: ValueGroup) -> range:
    """Indices i of the convex subgroups H_i, from H_0 = G down to H_n = 0."""
    return range(g.rank + 1)


def quotient_has_least_positive(g: ValueGroup, index: int) -> bool:
    """Does G/H_index have a least positive element?

    The quotient is the lex tower of components 1..index; a lex tower has a
    least positive element iff its last (least significant) component does.
    """
    if index == 0:
        raise UndefinedQuotientError("H_0 is the whole group; the quotient is zero")
    if not 1 <= index <= g.rank:
        raise ValueError(f"no convex subgroup H_{index} in a rank-{g.rank} tower")
    return not g.components[index - 1].dense


def is_strongly_discrete(g: ValueGroup) -> bool:
    return all(not c.dense for c in g.components)


def truncate(g: ValueGroup, level: int) -> ValueGroup:
    """The quotient G/H_level, i.e. the tower of the first `level` components."""
    if not 1 <= level <= g.rank:
        raise ValueError(f"level {level} out of range for rank {g.rank}")
    return ValueGroup(g.components[:level])


# === JSON descriptors ===
# Component descriptors: "Z" | "Q" | {"Zloc": [primes...]}; a value group is a
# list of descriptors, most significant first.

def component_from_json(obj) -> ArchComponent:
    if obj == "Z":
        return Z
    if obj == "Q":
        return Q
    if isinstance(obj, dict) and set(obj) == {"Zloc"}:
        primes = obj["Zloc"]
        if not isinstance(primes, list) or not all(isinstance(p, int) for p in primes):
            raise ValueError(f"Zloc wants a list of primes, got {primes!r}")
        return Zloc(*primes)
    raise ValueError(f"unknown component descriptor {obj!r}")


def component_to_json(comp: ArchComponent):
    if comp.kind == LOCALIZED:
        return {"Zloc": sorted(comp.primes)}
    return comp.kind


def describe_component(comp: ArchComponent) -> str:
    if comp.kind == LOCALIZED:
        inside = ",".join(f"1/{p}" for p in sorted(comp.primes))
        return f"Z[{inside}]"
    return comp.kind


def value_group_from_json(obj) -> ValueGroup:
    if not isinstance(obj, list) or not obj:
        raise ValueError(f"a value group descriptor is a non-empty list, got {obj!r}")
    return ValueGroup(tuple(component_from_json(c) for c in obj))


def value_group_to_json(g: ValueGroup):
    return [component_to_json(c) for c in g.components]
