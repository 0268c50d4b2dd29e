"""Fractional ideals of a valuation domain, represented as cuts of the
value group.

A nonzero fractional ideal of a valuation domain V with value group G is
determined by its value set, an upper set of G that is bounded below.  The
representable upper sets here are the prefix cuts

    <level i; boundary b; side>  =  {x in G : (x_1..x_i) >= b}   (side closed)
                                    {x in G : (x_1..x_i) >  b}   (side open)

where the first i coordinates are compared lexicographically against a
boundary vector b drawn from the divisible hull (any rationals).  Cuts of
level i < rank are exactly the ideals whose stabilizer is the localization
of V at the height-i prime; the ring cut <rank; 0; closed> is V itself.

Everything below works on canonical cuts; `normalize` maps any cut literal
to the unique canonical representative of the same upper set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .groups import (
    ValueGroup,
    is_member,
    truncate,
)

CLOSED = "closed"
OPEN = "open"


class MalformedCutError(ValueError):
    pass


class DomainMismatchError(ValueError):
    pass


class NotInGroupError(ValueError):
    pass


class NotIdempotentError(ValueError):
    pass


class InternalInconsistencyError(RuntimeError):
    """An arithmetic identity that must hold by theory failed; a bug, not bad input."""


@dataclass(frozen=True)
class Cut:
    level: int
    boundary: tuple[Fraction, ...]
    side: str

    def __post_init__(self):
        object.__setattr__(self, "boundary", tuple(Fraction(c) for c in self.boundary))
        if self.side not in (CLOSED, OPEN):
            raise MalformedCutError(f"side must be {CLOSED!r} or {OPEN!r}, got {self.side!r}")
        if self.level < 1:
            raise MalformedCutError("level must be at least 1 (the zero ideal has no cut)")
        if len(self.boundary) != self.level:
            raise MalformedCutError(
                f"boundary has {len(self.boundary)} coordinates for level {self.level}"
            )


def validate_cut(g: ValueGroup, a: Cut) -> None:
    if a.level > g.rank:
        raise MalformedCutError(f"level {a.level} exceeds rank {g.rank}")


def normalize(g: ValueGroup, a: Cut) -> Cut:
    """Canonical representative of the upper set denoted by `a`.

    Two rewrites, applied in order:

    1. If some boundary coordinate j < level is a non-member of component j,
       no element can agree with the boundary through coordinate j, so the
       comparison is always settled at or before j: the cut collapses to
       level j, side open.  Example over (Z, Z)-lex:
       <2; (1/2, 0); closed> -> <1; (1/2); open> -> (rule 2) <1; (1); closed>.

    2. The last coordinate, against its own component C:
       - member of a discrete C, side open: the least element above the
         boundary exists, so <i; b; open> = <i; b + 1; closed>.
         Example over Z: <1; (0); open> -> <1; (1); closed>.
       - non-member of a discrete C: both sides denote {x >= ceil(b_i)}:
         side becomes closed, the coordinate becomes its ceiling.
         Example over Z: <1; (1/2); closed> -> <1; (1); closed>.
       - non-member of a dense C: closed and open denote the same set
         (the boundary itself is not available); open is canonical.
         Example over Z[1/2]: <1; (1/3); closed> -> <1; (1/3); open>.
       - member of a dense C: both sides are canonical as written (they
         differ exactly in the boundary fiber).

    Canonical cuts therefore have member coordinates below the top, and at
    the top: closed cuts have a member boundary; open cuts exist only at
    dense components.  Distinct canonical cuts denote distinct upper sets;
    the box oracle arbitrates this in the tests.
    """
    validate_cut(g, a)
    level, boundary, side = a.level, list(a.boundary), a.side
    for j in range(level - 1):
        if not is_member(g.components[j], boundary[j]):
            level, boundary, side = j + 1, boundary[: j + 1], OPEN
            break
    comp = g.components[level - 1]
    last = boundary[level - 1]
    if is_member(comp, last):
        if side == OPEN and not comp.dense:
            boundary[level - 1] = last + 1
            side = CLOSED
    elif comp.dense:
        side = OPEN
    else:
        boundary[level - 1] = Fraction(math.ceil(last))
        side = CLOSED
    return Cut(level, tuple(boundary), side)


def member(g: ValueGroup, a: Cut, x) -> bool:
    """Is the group element x in the upper set of a?  Definitional test."""
    px = tuple(x[: a.level])
    if px != a.boundary:
        return px > a.boundary
    return a.side == CLOSED


def _key(a: Cut, pos: int):
    # Position pos of the lower-edge key: boundary coordinates, then a fill
    # that places the edge below (closed) or above (open) the boundary fiber.
    if pos < a.level:
        return a.boundary[pos]
    return math.inf if a.side == OPEN else -math.inf


def compare_edges(a: Cut, b: Cut) -> int:
    """Order of the lower edges of two cuts; 0 only for identical canonicals."""
    for pos in range(max(a.level, b.level) + 1):
        ka, kb = _key(a, pos), _key(b, pos)
        if ka != kb:
            return 1 if ka > kb else -1
    return 0


def is_subset(g: ValueGroup, a: Cut, b: Cut) -> bool:
    """Upper sets are nested exactly as their lower edges are ordered."""
    return compare_edges(a, b) >= 0


def mul(g: ValueGroup, a: Cut, b: Cut) -> Cut:
    """Ideal product: the upper closure of the sumset of the two value sets.

    The sumset of upper sets in a totally ordered group is the upper set at
    the sum of the lower edges, so: level = min of levels, boundary = sum of
    boundaries truncated to that level, side open iff the levels agree and
    either side is open (a lower-level operand absorbs the other's side: its
    boundary fiber is reachable through the deeper coordinates).
    """
    a, b = normalize(g, a), normalize(g, b)
    level = min(a.level, b.level)
    boundary = tuple(x + y for x, y in zip(a.boundary, b.boundary))
    if a.level == b.level:
        side = OPEN if OPEN in (a.side, b.side) else CLOSED
    else:
        side = a.side if a.level < b.level else b.side
    return normalize(g, Cut(level, boundary, side))


def quotient(g: ValueGroup, a: Cut, b: Cut) -> Cut:
    """Residual (A : B) = {x : x + U_B inside U_A}, again a cut.

    For B of level >= A's, only the truncation of B's edge matters and the
    requirement is tightest at it; when B's own level is lower, the tail
    coordinates of its elements run unbounded below, so membership must be
    settled strictly before A's deeper coordinates, which collapses the
    result to B's level.  An open divisor makes the infimum unattained and
    the residual closes.
    """
    a, b = normalize(g, a), normalize(g, b)
    if b.level >= a.level:
        level = a.level
        c = b.boundary[: level]
        attained = b.level > a.level or b.side == CLOSED
        side = a.side if attained else CLOSED
    else:
        level = b.level
        c = b.boundary
        side = OPEN if b.side == CLOSED else CLOSED
    boundary = tuple(x - y for x, y in zip(a.boundary, c))
    return normalize(g, Cut(level, boundary, side))


def ring_cut(g: ValueGroup, level: Optional[int] = None) -> Cut:
    """The cut of V (full level) or of the localization at the height-`level` prime."""
    if level is None:
        level = g.rank
    return Cut(level, (Fraction(0),) * level, CLOSED)


def prime_cut(g: ValueGroup, level: int) -> Cut:
    """Canonical cut of the height-`level` prime ideal."""
    return normalize(g, Cut(level, (Fraction(0),) * level, OPEN))


def max_ideal_cut(g: ValueGroup) -> Cut:
    return prime_cut(g, g.rank)


def inverse(g: ValueGroup, a: Cut) -> Cut:
    return quotient(g, ring_cut(g), a)


def v_closure(g: ValueGroup, a: Cut) -> Cut:
    return quotient(g, ring_cut(g), inverse(g, a))


def _probe_point(g: ValueGroup, a: Cut):
    # Some group element strictly inside the upper set.
    coords = []
    for j in range(a.level - 1):
        coords.append(a.boundary[j])
    coords.append(Fraction(math.ceil(a.boundary[a.level - 1])) + 1)
    coords.extend(Fraction(0) for _ in range(g.rank - a.level))
    return g.element(coords)


def t_closure(g: ValueGroup, a: Cut) -> Cut:
    """t-closure; the identity map here.

    Every nonzero fractional ideal of a valuation domain is a t-ideal:
    finitely generated subideals are principal, hence divisorial, and their
    union returns the ideal.  Kept as an explicit step so that callers spell
    out where the star operation acts; a cheap containment probe guards the
    identity claim.
    """
    c = normalize(g, a)
    if not member(g, c, _probe_point(g, c)):
        raise InternalInconsistencyError("t-closure probe escaped its own cut")
    return c


def stabilizer(g: ValueGroup, a: Cut) -> Cut:
    """(I : I), the cut of the overring where the ideal lives; a ring cut."""
    a = normalize(g, a)
    out = ring_cut(g, a.level)
    if quotient(g, a, a) != out:
        raise InternalInconsistencyError("stabilizer disagrees with (I : I)")
    return out


def t_closure_over(g: ValueGroup, level: int, a: Cut) -> Cut:
    """t-closure of a common ideal of the base and of the overring at
    `level`, computed over the overring: the literal is reread in the
    overring's value group (the prefix of the tower), closed there, and
    lifted back.  For common ideals this must agree with the closure over
    the base; callers assert that equality."""
    a = normalize(g, a)
    t = ring_cut(g, level)
    if mul(g, a, t) != a:
        raise DomainMismatchError("not an ideal of the overring at this level")
    gt = truncate(g, level)
    ct = t_closure(gt, Cut(a.level, a.boundary, a.side))
    return normalize(g, Cut(ct.level, ct.boundary, ct.side))


def translate(g: ValueGroup, a: Cut, shift) -> Cut:
    """The cut of the principal multiple with value `shift` (a group element)."""
    a = normalize(g, a)
    shift = g.element(shift)
    boundary = tuple(x + y for x, y in zip(a.boundary, shift))
    return Cut(a.level, boundary, a.side)


def is_idempotent(g: ValueGroup, a: Cut) -> bool:
    a = normalize(g, a)
    return mul(g, a, a) == a


def idempotent_cut(g: ValueGroup, a: Cut) -> Cut:
    """The canonical idempotent attached to a's class: (I (T:I))_t with T = (I:I)."""
    a = normalize(g, a)
    t = stabilizer(g, a)
    return t_closure(g, mul(g, a, quotient(g, t, a)))


@dataclass(frozen=True)
class OverringSpec:
    """An overring of the base, one localization level per component."""

    levels: tuple[int, ...]


@dataclass(frozen=True)
class IdempotentForm:
    """Which idempotent a class lands on: the overring T itself (ring variant)
    or the intersection of the idempotent maximal ideals of T at the listed
    component indices (0-based internally; reports print them 1-based)."""

    overring: OverringSpec
    open_components: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "open_components", frozenset(self.open_components))
        bad = [i for i in self.open_components if not 0 <= i < len(self.overring.levels)]
        if bad:
            raise ValueError(f"component indices {bad} out of range")

    @property
    def variant(self) -> str:
        return "max_ideals" if self.open_components else "ring"


def classify_idempotent(g: ValueGroup, a: Cut) -> IdempotentForm:
    """The unique idempotent whose constituent group contains a's class.

    Side closed means the class carries a representative that is a ring
    multiple, so the idempotent is the stabilizer overring itself; side open
    (dense top component) lands on the idempotent maximal ideal of that
    overring.  The witness construction (I (T:I))_t is checked against the
    claimed form.
    """
    a = normalize(g, a)
    form = IdempotentForm(
        OverringSpec((a.level,)),
        frozenset() if a.side == CLOSED else frozenset({0}),
    )
    if idempotent_cut(g, a) != form_cut(g, form):
        raise InternalInconsistencyError("witness idempotent disagrees with classification")
    return form


def form_cut(g: ValueGroup, form: IdempotentForm) -> Cut:
    """The canonical cut of the idempotent named by a rank-1 form."""
    if len(form.overring.levels) != 1:
        raise DomainMismatchError("a valuation model has exactly one component")
    level = form.overring.levels[0]
    if form.open_components:
        return prime_cut(g, level)
    return ring_cut(g, level)


@dataclass(frozen=True)
class RegularityWitness:
    idempotent: Cut
    shift: Optional[tuple[Fraction, ...]]


def is_regular(g: ValueGroup, a: Cut) -> RegularityWitness:
    """Von Neumann regularity witness: checks I = (I^2 (I : I^2))_t and hands
    back the attached idempotent plus, when the boundary is realizable, the
    value of a scalar q with (I^2)_t = qI.  A non-member boundary has no such
    scalar among representable shifts; the shift is None then."""
    a = normalize(g, a)
    sq = mul(g, a, a)
    back = t_closure(g, mul(g, sq, quotient(g, a, sq)))
    if back != a:
        raise InternalInconsistencyError("regularity identity I = (I^2 (I:I^2))_t failed")
    shift: Optional[tuple[Fraction, ...]] = None
    if all(is_member(c, q) for c, q in zip(g.components, a.boundary)):
        lift = list(a.boundary) + [Fraction(0)] * (g.rank - a.level)
        shift = g.element(lift)
        if translate(g, a, shift) != sq:
            raise InternalInconsistencyError("witness shift does not realize the square")
    return RegularityWitness(idempotent_cut(g, a), shift)


# === classes modulo principal ideals ===

def _coset_rep(comp, q: Fraction) -> Fraction:
    # Canonical representative of q + C in Q/C, inside [0, 1).
    if comp.kind == "Q":
        return Fraction(0)
    if comp.kind == "Z":
        return q - math.floor(q)
    d = q.denominator
    s_part = 1
    for p in comp.primes:
        while d % p == 0:
            d //= p
            s_part *= p
    if d == 1:
        return Fraction(0)
    inv = pow(s_part, -1, d)
    return Fraction(q.numerator * inv % d, d)


@dataclass(frozen=True)
class CutClass:
    """A cut modulo principal ideals; `rep` is the class-canonical cut:
    zero boundary below the top, last coordinate reduced mod its component."""

    rep: Cut


def class_of(g: ValueGroup, a: Cut) -> CutClass:
    a = normalize(g, a)
    boundary = [Fraction(0)] * (a.level - 1)
    boundary.append(_coset_rep(g.components[a.level - 1], a.boundary[-1]))
    return CutClass(Cut(a.level, tuple(boundary), a.side))


def residual_membership(g: ValueGroup, L: Cut, J: Cut) -> bool:
    """Constituent-group membership by residual arithmetic alone: the
    stabilizers agree and the three t-products (J L (L:L^2))_t,
    (L (L:L^2))_t, (L (J:L))_t all return J."""
    L, J = normalize(g, L), normalize(g, J)
    if stabilizer(g, L) != stabilizer(g, J):
        return False
    r = quotient(g, L, mul(g, L, L))
    lr = t_closure(g, mul(g, L, r))
    if lr != J:
        return False
    if t_closure(g, mul(g, J, lr)) != J:
        return False
    return t_closure(g, mul(g, L, quotient(g, J, L))) == J


def group_membership(g: ValueGroup, L: Cut, J: Cut) -> bool:
    """Does the class of L lie in the constituent group at J?

    The operative test asks whether L's attached idempotent is J; the
    residual-arithmetic conditions must agree with it, and a divergence is
    an arithmetic bug worth crashing on.
    """
    J = normalize(g, J)
    if not is_idempotent(g, J):
        raise NotIdempotentError(f"{format_cut(J)} is not idempotent")
    operative = idempotent_cut(g, L) == J
    if residual_membership(g, L, J) != operative:
        raise InternalInconsistencyError("membership tests diverged")
    return operative


def _require_member(g: ValueGroup, x: CutClass, J: Cut) -> None:
    if not group_membership(g, x.rep, J):
        raise NotInGroupError(f"{format_cut(x.rep)} is not in the group at {format_cut(J)}")


def group_identity(g: ValueGroup, J: Cut) -> CutClass:
    return class_of(g, J)


def group_mul(g: ValueGroup, x: CutClass, y: CutClass, J: Cut) -> CutClass:
    _require_member(g, x, J)
    _require_member(g, y, J)
    return class_of(g, t_closure(g, mul(g, x.rep, y.rep)))


def group_inv(g: ValueGroup, x: CutClass, J: Cut) -> CutClass:
    # (J : L) alone may land on a side-closed cut (the overring's class) when
    # the boundary is a member; multiplying back into J keeps the inverse in
    # the group and fixes inv at the identity.
    _require_member(g, x, J)
    return class_of(g, t_closure(g, mul(g, quotient(g, J, x.rep), J)))


# === literals ===

def cut_to_json(a: Cut):
    return {
        "level": a.level,
        "boundary": [str(c) for c in a.boundary],
        "side": a.side,
    }


def cut_from_json(obj) -> Cut:
    if not isinstance(obj, dict) or set(obj) != {"level", "boundary", "side"}:
        raise MalformedCutError(f"a cut literal has keys level/boundary/side, got {obj!r}")
    try:
        boundary = tuple(Fraction(str(c)) for c in obj["boundary"])
    except (ValueError, ZeroDivisionError) as e:
        raise MalformedCutError(f"bad boundary {obj['boundary']!r}: {e}") from None
    if not isinstance(obj["level"], int):
        raise MalformedCutError(f"level must be an integer, got {obj['level']!r}")
    return Cut(obj["level"], boundary, obj["side"])


def format_cut(a: Cut) -> str:
    inside = ", ".join(str(c) for c in a.boundary)
    return f"<{a.level}; ({inside}); {a.side}>"


# === adapter for the finite-semigroup oracle ===

class ValuationClassModel:
    """Class-level arithmetic handle: hashable canonical classes with an
    exact product, as the sampling closure expects."""

    def __init__(self, group: ValueGroup):
        self.group = group

    def class_of(self, a: Cut) -> CutClass:
        return class_of(self.group, a)

    def mul(self, x: CutClass, y: CutClass) -> CutClass:
        return self.class_of(mul(self.group, x.rep, y.rep))

    def is_idempotent_class(self, x: CutClass) -> bool:
        return self.mul(x, x) == x

    def idempotent_of(self, x: CutClass) -> CutClass:
        return self.class_of(idempotent_cut(self.group, x.rep))

    def describe(self, x: CutClass) -> str:
        return format_cut(x.rep)
