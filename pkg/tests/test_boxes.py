"""Self-checks for the box oracle.

The box module arbitrates the frozen values asserted everywhere else, so it
gets validated first and by the dumbest available means: exhaustive lattice
enumeration, explicit pairwise sumsets, and deliberately wrong predictions
that must be rejected.
"""

import itertools
from fractions import Fraction as F

import pytest

from conftest import GROUPS
from tclass import CLOSED, OPEN, Cut, Q, ValueGroup, Z, Zloc
from tclass import boxes
from tclass.cuts import member, mul, translate
from tclass.groups import add, is_member
from tclass.sampling import random_cut, random_element

ZZ = GROUPS["Z"]
DY = GROUPS["Zhalf"]
QQ = ValueGroup((Q,))


def box_lattice(g, dens):
    axes = [
        [F(k, d) for k in range(boxes.LO * d, boxes.HI * d + 1)]
        for d in dens
    ]
    return itertools.product(*axes)


def test_lex_min_matches_brute_minimum(group, rng):
    for _ in range(20):
        a = random_cut(rng, group)
        _, fine2 = boxes.lattice_dens(group, (a,))
        got = boxes.lex_min(group, a, fine2)
        brute = min(x for x in box_lattice(group, fine2) if member(group, a, x))
        assert got == brute, f"{a}: lex_min {got} vs enumerated {brute}"


def test_lex_min_rounds_offlattice_closed_boundary():
    # Closed at 1/3 over the dyadics: least lattice member is the next step up
    _, fine2 = boxes.lattice_dens(DY, (Cut(1, (F(1, 3),), CLOSED),))
    got = boxes.lex_min(DY, Cut(1, (F(1, 3),), CLOSED), fine2)
    assert got[0] > F(1, 3)
    assert got[0] - F(1, 3) < F(1, fine2[0])


def test_lattice_dens_properties(group, rng):
    for _ in range(10):
        cuts = (random_cut(rng, group), random_cut(rng, group))
        fine, fine2 = boxes.lattice_dens(group, cuts)
        for comp, f, f2 in zip(group.components, fine, fine2):
            assert f2 % f == 0
            assert is_member(comp, F(1, f2)), "lattice steps must be members"
        for c in cuts:
            for k in range(c.level):
                q = c.boundary[k]
                if is_member(group.components[k], q):
                    assert (q * fine2[k]).denominator == 1


def test_lattice_dens_discrete_strictness():
    bad = Cut(1, (F(1, 2),), CLOSED)
    with pytest.raises(ValueError):
        boxes.lattice_dens(ZZ, (bad,))
    fine, fine2 = boxes.lattice_dens(ZZ, (bad,), strict_discrete=False)
    assert fine == [1] and fine2 == [1]


def test_lattice_dens_denominator_cap():
    wide = (Cut(1, (F(1, 5),), CLOSED), Cut(1, (F(1, 7),), CLOSED))
    with pytest.raises(ValueError, match="denominator"):
        boxes.lattice_dens(QQ, wide)


def test_boundary_magnitude_cap():
    big = Cut(1, (F(4),), CLOSED)
    with pytest.raises(ValueError, match="boundary"):
        boxes.lex_min(ZZ, big, [1])


def test_membership_is_upper_closed(group, rng):
    zero = group.zero()
    for _ in range(60):
        a = random_cut(rng, group)
        x = random_element(rng, group)
        d = random_element(rng, group)
        if d < zero:
            d = tuple(-q for q in d)
        if member(group, a, x):
            assert member(group, a, add(group, x, d))


def test_membership_reduces_to_finite_minimum(group, rng):
    # the residual check leans on this: quantifying a shifted membership
    # over a finite set is the same as testing its least element
    for _ in range(60):
        a = random_cut(rng, group)
        shift = random_element(rng, group)
        pts = [random_element(rng, group) for _ in range(5)]
        every = all(member(group, a, add(group, shift, v)) for v in pts)
        assert every == member(group, a, add(group, shift, min(pts)))


@pytest.mark.parametrize("gname", ["Z", "Zhalf", "Q"])
def test_sumset_is_upper_set_at_minimum_sum(gname, rng):
    g = QQ if gname == "Q" else GROUPS[gname]
    for _ in range(6):
        a, b = random_cut(rng, g), random_cut(rng, g)
        _, fine2 = boxes.lattice_dens(g, (a, b))
        d = fine2[0]
        pts = [(F(k, d),) for k in range(boxes.LO * d, boxes.HI * d + 1)]
        ua = [x for x in pts if member(g, a, x)]
        ub = [x for x in pts if member(g, b, x)]
        ma, mb = min(ua), min(ub)
        assert ma == boxes.lex_min(g, a, fine2)
        assert mb == boxes.lex_min(g, b, fine2)
        sums = {x[0] + y[0] for x in ua for y in ub}
        edge = ma[0] + mb[0]
        for (v,) in pts:
            if abs(v) <= 4:
                assert (v in sums) == (v >= edge)


def test_check_mul_accepts_truth_and_rejects_shifts(rng):
    a, b = Cut(1, (F(2),), CLOSED), Cut(1, (F(3),), CLOSED)
    right = mul(ZZ, a, b)
    assert right == Cut(1, (F(5),), CLOSED)
    assert boxes.check_mul(ZZ, a, b, right, rng) == []
    shifted = translate(ZZ, right, (F(1),))
    assert boxes.check_mul(ZZ, a, b, shifted, rng)
    flipped = Cut(1, (F(5),), OPEN)
    assert boxes.check_mul(ZZ, a, b, flipped, rng)


def test_check_mul_rejects_shift_on_dense_group(rng):
    a = Cut(1, (F(1, 3),), OPEN)
    right = mul(DY, a, a)
    assert boxes.check_mul(DY, a, a, right, rng) == []
    wrong = translate(DY, right, (F(1),))
    assert boxes.check_mul(DY, a, a, wrong, rng)


def test_check_quotient_rejects_shifted_rank2_inverse(rng):
    # (V : <1;(1);closed>) over a discrete rank-2 tower is the height-1
    # ring cut; the naive "negate the boundary" guess is wrong because the
    # residual must absorb arbitrarily low second coordinates
    g = GROUPS["Z2"]
    v = Cut(2, (F(0), F(0)), CLOSED)
    p = Cut(1, (F(1),), CLOSED)
    right = Cut(1, (F(0),), CLOSED)
    naive = Cut(1, (F(-1),), CLOSED)
    assert boxes.check_quotient(g, v, p, right, rng) == []
    assert boxes.check_quotient(g, v, p, naive, rng)


def test_check_quotient_resolution_band_regression(rng):
    # residual edge 19/12 is not dyadic, so no member lattice refines onto
    # it; the bracketing skip must keep exact points exact instead of
    # flagging false mismatches one lattice step under the edge
    a = Cut(1, (F(4, 3),), OPEN)
    b = Cut(1, (F(-1, 4),), OPEN)
    right = Cut(1, (F(19, 12),), OPEN)
    assert boxes.check_quotient(DY, a, b, right, rng) == []
    # the same set written with the other side marker is still accepted
    closed_twin = Cut(1, (F(19, 12),), CLOSED)
    assert boxes.check_quotient(DY, a, b, closed_twin, rng) == []
    # a unit-shifted answer is still rejected
    wrong = Cut(1, (F(7, 12),), OPEN)
    assert boxes.check_quotient(DY, a, b, wrong, rng)


def test_check_same_set_separates_and_identifies(rng):
    assert boxes.check_same_set(ZZ, Cut(1, (F(0),), CLOSED), Cut(1, (F(0),), OPEN), rng)
    assert boxes.check_same_set(DY, Cut(1, (F(1, 3),), CLOSED), Cut(1, (F(1, 3),), OPEN), rng) == []
    g = GROUPS["Z_Q"]
    at = (F(0), F(1, 2))
    assert boxes.check_same_set(g, Cut(2, at, CLOSED), Cut(2, at, OPEN), rng)


def test_sample_points_members_and_determinism(group):
    import random

    a = Cut(1, (F(1),), CLOSED)
    fine, _ = boxes.lattice_dens(group, (a,))
    one = boxes.sample_points(group, (a,), random.Random(5))
    two = boxes.sample_points(group, (a,), random.Random(5))
    assert one == two
    for x in one:
        assert len(x) == group.rank
        for q, f, comp in zip(x, fine, group.components):
            assert abs(q) <= boxes.HI
            assert is_member(comp, q)
    snapped = tuple([F(1)] + [F(0)] * (group.rank - 1))
    assert snapped in one
