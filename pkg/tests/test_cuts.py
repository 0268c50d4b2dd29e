"""Valuation ideals as cuts: arithmetic, closures, classification, groups.

Derived values frozen here were computed independently by the box oracle;
the oracle call sits next to each frozen assertion so a regression in
either side surfaces as a disagreement.
"""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import GROUPS
from tclass import CLOSED, OPEN, Cut, Q, ValueGroup, Z, Zloc
from tclass import boxes
from tclass import cuts as C
from tclass.groups import is_member, truncate
from tclass.sampling import random_cut, random_element, random_raw_cut

ZZ = GROUPS["Z"]
Z2 = GROUPS["Z2"]
ZQ = GROUPS["Z_Q"]
DY = GROUPS["Zhalf"]
QQ = ValueGroup((Q,))

seeds = st.integers(0, 2**32 - 1)
group_names = st.sampled_from(sorted(GROUPS))


def test_cut_construction_rejects_malformed():
    with pytest.raises(C.MalformedCutError):
        Cut(0, (), CLOSED)
    with pytest.raises(C.MalformedCutError):
        Cut(2, (F(1),), CLOSED)
    with pytest.raises(C.MalformedCutError):
        Cut(1, (F(1),), "half-open")


def test_validate_cut_level_range():
    with pytest.raises(C.MalformedCutError):
        C.validate_cut(ZZ, Cut(2, (F(0), F(0)), CLOSED))


# === normalization ===


def test_normalize_discrete_open_becomes_closed_successor(rng):
    got = C.normalize(ZZ, Cut(1, (F(0),), OPEN))
    assert got == Cut(1, (F(1),), CLOSED)
    assert boxes.check_same_set(ZZ, Cut(1, (F(0),), OPEN), got, rng) == []


def test_normalize_dense_nonmember_closed_collapses_to_open(rng):
    raw = Cut(1, (F(1, 3),), CLOSED)
    got = C.normalize(DY, raw)
    assert got == Cut(1, (F(1, 3),), OPEN)
    assert boxes.check_same_set(DY, raw, got, rng) == []


def test_normalize_keeps_canonical_cut():
    a = Cut(1, (F(1),), CLOSED)
    assert C.normalize(Z2, a) == a


def test_normalize_is_idempotent_and_set_preserving(group, rng):
    for _ in range(40):
        raw = random_raw_cut(rng, group)
        n1 = C.normalize(group, raw)
        assert C.normalize(group, n1) == n1
        assert boxes.check_same_set(group, raw, n1, rng) == []


def test_distinct_canonical_cuts_denote_distinct_sets(rng):
    # curated same-level pairs where the difference is within the box
    pairs = [
        (ZZ, Cut(1, (F(0),), CLOSED), Cut(1, (F(1),), CLOSED)),
        (DY, Cut(1, (F(0),), OPEN), Cut(1, (F(0),), CLOSED)),
        (DY, Cut(1, (F(1, 3),), OPEN), Cut(1, (F(1, 2),), OPEN)),
        (Z2, Cut(1, (F(1),), CLOSED), Cut(2, (F(1), F(0)), CLOSED)),
        (ZQ, Cut(2, (F(0), F(0)), OPEN), Cut(2, (F(0), F(0)), CLOSED)),
    ]
    for g, a, b in pairs:
        assert C.normalize(g, a) == a and C.normalize(g, b) == b
        assert boxes.check_same_set(g, a, b, rng), f"{a} vs {b} not separated"


# === membership and order ===


def test_member_examples():
    p = Cut(1, (F(1),), CLOSED)
    assert C.member(Z2, p, (F(1), F(-5)))
    assert not C.member(Z2, p, (F(0), F(100)))
    m = Cut(1, (F(0),), OPEN)
    assert C.member(QQ, m, (F(1, 7),))
    assert not C.member(QQ, m, (F(0),))


def test_is_subset(group, rng):
    for _ in range(30):
        a = random_cut(rng, group)
        b = random_cut(rng, group)
        inter = C.mul(group, a, C.ring_cut(group))
        assert C.is_subset(group, a, a)
        if C.is_subset(group, a, b) and C.is_subset(group, b, a):
            assert a == b
        assert C.is_subset(group, inter, a) or inter == a


# === multiplication ===


def test_mul_dense_idempotent_maximal_ideal(rng):
    m = Cut(1, (F(0),), OPEN)
    got = C.mul(QQ, m, m)
    assert got == m
    assert boxes.check_mul(QQ, m, m, got, rng) == []


def test_mul_discrete_prime_not_idempotent(rng):
    p = Cut(1, (F(1),), CLOSED)
    got = C.mul(Z2, p, p)
    assert got == Cut(1, (F(2),), CLOSED)
    assert boxes.check_mul(Z2, p, p, got, rng) == []


def test_mul_principal_adds_boundaries():
    a, b = Cut(1, (F(2),), CLOSED), Cut(1, (F(3),), CLOSED)
    assert C.mul(ZZ, a, b) == Cut(1, (F(5),), CLOSED)


def test_mul_rejects_cut_from_wider_tower():
    with pytest.raises(C.MalformedCutError):
        C.mul(ZZ, Cut(1, (F(0),), CLOSED), Cut(2, (F(0), F(0)), CLOSED))


@given(group_names, seeds)
def test_mul_commutative_associative(name, seed):
    g = GROUPS[name]
    r = random.Random(seed)
    a, b, c = (random_cut(r, g) for _ in range(3))
    assert C.mul(g, a, b) == C.mul(g, b, a)
    assert C.mul(g, C.mul(g, a, b), c) == C.mul(g, a, C.mul(g, b, c))


@given(group_names, seeds)
def test_ring_cut_is_identity_on_its_ideals(name, seed):
    g = GROUPS[name]
    r = random.Random(seed)
    a = random_cut(r, g, level=g.rank)
    assert C.mul(g, a, C.ring_cut(g)) == a


def test_mul_random_against_box(group, rng):
    for _ in range(25):
        a, b = random_cut(rng, group), random_cut(rng, group)
        assert boxes.check_mul(group, a, b, C.mul(group, a, b), rng) == []


# === residuals ===


def test_quotient_of_ring_by_maximal_ideal_is_ring(rng):
    v = C.ring_cut(QQ)
    m = Cut(1, (F(0),), OPEN)
    got = C.quotient(QQ, v, m)
    assert got == v
    assert boxes.check_quotient(QQ, v, m, got, rng) == []


def test_quotient_principal_self_residual_is_ring(group, rng):
    a = C.normalize(group, Cut(group.rank, tuple(random_element(rng, group)), CLOSED))
    assert C.quotient(group, a, a) == C.ring_cut(group)


def test_quotient_rank2_inverse_of_height_one_prime(rng):
    # residual absorbs arbitrarily low tail coordinates, so the edge stays
    # at zero rather than at the negated boundary
    v = C.ring_cut(Z2)
    p = Cut(1, (F(1),), CLOSED)
    got = C.quotient(Z2, v, p)
    assert got == Cut(1, (F(0),), CLOSED)
    assert boxes.check_quotient(Z2, v, p, got, rng) == []


def test_quotient_random_against_box(group, rng):
    for _ in range(25):
        a, b = random_cut(rng, group), random_cut(rng, group)
        assert boxes.check_quotient(group, a, b, C.quotient(group, a, b), rng) == []


def test_inverse_is_residual_into_ring(group, rng):
    for _ in range(10):
        a = random_cut(rng, group)
        got = C.inverse(group, a)
        assert got == C.quotient(group, C.ring_cut(group), a)
        assert boxes.check_quotient(group, C.ring_cut(group), a, got, rng) == []


@given(group_names, seeds)
def test_residual_multiplies_back_inside(name, seed):
    g = GROUPS[name]
    r = random.Random(seed)
    a, b = random_cut(r, g), random_cut(r, g)
    back = C.mul(g, C.quotient(g, a, b), b)
    assert C.is_subset(g, back, a)


# === closures ===


def test_closures_on_dense_maximal_ideal():
    m = Cut(1, (F(0),), OPEN)
    assert C.v_closure(QQ, m) == C.ring_cut(QQ)
    assert C.t_closure(QQ, m) == m


def test_closures_fix_principal_cuts(group, rng):
    a = C.normalize(group, Cut(group.rank, tuple(random_element(rng, group)), CLOSED))
    assert C.v_closure(group, a) == a
    assert C.t_closure(group, a) == a


def test_t_closure_fixes_height_one_prime():
    p = Cut(1, (F(1),), CLOSED)
    assert C.t_closure(Z2, p) == p


@given(group_names, seeds)
def test_t_closure_is_identity_on_canonical_cuts(name, seed):
    # principal subideals of a cut ideal are cofinal in it, so the t-closure
    # never moves a canonical cut; v-closure may grow it
    g = GROUPS[name]
    r = random.Random(seed)
    a = random_cut(r, g)
    assert C.t_closure(g, a) == a
    assert C.is_subset(g, a, C.v_closure(g, a))


# === stabilizer ===


def test_stabilizer_examples(rng):
    a = C.normalize(ZZ, Cut(1, (F(7),), CLOSED))
    assert C.stabilizer(ZZ, a) == C.ring_cut(ZZ)
    m = Cut(1, (F(0),), OPEN)
    assert C.stabilizer(QQ, m) == C.ring_cut(QQ)
    p = Cut(1, (F(1),), CLOSED)
    got = C.stabilizer(Z2, p)
    assert got == Cut(1, (F(0),), CLOSED)
    assert boxes.check_quotient(Z2, p, p, got, rng) == []


@given(group_names, seeds)
def test_stabilizer_is_self_residual(name, seed):
    g = GROUPS[name]
    r = random.Random(seed)
    a = random_cut(r, g)
    t = C.stabilizer(g, a)
    assert t == C.quotient(g, a, a)
    assert t.side == CLOSED and all(q == 0 for q in t.boundary)
    assert C.mul(g, a, t) == a


# === idempotents ===


def test_is_idempotent_examples():
    assert C.is_idempotent(QQ, Cut(1, (F(0),), OPEN))
    for g in GROUPS.values():
        for lvl in range(1, g.rank + 1):
            assert C.is_idempotent(g, C.ring_cut(g, lvl))
    assert not C.is_idempotent(Z2, C.normalize(Z2, Cut(1, (F(0),), OPEN)))


def test_prime_cut_idempotent_iff_dense(group):
    from tclass.groups import quotient_has_least_positive

    for i in range(1, group.rank + 1):
        prime = C.prime_cut(group, i)
        assert C.is_idempotent(group, prime) == (
            not quotient_has_least_positive(group, i)
        )


def test_idempotent_cut_is_total_and_idempotent(group, rng):
    for _ in range(20):
        a = random_cut(rng, group)
        j = C.idempotent_cut(group, a)
        assert C.is_idempotent(group, j)
        assert j == C.form_cut(group, C.classify_idempotent(group, a))


def test_group_membership_requires_idempotent_j():
    with pytest.raises(C.NotIdempotentError):
        C.group_membership(ZZ, C.ring_cut(ZZ), Cut(1, (F(1),), CLOSED))


# === regularity ===


def test_regularity_principal_gives_ring_and_boundary_shift():
    a = Cut(1, (F(3),), CLOSED)
    w = C.is_regular(ZZ, a)
    assert w.idempotent == C.ring_cut(ZZ)
    assert w.shift == (F(3),)


def test_regularity_dense_open_member_boundary():
    w = C.is_regular(QQ, Cut(1, (F(1, 2),), OPEN))
    assert w.idempotent == Cut(1, (F(0),), OPEN)
    assert w.shift == (F(1, 2),)


def test_regularity_dense_open_nonmember_boundary():
    w = C.is_regular(DY, Cut(1, (F(1, 3),), OPEN))
    assert w.idempotent == Cut(1, (F(0),), OPEN)
    assert w.shift is None


def test_regularity_ring_branch_rank2():
    w = C.is_regular(Z2, Cut(1, (F(1),), CLOSED))
    assert w.idempotent == Cut(1, (F(0),), CLOSED)
    assert w.shift == (F(1), F(0))


@given(group_names, seeds)
def test_every_canonical_cut_is_regular(name, seed):
    # I = (I^2 (I : I^2))_t, and the witness invariants hold
    g = GROUPS[name]
    r = random.Random(seed)
    a = random_cut(r, g)
    sq = C.mul(g, a, a)
    recon = C.t_closure(g, C.mul(g, sq, C.quotient(g, a, sq)))
    assert recon == a
    w = C.is_regular(g, a)
    j = C.t_closure(g, C.mul(g, a, C.quotient(g, C.stabilizer(g, a), a)))
    assert w.idempotent == j
    if w.shift is not None:
        assert C.translate(g, a, w.shift) == C.t_closure(g, sq)


# === classification ===


def test_classify_discrete_rank1_always_ring():
    form = C.classify_idempotent(ZZ, Cut(1, (F(3),), CLOSED))
    assert form.variant == "ring"
    assert form.overring.levels == (1,)


def test_classify_dense_open_class_is_max_ideals():
    form = C.classify_idempotent(QQ, Cut(1, (F(1, 3),), OPEN))
    assert form.variant == "max_ideals"
    assert form.open_components == frozenset({0})
    assert form.overring.levels == (1,)


def test_classify_dense_bottom_component():
    form = C.classify_idempotent(ZQ, Cut(2, (F(0), F(0)), OPEN))
    assert form.variant == "max_ideals"
    assert form.overring.levels == (2,)


def test_classify_height_one_overring_branch():
    form = C.classify_idempotent(Z2, Cut(1, (F(1),), CLOSED))
    assert form.variant == "ring"
    assert form.overring.levels == (1,)


def test_classify_localization_consistency(group, rng):
    # a max-ideals classification names a dense level: the witness cut is
    # idempotent there, and stays idempotent in the truncated tower
    for _ in range(30):
        a = random_cut(rng, group)
        form = C.classify_idempotent(group, a)
        j = C.form_cut(group, form)
        assert C.is_idempotent(group, j)
        if form.variant == "max_ideals":
            lvl = form.overring.levels[0]
            gt = truncate(group, lvl)
            assert C.is_idempotent(gt, Cut(lvl, j.boundary, j.side))
        assert j == C.is_regular(group, a).idempotent


def test_idempotent_uniqueness_small(group, rng):
    # exactly one canonical idempotent admits each sampled class
    candidates = [C.ring_cut(group, l) for l in range(1, group.rank + 1)]
    candidates += [
        C.prime_cut(group, i)
        for i in range(1, group.rank + 1)
        if group.components[i - 1].dense
    ]
    for _ in range(60):
        a = random_cut(rng, group)
        hits = [j for j in candidates if C.group_membership(group, a, j)]
        assert len(hits) == 1
        assert hits[0] == C.form_cut(group, C.classify_idempotent(group, a))


# === constituent group operations ===


def test_group_membership_identity_and_example():
    j = Cut(1, (F(0),), OPEN)
    assert C.group_membership(DY, j, j)
    L = Cut(1, (F(1, 3),), OPEN)
    assert C.group_membership(DY, L, j)
    inv = C.group_inv(DY, C.class_of(DY, L), j)
    assert inv == C.class_of(DY, Cut(1, (F(-1, 3),), OPEN))
    prod = C.group_mul(DY, C.class_of(DY, L), inv, j)
    assert prod == C.group_identity(DY, j)


def test_group_membership_rejects_principal_class_at_dense_idempotent():
    # the ring class is principal; its idempotent is the ring itself, not
    # the maximal ideal, even though the stabilizer condition matches
    j = Cut(1, (F(0),), OPEN)
    v = C.ring_cut(QQ)
    assert not C.group_membership(QQ, v, j)
    assert C.residual_membership(QQ, v, j) == C.group_membership(QQ, v, j)


def test_group_ops_reject_non_members():
    j = Cut(1, (F(0),), OPEN)
    v = C.ring_cut(QQ)
    with pytest.raises(C.NotInGroupError):
        C.group_mul(QQ, C.class_of(QQ, v), C.group_identity(QQ, j), j)
    with pytest.raises(C.NotInGroupError):
        C.group_inv(QQ, C.class_of(QQ, v), j)


@given(group_names, seeds)
def test_group_axioms_on_members(name, seed):
    g = GROUPS[name]
    r = random.Random(seed)
    a = random_cut(r, g)
    j = C.form_cut(g, C.classify_idempotent(g, a))
    b = random_cut(r, g)
    jb = C.form_cut(g, C.classify_idempotent(g, b))
    x = C.class_of(g, a)
    e = C.group_identity(g, j)
    assert C.group_mul(g, x, e, j) == x
    xinv = C.group_inv(g, x, j)
    assert C.group_mul(g, x, xinv, j) == e
    if jb == j:
        y = C.class_of(g, b)
        assert C.group_mul(g, x, y, j) == C.group_mul(g, y, x, j)


def test_class_translation_invariance(group, rng):
    for _ in range(20):
        a = random_cut(rng, group)
        shift = random_element(rng, group)
        assert C.class_of(group, C.translate(group, a, shift)) == C.class_of(group, a)


# === transfer to overrings ===


def test_t_closure_transfer_on_common_ideals(group, rng):
    for _ in range(40):
        a = random_cut(rng, group)
        t_level = C.stabilizer(group, a).level
        over = C.t_closure_over(group, t_level, a)
        assert over == C.t_closure(group, a)


def test_t_closure_over_rejects_non_ideals():
    a = C.normalize(Z2, Cut(2, (F(0), F(1)), CLOSED))
    with pytest.raises(C.DomainMismatchError):
        C.t_closure_over(Z2, 1, a)


# === serialization and adapters ===


def test_cut_json_round_trip(group, rng):
    for _ in range(20):
        a = random_cut(rng, group)
        assert C.cut_from_json(C.cut_to_json(a)) == a


def test_cut_from_json_diagnostics():
    with pytest.raises(C.MalformedCutError):
        C.cut_from_json({"level": 1, "boundary": ["x"], "side": "closed"})
    with pytest.raises(C.MalformedCutError):
        C.cut_from_json({"level": 1, "boundary": ["0"], "side": "ajar"})
    with pytest.raises(C.MalformedCutError):
        C.cut_from_json({"boundary": ["0"], "side": "open"})


def test_format_cut():
    assert C.format_cut(Cut(2, (F(1), F(-1, 2)), OPEN)) == "<2; (1, -1/2); open>"


def test_valuation_class_model_adapter(rng):
    model = C.ValuationClassModel(DY)
    x = model.class_of(Cut(1, (F(1, 3),), OPEN))
    y = model.class_of(Cut(1, (F(2, 3),), OPEN))
    prod = model.mul(x, y)
    assert prod == model.class_of(Cut(1, (F(0),), OPEN))
    assert model.is_idempotent_class(prod)
    assert model.idempotent_of(x) == prod
    assert "open" in model.describe(x)
