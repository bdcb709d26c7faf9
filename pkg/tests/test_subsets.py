import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from gyrokit.core import coadd
from gyrokit.cosets import enumerate_subgyrogroups
from gyrokit.errors import IndexOutOfRange, NotASubgyrogroup, ParentMismatch, PreconditionUnmet
from gyrokit.setcheck import (
    InclusionVerdict,
    check_coaddition_chain,
    check_coset_inversion,
    check_neutrality,
    check_product_chain,
    check_reassociation,
    scan_all,
    scan_coset_inversion,
)
from gyrokit.subsets import (
    GyroSubset,
    gyr_closure,
    gyr_image,
    is_gyr_invariant,
    members,
    parse_subset,
    singleton,
    subset_add,
    subset_neg,
    symmetric_gyr_closure,
)
from gyrokit.tables import load_fixture

GYRO8 = load_fixture("gyro8")
masks8 = st.integers(0, 255)


def S(G, *xs):
    return GyroSubset.of(G, xs)


def orbit_invariant(G, A):
    """Oracle: apply every gyr[x,y] to every member, straight from the table."""
    T = G.table
    inv = G.inverse
    A = set(A)
    for x in range(G.n):
        for y in range(G.n):
            img = {int(T[inv[T[x, y]], T[x, T[y, z]]]) for z in A}
            if img != A:
                return False
    return True


# -- arithmetic ---------------------------------------------------------------


def test_add_examples(z4, any_fixture):
    G = any_fixture
    B = GyroSubset.whole(G)
    assert subset_add(singleton(G, G.identity), B) == B
    assert subset_add(B, S(G)).elements == []
    assert (S(z4, 1, 2) + S(z4, 1)).elements == [2, 3]
    assert subset_neg(S(z4, 0)).elements == [0]
    assert (-S(z4, 1, 2)).elements == [2, 3]


def test_parent_mismatch(z4, klein):
    with pytest.raises(ParentMismatch):
        S(z4, 1) + S(klein, 1)
    with pytest.raises(IndexOutOfRange):
        S(z4, 4)
    with pytest.raises(IndexOutOfRange):
        parse_subset("0,9", 4)
    assert parse_subset(" 0, 2 ", 4) == 0b101
    assert str(S(z4, 2, 0)) == "{0,2}"


def test_negation_is_involution(any_fixture, rng):
    G = any_fixture
    for m in rng.integers(0, 1 << G.n, size=100):
        A = GyroSubset(int(m), G)
        assert -(-A) == A


@given(masks8, masks8)
def test_size_bound_and_singletons(a, b):
    A, B = GyroSubset(a, GYRO8), GyroSubset(b, GYRO8)
    assert len(A + B) <= len(A) * len(B)
    for x in A:
        for y in B:
            assert (singleton(GYRO8, x) + singleton(GYRO8, y)).elements == [int(GYRO8.add(x, y))]


@given(masks8, masks8, masks8)
def test_monotonicity(a, extra, b):
    A, A2, B = GyroSubset(a, GYRO8), GyroSubset(a | extra, GYRO8), GyroSubset(b, GYRO8)
    assert (A + B) <= (A2 + B)
    assert (B + A) <= (B + A2)


@given(masks8, masks8)
def test_subset_gyrosum_inversion(a, b):
    G = GYRO8
    A, B = GyroSubset(a, G), GyroSubset(b, G)
    expected = set()
    for x in A:
        for y in B:
            expected.add(int(G.gyr(x, y, G.add(G.neg(y), G.neg(x)))))
    assert set((-(A + B)).elements) == expected


def test_gyr_invariance_examples(any_fixture, group_fixture):
    G = any_fixture
    assert is_gyr_invariant(GyroSubset.whole(G))[0]
    assert is_gyr_invariant(singleton(G, G.identity))[0]
    H = group_fixture
    for m in range(1 << H.n):
        assert is_gyr_invariant(GyroSubset(m, H)) == (True, None)


def test_gyr_invariance_matches_orbit_oracle(any_fixture):
    G = any_fixture
    for m in range(1 << G.n):
        ok, w = is_gyr_invariant(GyroSubset(m, G))
        assert ok == orbit_invariant(G, members(m))
        if not ok:
            x, y, z = w
            assert z in members(m) and int(G.gyr(x, y, z)) not in members(m)
            assert gyr_image(GyroSubset(m, G), x, y) != GyroSubset(m, G)


@given(masks8)
def test_closures(m):
    c = gyr_closure(GYRO8, m)
    assert m & ~c == 0 and is_gyr_invariant(GyroSubset(c, GYRO8))[0]
    s = symmetric_gyr_closure(GYRO8, m)
    assert (-GyroSubset(s, GYRO8)).bits == s and c & ~s == 0


# -- inclusion checks ---------------------------------------------------------


def test_verdict_invariant():
    with pytest.raises(ValueError):
        InclusionVerdict(True, 3)
    with pytest.raises(ValueError):
        InclusionVerdict(False)


def test_reassociation_examples(z4, any_fixture):
    G = any_fixture
    zero = singleton(G, G.identity)
    for w in range(0, 1 << G.n, 3):
        for u in range(0, 1 << G.n, 5):
            assert check_reassociation(GyroSubset(w, G), GyroSubset(u, G), zero).holds
    assert check_reassociation(S(z4, 1), S(z4, 2, 3), S(z4, 1, 3)).holds


def test_reassociation_precondition(gyro8):
    bad = next(m for m in range(256) if not is_gyr_invariant(GyroSubset(m, gyro8))[0])
    with pytest.raises(PreconditionUnmet):
        check_reassociation(S(gyro8, 1), S(gyro8, 2), GyroSubset(bad, gyro8))
    check_reassociation(S(gyro8, 1), S(gyro8, 2), GyroSubset(bad, gyro8), force=True)


def test_reassociation_can_fail_without_invariance(gyro8):
    # forced diagnostic runs expose the role of the hypothesis
    failures = []
    for v in range(256):
        if is_gyr_invariant(GyroSubset(v, gyro8))[0]:
            continue
        for w in range(8):
            for u in range(8):
                r = check_reassociation(S(gyro8, w), S(gyro8, u), GyroSubset(v, gyro8), force=True)
                if not r.holds:
                    failures.append(r)
    assert failures
    assert all(f.witness is not None for f in failures)


@settings(max_examples=200)
@given(masks8, masks8, masks8)
def test_reassociation_sampled_on_gyro8(w, u, v):
    G = GYRO8
    V = GyroSubset(gyr_closure(G, v), G)
    assert check_reassociation(GyroSubset(w, G), GyroSubset(u, G), V).holds


def test_coset_inversion_examples(z4):
    H = S(z4, 0, 2)
    W, v = check_coset_inversion(H, S(z4, 0, 1), S(z4, 0, 1, 3))
    assert v.holds
    # H⊕V is all of Z4 here, so the largest admissible W is the carrier
    for exhaustive in (False, True):
        W, v = check_coset_inversion(H, S(z4, 0, 1), exhaustive=exhaustive)
        assert v.holds and W == GyroSubset.whole(z4)
    W, v = check_coset_inversion(H, S(z4, 0))
    assert v.holds and W == H
    W, v = check_coset_inversion(H, S(z4, 0), S(z4, 0))
    assert v.holds
    W, v = check_coset_inversion(H, S(z4, 0), S(z4, 0, 1))
    assert not v.holds
    lhs = -(W + H)
    assert v.witness in lhs and v.witness not in (H + S(z4, 0))


def test_coset_inversion_preconditions(z4, gyro8):
    with pytest.raises(PreconditionUnmet):
        check_coset_inversion(S(z4, 0, 2), S(z4, 1))
    with pytest.raises(PreconditionUnmet):
        check_coset_inversion(S(z4, 0, 1), S(z4, 0))
    with pytest.raises(PreconditionUnmet):
        check_coset_inversion(S(gyro8, 0, 2), S(gyro8, 0))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([i.bits for i in enumerate_subgyrogroups(GYRO8) if i.is_L]), masks8)
def test_coset_inversion_search_on_gyro8(h, v):
    G = GYRO8
    V = GyroSubset(v | 1, G)
    W, verdict = check_coset_inversion(GyroSubset(h, G), V)
    assert verdict.holds
    assert 0 in W and (-W) == W and is_gyr_invariant(W)[0]
    assert set((-(W + GyroSubset(h, G))).elements) <= set((GyroSubset(h, G) + V).elements)


def test_neutrality_examples(z4, any_fixture):
    G = any_fixture
    for info in enumerate_subgyrogroups(G):
        H = GyroSubset(info.bits, G)
        V, inner, outer = check_neutrality(H, singleton(G, G.identity), singleton(G, G.identity))
        assert inner.holds and outer.holds
    H, U = S(z4, 0, 2), S(z4, 0, 1)
    assert (H + U) == (U + H)
    V, inner, outer = check_neutrality(H, U)
    assert inner.holds and outer.holds and U <= V
    V, inner, outer = check_neutrality(H, U, S(z4, 0, 1, 3))
    assert inner.holds and outer.holds
    with pytest.raises(PreconditionUnmet):
        check_neutrality(H, S(z4, 1))
    with pytest.raises(NotASubgyrogroup):
        check_neutrality(S(z4, 0, 1), U)


def test_neutrality_diagnostic_witnesses(gyro8):
    H, U = S(gyro8, 0, 2), S(gyro8, 0)
    V, inner, outer = check_neutrality(H, U, GyroSubset.whole(gyro8))
    assert not inner.holds and not outer.holds
    assert inner.witness in (H + V) and inner.witness not in (U + H)
    assert outer.witness in (V + H) and outer.witness not in (H + U)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([i.bits for i in enumerate_subgyrogroups(GYRO8)]), masks8)
def test_neutrality_greedy_result_is_valid(h, u):
    G = GYRO8
    H, U = GyroSubset(h, G), GyroSubset(u | 1, G)
    V, inner, outer = check_neutrality(H, U)
    assert inner.holds and outer.holds and 0 in V
    assert (H + V) <= (U + H) and (V + H) <= (H + U)


def test_product_chain_examples(z4):
    zero = S(z4, 0)
    H = S(z4, 0, 2)
    v = check_product_chain(zero, zero, H)
    assert v.holds and len(v.steps) == 4
    assert check_product_chain(S(z4, 0, 1), S(z4, 0, 1, 3), H).holds
    # W need not lie inside U; H⊕W ⊆ U⊕H is the only link between them
    assert check_product_chain(S(z4, 0, 1, 2), S(z4, 0, 1), H).holds
    with pytest.raises(PreconditionUnmet) as err:
        check_product_chain(S(z4, 0, 1), S(z4, 0), S(z4, 0))
    assert "H⊕W ⊆ U⊕H" in err.value.hypothesis


def test_product_chain_precondition_names(gyro8):
    with pytest.raises(PreconditionUnmet) as err:
        check_product_chain(S(gyro8, 0), S(gyro8, 0), S(gyro8, 0, 7))
    assert "strong" in err.value.hypothesis and err.value.witness is not None
    with pytest.raises(PreconditionUnmet) as err:
        check_product_chain(S(gyro8, 0), S(gyro8, 0), S(gyro8, 0, 1, 3))
    assert "subgyrogroup" in err.value.hypothesis


def test_coaddition_chain_examples(z4, klein):
    for G in (z4, klein):
        for info in enumerate_subgyrogroups(G):
            H = GyroSubset(info.bits, G)
            for g in range(G.n):
                v = check_coaddition_chain(S(G, 0), S(G, 0, 1), S(G, 0, 1, 2), H, g) if G is z4 else None
                if v is not None:
                    assert v.holds and len(v.steps) == 8
    with pytest.raises(PreconditionUnmet) as err:
        check_coaddition_chain(S(z4, 0), S(z4, 0, 1), S(z4, 0, 1), S(z4, 0), 0)
    assert "U⊕U ⊆ V" in err.value.hypothesis
    with pytest.raises(PreconditionUnmet):
        check_coaddition_chain(S(z4, 0), S(z4, 0), S(z4, 0), S(z4, 0), 9)


@settings(max_examples=150, deadline=None)
@given(
    st.sampled_from([i.bits for i in enumerate_subgyrogroups(GYRO8) if i.is_strong]),
    masks8,
    masks8,
    masks8,
    st.integers(0, 7),
)
def test_chains_sampled_on_gyro8(h, w, u, v, g):
    G = GYRO8
    W = GyroSubset(gyr_closure(G, w | 1), G)
    U = GyroSubset(gyr_closure(G, u | 1), G)
    H = GyroSubset(h, G)
    assume((H + W) <= (U + H))
    assert check_product_chain(W, U, H).holds
    V = GyroSubset((U + U).bits | v, G)
    verdict = check_coaddition_chain(W, U, V, H, g)
    assert verdict.holds
    # elementwise recomputation of the starred left side
    guh = (singleton(G, g) + U) + H
    left = {int(coadd(G, a, b)) for a in guh for b in W}
    assert left <= set(((singleton(G, g) + V) + H).elements)


def test_exhaustive_scans_small_fixtures(fixtures):
    for name in ("trivial", "z4", "klein4"):
        for res in scan_all(fixtures[name]):
            assert res.holds, (name, res.name, res.violations[:3])
            assert res.instances > 0


def test_scan_limit(gyro8):
    from gyrokit.errors import ResourceLimit

    with pytest.raises(ResourceLimit):
        scan_coset_inversion(gyro8)
