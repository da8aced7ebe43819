import math

import numpy as np
import pytest

from wreathcover.formulas import alpha
from wreathcover.perm import Perm
from wreathcover.wreath import (
    AutomorphismError,
    DiagonalDescriptor,
    ProductTypeDescriptor,
    SocleMaximal,
    WreathContext,
    WreathElement,
    construct_product_cover,
    coset_representatives,
    cumulative_membership_check,
    diagonal_contains,
    inner_automorphism,
    normalizes_product_subgroup,
    product_subgroup_perm_keys,
    product_type_contains,
    product_type_mask,
    socle_maximals,
    verify_wreath_cover,
)


@pytest.fixture(scope="module")
def ctx2(a5):
    return WreathContext(a5.table, 2)


@pytest.fixture(scope="module")
def ctx3(a5):
    return WreathContext(a5.table, 3)


def random_descriptors(cg, m, count, rng):
    out = []
    labels = sorted(cg.classes_by_label())
    for _ in range(count):
        cls = cg.classes_by_label()[labels[int(rng.integers(0, len(labels)))]]
        M = cls.conjugates[int(rng.integers(0, cls.class_size))]
        cosets = tuple(int(rng.integers(0, cg.table.order)) for _ in range(m - 1))
        out.append(ProductTypeDescriptor.create(M, cosets))
    return out


def test_identity_and_inverse(ctx2):
    e = ctx2.identity()
    rng = np.random.default_rng(0)
    for _ in range(50):
        w = ctx2.random_element(rng)
        assert ctx2.mul(e, w) == w
        assert ctx2.mul(w, e) == w
        assert ctx2.mul(w, ctx2.inv(w)) == e
        assert ctx2.mul(ctx2.inv(w), w) == e


def test_realization_is_homomorphism(ctx2, ctx3):
    rng = np.random.default_rng(1)
    for ctx in (ctx2, ctx3):
        for _ in range(150):
            a, b = ctx.random_element(rng), ctx.random_element(rng)
            assert ctx.to_perm(ctx.mul(a, b)) == ctx.to_perm(a) * ctx.to_perm(b)


def test_square_of_shifted_element(ctx2, a5):
    # ((s, 1); shift 1)^2 accumulates the base product into each slot
    s = a5.table.id_of(Perm.from_cycles("(1 2 3 4 5)", 5))
    w = ctx2.element([s, 0], 1)
    sq = ctx2.mul(w, w)
    assert sq.shift == 0
    assert sq.base == (s, s)
    # and matches the 10-point permutation arithmetic
    assert ctx2.to_perm(sq) == ctx2.to_perm(w) * ctx2.to_perm(w)


def test_membership_trivialities(ctx2, a5):
    rng = np.random.default_rng(2)
    descs = random_descriptors(a5, 2, 5, rng)
    e = ctx2.identity()
    for d in descs:
        assert product_type_contains(ctx2, e, d)
        assert cumulative_membership_check(ctx2, e, d, 1)


def test_oracle_equivalence_sample_m2(ctx2, a5):
    rng = np.random.default_rng(3)
    descs = random_descriptors(a5, 2, 6, rng)
    for d in descs:
        keys = product_subgroup_perm_keys(ctx2, d)
        for _ in range(250):
            w = ctx2.random_element(rng)
            assert product_type_contains(ctx2, w, d) == normalizes_product_subgroup(
                ctx2, w, keys
            )


def test_oracle_equivalence_sample_m3(ctx3, a5):
    rng = np.random.default_rng(4)
    descs = random_descriptors(a5, 3, 4, rng)
    for d in descs:
        keys = product_subgroup_perm_keys(ctx3, d)
        for _ in range(120):
            w = ctx3.random_element(rng)
            assert product_type_contains(ctx3, w, d) == normalizes_product_subgroup(
                ctx3, w, keys
            )


def test_membership_count_matches_coset_structure(ctx2, a5):
    # each shift layer of the normalizer has exactly |M|^m elements
    rng = np.random.default_rng(5)
    (d,) = random_descriptors(a5, 2, 1, rng)
    grid = ctx2.base_grid()
    for shift in (0, 1):
        assert int(product_type_mask(ctx2, d, grid, shift).sum()) == d.M.size**2


def test_mask_agrees_with_scalar_membership(ctx2, a5):
    rng = np.random.default_rng(6)
    (d,) = random_descriptors(a5, 2, 1, rng)
    grid = ctx2.base_grid()
    for shift in (0, 1):
        mask = product_type_mask(ctx2, d, grid, shift)
        idx = rng.integers(0, grid.shape[0], size=200)
        for i in idx.tolist():
            w = WreathElement(tuple(int(x) for x in grid[i]), shift)
            assert bool(mask[i]) == product_type_contains(ctx2, w, d)


def test_cumulative_implied_by_membership(ctx3, a5):
    rng = np.random.default_rng(7)
    descs = random_descriptors(a5, 3, 3, rng)
    hits = 0
    for d in descs:
        grid = ctx3.base_grid()
        for shift in (1, 2):
            mask = product_type_mask(ctx3, d, grid, shift)
            for i in np.flatnonzero(mask)[:50].tolist():
                w = WreathElement(tuple(int(x) for x in grid[i]), shift)
                hits += 1
                for t in (1, 2, 3):
                    assert cumulative_membership_check(ctx3, w, d, t)
    assert hits > 0


def test_descriptor_canonicalization(ctx2, a5):
    g = a5.table
    cls = a5.classes_by_label()["A4"]
    M = cls.representative
    g2 = 17
    coset = g.mul_right(M.member_ids, g2)
    d1 = ProductTypeDescriptor.create(M, (g2,))
    d2 = ProductTypeDescriptor.create(M, (int(coset[3]),))
    assert d1 == d2 and hash(d1) == hash(d2)
    # different cosets give distinguishable subgroups
    other = next(
        x for x in range(g.order) if x not in set(coset.tolist())
    )
    d3 = ProductTypeDescriptor.create(M, (other,))
    assert d1 != d3
    grid = ctx2.base_grid()
    diff = product_type_mask(ctx2, d1, grid, 1) != product_type_mask(ctx2, d3, grid, 1)
    assert bool(diff.any())


def test_socle_maximals():
    assert socle_maximals(1) == []
    assert [s.r for s in socle_maximals(12)] == [2, 3]
    assert [s.r for s in socle_maximals(30)] == [2, 3, 5]
    s2 = SocleMaximal(2)
    assert s2.contains(WreathElement((0, 0, 0, 0), 2))
    assert not s2.contains(WreathElement((0, 0, 0, 0), 1))


def test_diagonal_descriptor(a5):
    S = a5.table
    ident = np.arange(S.order, dtype=np.int64)
    d = DiagonalDescriptor.create(S, 2, 1, [[ident]])
    assert d.size() == S.order
    assert d.size_bound() == S.order
    ctx = WreathContext(S, 2)
    rng = np.random.default_rng(8)
    for _ in range(100):
        y = int(rng.integers(0, S.order))
        assert diagonal_contains(ctx, WreathElement((y, y), 0), d)
        z = int(rng.integers(0, S.order))
        if z != y:
            assert not diagonal_contains(ctx, WreathElement((y, z), 0), d)
    assert not diagonal_contains(ctx, WreathElement((0, 0), 1), d)


def test_diagonal_with_inner_twist(a5):
    S = a5.table
    s = 23
    phi = inner_automorphism(S, s)
    d = DiagonalDescriptor.create(S, 2, 1, [[phi]])
    ctx = WreathContext(S, 2)
    for y in range(S.order):
        w = WreathElement((y, int(phi[y])), 0)
        assert diagonal_contains(ctx, w, d)
        assert w.base[1] == S.conj(y, s)


def test_diagonal_size_bound_with_equality(a5):
    S = a5.table
    ident = np.arange(S.order, dtype=np.int64)
    d = DiagonalDescriptor.create(S, 4, 2, [[ident], [ident]])
    assert d.size() == S.order**2
    assert d.size() == d.size_bound()  # m=4, l=2: |S|^(m/l) met with equality


def test_diagonal_rejects_non_automorphism(a5):
    S = a5.table
    bad = np.arange(S.order, dtype=np.int64)
    bad[1], bad[2] = bad[2], bad[1]
    with pytest.raises(AutomorphismError):
        DiagonalDescriptor.create(S, 2, 1, [[bad]])
    with pytest.raises(AutomorphismError):
        DiagonalDescriptor.create(S, 2, 1, [[np.zeros(S.order, dtype=np.int64)]])


def test_coset_representatives(a5):
    M = a5.classes_by_label()["D10"].representative
    reps = coset_representatives(M)
    assert len(reps) == 6
    assert reps[0] == 0
    seen = set()
    for r in reps:
        coset = frozenset(a5.table.mul_right(M.member_ids, r).tolist())
        assert coset not in seen
        seen.add(coset)


def test_construct_cover_m1_returns_family(a5):
    cover = [cls.representative for cls in a5.maximal_classes]
    # A4 + D10 + S3 representatives do not cover A5; pick the full classes
    cover = [h for cls in a5.maximal_classes for h in cls.conjugates]
    descs, socle = construct_product_cover(a5.table, cover, 1)
    assert len(descs) == len(cover) and socle == []


def test_construct_cover_counts_and_verify(a5, ctx2):
    cover = [h for cls in a5.maximal_classes for h in cls.conjugates]
    descs, socle = construct_product_cover(a5.table, cover, 2)
    assert len(descs) == sum(h.index for h in cover)
    assert len(socle) == alpha(2) == 1
    ok, witness = verify_wreath_cover(ctx2, descs, socle)
    assert ok and witness is None


def test_verify_cover_finds_witness(a5, ctx2):
    # a MINIMAL cover has no redundancy, so dropping any member uncovers
    from wreathcover.cover import build_instance, sigma_exact

    inst = build_instance(a5.table, a5.maximal_classes)
    cert = sigma_exact(inst)
    by_label = dict(zip(inst.labels, inst.handles))
    cover = [by_label[lab] for lab in cert.chosen]
    descs, socle = construct_product_cover(a5.table, cover, 2)
    ok, witness = verify_wreath_cover(ctx2, descs[1:], socle)
    assert not ok and witness is not None
    assert not any(product_type_contains(ctx2, witness, d) for d in descs[1:])
    assert product_type_contains(ctx2, witness, descs[0])


def test_non_covering_family_rejected(a5):
    from wreathcover.wreath import CoverInputError

    with pytest.raises(CoverInputError):
        construct_product_cover(a5.table, [a5.maximal_classes[0].representative], 2)


def test_thread_count_does_not_change_result(a5, ctx2):
    cover = [h for cls in a5.maximal_classes for h in cls.conjugates]
    descs, socle = construct_product_cover(a5.table, cover, 2)
    r1 = verify_wreath_cover(ctx2, descs, socle, threads=1)
    r4 = verify_wreath_cover(ctx2, descs, socle, threads=4)
    assert r1 == r4
