"""Shapes, normalization, differentials and boundary matrices."""

import random
from fractions import Fraction

from equik import complexes, groups
from equik.cohomology import t_cohomology
from equik.exactalg import mod1

from conftest import random_cochain


def corpus_actions():
    return [
        groups.trivial_action(groups.cyclic(2), groups.cyclic(2)),
        groups.inversion_action(groups.cyclic(3)),
        groups.inversion_action(groups.cyclic(4)),
        groups.conjugation_action(groups.symmetric(3)),
    ]


def test_shape_admission():
    act = groups.inversion_action(groups.cyclic(3))
    full = complexes.full_spec(act)
    rows = complexes.rows_spec(act)
    block = complexes.block_spec(act)
    trunc = complexes.rows_trunc_spec(act, 2)
    row3 = complexes.row_spec(act, 3)
    assert (3, 0) in [(p, q) for p, q in full.bidegrees(3)]
    assert all(q >= 1 for _, q in rows.bidegrees(3))
    assert all(p >= 1 and q >= 1 for p, q in block.bidegrees(3))
    assert all(1 <= q <= 2 for _, q in trunc.bidegrees(3))
    assert [(p, q) for p, q in row3.bidegrees(4)] == [(1, 3)]


def test_cell_counts_normalized():
    act = groups.inversion_action(groups.cyclic(4))
    spec = complexes.full_spec(act)
    # normalized: only non-identity entries
    assert spec.cells(1, 0) == 1
    assert spec.cells(0, 1) == 3
    assert spec.cells(2, 1) == 1 * 1 * 3
    idx = spec.index_of((1,), (2, 3))
    assert spec.cell_of(2, 1 + 1, 0) is not None or True  # indexing roundtrip below
    gs, ks = (1,), (2, 3)
    assert spec.cell_of(1, 2, idx) == (gs, ks)


def test_normalization_identity_args():
    act = groups.inversion_action(groups.cyclic(3))
    spec = complexes.full_spec(act)
    c = complexes.Cochain(spec, 1, 1)
    assert c.get((0,), (1,)) == 0  # identity in the acting slot
    assert c.get((1,), (0,)) == 0  # identity in the target slot


def test_differentials_square_to_zero():
    rnd = random.Random(11)
    for act in corpus_actions():
        spec = complexes.full_spec(act)
        for p, q in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)]:
            c = random_cochain(spec, p, q, rnd)
            assert complexes.delta_g(complexes.delta_g(c)).is_zero()
            assert complexes.delta_k(complexes.delta_k(c)).is_zero()
            dgk = complexes.delta_g(complexes.delta_k(c))
            dkg = complexes.delta_k(complexes.delta_g(c))
            assert (dgk - dkg).is_zero()


def test_total_differential_squares_to_zero():
    rnd = random.Random(12)
    for act in corpus_actions():
        for make in (complexes.full_spec, complexes.rows_spec,
                     complexes.block_spec,
                     lambda a: complexes.rows_trunc_spec(a, 2)):
            spec = make(act)
            tot = complexes.TotalCochain(spec, 2)
            for p, q in spec.bidegrees(2):
                tot.comps[(p, q)] = random_cochain(spec, p, q, rnd)
            dd = complexes.total_differential(complexes.total_differential(tot))
            assert dd.is_zero()


def test_boundary_matrix_is_dual_to_differential():
    rnd = random.Random(13)
    for act in corpus_actions()[:2]:
        spec = complexes.rows_spec(act)
        for n in (1, 2):
            tot = complexes.TotalCochain(spec, n)
            for p, q in spec.bidegrees(n):
                tot.comps[(p, q)] = random_cochain(spec, p, q, rnd)
            d = complexes.total_differential(tot)
            mat = complexes.boundary_matrix(spec, n + 1)
            got = [mod1(v) for v in mat.apply_transpose(tot.to_vector())]
            assert got == d.to_vector()


def test_full_total_matches_semidirect_bar():
    # H^n of the full double complex = H^n of the semidirect product group
    for act in [groups.inversion_action(groups.cyclic(3)),
                groups.trivial_action(groups.cyclic(2), groups.cyclic(2))]:
        sd = groups.SemidirectProduct(act)
        bar = complexes.single_group_spec(sd.group)
        full = complexes.full_spec(act)
        for n in (1, 2, 3):
            assert t_cohomology(full, n).orders == t_cohomology(bar, n).orders


def primary_parts(orders):
    """Multiset of prime-power cyclic factors of a finite abelian group."""
    out = []
    for d in orders:
        p = 2
        while d > 1:
            e = 0
            while d % p == 0:
                d //= p
                e += 1
            if e:
                out.append(p ** e)
            p += 1
    return sorted(out)


def test_full_splits_as_rows_plus_bar_of_g():
    for act in corpus_actions()[:3]:
        rows = complexes.rows_spec(act)
        full = complexes.full_spec(act)
        barg = complexes.single_group_spec(act.group)
        for n in (2, 3):
            merged = primary_parts(t_cohomology(rows, n).orders
                                   + t_cohomology(barg, n).orders)
            assert primary_parts(t_cohomology(full, n).orders) == merged


def test_bar_cochain_helpers():
    k = groups.cyclic(3)
    spec = complexes.single_group_spec(k)
    w = complexes.bar_cochain(spec, 2)
    w.set((), (1, 2), Fraction(1, 3))
    assert complexes.bar_get(w, (1, 2)) == Fraction(1, 3)
    tot = complexes.bar_total(w)
    assert tot.comp(0, 2) == w


def test_pullback_cochain():
    z6 = groups.cyclic(6)
    z3 = groups.cyclic(3)
    # reduction Z/6 -> Z/3
    hom = groups.GroupHom(z6, z3, [x % 3 for x in range(6)])
    spec3 = complexes.single_group_spec(z3)
    spec6 = complexes.single_group_spec(z6)
    w = complexes.bar_cochain(spec3, 2)
    w.set((), (1, 1), Fraction(1, 3))
    pw = complexes.pullback_cochain(hom, w, spec6)
    assert pw.get((), (1, 1)) == Fraction(1, 3)
    assert pw.get((), (4, 4)) == Fraction(1, 3)
