"""Twisted bundles, fusion rings and the coquasi-bialgebra axioms.

The untwisted conjugation rings are compared against an independent
character-theoretic oracle: for abelian G the ring is the group ring of
G x (characters of G); for S3 the simple characters over pairs (class,
centralizer irrep) are written down explicitly and the structure constants
computed by character orthogonality.
"""

import cmath
from fractions import Fraction

import numpy as np
import pytest

from equik import complexes, fusion, groups, shuffle, structures
from equik.errors import NumericalError, VerificationError


def dpr_triple(k, coords):
    w, _ = structures.bar_three_cocycle(k, coords)
    act = groups.conjugation_action(k)
    return act, shuffle.dpr_cocycle(w, complexes.rows_spec(act))


# -- projective representations ---------------------------------------------

def test_projective_irreps_trivial_cocycle():
    for g, dims in [(groups.cyclic(3), [1, 1, 1]),
                    (groups.cyclic(4), [1, 1, 1, 1]),
                    (groups.symmetric(3), [1, 1, 2]),
                    (groups.quaternion8(), [1, 1, 1, 1, 2])]:
        irr = fusion.projective_irreps(g, lambda s, t: Fraction(0))
        assert sorted(m[0].shape[0] for m in irr) == sorted(dims)


def test_projective_irreps_nontrivial_cocycle():
    v4 = groups.direct_product(groups.cyclic(2), groups.cyclic(2))

    def c(s, t):
        a1, b1 = divmod(s, 2)
        a2, b2 = divmod(t, 2)
        return Fraction(a2 * b1, 2)

    irr = fusion.projective_irreps(v4, c)
    assert len(irr) == 1 and irr[0][0].shape[0] == 2
    # the representation satisfies the twisted multiplication rule
    rho = irr[0]
    for s in range(4):
        for t in range(4):
            lhs = rho[s] @ rho[t]
            rhs = fusion.phase(c(s, t)) * rho[v4.mul[s][t]]
            assert np.abs(lhs - rhs).max() < 1e-9


# -- simple objects ----------------------------------------------------------

def test_irreducible_objects_counts():
    z2 = groups.cyclic(2)
    assert len(fusion.irreducible_objects(groups.trivial_action(z2, z2))) == 4
    q8 = groups.quaternion8()
    objs = fusion.irreducible_objects(groups.conjugation_action(q8))
    assert len(objs) == 22
    s3 = groups.symmetric(3)
    objs = fusion.irreducible_objects(groups.conjugation_action(s3))
    assert sorted(o.dim for o in objs) == [1, 1, 2, 2, 2, 2, 3, 3]


def test_bundles_satisfy_twisted_relations():
    act, (alpha, beta, theta) = dpr_triple(groups.cyclic(4), [1])
    objs = fusion.irreducible_objects(act, alpha)
    # construction already verifies; re-check one bundle explicitly
    v = objs[-1]
    g_all = act.group.elements()
    for k in v.support():
        for g in g_all:
            for h in g_all:
                lhs = v.block(g, act.apply(h, k)) @ v.block(h, k)
                rhs = fusion.phase(alpha.get((g, h), (k,))) \
                    * v.block(act.group.mul[g][h], k)
                assert np.abs(lhs - rhs).max() < 1e-8


def test_hom_dimension_schur():
    act = groups.conjugation_action(groups.symmetric(3))
    objs = fusion.irreducible_objects(act)
    for i, x in enumerate(objs):
        for j, y in enumerate(objs):
            assert fusion.hom_dimension(x, y) == (1 if i == j else 0)


def test_tensor_object_grading():
    act = groups.conjugation_action(groups.cyclic(3))
    objs = fusion.irreducible_objects(act)
    t = fusion.tensor_object(objs[1], objs[2])
    assert t.dim == objs[1].dim * objs[2].dim


# -- fusion rings against the character oracle -------------------------------

def abelian_double_ring(n):
    """Group ring of Z/n x dual(Z/n) as a structure-constant table."""
    r = n * n
    labels = [(k, m) for k in range(n) for m in range(n)]
    pos = {lab: i for i, lab in enumerate(labels)}
    table = [[[0] * r for _ in range(r)] for _ in range(r)]
    for i, (k1, m1) in enumerate(labels):
        for j, (k2, m2) in enumerate(labels):
            table[i][j][pos[((k1 + k2) % n, (m1 + m2) % n)]] = 1
    return fusion.FusionRing(labels, [1] * r, table, pos[(0, 0)])


def s3_double_ring():
    """The untwisted double of S3 via explicit simple characters."""
    g = groups.symmetric(3)
    n = g.order
    e = g.identity
    conj = lambda a, x: g.mul[g.mul[a][x]][g.inverse[a]]
    transpositions = [x for x in g.elements() if g.element_order(x) == 2]
    threecycles = [x for x in g.elements() if g.element_order(x) == 3]
    x2 = transpositions[0]
    x3 = threecycles[0]
    trans2 = {y: next(a for a in g.elements() if conj(a, x2) == y)
              for y in transpositions}
    trans3 = {y: next(a for a in g.elements() if conj(a, x3) == y)
              for y in threecycles}

    def s3_char(name, x):
        if name == "triv":
            return 1
        if name == "sign":
            return -1 if g.element_order(x) == 2 else 1
        # the 2-dimensional character
        o = g.element_order(x)
        return {1: 2, 2: 0, 3: -1}[o]

    def chi(label):
        kind = label[0]
        if kind == "e":
            return lambda a, k: s3_char(label[1], a) if k == e else 0
        if kind == "t":
            m = label[1]

            def f(a, k):
                if k not in transpositions or conj(a, k) != k:
                    return 0
                s = g.mul[g.inverse[trans2[k]]][g.mul[a][trans2[k]]]
                return 1 if s == e else (-1) ** m
            return f
        m = label[1]

        def f(a, k):
            if k not in threecycles or conj(a, k) != k:
                return 0
            s = g.mul[g.inverse[trans3[k]]][g.mul[a][trans3[k]]]
            j = 0 if s == e else (1 if s == x3 else 2)
            return cmath.exp(2j * cmath.pi * m * j / 3)
        return f

    labels = ([("e", nm) for nm in ("triv", "sign", "two")]
              + [("t", m) for m in range(2)]
              + [("c", m) for m in range(3)])
    chars = [chi(lab) for lab in labels]
    dims = [1, 1, 2, 3, 3, 2, 2, 2]
    r = len(labels)
    table = [[[0] * r for _ in range(r)] for _ in range(r)]
    for i in range(r):
        for j in range(r):
            for l in range(r):
                acc = 0j
                for a in g.elements():
                    for k1 in g.elements():
                        for k2 in g.elements():
                            v1 = chars[i](a, k1)
                            if not v1:
                                continue
                            v2 = chars[j](a, k2)
                            if not v2:
                                continue
                            v3 = chars[l](a, g.mul[k1][k2])
                            if v3:
                                acc += v1 * v2 * v3.conjugate() \
                                    if isinstance(v3, complex) \
                                    else v1 * v2 * v3
                acc /= n
                assert abs(acc.imag) < 1e-9
                assert abs(acc.real - round(acc.real)) < 1e-9
                table[i][j][l] = int(round(acc.real))
    return fusion.FusionRing(labels, dims, table, 0)


def test_untwisted_rings_match_character_oracle():
    for n in (2, 3, 4):
        act = groups.conjugation_action(groups.cyclic(n))
        ring = fusion.fusion_ring(act)
        oracle = abelian_double_ring(n)
        assert fusion.based_ring_isomorphic(ring, oracle) is not None
    act = groups.conjugation_action(groups.symmetric(3))
    ring = fusion.fusion_ring(act)
    oracle = s3_double_ring()
    assert sorted(ring.dims) == sorted(oracle.dims)
    assert fusion.based_ring_isomorphic(ring, oracle) is not None


def test_twisted_rings_pass_invariants():
    # FusionRing.verify runs at construction; reaching here means unit,
    # dimension and associativity checks all passed
    for n in (2, 3, 4):
        act, triple = dpr_triple(groups.cyclic(n), [1])
        ring = fusion.fusion_ring(act, triple)
        assert ring.rank == n * n
    act, triple = dpr_triple(groups.symmetric(3), [1])
    ring = fusion.fusion_ring(act, triple)
    assert ring.rank == 8
    assert sorted(ring.dims) == [1, 1, 2, 2, 2, 2, 3, 3]


def test_trivial_twist_group_ring():
    z2 = groups.cyclic(2)
    ring = fusion.fusion_ring(groups.trivial_action(z2, z2))
    assert ring.rank == 4 and ring.dims == [1, 1, 1, 1]
    # every basis element is invertible with multiplicative order <= 2
    for i in range(4):
        assert ring.n[i][i][ring.unit] == 1


def test_based_ring_isomorphic_examples():
    z4ring = abelian_double_ring(2)
    assert fusion.based_ring_isomorphic(z4ring, z4ring) is not None

    def group_ring(g):
        r = g.order
        table = [[[0] * r for _ in range(r)] for _ in range(r)]
        for i in range(r):
            for j in range(r):
                table[i][j][g.mul[i][j]] = 1
        return fusion.FusionRing(list(range(r)), [1] * r, table, g.identity)

    z4 = group_ring(groups.cyclic(4))
    v4 = group_ring(groups.direct_product(groups.cyclic(2), groups.cyclic(2)))
    assert fusion.based_ring_isomorphic(z4, v4) is None


def test_fusion_ring_bad_table_rejected():
    with pytest.raises(VerificationError):
        fusion.FusionRing([0, 1], [1, 1],
                          [[[1, 0], [0, 1]], [[0, 1], [1, 1]]], 0)


# -- coquasi-bialgebra --------------------------------------------------------

def test_coquasi_axioms_hold():
    act, triple = dpr_triple(groups.cyclic(2), [1])
    h = fusion.coquasi_bialgebra(act, triple)
    # all G-parts trivial: the associator is the theta phase
    v = h.associator(h.index(0, 1), h.index(0, 1), h.index(0, 1))
    assert abs(v + 1) < 1e-12
    rep = fusion.verify_coquasi_axioms(h)
    assert rep["max_residual"] < 1e-9


def test_coquasi_trivial_theta_is_bialgebra():
    z2 = groups.cyclic(2)
    h = fusion.CoquasiBialgebra(groups.trivial_action(z2, z2),
                                None, None, None)
    rep = fusion.verify_coquasi_axioms(h)
    assert rep["max_residual"] == 0.0


def test_coquasi_detects_broken_cocycle():
    act, (alpha, beta, theta) = dpr_triple(groups.cyclic(4), [1])
    bad = theta.copy()
    bad.values[0] = fusion.mod1(bad.values[0] + Fraction(1, 3))
    h = fusion.CoquasiBialgebra(act, alpha, beta, bad)
    rep = fusion.verify_coquasi_axioms(h)
    assert rep["q3"]["residual"] > 1e-3
    assert rep["q3"]["at"] is not None
