"""Cohomology engine against an independent dense oracle and known values."""

import random
from itertools import product as iter_product
from math import gcd

import sympy
from sympy.matrices.normalforms import smith_normal_form

from equik import complexes, groups
from equik.cohomology import (EquivariantH1, InvariantComplex,
                              cohomologous, cokernel_of_hom, delta_preimage,
                              dual_group_presentation,
                              express_in_subgroup, is_coboundary, is_cocycle,
                              kernel_of_hom, subgroup_generated, t_cohomology,
                              tuple_point_action)

from conftest import random_cochain


# -- dense non-normalized bar oracle ----------------------------------------

def bar_homology_torsion(g, n):
    """Torsion invariant factors of degree-n homology of the full
    (non-normalized) bar complex of a finite group, via sympy's SNF.

    For a finite group this equals the invariant factors of the degree-n
    circle-valued cohomology.
    """
    order = g.order
    mat = sympy.zeros(order ** n, order ** (n + 1))
    for j, tup in enumerate(iter_product(range(order), repeat=n + 1)):
        faces = [tup[1:]]
        for i in range(1, n + 1):
            faces.append(tup[:i - 1] + (g.mul[tup[i - 1]][tup[i]],) + tup[i + 1:])
        faces.append(tup[:-1])
        col = {}
        for s, face in enumerate(faces):
            key = 0
            for x in face:
                key = key * order + x
            col[key] = col.get(key, 0) + (-1) ** s
        for i, v in col.items():
            mat[i, j] += v
    d = smith_normal_form(mat)
    out = [abs(d[i, i]) for i in range(min(mat.shape)) if abs(d[i, i]) > 1]
    return sorted(out)


def test_bar_cohomology_matches_dense_oracle():
    for g in (groups.cyclic(2), groups.cyclic(3),
              groups.direct_product(groups.cyclic(2), groups.cyclic(2))):
        spec = complexes.single_group_spec(g)
        for n in (1, 2, 3):
            ours = sorted(t_cohomology(spec, n).orders)
            assert ours == bar_homology_torsion(g, n), (g.name, n)


def test_known_group_cohomology():
    for n in range(2, 9):
        spec = complexes.single_group_spec(groups.cyclic(n))
        assert t_cohomology(spec, 1).orders == [n]
        assert t_cohomology(spec, 2).orders == []
        assert t_cohomology(spec, 3).orders == [n]
    s3 = complexes.single_group_spec(groups.symmetric(3))
    assert t_cohomology(s3, 1).orders == [2]
    assert t_cohomology(s3, 2).orders == []
    assert t_cohomology(s3, 3).orders == [6]
    q8 = complexes.single_group_spec(groups.quaternion8())
    assert t_cohomology(q8, 3).orders == [8]


def test_total_complex_values():
    # degree-3 classes of the rows complex for dihedral-type actions
    for n, want in [(3, [3]), (4, [2, 4]), (5, [5]), (6, [2, 6])]:
        act = groups.inversion_action(groups.cyclic(n))
        rows = complexes.rows_spec(act)
        assert sorted(t_cohomology(rows, 3).orders) == want


def test_class_of_and_representatives():
    act = groups.inversion_action(groups.cyclic(4))
    spec = complexes.rows_spec(act)
    pres = t_cohomology(spec, 3, want_reps=True)
    for j, rep in enumerate(pres.reps):
        assert is_cocycle(rep)
        coords = pres.class_of(rep)
        assert list(coords) == [1 if i == j else 0
                                for i in range(len(pres.orders))]
        scaled = complexes.TotalCochain(spec, 3)
        for pq, c in rep.comps.items():
            scaled.comps[pq] = c.scaled(pres.orders[j])
        assert is_coboundary(scaled)


def test_coboundaries_and_preimages(rnd):
    act = groups.inversion_action(groups.cyclic(3))
    spec = complexes.rows_spec(act)
    for _ in range(5):
        tot = complexes.TotalCochain(spec, 2)
        for p, q in spec.bidegrees(2):
            tot.comps[(p, q)] = random_cochain(spec, p, q, rnd)
        d = complexes.total_differential(tot)
        assert is_cocycle(d)
        assert is_coboundary(d)
        pre = delta_preimage(d)
        assert (complexes.total_differential(pre) - d).is_zero()
        assert cohomologous(d, complexes.total_differential(pre))


def test_dual_group_presentation():
    for n in (2, 3, 4, 6):
        orders, _, _ = dual_group_presentation(groups.cyclic(n))
        assert orders == [n]
    v4 = groups.direct_product(groups.cyclic(2), groups.cyclic(2))
    orders, _, _ = dual_group_presentation(v4)
    assert sorted(orders) == [2, 2]
    orders, _, _ = dual_group_presentation(groups.symmetric(3))
    assert orders == [2]


def test_equivariant_h1_matches_stabilizer_duals():
    # degree-one equivariant classes decompose over orbits as duals of the
    # stabilizer abelianizations
    for k in (groups.symmetric(3), groups.quaternion8()):
        act = groups.conjugation_action(k)
        points = list(range(k.order))
        eq = EquivariantH1(act, points, act.apply)
        expected = []
        for orbit in groups.orbits(act, points, act.apply):
            stab = groups.stabilizer(act, orbit[0], act.apply)
            sub, _ = k.subgroup(set(stab))
            orders, _, _ = dual_group_presentation(sub)
            expected.extend(orders)
        total_ours = 1
        for d in eq.orders:
            total_ours *= d
        total_want = 1
        for d in expected:
            total_want *= d
        assert total_ours == total_want


def test_equivariant_h1_free_orbit():
    # a free orbit (trivial stabilizer) contributes nothing in degree one
    act = groups.inversion_action(groups.cyclic(3))
    eq = EquivariantH1(act, [1, 2], act.apply)
    assert eq.orders == []
    # fixed points contribute the full dual of the acting group
    eqfix = EquivariantH1(act, [0], act.apply)
    assert eqfix.orders == [2]


def test_invariant_complex_trivial_action_is_bar():
    for k in (groups.cyclic(4), groups.symmetric(3)):
        act = groups.trivial_action(groups.cyclic(2), k)
        inv = InvariantComplex(act)
        spec = complexes.single_group_spec(k)
        for n in (1, 2, 3):
            orders, _, _ = inv.cohomology(n)
            assert sorted(orders) == sorted(t_cohomology(spec, n).orders)


def test_finite_abelian_hom_machinery():
    rnd = random.Random(7)
    for _ in range(60):
        kd = rnd.randint(1, 3)
        md = rnd.randint(1, 3)
        dom = [rnd.choice([2, 2, 3, 4, 6]) for _ in range(kd)]
        cod = [rnd.choice([2, 2, 3, 4, 6]) for _ in range(md)]
        imgs = []
        for j in range(kd):
            img = tuple(rnd.randrange(cod[i]) * (cod[i] // gcd(cod[i], dom[j]))
                        % cod[i] for i in range(md))
            imgs.append(img)

        def image_of(x):
            return tuple(sum(x[j] * imgs[j][i] for j in range(kd)) % cod[i]
                         for i in range(md))

        ker_elems = [x for x in iter_product(*[range(d) for d in dom])
                     if all(v == 0 for v in image_of(x))]
        ko, _ = kernel_of_hom(dom, imgs, cod)
        size = 1
        for d in ko:
            size *= d
        assert size == len(ker_elems)

        img_elems = {image_of(x)
                     for x in iter_product(*[range(d) for d in dom])}
        co = cokernel_of_hom(imgs, cod)
        size = 1
        for d in co:
            size *= d
        total = 1
        for d in cod:
            total *= d
        assert size == total // len(img_elems)

        sg = subgroup_generated([list(i) for i in imgs], cod)
        size = 1
        for d in sg:
            size *= d
        assert size == len(img_elems)

        # membership: every image is expressible, and the expression works
        for x in list(iter_product(*[range(d) for d in dom]))[:5]:
            y = image_of(x)
            coeffs = express_in_subgroup(y, [list(i) for i in imgs],
                                         dom, cod)
            assert coeffs is not None
            rebuilt = tuple(
                sum(coeffs[j] * imgs[j][i] for j in range(kd)) % cod[i]
                for i in range(md))
            assert rebuilt == y
