"""Multiplicative structures on the two-row truncation of the double complex.

For an action of G on K, degree-3 classes of the rows complex (q >= 1) are
triples (alpha, beta, theta); dropping theta lands in the two-row truncation.
A truncated class [alpha + beta] is called multiplicative when the class of
the K-differential of beta vanishes in the equivariant degree-one cohomology
of triples, which is exactly the condition for a theta to exist one row up.

This module computes:

* ``MultiplicativeStructures``: the subgroup of multiplicative classes inside
  H^3 of the truncation, with generators and representative cochains;
* ``TruncationMap``: the induced map from H^3 of the rows complex, with its
  kernel and cokernel;
* ``invariant_image``: the image of H^3 of the G-invariant K complex inside
  H^3 of the rows complex (for comparison with the kernel);
* ``ClassModuli``: degree-3 classes of the rows complex up to the action of
  the equivariant automorphisms of K;
* lifting of a (2,1) cocycle to a (1,2) partner and onwards to a (0,3) third
  component, i.e. the step-by-step obstruction theory;
* ``MultiplicativeH1``: degree-one classes whose K-differential class
  vanishes.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iter_product

from .config import LIMITS
from .errors import ResourceLimitError, VerificationError
from .exactalg import mod1, solve_mod1
from . import complexes
from . import groups
from .cohomology import (EquivariantH1, InvariantComplex, cokernel_of_hom,
                         delta_g_matrix, express_in_subgroup, kernel_of_hom,
                         subgroup_generated, t_cohomology, tuple_point_action)


class MultiplicativeStructures:
    """The group of multiplicative classes for an action of G on K."""

    def __init__(self, action):
        self.action = action
        self.trunc = complexes.rows_trunc_spec(action, 2)
        self.ambient = t_cohomology(self.trunc, 3, want_reps=True)
        if any(d == 0 for d in self.ambient.orders):
            raise VerificationError("truncated degree-3 cohomology is infinite")
        points, apply_fn = tuple_point_action(action, 3)
        self.obstruction_target = EquivariantH1(action, points, apply_fn)
        self._images = [self._obstruction_coords(rep)
                        for rep in self.ambient.reps]
        self.orders, self._gen_vectors = kernel_of_hom(
            self.ambient.orders, self._images, self.obstruction_target.orders)
        self.gen_coords = [tuple(v[i] % d for i, d in enumerate(self.ambient.orders))
                           for v in self._gen_vectors]

    def _obstruction_coords(self, tot):
        beta = tot.comp(1, 2)
        dkb = complexes.delta_k(beta)

        def evaluate(g, point):
            return dkb.get((g,), point)

        return self.obstruction_target.coords_of(evaluate)

    def obstruction_class(self, tot):
        """Obstruction coordinates of a truncated degree-3 cocycle."""
        return self._obstruction_coords(tot)

    def is_multiplicative(self, tot):
        return all(c == 0 for c in self.obstruction_class(tot))

    def class_of(self, tot):
        """Coordinates (over the multiplicative generators) of a cocycle.

        The cocycle must be multiplicative; raises otherwise.
        """
        c = self.ambient.class_of(tot)
        y = express_in_subgroup(c, [list(g) for g in self.gen_coords],
                                self.orders, self.ambient.orders)
        if y is None:
            raise VerificationError("class is not multiplicative")
        return y

    def representative(self, j):
        """A representative truncated cocycle of the j-th generator."""
        out = complexes.TotalCochain(self.trunc, 3)
        for i, c in enumerate(self._gen_vectors[j]):
            if c % self.ambient.orders[i]:
                rep = self.ambient.reps[i]
                for pq in rep.comps:
                    scaled = rep.comps[pq].scaled(c)
                    out.comps[pq] = (out.comps[pq] + scaled
                                     if pq in out.comps else scaled)
        return out

    @property
    def group_order(self):
        n = 1
        for d in self.orders:
            n *= d
        return n


def triple_to_truncation(ms, alpha, beta):
    """Wrap the (2,1) and (1,2) components as a truncated total cochain."""
    return complexes.TotalCochain(ms.trunc, 3, {(2, 1): alpha, (1, 2): beta})


class TruncationMap:
    """The map from H^3 of the rows complex into the multiplicative classes.

    A rows-complex class (alpha, beta, theta) forgets theta; the result is
    automatically multiplicative because theta bounds the obstruction.
    """

    def __init__(self, action, ms=None):
        self.action = action
        self.rows = complexes.rows_spec(action)
        self.source = t_cohomology(self.rows, 3, want_reps=True)
        self.ms = ms if ms is not None else MultiplicativeStructures(action)
        self.images = []
        for rep in self.source.reps:
            tot = triple_to_truncation(self.ms, rep.comp(2, 1), rep.comp(1, 2))
            self.images.append(self.ms.class_of(tot))
        self.kernel_orders, self.kernel_vectors = kernel_of_hom(
            self.source.orders, self.images, self.ms.orders)
        self.cokernel_orders = cokernel_of_hom(self.images, self.ms.orders)

    def apply(self, coords):
        """Image of a source class given by coordinates."""
        out = [0] * len(self.ms.orders)
        for c, img in zip(coords, self.images):
            for i, v in enumerate(img):
                out[i] = (out[i] + c * v) % self.ms.orders[i]
        return tuple(out)


def invariant_image(action):
    """Invariant factors of the image of the G-invariant classes.

    Degree-3 classes of the complex of G-invariant cochains on K include into
    the rows complex as pure (0,3) cocycles; this returns the invariant
    factors of the resulting subgroup of H^3 of the rows complex.
    """
    inv = InvariantComplex(action)
    orders, _, _ = inv.cohomology(3, want_reps=True)
    rows = complexes.rows_spec(action)
    h3 = t_cohomology(rows, 3)
    gens = []
    for j, d in enumerate(orders):
        assert d != 0
        coch = inv.rep_bar_cochain(3, j, rows)
        tot = complexes.TotalCochain(rows, 3, {(0, 3): coch})
        gens.append(list(h3.class_of(tot)))
    return subgroup_generated(gens, h3.orders)


def invariant_cohomology_orders(action, n):
    """Invariant factors of H^n of the G-invariant K cochain complex."""
    orders, _, _ = InvariantComplex(action).cohomology(n)
    assert all(d != 0 for d in orders)
    return sorted(orders)


# -- moduli under equivariant automorphisms --------------------------------

def pullback_total(tot, aut):
    """Pull a total cochain back along an equivariant automorphism of K."""
    out = complexes.TotalCochain(tot.spec, tot.degree)
    for (p, q), c in tot.comps.items():
        nc = complexes.Cochain(tot.spec, p, q)
        for idx, (gs, ks) in tot.spec.iter_cells(p, q):
            nc.values[idx] = c.get(gs, tuple(aut(k) for k in ks))
        out.comps[(p, q)] = nc
    return out


class ClassModuli:
    """Degree-3 rows-complex classes modulo equivariant automorphisms."""

    def __init__(self, action):
        self.action = action
        self.rows = complexes.rows_spec(action)
        self.pres = t_cohomology(self.rows, 3, want_reps=True)
        total = 1
        for d in self.pres.orders:
            assert d != 0
            total *= d
        if total > LIMITS.max_class_enumeration:
            raise ResourceLimitError(
                "cannot enumerate %d classes (ceiling %d)"
                % (total, LIMITS.max_class_enumeration))
        self.automorphisms = groups.equivariant_automorphisms(action)
        self.maps = []
        for aut in self.automorphisms:
            imgs = [self.pres.class_of(pullback_total(rep, aut))
                    for rep in self.pres.reps]
            self.maps.append(imgs)
        self.action_is_trivial = all(
            imgs == [tuple(1 if i == j else 0 for i in range(len(self.pres.orders)))
                     for j in range(len(self.pres.orders))]
            for imgs in self.maps)
        self.orbits = self._orbits()

    def _apply(self, imgs, x):
        out = [0] * len(self.pres.orders)
        for c, img in zip(x, imgs):
            for i, v in enumerate(img):
                out[i] = (out[i] + c * v) % self.pres.orders[i]
        return tuple(out)

    def _orbits(self):
        all_classes = list(iter_product(*[range(d) for d in self.pres.orders]))
        seen = set()
        orbits = []
        for x in all_classes:
            if x in seen:
                continue
            orbit = {x}
            frontier = [x]
            while frontier:
                y = frontier.pop()
                for imgs in self.maps:
                    z = self._apply(imgs, y)
                    if z not in orbit:
                        orbit.add(z)
                        frontier.append(z)
            orbits.append(sorted(orbit))
            seen |= orbit
        return orbits

    @property
    def count(self):
        return len(self.orbits)


# -- step-by-step lifting ---------------------------------------------------

def lift_second_component(spec, alpha):
    """A (1,2) cochain beta with dG(beta) = -dK(alpha), or None.

    Solvability is the first obstruction for extending a (2,1) cocycle to a
    degree-3 cocycle of the rows complex.
    """
    mat = delta_g_matrix(spec, 1, 2)
    target = [mod1(-v) for v in complexes.delta_k(alpha).values]
    x = solve_mod1(mat, target)
    if x is None:
        return None
    return complexes.Cochain(spec, 1, 2, x)


def lift_third_component(spec, beta):
    """A (0,3) cochain theta with dG(theta) = dK(beta), or None.

    Solvability is the second obstruction; its failure is measured by the
    obstruction class of ``MultiplicativeStructures``.
    """
    mat = delta_g_matrix(spec, 0, 3)
    target = complexes.delta_k(beta).values
    x = solve_mod1(mat, target)
    if x is None:
        return None
    return complexes.Cochain(spec, 0, 3, x)


def third_obstruction_class(action, theta):
    """Class of dK(theta) in H^4 of the invariant complex.

    Defined for a G-invariant theta (dG(theta) = 0); this is the last
    obstruction to correcting a lifted triple into an honest cocycle.
    """
    spec = complexes.rows_spec(action)
    if not complexes.delta_g(theta).is_zero():
        raise VerificationError("third component is not G-invariant")
    dkt = complexes.delta_k(theta)
    inv = InvariantComplex(action)
    return inv.class_of(4, lambda ks: dkt.get((), ks))


def bar_three_cocycle(k, coords):
    """A bar 3-cocycle on K with the given class coordinates in H^3(K).

    Returns the cochain and the presentation its coordinates refer to.
    """
    sp = complexes.single_group_spec(k)
    pres = t_cohomology(sp, 3, want_reps=True)
    if len(coords) != len(pres.orders):
        raise VerificationError("expected %d coordinates" % len(pres.orders))
    out = complexes.Cochain(sp, 0, 3)
    for c, rep in zip(coords, pres.reps):
        if c:
            out = out + rep.comp(0, 3).scaled(c)
    return out, pres


def dpr_multiplicative_class(action, w, ms=None):
    """The multiplicative class of the closed-form triple of a 3-cocycle.

    ``action`` must be the conjugation action of K on itself; ``w`` is a bar
    3-cocycle on K.  Returns (ms, class coordinates).
    """
    from . import shuffle
    if ms is None:
        ms = MultiplicativeStructures(action)
    alpha, beta, _ = shuffle.dpr_cocycle(w, complexes.rows_spec(action))
    return ms, ms.class_of(triple_to_truncation(ms, alpha, beta))


# -- multiplicative degree-one classes -------------------------------------

class MultiplicativeH1:
    """Degree-one equivariant classes with vanishing K-differential class."""

    def __init__(self, action):
        self.action = action
        points1, apply1 = tuple_point_action(action, 1)
        points2, apply2 = tuple_point_action(action, 2)
        # points of the 1-tuple action are 1-tuples; flatten for readability
        self.ambient = EquivariantH1(action, points1, apply1)
        self.target = EquivariantH1(action, points2, apply2)
        k = action.target
        images = []
        for j in range(len(self.ambient.orders)):
            values = self.ambient.rep_values(j)

            def evaluate(g, point, values=values):
                x, y = point
                xy = k.mul[x][y]
                v = Fraction(0)
                v += values.get((g, (y,)), Fraction(0))
                if xy != k.identity:
                    v -= values.get((g, (xy,)), Fraction(0))
                v += values.get((g, (x,)), Fraction(0))
                return v

            images.append(self.target.coords_of(evaluate))
        self.orders, self.gen_vectors = kernel_of_hom(
            self.ambient.orders, images, self.target.orders)
