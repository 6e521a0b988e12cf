"""Circle-valued cohomology of the complexes, with explicit generators.

Everything reduces to integer chain homology: because Q/Z is injective and the
chain groups are finitely generated, H^n of the Q/Z-valued cochain complex is
the Q/Z-dual of H_n of the integer chain complex.  One Smith normal form of
the boundary matrix out of degree n+1, with left transform L and its inverse,
yields everything at once:

* invariant factors: the diagonal entries d > 1 (plus free factors, reported
  as 0, from comparing ranks);
* generator cycles: the corresponding columns of L^-1 (automatically cycles,
  since d times such a column is a boundary and the chain groups are
  torsion-free);
* dual cocycle representatives: the corresponding rows of L divided by d.

A class is read off by pairing: the i-th coordinate of [f] is d_i * f(z_i)
mod d_i, an integer because d_i z_i is a boundary.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import VerificationError
from .exactalg import (IntMatrix, column_hnf, dot_fraction, kernel_basis,
                       mod1, row_hnf, snf, solve_integer, solve_mod1)
from . import complexes
from . import groups


class Presentation:
    """H^n of a complex spec: invariant factors with generator data.

    ``orders[i]`` is the order of the i-th generator (0 means a Q/Z factor,
    which does not occur for the group-cohomology degrees this package
    targets).  ``cycles[i]`` is a sparse integer chain (dict: cell -> coeff)
    pairing against cocycles; ``reps[i]`` is a total cochain representing the
    i-th generator when representatives were requested.
    """

    def __init__(self, spec, degree, orders, cycles, reps=None):
        self.spec = spec
        self.degree = degree
        self.orders = orders
        self.cycles = cycles
        self.reps = reps

    @property
    def group_order(self):
        n = 1
        for d in self.orders:
            assert d != 0
            n *= d
        return n

    def class_of(self, tot):
        """Coordinates of the class of a total cocycle, one per generator."""
        vec = tot.to_vector()
        out = []
        for d, cyc in zip(self.orders, self.cycles):
            if d == 0:
                raise VerificationError("free factor has no integer coordinate")
            s = d * dot_fraction(cyc, vec)
            if s.denominator != 1:
                raise VerificationError(
                    "pairing is not integral; argument is not a cocycle")
            out.append(int(s) % d)
        return tuple(out)


def boundary(spec, n):
    key = ("boundary", n)
    if key not in spec.cache:
        spec.cache[key] = complexes.boundary_matrix(spec, n)
    return spec.cache[key]


def t_cohomology(spec, n, want_reps=False):
    """H^n of the total complex of ``spec`` with Q/Z coefficients."""
    key = ("H", n)
    have = spec.cache.get(key)
    if have is not None and (have.reps is not None or not want_reps):
        return have
    assert n >= 1
    d_n = boundary(spec, n)
    d_np1 = boundary(spec, n + 1)
    s = snf(d_np1, want_left=want_reps, want_left_inv=True)
    nullity = d_n.ncols - _rank(spec, n)
    free = nullity - s.rank
    assert free >= 0
    orders, cycles, reps = [], [], ([] if want_reps else None)
    for i, d in enumerate(s.diag):
        if d in (0, 1):
            continue
        orders.append(d)
        cycles.append(s.left_inv.column(i))
        if want_reps:
            row = s.left.rows[i]
            vec = [Fraction(0)] * d_n.ncols
            for j, v in row.items():
                vec[j] = mod1(Fraction(v, d))
            reps.append(complexes.TotalCochain.from_vector(spec, n, vec))
    orders.extend([0] * free)
    cycles.extend([None] * free)
    pres = Presentation(spec, n, orders, cycles, reps)
    spec.cache[key] = pres
    return pres


def _rank(spec, n):
    key = ("rank", n)
    if key not in spec.cache:
        _, _, pivots = row_hnf(boundary(spec, n))
        spec.cache[key] = len(pivots)
    return spec.cache[key]


def _kernel(spec, n):
    key = ("kernel", n)
    if key not in spec.cache:
        spec.cache[key] = kernel_basis(boundary(spec, n))
    return spec.cache[key]


def is_cocycle(tot):
    return complexes.total_differential(tot).is_zero()


def is_coboundary(tot):
    """True iff the total cocycle is a total differential.

    A Q/Z-valued cocycle is a coboundary iff it vanishes on the kernel of the
    boundary matrix in its degree (Q/Z is injective).
    """
    vec = tot.to_vector()
    for cyc in _kernel(tot.spec, tot.degree):
        if mod1(dot_fraction(cyc, vec)) != 0:
            return False
    return True


def cohomologous(a, b):
    return is_coboundary(a - b)


def delta_preimage(tot):
    """A total cochain g with (total differential g) == tot, or None."""
    spec = tot.spec
    n = tot.degree
    mat = boundary(spec, n).transpose()
    x = solve_mod1(mat, tot.to_vector())
    if x is None:
        return None
    return complexes.TotalCochain.from_vector(spec, n - 1, x)


def delta_g_matrix(spec, p, q):
    """Matrix of the G differential from bidegree (p, q) to (p+1, q).

    Rows index (p+1, q) cells, columns (p, q) cells; the shape is ignored.
    """
    key = ("dg", p, q)
    if key in spec.cache:
        return spec.cache[key]
    rows = spec.cells(p + 1, q)
    cols = spec.cells(p, q)
    mat = IntMatrix(rows, cols)
    act = spec.action
    m = p + 1
    for idx, (gs, ks) in spec.iter_cells(m, q):
        faces = [(gs[1:], ks, 1)]
        for i in range(1, m):
            merged = gs[:i - 1] + (spec.G.mul[gs[i - 1]][gs[i]],) + gs[i + 1:]
            faces.append((merged, ks, (-1) ** i))
        faces.append((gs[:-1], act.apply_tuple(gs[-1], ks), (-1) ** m))
        for fgs, fks, sign in faces:
            if spec.is_degenerate(fgs, fks):
                continue
            mat.add_entry(idx, spec.index_of(fgs, fks), sign)
    spec.cache[key] = mat
    return mat


# -- duals of finite groups ------------------------------------------------

def dual_group_presentation(h):
    """Hom(h, Q/Z) with generators, via the abelianization of h.

    Returns (orders, combos, rep_homs): ``combos[i]`` is a dict element ->
    integer coefficient such that a homomorphism f has i-th coordinate
    orders[i] * sum(c * f(x)); ``rep_homs[i]`` lists the values of the dual
    generator on every element of h.
    """
    n = h.order
    rel = IntMatrix(n, n * n)
    for a in range(n):
        for b in range(n):
            j = a * n + b
            rel.add_entry(a, j, 1)
            rel.add_entry(b, j, 1)
            rel.add_entry(h.mul[a][b], j, -1)
    s = snf(rel, want_left=True, want_left_inv=True)
    assert s.rank == n  # the abelianization of a finite group is finite
    orders, combos, rep_homs = [], [], []
    for i, d in enumerate(s.diag):
        if d in (0, 1):
            continue
        orders.append(d)
        combos.append(s.left_inv.column(i))
        rep_homs.append([mod1(Fraction(s.left.rows[i].get(x, 0), d))
                         for x in range(n)])
    for f in rep_homs:  # sanity: the representatives are homomorphisms
        assert all(mod1(f[h.mul[a][b]] - f[a] - f[b]) == 0
                   for a in range(n) for b in range(n))
    return orders, combos, rep_homs


# -- equivariant degree-one cohomology -------------------------------------

class EquivariantH1:
    """H^1 of a G-set with circle coefficients, orbit by orbit.

    The class of a 1-cocycle f(g, x) restricts on each orbit representative
    to a homomorphism of its stabilizer, and the sum of these restrictions is
    a complete invariant; a representative cocycle is rebuilt from a
    stabilizer homomorphism through a transversal.
    """

    def __init__(self, action, points, apply_fn):
        self.action = action
        self.apply_fn = apply_fn
        self.orbit_data = []
        self.orders = []
        g = action.group
        for orbit in groups.orbits(action, points, apply_fn):
            rep = orbit[0]
            trans = groups.transversal(action, orbit, rep, apply_fn)
            stab_elems = groups.stabilizer(action, rep, apply_fn)
            sub, embed = g.subgroup(set(stab_elems))
            sub_orders, combos, rep_homs = dual_group_presentation(sub)
            pos = {x: i for i, x in enumerate(embed)}
            self.orbit_data.append({
                "orbit": orbit, "rep": rep, "transversal": trans,
                "embed": embed, "pos": pos, "sub_orders": sub_orders,
                "combos": combos, "rep_homs": rep_homs})
            self.orders.extend(sub_orders)

    def coords_of(self, evaluate):
        """Coordinates of [f] for f given as evaluate(g, point) -> Fraction."""
        out = []
        for od in self.orbit_data:
            for d, combo in zip(od["sub_orders"], od["combos"]):
                s = Fraction(0)
                for i, c in combo.items():
                    s += c * Fraction(evaluate(od["embed"][i], od["rep"]))
                s = d * mod1(s)
                if s.denominator != 1:
                    raise VerificationError("restriction is not a character")
                out.append(int(s) % d)
        return tuple(out)

    def is_trivial_class(self, evaluate):
        return all(c == 0 for c in self.coords_of(evaluate))

    def rep_values(self, index):
        """Values (g, point) -> Fraction of a cocycle for generator ``index``.

        The cocycle is supported on one orbit and built from the dual
        generator of the stabilizer via the transversal.
        """
        g = self.action.group
        at = 0
        for od in self.orbit_data:
            for i, d in enumerate(od["sub_orders"]):
                if at == index:
                    psi = od["rep_homs"][i]
                    values = {}
                    for y in od["orbit"]:
                        ty = od["transversal"][y]
                        for a in g.elements():
                            z = self.apply_fn(a, y)
                            s = g.mul[g.inverse[od["transversal"][z]]][g.mul[a][ty]]
                            v = psi[od["pos"][s]]
                            if v:
                                values[(a, y)] = v
                    return values
                at += 1
        raise IndexError(index)


def tuple_point_action(action, q):
    """The diagonal action on q-tuples of nonidentity elements of the target.

    Returns (points, apply_fn) for use with EquivariantH1 and orbit helpers.
    """
    from itertools import product
    nonid = action.target.nonidentity()
    points = list(product(nonid, repeat=q))

    def apply_fn(g, xs):
        return action.apply_tuple(g, xs)

    return points, apply_fn


def equivariant_cohomology(action, points, apply_fn, p):
    """H^p_G(X, Q/Z) as the direct sum over orbits of H^p of stabilizers."""
    assert p >= 1
    g = action.group
    orders = []
    for orbit in groups.orbits(action, points, apply_fn):
        stab_elems = groups.stabilizer(action, orbit[0], apply_fn)
        sub, _ = g.subgroup(set(stab_elems))
        if sub.order == 1:
            continue
        pres = t_cohomology(complexes.single_group_spec(sub), p)
        orders.extend(pres.orders)
    return sorted(orders)


# -- the G-invariant subcomplex of the K bar complex -----------------------

class InvariantComplex:
    """The complex of G-invariant normalized cochains on K.

    Its integer model has one chain generator per G-orbit of tuples of
    nonidentity elements of K; the boundary is the image of the bar boundary
    on any orbit representative.
    """

    def __init__(self, action):
        self.action = action
        self.K = action.target
        self.cache = {}

    def orbit_cells(self, q):
        key = ("cells", q)
        if key not in self.cache:
            points, apply_fn = tuple_point_action(self.action, q)
            canon = {}
            reps = []
            for orbit in groups.orbits(self.action, points, apply_fn):
                for t in orbit:
                    canon[t] = orbit[0]
                reps.append(orbit[0])
            reps.sort()
            index = {t: i for i, t in enumerate(reps)}
            self.cache[key] = (reps, index, canon)
        return self.cache[key]

    def boundary(self, q):
        """Boundary matrix from degree q orbit chains to degree q-1."""
        key = ("boundary", q)
        if key in self.cache:
            return self.cache[key]
        reps, _, _ = self.orbit_cells(q)
        lreps, lindex, lcanon = self.orbit_cells(q - 1)
        mat = IntMatrix(len(lreps), len(reps))
        e = self.K.identity
        for col, ks in enumerate(reps):
            faces = [(ks[1:], 1)]
            for j in range(1, q):
                merged = ks[:j - 1] + (self.K.mul[ks[j - 1]][ks[j]],) + ks[j + 1:]
                faces.append((merged, (-1) ** j))
            faces.append((ks[:-1], (-1) ** q))
            for fks, sign in faces:
                if e in fks:
                    continue
                mat.add_entry(lindex[lcanon[fks]], col, sign)
        self.cache[key] = mat
        return mat

    def cohomology(self, n, want_reps=False):
        """H^n of the invariant complex; same presentation scheme as above."""
        key = ("H", n)
        have = self.cache.get(key)
        if have is not None and (have[2] is not None or not want_reps):
            return have
        d_n = self.boundary(n)
        d_np1 = self.boundary(n + 1)
        s = snf(d_np1, want_left=want_reps, want_left_inv=True)
        _, _, piv = row_hnf(d_n)
        free = (d_n.ncols - len(piv)) - s.rank
        assert free >= 0
        orders, cycles, reps = [], [], ([] if want_reps else None)
        for i, d in enumerate(s.diag):
            if d in (0, 1):
                continue
            orders.append(d)
            cycles.append(s.left_inv.column(i))
            if want_reps:
                reps.append({j: mod1(Fraction(v, d))
                             for j, v in s.left.rows[i].items()})
        orders.extend([0] * free)
        cycles.extend([None] * free)
        result = (orders, cycles, reps)
        self.cache[key] = result
        return result

    def class_of(self, n, value_fn):
        """Class coordinates of an invariant cocycle given by tuple values."""
        reps, _, _ = self.orbit_cells(n)
        orders, cycles, _ = self.cohomology(n)
        out = []
        for d, cyc in zip(orders, cycles):
            assert d != 0
            s = Fraction(0)
            for j, c in cyc.items():
                s += c * Fraction(value_fn(reps[j]))
            s = d * mod1(s)
            if s.denominator != 1:
                raise VerificationError("value is not an invariant cocycle")
            out.append(int(s) % d)
        return tuple(out)

    def rep_bar_cochain(self, n, index, spec):
        """Expand generator ``index`` of H^n to a (0, n) cochain on ``spec``."""
        _, oindex, canon = self.orbit_cells(n)
        _, _, hreps = self.cohomology(n, want_reps=True)
        assert hreps is not None
        values = hreps[index]
        out = complexes.Cochain(spec, 0, n)
        for idx, (_, ks) in spec.iter_cells(0, n):
            out.values[idx] = values.get(oindex[canon[ks]], Fraction(0))
        return out


# -- finite abelian group bookkeeping --------------------------------------

def _lattice_quotient(basis_cols, sub_cols, dim):
    """Present L / span(sub) for a full-rank lattice basis in Z^dim.

    ``basis_cols`` and ``sub_cols`` are lists of column dicts; the sublattice
    must be contained in L.  Returns (orders, gens) with gens as dense
    integer vectors in Z^dim.
    """
    B = IntMatrix(dim, len(basis_cols))
    for j, col in enumerate(basis_cols):
        for i, v in col.items():
            B.set_entry(i, j, v)
    sb = snf(B, want_left=True, want_right=True)
    # coordinates of the sublattice in the basis: solve B y = c per column
    ys = []
    for col in sub_cols:
        lb = sb.left.apply([Fraction(col.get(i, 0)) for i in range(dim)])
        y = [Fraction(0)] * B.ncols
        for i in range(B.nrows):
            d = sb.diag[i] if i < len(sb.diag) else 0
            if d:
                q = lb[i] / d
                assert q.denominator == 1
                y[i] = q
            else:
                assert lb[i] == 0, "sublattice not contained in lattice"
        y = sb.right.apply(y)
        ys.append({i: int(v) for i, v in enumerate(y) if v})
    Y = IntMatrix(len(basis_cols), len(sub_cols))
    for j, col in enumerate(ys):
        for i, v in col.items():
            Y.set_entry(i, j, v)
    sy = snf(Y, want_left_inv=True)
    orders, gens = [], []
    for i, d in enumerate(sy.diag):
        if d == 1:
            continue
        assert d != 0, "quotient is infinite"
        orders.append(d)
        coeffs = sy.left_inv.column(i)
        vec = [0] * dim
        for bj, c in coeffs.items():
            for bi, v in basis_cols[bj].items():
                vec[bi] += c * v
        gens.append(vec)
    return orders, gens


def _column_dicts(vectors):
    return [{i: v for i, v in enumerate(vec) if v} for vec in vectors]


def _diag_cols(orders):
    return [{i: d} for i, d in enumerate(orders)]


def kernel_of_hom(dom_orders, images, cod_orders):
    """Kernel of a map of finite abelian groups given on generators.

    ``images[j]`` is the coordinate tuple of the image of the j-th domain
    generator.  Returns (orders, gens) with gens as integer vectors over the
    domain generators.
    """
    k, m = len(dom_orders), len(cod_orders)
    assert all(d > 0 for d in dom_orders) and all(e > 0 for e in cod_orders)
    A = IntMatrix(m, k + m)
    for j, img in enumerate(images):
        for i, c in enumerate(img):
            A.add_entry(i, j, c)
    for i, e in enumerate(cod_orders):
        A.add_entry(i, k + i, e)
    lattice = []
    for col in kernel_basis(A):
        proj = {i: v for i, v in col.items() if i < k}
        lattice.append(proj)
    # basis of the projected lattice
    P = IntMatrix(k, len(lattice))
    for j, col in enumerate(lattice):
        for i, v in col.items():
            P.set_entry(i, j, v)
    H, _, piv = column_hnf(P)
    basis = [H.column(j) for j in range(len(piv))]
    return _lattice_quotient(basis, _diag_cols(dom_orders), k)


def cokernel_of_hom(images, cod_orders):
    """Invariant factors of the cokernel of a map given on generators."""
    k, m = len(images), len(cod_orders)
    A = IntMatrix(m, k + m)
    for j, img in enumerate(images):
        for i, c in enumerate(img):
            A.add_entry(i, j, c)
    for i, e in enumerate(cod_orders):
        A.add_entry(i, k + i, e)
    s = snf(A)
    out = [d for d in s.diag if d > 1]
    assert s.rank == m
    return sorted(out)


def subgroup_generated(gens, cod_orders):
    """Invariant factors of the subgroup of prod Z/e generated by ``gens``."""
    m = len(cod_orders)
    cols = _column_dicts(gens) + _diag_cols(cod_orders)
    P = IntMatrix(m, len(cols))
    for j, col in enumerate(cols):
        for i, v in col.items():
            P.set_entry(i, j, v)
    H, _, piv = column_hnf(P)
    basis = [H.column(j) for j in range(len(piv))]
    orders, _ = _lattice_quotient(basis, _diag_cols(cod_orders), m)
    return sorted(orders)


def express_in_subgroup(coords, gens, gen_orders, cod_orders):
    """Coordinates of an element of prod Z/e in subgroup generator terms.

    Solves sum(y_j gens[j]) == coords modulo the codomain orders; returns the
    tuple (y_j mod gen_orders[j]) or None when the element is outside the
    subgroup.
    """
    m = len(cod_orders)
    k = len(gens)
    A = IntMatrix(m, k + m)
    for j, g in enumerate(gens):
        for i, c in enumerate(g):
            A.add_entry(i, j, c)
    for i, e in enumerate(cod_orders):
        A.add_entry(i, k + i, e)
    x = solve_integer(A, list(coords))
    if x is None:
        return None
    return tuple(x[j] % gen_orders[j] for j in range(k))
