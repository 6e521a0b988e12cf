"""Twisted equivariant vector bundles over a finite group action, their
tensor products and fusion rings, and the associated function-algebra
coquasi-bialgebra.

For an action of G on K and a twisting pair (alpha, beta) coming from a
degree-3 cocycle of the double complex, the simple objects are induced from
projective irreducible representations of orbit stabilizers (the 2-cocycle
on the stabilizer of x is alpha[s|t||x]).  The tensor product convolves the
K-grading and twists the G-action by beta; fusion coefficients are
dimensions of invariant Hom spaces.

Representations are computed over the complex numbers with seeded random
self-adjoint splitting; every integer output is rounded and re-verified
exactly.  The coquasi-bialgebra on functions(G) # K carries the product
(delta_s # x)(delta_s # y) = e(beta[s||x|y]) delta_s # xy, the coproduct
summing over factorizations of the G-index with alpha phases, and an
associator supported on identity G-parts with theta phases; the axiom
checker verifies the unit, multiplicativity and 3-cocycle axioms on all
basis tuples.
"""

from __future__ import annotations

import cmath
from fractions import Fraction

import numpy as np

from .config import LIMITS
from .errors import NumericalError, ResourceLimitError, UsageError, VerificationError
from .exactalg import IntMatrix, mod1, solve_mod1
from . import groups

TOL = 1e-9
INT_TOL = 1e-6


def phase(v):
    """The complex number on the unit circle for an additive circle value."""
    return cmath.exp(2j * cmath.pi * float(v))


# -- projective representations ---------------------------------------------

def projective_irreps(group, cocycle, rng=None, max_retries=8):
    """All irreducible projective representations for a 2-cocycle.

    ``cocycle(s, t)`` returns the additive circle value c(s, t); the returned
    representations satisfy rho(s) rho(t) = e(c(s, t)) rho(st) and are lists
    of unitary matrices indexed by group elements.  Obtained by splitting
    the regular representation of the twisted group algebra with averaged
    random self-adjoint elements.
    """
    if group.order > 16:
        raise ResourceLimitError("projective splitting capped at order 16")
    if rng is None:
        rng = np.random.default_rng(0)
    n = group.order
    L = np.zeros((n, n, n), dtype=complex)
    for s in range(n):
        for t in range(n):
            L[s][group.mul[s][t], t] = phase(cocycle(s, t))
    for s in range(n):  # regular representation sanity
        for t in range(n):
            err = np.abs(L[s] @ L[t] - phase(cocycle(s, t)) * L[group.mul[s][t]]).max()
            if err > TOL:
                raise VerificationError("cocycle identity fails at %r" % ((s, t),))

    def char_norm(mats):
        return sum(abs(np.trace(m)) ** 2 for m in mats) / n

    irreps = []
    stack = [np.eye(n, dtype=complex)]
    while stack:
        basis = stack.pop()
        d = basis.shape[1]
        mats = [basis.conj().T @ L[s] @ basis for s in range(n)]
        if abs(char_norm(mats) - 1.0) < 1e-7:
            irreps.append(mats)
            continue
        for attempt in range(max_retries):
            m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            m = m + m.conj().T
            avg = sum(u @ m @ u.conj().T for u in mats) / n
            vals, vecs = np.linalg.eigh(avg)
            # cluster eigenvalues
            clusters = []
            for i, v in enumerate(vals):
                if clusters and v - clusters[-1][-1][1] < 1e-7:
                    clusters[-1].append((i, v))
                else:
                    clusters.append([(i, v)])
            if len(clusters) > 1:
                for cl in clusters:
                    cols = [i for i, _ in cl]
                    stack.append(basis @ vecs[:, cols])
                break
        else:
            raise NumericalError("random splitting failed to separate a subspace")

    # deduplicate by projective characters (orthonormal across irreps)
    unique = []
    for mats in irreps:
        chi = np.array([np.trace(m) for m in mats])
        fresh = True
        for other in unique:
            ochi = np.array([np.trace(m) for m in other])
            if abs(np.vdot(ochi, chi)) / n > 0.5:
                fresh = False
                break
        if fresh:
            unique.append(mats)
    total = sum(m[0].shape[0] ** 2 for m in unique)
    if total != n:
        raise NumericalError("dimension count %d != |S| = %d" % (total, n))
    unique.sort(key=lambda mats: (mats[0].shape[0], _char_key(mats)))
    return unique


def _char_key(mats):
    return tuple((round(np.trace(m).real, 6), round(np.trace(m).imag, 6))
                 for m in mats)


# -- equivariant bundles -----------------------------------------------------

class EquivariantBundle:
    """A K-graded vector space with an alpha-twisted G-action.

    ``grading[k]`` is the dimension at k; ``block(g, k)`` is the matrix of g
    from the component at k to the component at g(k).  The twisted relations
    block(g, h(k)) block(h, k) = e(alpha[g|h||k]) block(gh, k) hold.
    """

    def __init__(self, action, grading, blocks, alpha=None, check=True):
        self.action = action
        self.grading = list(grading)
        self.blocks = blocks  # dict (g, k) -> ndarray, absent means dim 0
        self.alpha = alpha
        self.dim = sum(self.grading)
        if check:
            self._check()

    def block(self, g, k):
        return self.blocks[(g, k)]

    def support(self):
        return [k for k, d in enumerate(self.grading) if d]

    def _alpha_value(self, g, h, k):
        if self.alpha is None:
            return Fraction(0)
        return self.alpha.get((g, h), (k,))

    def _check(self):
        act = self.action
        g_all = act.group.elements()
        e = act.group.identity
        for k in self.support():
            idblk = self.block(e, k)
            if np.abs(idblk - np.eye(self.grading[k])).max() > TOL:
                raise VerificationError("identity does not act as identity")
            for g in g_all:
                b = self.block(g, k)
                if b.shape != (self.grading[act.apply(g, k)], self.grading[k]):
                    raise VerificationError("block shape mismatch")
        for k in self.support():
            for g in g_all:
                for h in g_all:
                    lhs = self.block(g, act.apply(h, k)) @ self.block(h, k)
                    rhs = phase(self._alpha_value(g, h, k)) * self.block(
                        act.group.mul[g][h], k)
                    if np.abs(lhs - rhs).max() > 1e-7:
                        raise VerificationError(
                            "twisted composition fails at %r" % ((g, h, k),))

    def character(self, g, k):
        """Trace of g on the component at k (zero unless g fixes k)."""
        if self.action.apply(g, k) != k or not self.grading[k]:
            return 0j
        return complex(np.trace(self.block(g, k)))


def _orbit_gamma(action, orbit, trans, sub_pos, embed, alpha, cocycle):
    """Circle-valued correction gamma(g, y) making the induced action
    alpha-twisted: solves gamma(g, hy) + gamma(h, y) - gamma(gh, y) =
    alpha[g|h||y] - c(sigma(g, hy), sigma(h, y))."""
    g_all = action.group.elements()
    gmul = action.group.mul
    ginv = action.group.inverse
    ypos = {y: i for i, y in enumerate(orbit)}
    nvar = len(g_all) * len(orbit)

    def var(g, y):
        return g * len(orbit) + ypos[y]

    def sigma(g, y):
        return sub_pos[gmul[ginv[trans[action.apply(g, y)]]][gmul[g][trans[y]]]]

    rows = []
    rhs = []
    for y in orbit:
        for g in g_all:
            for h in g_all:
                hy = action.apply(h, y)
                row = {}
                for v, c in ((var(g, hy), 1), (var(h, y), 1),
                             (var(gmul[g][h], y), -1)):
                    row[v] = row.get(v, 0) + c
                rows.append(row)
                a = alpha.get((g, h), (y,)) if alpha is not None else Fraction(0)
                rhs.append(mod1(a - cocycle(sigma(g, hy), sigma(h, y))))
    mat = IntMatrix(len(rows), nvar)
    for i, row in enumerate(rows):
        for j, c in row.items():
            if c:
                mat.set_entry(i, j, c)
    x = solve_mod1(mat, rhs)
    if x is None:
        raise VerificationError("induction correction system is unsolvable")
    return {(g, y): x[var(g, y)] for g in g_all for y in orbit}, sigma


def irreducible_objects(action, alpha=None, seed=0):
    """The simple twisted bundles: one per orbit and projective irrep.

    ``alpha`` is a bidegree (2,1) cochain of the action with dG(alpha) = 0
    (None means untwisted).  Ordered by (orbit representative, dimension,
    character fingerprint).
    """
    if alpha is not None:
        from . import complexes
        if not complexes.delta_g(alpha).is_zero():
            raise UsageError("twist is not a cocycle in the G direction")
    k_group = action.target
    g_group = action.group
    rng = np.random.default_rng(seed)
    points = list(range(k_group.order))
    objs = []
    for orbit in groups.orbits(action, points, action.apply):
        x = orbit[0]
        trans = groups.transversal(action, orbit, x, action.apply)
        stab = groups.stabilizer(action, x, action.apply)
        sub, embed = g_group.subgroup(set(stab))
        sub_pos = {g: i for i, g in enumerate(embed)}

        def cocycle(si, ti, x=x, embed=embed):
            if alpha is None:
                return Fraction(0)
            return alpha.get((embed[si], embed[ti]), (x,))

        gamma, sigma = _orbit_gamma(action, orbit, trans, sub_pos, embed,
                                    alpha, cocycle)
        irreps = projective_irreps(sub, cocycle, rng)
        irreps.sort(key=lambda mats: (-mats[0].shape[0], _char_key(mats)))
        for tag, rho in enumerate(irreps):
            d = rho[0].shape[0]
            grading = [0] * k_group.order
            for y in orbit:
                grading[y] = d
            blocks = {}
            for y in orbit:
                for g in g_group.elements():
                    blocks[(g, y)] = phase(gamma[(g, y)]) * rho[sigma(g, y)]
            objs.append(EquivariantBundle(action, grading, blocks, alpha))
            objs[-1].label = (x, tag)
            objs[-1].irrep_dim = d
    return objs


def tensor_object(v, w, beta=None):
    """The tensor bundle: grading convolved over K, action twisted by beta."""
    if v.action is not w.action:
        raise UsageError("bundles live over different actions")
    act = v.action
    kg = act.target
    pairs = [(x, y) for x in v.support() for y in w.support()]
    # offsets of each pair inside the graded component at x*y
    grading = [0] * kg.order
    offset = {}
    for x, y in pairs:
        k = kg.mul[x][y]
        offset[(x, y)] = grading[k]
        grading[k] += v.grading[x] * w.grading[y]
    blocks = {}
    for g in act.group.elements():
        per_k = {}
        for x, y in pairs:
            k = kg.mul[x][y]
            if k not in per_k:
                per_k[k] = np.zeros((grading[act.apply(g, k)], grading[k]),
                                    dtype=complex)
        for x, y in pairs:
            k = kg.mul[x][y]
            gx, gy = act.apply(g, x), act.apply(g, y)
            b = np.kron(v.block(g, x), w.block(g, y))
            if beta is not None:
                b = phase(beta.get((g,), (x, y))) * b
            r0 = offset[(gx, gy)]
            c0 = offset[(x, y)]
            per_k[k][r0:r0 + b.shape[0], c0:c0 + b.shape[1]] = b
        for k, mat in per_k.items():
            blocks[(g, k)] = mat
    out = EquivariantBundle(act, grading, blocks, v.alpha, check=False)
    return out


def hom_dimension(v, w):
    """dim of the invariant Hom space (grading-preserving, G-equivariant).

    Computed as the trace of the averaging projector on grading-preserving
    maps; the alpha phases cancel between the two bundles.
    """
    act = v.action
    total = 0j
    for g in act.group.elements():
        for k in range(act.target.order):
            if act.apply(g, k) != k or not v.grading[k] or not w.grading[k]:
                continue
            total += np.trace(w.block(g, k)) * np.conj(np.trace(v.block(g, k)))
    total /= act.group.order
    if abs(total.imag) > INT_TOL or abs(total.real - round(total.real)) > INT_TOL:
        raise NumericalError("hom dimension %r is not an integer" % total)
    n = int(round(total.real))
    if n < 0:
        raise NumericalError("negative hom dimension")
    return n


# -- fusion rings ------------------------------------------------------------

class FusionRing:
    """Nonnegative-integer structure constants over a distinguished basis."""

    def __init__(self, labels, dims, n_table, unit):
        self.labels = labels
        self.dims = list(dims)
        self.rank = len(labels)
        self.n = n_table  # n[i][j][k]
        self.unit = unit
        self.verify()

    def verify(self):
        r = self.rank
        for i in range(r):
            for j in range(r):
                for k in range(r):
                    if self.n[i][j][k] < 0:
                        raise VerificationError("negative structure constant")
        for j in range(r):
            for k in range(r):
                if self.n[self.unit][j][k] != (1 if j == k else 0):
                    raise VerificationError("unit row fails")
                if self.n[j][self.unit][k] != (1 if j == k else 0):
                    raise VerificationError("unit column fails")
        for i in range(r):
            for j in range(r):
                if sum(self.n[i][j][k] * self.dims[k] for k in range(r)) \
                        != self.dims[i] * self.dims[j]:
                    raise VerificationError("dimension homomorphism fails")
        for i in range(r):
            for j in range(r):
                for k in range(r):
                    for l in range(r):
                        lhs = sum(self.n[i][j][m] * self.n[m][k][l]
                                  for m in range(r))
                        rhs = sum(self.n[j][k][m] * self.n[i][m][l]
                                  for m in range(r))
                        if lhs != rhs:
                            raise VerificationError("associativity fails")

    def fingerprint(self, k):
        return (self.dims[k], self.n[k][k][k],
                sum(self.n[k][j][k] for j in range(self.rank)))


def fusion_ring(action, twist=None, seed=0):
    """The Grothendieck ring of twisted equivariant bundles.

    ``twist`` is None or a pair/triple of cochains (alpha, beta[, theta]) of
    the action; theta is accepted for provenance but not used by the ring.
    """
    alpha = beta = None
    if twist is not None:
        alpha, beta = twist[0], twist[1]
    objs = irreducible_objects(action, alpha, seed=seed)
    # Schur sanity on the simple objects
    for i, x in enumerate(objs):
        for j, y in enumerate(objs):
            want = 1 if i == j else 0
            if hom_dimension(x, y) != want:
                raise VerificationError("simple objects are not Schur-simple")
    unit = None
    e = action.target.identity
    for i, x in enumerate(objs):
        if x.support() == [e] and x.dim == 1 and all(
                abs(x.character(g, e) - 1) < 1e-7
                for g in action.group.elements()):
            unit = i
            break
    if unit is None:
        raise VerificationError("no unit object found")
    r = len(objs)
    n_table = [[[0] * r for _ in range(r)] for _ in range(r)]
    for i in range(r):
        for j in range(r):
            t = tensor_object(objs[i], objs[j], beta)
            for k in range(r):
                n_table[i][j][k] = hom_dimension(objs[k], t)
    labels = [x.label for x in objs]
    dims = [x.dim for x in objs]
    return FusionRing(labels, dims, n_table, unit)


def based_ring_isomorphic(r1, r2):
    """A unit- and dimension-preserving basis bijection matching the
    structure constants, or None.  Backtracking with fingerprint pruning."""
    if r1.rank != r2.rank:
        return None
    if r1.rank > 24:
        raise ResourceLimitError("based-ring search capped at rank 24")
    n = r1.rank
    f1 = [r1.fingerprint(k) for k in range(n)]
    f2 = [r2.fingerprint(k) for k in range(n)]
    if sorted(f1) != sorted(f2):
        return None
    perm = [None] * n
    used = [False] * n

    def consistent(i, p):
        for j in range(n):
            q = perm[j]
            if q is None:
                continue
            for k in range(n):
                s = perm[k]
                if s is None:
                    continue
                if r1.n[i][j][k] != r2.n[p][q][s] or \
                        r1.n[j][i][k] != r2.n[q][p][s] or \
                        r1.n[j][k][i] != r2.n[q][s][p]:
                    return False
        return True

    def extend(i):
        if i == n:
            return True
        if i == r1.unit:
            candidates = [r2.unit]
        else:
            candidates = [p for p in range(n)
                          if not used[p] and f1[i] == f2[p] and p != r2.unit]
        for p in candidates:
            perm[i] = p
            used[p] = True
            if consistent(i, p) and extend(i + 1):
                return True
            perm[i] = None
            used[p] = False
        return False

    if extend(0):
        return list(perm)
    return None


# -- the function-algebra coquasi-bialgebra ---------------------------------

class CoquasiBialgebra:
    """functions(G) # K for a degree-3 cocycle triple (alpha, beta, theta).

    Basis elements are pairs (sigma, x) indexed sigma * |K| + x.  The product
    of two basis elements is a phase times a basis element or zero; the
    coproduct of a basis element is a sum of |G| decomposable tensors.
    """

    def __init__(self, action, alpha, beta, theta):
        self.action = action
        self.G = action.group
        self.K = action.target
        self.alpha = alpha
        self.beta = beta
        self.theta = theta
        self.dim = self.G.order * self.K.order
        self.unit = self.index(self.G.identity, self.K.identity)
        # sanity: products stay within the G-part of their factors
        for i in range(self.dim):
            for j in range(self.dim):
                p = self.product(i, j)
                if p is not None:
                    assert self.gpart(p[1]) == self.gpart(i) == self.gpart(j)

    def index(self, sigma, x):
        return sigma * self.K.order + x

    def gpart(self, i):
        return i // self.K.order

    def kpart(self, i):
        return i % self.K.order

    def product(self, i, j):
        """(phase, index) for the product of basis elements, or None."""
        s, x = self.gpart(i), self.kpart(i)
        t, y = self.gpart(j), self.kpart(j)
        if s != t:
            return None
        v = self.beta.get((s,), (x, y)) if self.beta is not None else Fraction(0)
        return phase(v), self.index(s, self.K.mul[x][y])

    def coproduct(self, i):
        """List of (phase, left index, right index)."""
        s, x = self.gpart(i), self.kpart(i)
        out = []
        for a in self.G.elements():
            b = self.G.mul[self.G.inverse[a]][s]
            v = self.alpha.get((a, b), (x,)) if self.alpha is not None \
                else Fraction(0)
            out.append((phase(v), self.index(a, self.action.apply(b, x)),
                        self.index(b, x)))
        return out

    def associator(self, i, j, k):
        e = self.G.identity
        if self.gpart(i) != e or self.gpart(j) != e or self.gpart(k) != e:
            return 0j
        if self.theta is None:
            return 1 + 0j
        return phase(self.theta.get((), (self.kpart(i), self.kpart(j),
                                         self.kpart(k))))

    def counit(self, i):
        return 1.0 if self.gpart(i) == self.G.identity else 0.0


def coquasi_bialgebra(action, triple):
    """Build functions(G) # K from an (alpha, beta, theta) cocycle triple."""
    alpha, beta, theta = triple
    return CoquasiBialgebra(action, alpha, beta, theta)


def verify_coquasi_axioms(h):
    """Check the unit, multiplicativity and 3-cocycle axioms exhaustively.

    Returns a dict with the maximum residual per axiom and the location of
    the worst violation.  The loops run over every basis tuple; products and
    associator values are pretabulated, and legs of the (iterated) coproduct
    whose leading tensor factors fall outside the associator support (which
    is identity G-parts only) are skipped early since every term containing
    them vanishes.
    """
    dim = h.dim
    cop = [h.coproduct(i) for i in range(dim)]
    report = {}
    e = h.G.identity
    gp = [h.gpart(i) for i in range(dim)]
    # product tables: index (or -1) and phase
    prodi = [[-1] * dim for _ in range(dim)]
    prodp = [[0j] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(dim):
            p = h.product(i, j)
            if p is not None:
                prodp[i][j], prodi[i][j] = p
    # associator values on the identity-G-part cube (zero elsewhere)
    nass = {}
    for i in range(dim):
        if gp[i] != e:
            continue
        for j in range(dim):
            if gp[j] != e:
                continue
            for k in range(dim):
                if gp[k] == e:
                    nass[(i, j, k)] = h.associator(i, j, k)

    def assoc(i, j, k):
        return nass.get((i, j, k), 0j)

    # unit axiom: associator with the unit in any slot equals the counits
    worst, where = 0.0, None
    for i in range(dim):
        for j in range(dim):
            ee = h.counit(i) * h.counit(j)
            for trip in ((i, h.unit, j), (h.unit, i, j), (i, j, h.unit)):
                r = abs(assoc(*trip) - ee)
                if r > worst:
                    worst, where = r, trip
    report["q1"] = {"residual": worst, "at": where}

    # multiplicativity: (m(m x id) * phi)(A,B,C) = (phi * m(id x m))(A,B,C)
    worst, where = 0.0, None
    for a in range(dim):
        for b in range(dim):
            for c in range(dim):
                lhs = {}
                rhs = {}
                for pa, a1, a2 in cop[a]:
                    for pb, b1, b2 in cop[b]:
                        i1 = prodi[a1][b1]
                        if i1 < 0:
                            continue
                        w1 = pa * pb * prodp[a1][b1]
                        for pc, c1, c2 in cop[c]:
                            i2 = prodi[i1][c1]
                            if i2 >= 0:
                                f = assoc(a2, b2, c2)
                                if f:
                                    v = w1 * pc * prodp[i1][c1] * f
                                    lhs[i2] = lhs.get(i2, 0j) + v
                            f = assoc(a1, b1, c1)
                            if f:
                                j1 = prodi[b2][c2]
                                if j1 < 0:
                                    continue
                                j2 = prodi[a2][j1]
                                if j2 < 0:
                                    continue
                                v = (pa * pb * pc * f * prodp[b2][c2]
                                     * prodp[a2][j1])
                                rhs[j2] = rhs.get(j2, 0j) + v
                for key in set(lhs) | set(rhs):
                    r = abs(lhs.get(key, 0j) - rhs.get(key, 0j))
                    if r > worst:
                        worst, where = r, (a, b, c)
    report["q2"] = {"residual": worst, "at": where}

    # 3-cocycle axiom on quadruples:
    # phi(a1 b1, c1, d1) phi(a2, b2, c2 d2)
    #   = phi(b1, c1, d1) phi(a1, b2 c2, d2) phi(a2, b3, c3)
    first_e = []  # legs of the coproduct whose left factor has G-part e
    for i in range(dim):
        first_e.append([(p, l, r) for p, l, r in cop[i] if gp[l] == e])
    cop2fe = []  # double-coproduct legs with leading G-part e
    for i in range(dim):
        legs = []
        for p, l, r in cop[i]:
            if gp[l] != e:
                continue
            for p2, l2, r2 in cop[r]:
                legs.append((p * p2, l, l2, r2))
        cop2fe.append(legs)
    worst, where = 0.0, None
    rng_dim = range(dim)
    for a in rng_dim:
        fa = first_e[a]
        for b in rng_dim:
            fb = first_e[b]
            c2b = cop2fe[b]
            for c in rng_dim:
                fc = first_e[c]
                c2c = cop2fe[c]
                for d in rng_dim:
                    lhs = 0j
                    for pa, a1, a2 in fa:
                        if gp[a2] != e:
                            continue  # the trailing associator slot is zero
                        for pb, b1, b2 in fb:
                            if gp[b2] != e:
                                continue
                            i1 = prodi[a1][b1]
                            if i1 < 0:
                                continue
                            w1 = pa * pb * prodp[a1][b1]
                            for pc, c1, c2 in fc:
                                for pd, d1, d2 in first_e[d]:
                                    f1 = assoc(i1, c1, d1)
                                    if not f1:
                                        continue
                                    i2 = prodi[c2][d2]
                                    if i2 < 0:
                                        continue
                                    f2 = assoc(a2, b2, i2)
                                    if not f2:
                                        continue
                                    lhs += (w1 * pc * pd * f1
                                            * prodp[c2][d2] * f2)
                    rhs = 0j
                    for pa, a1, a2 in fa:
                        if gp[a2] != e:
                            continue  # kills the third associator
                        for pd, d1, d2 in first_e[d]:
                            if gp[d2] != e:
                                continue  # kills the second associator
                            for pb, b1, b2, b3 in c2b:
                                if gp[b2] != e or gp[b3] != e:
                                    continue
                                for pc, c1, c2, c3 in c2c:
                                    f1 = assoc(b1, c1, d1)
                                    if not f1:
                                        continue
                                    j1 = prodi[b2][c2]
                                    if j1 < 0:
                                        continue
                                    f2 = assoc(a1, j1, d2)
                                    if not f2:
                                        continue
                                    f3 = assoc(a2, b3, c3)
                                    if not f3:
                                        continue
                                    rhs += (pa * pb * pc * pd * f1
                                            * prodp[b2][c2] * f2 * f3)
                    r = abs(lhs - rhs)
                    if r > worst:
                        worst, where = r, (a, b, c, d)
    report["q3"] = {"residual": worst, "at": where}

    # coassociativity and the coalgebra-map property of the product
    worst, where = 0.0, None
    for i in range(dim):
        left = {}
        right = {}
        for p, l, r in cop[i]:
            for p2, l2, r2 in cop[l]:
                key = (l2, r2, r)
                left[key] = left.get(key, 0j) + p * p2
            for p2, l2, r2 in cop[r]:
                key = (l, l2, r2)
                right[key] = right.get(key, 0j) + p * p2
        for key in set(left) | set(right):
            r = abs(left.get(key, 0j) - right.get(key, 0j))
            if r > worst:
                worst, where = r, (i, key)
    report["coassociativity"] = {"residual": worst, "at": where}

    worst, where = 0.0, None
    for i in range(dim):
        for j in range(dim):
            lhs = {}
            p = h.product(i, j)
            if p is not None:
                for q, l, r in cop[p[1]]:
                    lhs[(l, r)] = lhs.get((l, r), 0j) + p[0] * q
            rhs = {}
            for pi, i1, i2 in cop[i]:
                for pj, j1, j2 in cop[j]:
                    q1 = h.product(i1, j1)
                    q2 = h.product(i2, j2)
                    if q1 is None or q2 is None:
                        continue
                    key = (q1[1], q2[1])
                    rhs[key] = rhs.get(key, 0j) + pi * pj * q1[0] * q2[0]
            for key in set(lhs) | set(rhs):
                r = abs(lhs.get(key, 0j) - rhs.get(key, 0j))
                if r > worst:
                    worst, where = r, (i, j, key)
    report["product_is_coalgebra_map"] = {"residual": worst, "at": where}

    report["max_residual"] = max(v["residual"] for v in report.values()
                                 if isinstance(v, dict))
    return report
