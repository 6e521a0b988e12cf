"""The normalized double cochain complex of a group action.

For an action of G on K by automorphisms, the bidegree (p, q) cochains are
circle-valued maps on G^p x K^q, normalized to vanish whenever an argument is
the identity.  The circle is represented additively as Q/Z with exact
`Fraction` values.  Two commuting differentials act: one in the G direction
(which also twists the K arguments by the last G entry) and one in the K
direction; the total complex uses the sign (-1)^p on the K differential.

Shapes select sub- and quotient complexes by restricting the admitted
bidegrees: the full complex, the rows q >= 1, the block p, q >= 1, the rows
1..r, or a single row.
"""

from __future__ import annotations

from fractions import Fraction

from .config import LIMITS
from .errors import ResourceLimitError, UsageError
from .exactalg import IntMatrix, mod1
from . import groups


class Shape:
    """Which bidegrees (p, q) belong to the complex."""

    FULL = "full"          # p, q >= 0
    ROWS = "rows"          # q >= 1 (the complement of the q = 0 row)
    BLOCK = "block"        # p >= 1 and q >= 1
    ROWS_TRUNC = "rows-trunc"   # 1 <= q <= r (quotient of ROWS by rows > r)
    ROW = "row"            # q = r exactly (single row, G differential only)

    def __init__(self, kind, r=None):
        if kind in (self.ROWS_TRUNC, self.ROW) and r is None:
            raise UsageError("shape %r needs a row parameter" % kind)
        self.kind = kind
        self.r = r

    def admits(self, p, q):
        if p < 0 or q < 0:
            return False
        if self.kind == self.FULL:
            return True
        if self.kind == self.ROWS:
            return q >= 1
        if self.kind == self.BLOCK:
            return p >= 1 and q >= 1
        if self.kind == self.ROWS_TRUNC:
            return 1 <= q <= self.r
        if self.kind == self.ROW:
            return q == self.r
        raise UsageError("unknown shape %r" % self.kind)

    def key(self):
        return (self.kind, self.r)

    def __eq__(self, other):
        return isinstance(other, Shape) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


class ComplexSpec:
    """A double complex: an action plus a shape.

    Holds a cache used by the cohomology layer; build one spec per action and
    reuse it.
    """

    def __init__(self, action, shape):
        self.action = action
        self.K = action.target
        self.G = action.group
        self.shape = shape
        if self.K.order * self.G.order > LIMITS.max_group_order:
            raise ResourceLimitError(
                "|K| * |G| = %d exceeds the complex ceiling %d"
                % (self.K.order * self.G.order, LIMITS.max_group_order))
        self._knonid = self.K.nonidentity()
        self._gnonid = self.G.nonidentity()
        self._kpos = {x: i for i, x in enumerate(self._knonid)}
        self._gpos = {x: i for i, x in enumerate(self._gnonid)}
        self.cache = {}

    # -- cells -------------------------------------------------------------

    def cells(self, p, q):
        """Number of nondegenerate (p, q) cells; ignores the shape."""
        return len(self._gnonid) ** p * len(self._knonid) ** q

    def bidegrees(self, n):
        """Admitted bidegrees of total degree n, with q ascending."""
        return [(n - q, q) for q in range(n + 1)
                if self.shape.admits(n - q, q)]

    def total_cells(self, n):
        return sum(self.cells(p, q) for p, q in self.bidegrees(n))

    def offsets(self, n):
        out = {}
        at = 0
        for p, q in self.bidegrees(n):
            out[(p, q)] = at
            at += self.cells(p, q)
        return out

    def index_of(self, gs, ks):
        """Cell index within bidegree (len(gs), len(ks))."""
        idx = 0
        for g in gs:
            idx = idx * len(self._gnonid) + self._gpos[g]
        for k in ks:
            idx = idx * len(self._knonid) + self._kpos[k]
        return idx

    def cell_of(self, p, q, idx):
        ks = []
        for _ in range(q):
            idx, r = divmod(idx, len(self._knonid))
            ks.append(self._knonid[r])
        gs = []
        for _ in range(p):
            idx, r = divmod(idx, len(self._gnonid))
            gs.append(self._gnonid[r])
        return tuple(reversed(gs)), tuple(reversed(ks))

    def iter_cells(self, p, q):
        for idx in range(self.cells(p, q)):
            yield idx, self.cell_of(p, q, idx)

    def is_degenerate(self, gs, ks):
        return (self.G.identity in gs) or (self.K.identity in ks)


def full_spec(action):
    return ComplexSpec(action, Shape(Shape.FULL))


def rows_spec(action):
    return ComplexSpec(action, Shape(Shape.ROWS))


def block_spec(action):
    return ComplexSpec(action, Shape(Shape.BLOCK))


def rows_trunc_spec(action, r):
    return ComplexSpec(action, Shape(Shape.ROWS_TRUNC, r))


def row_spec(action, r):
    return ComplexSpec(action, Shape(Shape.ROW, r))


def single_group_spec(h):
    """The normalized bar complex of a single group.

    Modelled as the full double complex with a trivial acting group, so all
    cells sit in bidegrees (0, q).
    """
    act = groups.trivial_action(groups.trivial_group(), h)
    return ComplexSpec(act, Shape(Shape.FULL))


# -- cochains --------------------------------------------------------------

class Cochain:
    """A bidegree (p, q) cochain with values in Q/Z."""

    def __init__(self, spec, p, q, values=None):
        self.spec = spec
        self.p = p
        self.q = q
        n = len(spec._gnonid) ** p * len(spec._knonid) ** q
        if values is None:
            values = [Fraction(0)] * n
        assert len(values) == n
        self.values = [mod1(v) for v in values]

    def get(self, gs, ks):
        if self.spec.is_degenerate(gs, ks):
            return Fraction(0)
        return self.values[self.spec.index_of(gs, ks)]

    def set(self, gs, ks, v):
        assert not self.spec.is_degenerate(gs, ks)
        self.values[self.spec.index_of(gs, ks)] = mod1(v)

    def copy(self):
        return Cochain(self.spec, self.p, self.q, list(self.values))

    def __add__(self, other):
        assert (self.p, self.q) == (other.p, other.q)
        return Cochain(self.spec, self.p, self.q,
                       [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        assert (self.p, self.q) == (other.p, other.q)
        return Cochain(self.spec, self.p, self.q,
                       [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self):
        return Cochain(self.spec, self.p, self.q, [-a for a in self.values])

    def scaled(self, c):
        return Cochain(self.spec, self.p, self.q, [c * a for a in self.values])

    def is_zero(self):
        return all(v == 0 for v in self.values)

    def __eq__(self, other):
        return (isinstance(other, Cochain) and (self.p, self.q) == (other.p, other.q)
                and self.values == other.values)


def delta_g(coch):
    """The G-direction differential, (p, q) -> (p+1, q)."""
    spec = coch.spec
    p, q = coch.p + 1, coch.q
    out = Cochain(spec, p, q)
    act = spec.action
    for idx, (gs, ks) in spec.iter_cells(p, q):
        v = coch.get(gs[1:], ks)
        for i in range(1, p):
            merged = gs[:i - 1] + (spec.G.mul[gs[i - 1]][gs[i]],) + gs[i + 1:]
            v += (-1) ** i * coch.get(merged, ks)
        v += (-1) ** p * coch.get(gs[:-1], act.apply_tuple(gs[-1], ks))
        out.values[idx] = mod1(v)
    return out


def delta_k(coch):
    """The K-direction differential, (p, q) -> (p, q+1), without the (-1)^p."""
    spec = coch.spec
    p, q = coch.p, coch.q + 1
    out = Cochain(spec, p, q)
    for idx, (gs, ks) in spec.iter_cells(p, q):
        v = coch.get(gs, ks[1:])
        for j in range(1, q):
            merged = ks[:j - 1] + (spec.K.mul[ks[j - 1]][ks[j]],) + ks[j + 1:]
            v += (-1) ** j * coch.get(gs, merged)
        v += (-1) ** q * coch.get(gs, ks[:-1])
        out.values[idx] = mod1(v)
    return out


class TotalCochain:
    """An element of the total complex in one total degree."""

    def __init__(self, spec, degree, comps=None):
        self.spec = spec
        self.degree = degree
        self.comps = {}
        if comps:
            for (p, q), c in comps.items():
                assert p + q == degree and spec.shape.admits(p, q)
                self.comps[(p, q)] = c

    def comp(self, p, q):
        if (p, q) in self.comps:
            return self.comps[(p, q)]
        return Cochain(self.spec, p, q)

    def to_vector(self):
        out = []
        for p, q in self.spec.bidegrees(self.degree):
            out.extend(self.comp(p, q).values)
        return out

    @classmethod
    def from_vector(cls, spec, degree, vec):
        tot = cls(spec, degree)
        at = 0
        for p, q in spec.bidegrees(degree):
            n = spec.cells(p, q)
            tot.comps[(p, q)] = Cochain(spec, p, q, vec[at:at + n])
            at += n
        assert at == len(vec)
        return tot

    def __add__(self, other):
        assert self.degree == other.degree
        out = TotalCochain(self.spec, self.degree)
        for pq in set(self.comps) | set(other.comps):
            out.comps[pq] = self.comp(*pq) + other.comp(*pq)
        return out

    def __sub__(self, other):
        assert self.degree == other.degree
        out = TotalCochain(self.spec, self.degree)
        for pq in set(self.comps) | set(other.comps):
            out.comps[pq] = self.comp(*pq) - other.comp(*pq)
        return out

    def __neg__(self):
        return TotalCochain(self.spec, self.degree,
                            {pq: -c for pq, c in self.comps.items()})

    def is_zero(self):
        return all(c.is_zero() for c in self.comps.values())


def total_differential(tot):
    """The differential of the total complex (G part plus (-1)^p K part)."""
    spec = tot.spec
    n = tot.degree + 1
    out = TotalCochain(spec, n)
    for p, q in spec.bidegrees(n):
        acc = Cochain(spec, p, q)
        if spec.shape.admits(p - 1, q) and (p - 1, q) in tot.comps:
            acc = acc + delta_g(tot.comps[(p - 1, q)])
        if spec.shape.admits(p, q - 1) and (p, q - 1) in tot.comps:
            dk = delta_k(tot.comps[(p, q - 1)])
            acc = acc + (dk if p % 2 == 0 else -dk)
        out.comps[(p, q)] = acc
    return out


def boundary_matrix(spec, n):
    """Integer boundary matrix from degree n chains to degree n-1 chains.

    This is the transpose of the matrix of the total cochain differential
    from degree n-1 to degree n; faces that hit a degenerate cell are dropped
    (the complexes are normalized).
    """
    rows = spec.total_cells(n - 1)
    cols = spec.total_cells(n)
    src_off = spec.offsets(n - 1)
    tgt_off = spec.offsets(n)
    mat = IntMatrix(rows, cols)
    act = spec.action
    for p, q in spec.bidegrees(n):
        base = tgt_off[(p, q)]
        gface = spec.shape.admits(p - 1, q)
        kface = spec.shape.admits(p, q - 1)
        ksign = 1 if p % 2 == 0 else -1
        for idx, (gs, ks) in spec.iter_cells(p, q):
            col = base + idx
            faces = []
            if gface:
                faces.append((gs[1:], ks, 1, (p - 1, q)))
                for i in range(1, p):
                    merged = gs[:i - 1] + (spec.G.mul[gs[i - 1]][gs[i]],) + gs[i + 1:]
                    faces.append((merged, ks, (-1) ** i, (p - 1, q)))
                faces.append((gs[:-1], act.apply_tuple(gs[-1], ks),
                              (-1) ** p, (p - 1, q)))
            if kface:
                faces.append((gs, ks[1:], ksign, (p, q - 1)))
                for j in range(1, q):
                    merged = ks[:j - 1] + (spec.K.mul[ks[j - 1]][ks[j]],) + ks[j + 1:]
                    faces.append((gs, merged, ksign * (-1) ** j, (p, q - 1)))
                faces.append((gs, ks[:-1], ksign * (-1) ** q, (p, q - 1)))
            for fgs, fks, sign, fpq in faces:
                if spec.is_degenerate(fgs, fks):
                    continue
                row = src_off[fpq] + spec.index_of(fgs, fks)
                mat.add_entry(row, col, sign)
    return mat


# -- single-group (bar complex) helpers ------------------------------------

def bar_cochain(spec, n, values=None):
    """A degree-n cochain on a single-group spec (bidegree (0, n))."""
    return Cochain(spec, 0, n, values)


def bar_get(coch, hs):
    return coch.get((), hs)


def bar_total(coch):
    """Wrap a bar cochain as a total cochain of its spec."""
    return TotalCochain(coch.spec, coch.q, {(0, coch.q): coch})


def pullback_cochain(hom, coch, target_spec):
    """Pull a bar cochain back along a homomorphism into a bar cochain.

    ``coch`` lives on single_group_spec(hom.target); the result lives on
    ``target_spec`` = single_group_spec(hom.source).
    """
    n = coch.q
    out = Cochain(target_spec, 0, n)
    for idx, (_, hs) in target_spec.iter_cells(0, n):
        out.values[idx] = coch.get((), tuple(hom(h) for h in hs))
    return out
