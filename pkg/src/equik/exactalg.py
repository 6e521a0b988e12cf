"""Exact integer linear algebra on sparse matrices.

Hermite and Smith normal forms with unimodular transforms, kernels, integer
solving, and solving modulo 1 (i.e. with values in Q/Z).  All arithmetic uses
arbitrary precision Python integers; rational values are `fractions.Fraction`.

Matrices are stored sparsely (one dict per row plus a column index) because
the boundary matrices this package produces are large and very sparse, with
entries almost always in {-1, 0, +1}.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .config import LIMITS
from .errors import ResourceLimitError


def mod1(x):
    """Reduce a Fraction (or int) to the half-open interval [0, 1)."""
    x = Fraction(x)
    return Fraction(x.numerator % x.denominator, x.denominator)


class IntMatrix:
    """Sparse integer matrix.

    ``rows[i]`` maps column -> nonzero value; ``cols[j]`` is the set of rows
    with a nonzero in column j.  The two structures are kept in sync by the
    mutating methods.  A global nonzero budget guards against runaway fill-in.
    """

    __slots__ = ("nrows", "ncols", "rows", "cols", "nnz")

    def __init__(self, nrows, ncols):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = [{} for _ in range(nrows)]
        self.cols = [set() for _ in range(ncols)]
        self.nnz = 0

    # -- construction ------------------------------------------------------

    @classmethod
    def identity(cls, n):
        m = cls(n, n)
        for i in range(n):
            m.rows[i][i] = 1
            m.cols[i].add(i)
        m.nnz = n
        return m

    @classmethod
    def from_rows(cls, dense):
        nrows = len(dense)
        ncols = len(dense[0]) if nrows else 0
        m = cls(nrows, ncols)
        for i, row in enumerate(dense):
            for j, v in enumerate(row):
                if v:
                    m.set_entry(i, j, int(v))
        return m

    @classmethod
    def from_triples(cls, nrows, ncols, triples):
        m = cls(nrows, ncols)
        for i, j, v in triples:
            m.add_entry(i, j, v)
        return m

    def copy(self):
        m = IntMatrix(self.nrows, self.ncols)
        m.rows = [dict(r) for r in self.rows]
        m.cols = [set(c) for c in self.cols]
        m.nnz = self.nnz
        return m

    # -- element access ----------------------------------------------------

    def get(self, i, j):
        return self.rows[i].get(j, 0)

    def set_entry(self, i, j, v):
        row = self.rows[i]
        if v:
            if j not in row:
                self.nnz += 1
                self._check_budget()
                self.cols[j].add(i)
            row[j] = v
        elif j in row:
            del row[j]
            self.cols[j].discard(i)
            self.nnz -= 1

    def add_entry(self, i, j, v):
        if v:
            self.set_entry(i, j, self.rows[i].get(j, 0) + v)

    def _check_budget(self):
        if self.nnz > LIMITS.max_matrix_nnz:
            raise ResourceLimitError(
                "matrix exceeded %d nonzeros (shape %dx%d); raise "
                "equik.config.LIMITS.max_matrix_nnz to continue"
                % (LIMITS.max_matrix_nnz, self.nrows, self.ncols))

    # -- whole-matrix helpers ---------------------------------------------

    def to_dense(self):
        return [[self.rows[i].get(j, 0) for j in range(self.ncols)]
                for i in range(self.nrows)]

    def transpose(self):
        t = IntMatrix(self.ncols, self.nrows)
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                t.rows[j][i] = v
                t.cols[i].add(j)
        t.nnz = self.nnz
        return t

    def matmul(self, other):
        assert self.ncols == other.nrows
        out = IntMatrix(self.nrows, other.ncols)
        for i, row in enumerate(self.rows):
            acc = {}
            for k, v in row.items():
                for j, w in other.rows[k].items():
                    acc[j] = acc.get(j, 0) + v * w
            for j, v in acc.items():
                if v:
                    out.rows[i][j] = v
                    out.cols[j].add(i)
                    out.nnz += 1
        return out

    def apply(self, vec):
        """Matrix times a vector of ints/Fractions; returns a list."""
        assert len(vec) == self.ncols
        out = []
        for row in self.rows:
            s = sum((v * vec[j] for j, v in row.items()), Fraction(0))
            out.append(s)
        return out

    def apply_transpose(self, vec):
        """Transpose times a vector, without materializing the transpose."""
        assert len(vec) == self.nrows
        out = [Fraction(0)] * self.ncols
        for i, row in enumerate(self.rows):
            x = vec[i]
            if x:
                for j, v in row.items():
                    out[j] += v * x
        return out

    def column(self, j):
        return {i: self.rows[i][j] for i in self.cols[j]}

    def is_zero(self):
        return self.nnz == 0

    # -- elementary operations --------------------------------------------

    def addmul_row(self, dst, src, c):
        """row[dst] += c * row[src]"""
        if not c:
            return
        drow = self.rows[dst]
        for j, v in self.rows[src].items():
            nv = drow.get(j, 0) + c * v
            if nv:
                if j not in drow:
                    self.nnz += 1
                    self.cols[j].add(dst)
                drow[j] = nv
            elif j in drow:
                del drow[j]
                self.cols[j].discard(dst)
                self.nnz -= 1
        self._check_budget()

    def addmul_col(self, dst, src, c):
        """col[dst] += c * col[src]"""
        if not c:
            return
        for i in list(self.cols[src]):
            v = self.rows[i][src]
            nv = self.rows[i].get(dst, 0) + c * v
            if nv:
                if dst not in self.rows[i]:
                    self.nnz += 1
                    self.cols[dst].add(i)
                self.rows[i][dst] = nv
            elif dst in self.rows[i]:
                del self.rows[i][dst]
                self.cols[dst].discard(i)
                self.nnz -= 1
        self._check_budget()

    def swap_rows(self, a, b):
        if a == b:
            return
        for j in self.rows[a]:
            self.cols[j].discard(a)
        for j in self.rows[b]:
            self.cols[j].discard(b)
        self.rows[a], self.rows[b] = self.rows[b], self.rows[a]
        for j in self.rows[a]:
            self.cols[j].add(a)
        for j in self.rows[b]:
            self.cols[j].add(b)

    def swap_cols(self, a, b):
        if a == b:
            return
        for i in list(self.cols[a] | self.cols[b]):
            row = self.rows[i]
            va, vb = row.pop(a, 0), row.pop(b, 0)
            if vb:
                row[a] = vb
            if va:
                row[b] = va
        self.cols[a], self.cols[b] = self.cols[b], self.cols[a]

    def scale_row(self, i, c):
        assert c in (1, -1)
        if c == -1:
            row = self.rows[i]
            for j in row:
                row[j] = -row[j]

    def scale_col(self, j, c):
        assert c in (1, -1)
        if c == -1:
            for i in self.cols[j]:
                self.rows[i][j] = -self.rows[i][j]

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.nrows == other.nrows
                and self.ncols == other.ncols and self.rows == other.rows)

    def __repr__(self):
        return "IntMatrix(%dx%d, nnz=%d)" % (self.nrows, self.ncols, self.nnz)


# -- Hermite normal form ---------------------------------------------------

def row_hnf(mat, transform=False):
    """Row-style Hermite normal form.

    Returns ``(H, U, pivots)`` with ``U @ mat == H``, U unimodular, H in row
    echelon form with positive pivots and entries above each pivot reduced.
    ``pivots`` is a list of (row, col) pairs.  U is None unless requested.
    """
    H = mat.copy()
    U = IntMatrix.identity(mat.nrows) if transform else None
    pivots = []
    next_row = 0
    for c in range(H.ncols):
        live = [r for r in H.cols[c] if r >= next_row]
        while len(live) > 1:
            live.sort(key=lambda r: abs(H.rows[r][c]))
            r0 = live[0]
            piv = H.rows[r0][c]
            for r in live[1:]:
                q = H.rows[r][c] // piv
                if q:
                    H.addmul_row(r, r0, -q)
                    if U is not None:
                        U.addmul_row(r, r0, -q)
            live = [r for r in H.cols[c] if r >= next_row]
        if not live:
            continue
        r0 = live[0]
        if H.rows[r0][c] < 0:
            H.scale_row(r0, -1)
            if U is not None:
                U.scale_row(r0, -1)
        H.swap_rows(r0, next_row)
        if U is not None:
            U.swap_rows(r0, next_row)
        piv = H.rows[next_row][c]
        for r in [r for r in H.cols[c] if r < next_row]:
            q = H.rows[r][c] // piv
            if q:
                H.addmul_row(r, next_row, -q)
                if U is not None:
                    U.addmul_row(r, next_row, -q)
        pivots.append((next_row, c))
        next_row += 1
    return H, U, pivots


def column_hnf(mat, transform=False):
    """Column-style HNF: returns (H, V, pivots) with mat @ V == H.

    ``pivots`` is a list of (row, col) pairs; columns past the last pivot
    are zero.
    """
    Ht, Ut, piv = row_hnf(mat.transpose(), transform=transform)
    H = Ht.transpose()
    V = Ut.transpose() if transform else None
    return H, V, [(c, r) for r, c in piv]


def rank(mat):
    _, _, pivots = row_hnf(mat)
    return len(pivots)


def kernel_basis(mat):
    """Basis of the integer kernel lattice, as a list of column dicts."""
    H, V, pivots = column_hnf(mat, transform=True)
    r = len(pivots)
    return [V.column(j) for j in range(r, mat.ncols)]


# -- Smith normal form -----------------------------------------------------

class SmithForm:
    """Result of ``snf``: ``left @ mat @ right`` is diagonal.

    ``diag`` lists the full diagonal (length min(nrows, ncols)) with
    d1 | d2 | ... and trailing zeros.  ``left_inv`` is the inverse of
    ``left``; transforms not requested are None.
    """

    def __init__(self, diag, left, right, left_inv):
        self.diag = diag
        self.left = left
        self.right = right
        self.left_inv = left_inv

    @property
    def rank(self):
        return sum(1 for d in self.diag if d)

    def invariant_factors(self):
        """Diagonal entries other than 1, zeros last (zero = a free factor)."""
        return [d for d in self.diag if d != 1]


def snf(mat, want_left=False, want_right=False, want_left_inv=False):
    """Smith normal form with optional unimodular transforms."""
    D = mat.copy()
    L = IntMatrix.identity(D.nrows) if want_left else None
    Linv = IntMatrix.identity(D.nrows) if want_left_inv else None
    R = IntMatrix.identity(D.ncols) if want_right else None

    def row_op(dst, src, c):
        D.addmul_row(dst, src, c)
        if L is not None:
            L.addmul_row(dst, src, c)
        if Linv is not None:
            Linv.addmul_col(src, dst, -c)

    def col_op(dst, src, c):
        D.addmul_col(dst, src, c)
        if R is not None:
            R.addmul_col(dst, src, c)

    def row_swap(a, b):
        D.swap_rows(a, b)
        if L is not None:
            L.swap_rows(a, b)
        if Linv is not None:
            Linv.swap_cols(a, b)

    def col_swap(a, b):
        D.swap_cols(a, b)
        if R is not None:
            R.swap_cols(a, b)

    def row_negate(i):
        D.scale_row(i, -1)
        if L is not None:
            L.scale_row(i, -1)
        if Linv is not None:
            Linv.scale_col(i, -1)

    def clear_position(t):
        # Repeatedly clear column t with row ops and row t with column ops
        # until only the diagonal entry remains.
        while True:
            others = [r for r in D.cols[t] if r != t]
            while others:
                piv = D.rows[t][t]
                for r in others:
                    q = D.rows[r][t] // piv
                    if q:
                        row_op(r, t, -q)
                others = [r for r in D.cols[t] if r != t]
                if others:
                    r = min(others, key=lambda r: abs(D.rows[r][t]))
                    row_swap(r, t)
                    others = [r for r in D.cols[t] if r != t]
            others = [c for c in D.rows[t] if c != t]
            while others:
                piv = D.rows[t][t]
                for c in others:
                    q = D.rows[t][c] // piv
                    if q:
                        col_op(c, t, -q)
                others = [c for c in D.rows[t] if c != t]
                if others:
                    c = min(others, key=lambda c: abs(D.rows[t][c]))
                    col_swap(c, t)
                    others = [c for c in D.rows[t] if c != t]
            if not [r for r in D.cols[t] if r != t]:
                break

    ndiag = min(D.nrows, D.ncols)
    t = 0
    while t < ndiag:
        # pick a pivot in the active submatrix (rows >= t all lie in
        # columns >= t by construction); prefer units and low fill-in
        best = None
        for i in range(t, D.nrows):
            for j, v in D.rows[i].items():
                cost = (abs(v) != 1,
                        (len(D.rows[i]) - 1) * (len(D.cols[j]) - 1),
                        abs(v))
                if best is None or cost < best[0]:
                    best = (cost, i, j)
            if best is not None and best[0][0] is False and best[0][1] <= 1:
                break
        if best is None:
            break
        _, i, j = best
        row_swap(i, t)
        col_swap(j, t)
        clear_position(t)
        if D.rows[t][t] < 0:
            row_negate(t)
        t += 1

    diag = [D.rows[i].get(i, 0) for i in range(ndiag)]
    nz = sum(1 for d in diag if d)

    # enforce the divisibility chain d1 | d2 | ...
    changed = True
    while changed:
        changed = False
        for i in range(nz - 1):
            a, b = D.rows[i][i], D.rows[i + 1][i + 1]
            if b % a:
                col_op(i, i + 1, 1)
                clear_position(i)
                if D.rows[i][i] < 0:
                    row_negate(i)
                if D.rows[i + 1][i + 1] < 0:
                    row_negate(i + 1)
                changed = True
    diag = [D.rows[i].get(i, 0) for i in range(ndiag)]
    for i in range(len(diag) - 1):
        assert diag[i + 1] == 0 or (diag[i] != 0 and diag[i + 1] % diag[i] == 0)
    return SmithForm(diag, L, R, Linv)


# -- solving ---------------------------------------------------------------

def solve_integer(mat, b):
    """One integer solution x of mat @ x == b, or None."""
    s = snf(mat, want_left=True, want_right=True)
    lb = s.left.apply([Fraction(v) for v in b])
    v = [Fraction(0)] * mat.ncols
    for i in range(mat.nrows):
        d = s.diag[i] if i < len(s.diag) else 0
        if d:
            q = lb[i] / d
            if q.denominator != 1:
                return None
            v[i] = q
        elif lb[i] != 0:
            return None
    x = s.right.apply(v)
    assert all(xi.denominator == 1 for xi in x)
    return [int(xi) for xi in x]


def solve_mod1(mat, b):
    """Solve mat @ x == b in Q/Z (entries are Fractions mod 1), or None.

    The system is solvable iff the left transform of b is integral on the
    rows where the Smith diagonal vanishes.
    """
    s = snf(mat, want_left=True, want_right=True)
    lb = s.left.apply([Fraction(v) for v in b])
    v = [Fraction(0)] * mat.ncols
    for i in range(mat.nrows):
        d = s.diag[i] if i < len(s.diag) else 0
        if d:
            v[i] = lb[i] / d
        elif mod1(lb[i]) != 0:
            return None
    return [mod1(x) for x in s.right.apply(v)]


def dot_fraction(col_dict, vec):
    """Dot product of a sparse integer column with a Fraction vector."""
    return sum((v * vec[i] for i, v in col_dict.items()), Fraction(0))
