"""Exact sparse/dense linear algebra over Fraction or cyclotomic scalars.

Matrices are SpMat (dict-of-rows sparse); elimination routines work on dense
lists of lists.  All arithmetic stays in the ground field: generic code uses
the Python ints 0 and 1 as neutral elements, which coerce correctly against
both Fraction and CycEl.
"""

from fractions import Fraction


class SpMat:
    """Sparse matrix; rows[i][j] = nonzero entry. Columns act on column vectors."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows, ncols, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else {}

    @classmethod
    def identity(cls, n):
        return cls(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def zero(cls, nrows, ncols):
        return cls(nrows, ncols)

    @classmethod
    def from_entries(cls, nrows, ncols, entries):
        m = cls(nrows, ncols)
        for i, j, v in entries:
            m.add_at(i, j, v)
        return m

    @classmethod
    def from_dense(cls, dense, ncols=None):
        nrows = len(dense)
        if ncols is None:
            ncols = len(dense[0]) if dense else 0
        m = cls(nrows, ncols)
        for i, row in enumerate(dense):
            for j, v in enumerate(row):
                if v != 0:
                    m.rows.setdefault(i, {})[j] = v
        return m

    @classmethod
    def column(cls, entries_or_list, nrows=None):
        """Column vector from a dense list or an iterable of (i, v)."""
        if isinstance(entries_or_list, (list, tuple)):
            dense = [[v] for v in entries_or_list]
            return cls.from_dense(dense, ncols=1)
        assert nrows is not None
        return cls.from_entries(nrows, 1, ((i, 0, v) for i, v in entries_or_list))

    def add_at(self, i, j, v):
        assert 0 <= i < self.nrows and 0 <= j < self.ncols
        row = self.rows.setdefault(i, {})
        w = row.get(j, 0) + v
        if w == 0:
            row.pop(j, None)
            if not row:
                self.rows.pop(i, None)
        else:
            row[j] = w

    def get(self, i, j):
        return self.rows.get(i, {}).get(j, 0)

    def nnz(self):
        return sum(len(r) for r in self.rows.values())

    def __matmul__(self, other):
        assert self.ncols == other.nrows, \
            "shape mismatch %dx%d @ %dx%d" % (self.nrows, self.ncols,
                                              other.nrows, other.ncols)
        out = SpMat(self.nrows, other.ncols)
        orows = other.rows
        for i, row in self.rows.items():
            acc = {}
            for k, a in row.items():
                brow = orows.get(k)
                if not brow:
                    continue
                for j, b in brow.items():
                    w = acc.get(j, 0) + a * b
                    if w == 0:
                        acc.pop(j, None)
                    else:
                        acc[j] = w
            if acc:
                out.rows[i] = acc
        return out

    def kron(self, other):
        out = SpMat(self.nrows * other.nrows, self.ncols * other.ncols)
        for i, row in self.rows.items():
            for j, a in row.items():
                for k, orow in other.rows.items():
                    tgt = out.rows.setdefault(i * other.nrows + k, {})
                    for l, b in orow.items():
                        tgt[j * other.ncols + l] = a * b
        return out

    def __add__(self, other):
        assert self.nrows == other.nrows and self.ncols == other.ncols
        out = SpMat(self.nrows, self.ncols,
                    {i: dict(r) for i, r in self.rows.items()})
        for i, row in other.rows.items():
            for j, v in row.items():
                out.add_at(i, j, v)
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, s):
        if s == 0:
            return SpMat(self.nrows, self.ncols)
        out = SpMat(self.nrows, self.ncols)
        for i, row in self.rows.items():
            out.rows[i] = {j: s * v for j, v in row.items()}
        return out

    def transpose(self):
        out = SpMat(self.ncols, self.nrows)
        for i, row in self.rows.items():
            for j, v in row.items():
                out.rows.setdefault(j, {})[i] = v
        return out

    def __eq__(self, other):
        if not isinstance(other, SpMat):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            return False
        keys = set(self.rows) | set(other.rows)
        for i in keys:
            r1 = self.rows.get(i, {})
            r2 = other.rows.get(i, {})
            for j in set(r1) | set(r2):
                if r1.get(j, 0) != r2.get(j, 0):
                    return False
        return True

    def __hash__(self):
        raise TypeError("SpMat is mutable during construction; not hashable")

    def is_zero(self):
        return not self.rows

    def to_dense(self):
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, row in self.rows.items():
            for j, v in row.items():
                out[i][j] = v
        return out

    def column_list(self, j=0):
        return [self.get(i, j) for i in range(self.nrows)]

    def scalar(self):
        """The single entry of a 1x1 matrix."""
        assert self.nrows == 1 and self.ncols == 1
        return self.get(0, 0)

    def __repr__(self):
        return "SpMat(%dx%d, nnz=%d)" % (self.nrows, self.ncols, self.nnz())


def kron_all(mats):
    out = None
    for m in mats:
        out = m if out is None else out.kron(m)
    return out if out is not None else SpMat.identity(1)


### Dense elimination. Rows are lists; entries Fraction or CycEl.


def rref_dense(mat):
    """Reduced row echelon form; returns (rows, pivot column list).

    Bare int entries are promoted to Fraction up front so that the pivot
    division below can never silently produce a float.
    """
    rows = [[Fraction(v) if isinstance(v, int) else v for v in r] for r in mat]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [inv * x for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank_dense(mat):
    _, pivots = rref_dense(mat)
    return len(pivots)


def nullspace_dense(mat):
    """Basis of the right nullspace, as dense column lists."""
    rows, pivots = rref_dense(mat)
    ncols = len(mat[0]) if mat else 0
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(v)
    return basis


def solve_dense(a, b):
    """Solve a @ x = b for dense a (m x n) and b (m x k); None if inconsistent.

    When the solution is not unique, free variables are set to zero.
    """
    m = len(a)
    n = len(a[0]) if a else 0
    k = len(b[0]) if b else 0
    aug = [list(ra) + list(rb) for ra, rb in zip(a, b)] if m else []
    rows, pivots = rref_dense(aug) if aug else ([], [])
    for r in range(len(pivots), m):
        if any(rows[r][n + j] != 0 for j in range(k)):
            return None
    if any(p >= n for p in pivots):
        return None
    x = [[0] * k for _ in range(n)]
    for r, pc in enumerate(pivots):
        for j in range(k):
            x[pc][j] = rows[r][n + j]
    return x


def sp_rank(m):
    return rank_dense(m.to_dense()) if not m.is_zero() else 0


def sp_nullspace(m):
    return [SpMat.column(v) for v in nullspace_dense(m.to_dense())]


def sp_solve(a, b):
    x = solve_dense(a.to_dense(), b.to_dense())
    return None if x is None else SpMat.from_dense(x, ncols=b.ncols)


def split_idempotent_matrices(p_mat):
    """Exact rank factorization of an idempotent: returns (rank, p, q) with
    q @ p = P, p @ q = identity."""
    pp = p_mat @ p_mat
    assert pp == p_mat, "split_idempotent needs an exact idempotent"
    dense = p_mat.to_dense()
    _, pivots = rref_dense(dense)
    r = len(pivots)
    n = p_mat.nrows
    q = SpMat.from_entries(n, r, ((i, a, dense[i][c])
                                  for a, c in enumerate(pivots)
                                  for i in range(n) if dense[i][c] != 0))
    if r == 0:
        return 0, SpMat.zero(0, n), q
    p = sp_solve(q, p_mat)
    assert p is not None
    assert p @ q == SpMat.identity(r)
    assert q @ p == p_mat
    return r, p, q


def inertia_symmetric(mat):
    """Sylvester inertia (pos, neg, zero) of a symmetric rational matrix,
    by exact congruence diagonalization."""
    n = len(mat)
    m = [[Fraction(x) for x in row] for row in mat]
    for i in range(n):
        for j in range(n):
            assert m[i][j] == m[j][i], "inertia needs a symmetric matrix"
    active = list(range(n))
    pos = neg = zero = 0
    while active:
        piv = None
        for i in active:
            if m[i][i] != 0:
                piv = i
                break
        if piv is None:
            hyp = None
            for a, i in enumerate(active):
                for j in active[a + 1:]:
                    if m[i][j] != 0:
                        hyp = (i, j)
                        break
                if hyp:
                    break
            if hyp is None:
                zero += len(active)
                break
            i, j = hyp
            # congruence: add row/col j onto i, making m[i][i] = 2 m[i][j] != 0
            for k in range(n):
                m[i][k] = m[i][k] + m[j][k]
            for k in range(n):
                m[k][i] = m[k][i] + m[k][j]
            piv = i
        d = m[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            f = m[i][piv] / d
            if f == 0:
                continue
            for k in range(n):
                m[i][k] = m[i][k] - f * m[piv][k]
            for k in range(n):
                m[k][i] = m[k][i] - f * m[k][piv]
    return pos, neg, zero
