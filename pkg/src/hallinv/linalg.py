"""Exact linear algebra kernels: integer Smith normal form and rank over a field.

Everything here works with arbitrary-precision Python integers or with
exact field elements; there is no floating point anywhere.  The single
convention used throughout the package: an m x n integer matrix A presents
the abelian group Z^n / (row space of A).
"""

from __future__ import annotations


class IntMatrix:
    """Dense integer matrix.  Rows or columns may be zero (0 x n matrices occur
    naturally as Jacobians of free groups)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries):
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError("entry grid does not match the stated shape")
        self.rows = rows
        self.cols = cols
        self.entries = [list(map(int, r)) for r in entries]

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n):
        m = cls.zeros(n, n)
        for i in range(n):
            m.entries[i][i] = 1
        return m

    @classmethod
    def from_rows(cls, rows_list, cols=None):
        rows = len(rows_list)
        if cols is None:
            if rows == 0:
                raise ValueError("cols required for a 0-row matrix")
            cols = len(rows_list[0])
        return cls(rows, cols, [list(r) for r in rows_list])

    def copy(self):
        return IntMatrix(self.rows, self.cols, self.entries)

    def transpose(self):
        return IntMatrix(self.cols, self.rows,
                         [[self.entries[i][j] for i in range(self.rows)]
                          for j in range(self.cols)])

    def mul(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = IntMatrix.zeros(self.rows, other.cols)
        for i in range(self.rows):
            row = self.entries[i]
            for j in range(other.cols):
                out.entries[i][j] = sum(row[k] * other.entries[k][j]
                                        for k in range(self.cols))
        return out

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, {self.entries})"


class SmithForm:
    """Result of a Smith normal form computation.

    divisors: the nonzero diagonal d_1 | d_2 | ... | d_r (1's retained).
    rank: r.  coker_free_rank: cols - r, the free rank of Z^cols / rowspace.
    transform: (U, V) with U*A*V = diag(divisors) and det(U), det(V) = +-1,
    present only when requested.  vinv is V^-1, kept because the
    abelianization code needs both directions of the change of basis.
    """

    __slots__ = ("divisors", "rank", "coker_free_rank", "transform", "vinv")

    def __init__(self, divisors, cols, transform=None, vinv=None):
        self.divisors = list(divisors)
        self.rank = len(self.divisors)
        self.coker_free_rank = cols - self.rank
        self.transform = transform
        self.vinv = vinv

    def coker_torsion(self):
        """Elementary divisors > 1, i.e. the torsion of the cokernel."""
        return [d for d in self.divisors if d > 1]


def _least_nonzero_pivot(a, t, rows, cols):
    """Position of the nonzero entry of smallest absolute value in the
    trailing block a[t:, t:], or None."""
    best = None
    best_val = None
    for i in range(t, rows):
        ai = a[i]
        for j in range(t, cols):
            v = ai[j]
            if v != 0 and (best_val is None or abs(v) < best_val):
                best, best_val = (i, j), abs(v)
                if best_val == 1:
                    return best
    return best


def _balanced_div(x, d):
    """Quotient and remainder with |remainder| <= |d| / 2."""
    q, r = divmod(x, d)
    if 2 * abs(r) > abs(d):
        q += 1
        r -= d
    return q, r


def smith_normal_form(A, want_transform=False):
    """Smith normal form of an integer matrix by Euclidean reduction.

    The pivot is re-chosen as the nonzero entry of least absolute value in
    the whole trailing block before every reduction sweep, and reduction
    uses nearest-integer quotients, so the pivot at least halves whenever
    a sweep leaves a nonzero remainder; this keeps intermediate entries
    from the explosive growth a fixed pivot suffers.  The divisibility
    chain is enforced at the end by folding offending diagonal entries
    back into a 2 x 2 block.  Exact for any input.
    """
    rows, cols = A.rows, A.cols
    a = [row[:] for row in A.entries]
    if want_transform:
        u = IntMatrix.identity(rows).entries
        v = IntMatrix.identity(cols).entries
        vinv = IntMatrix.identity(cols).entries
    else:
        u = v = vinv = None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if v is not None:
            for row in v:
                row[i], row[j] = row[j], row[i]
            vinv[i], vinv[j] = vinv[j], vinv[i]

    def add_row(src, dst, c):
        # row dst += c * row src
        asrc, adst = a[src], a[dst]
        for k in range(cols):
            adst[k] += c * asrc[k]
        if u is not None:
            usrc, udst = u[src], u[dst]
            for k in range(rows):
                udst[k] += c * usrc[k]

    def add_col(src, dst, c):
        # col dst += c * col src
        for row in a:
            row[dst] += c * row[src]
        if v is not None:
            for row in v:
                row[dst] += c * row[src]
            # inverse op on vinv: row src -= c * row dst
            wsrc, wdst = vinv[src], vinv[dst]
            for k in range(cols):
                wsrc[k] -= c * wdst[k]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        if u is not None:
            u[i] = [-x for x in u[i]]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        pos = _least_nonzero_pivot(a, t, rows, cols)
        if pos is None:
            break
        while True:
            i, j = pos
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            piv = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    q, r = _balanced_div(a[i][t], piv)
                    if q:
                        add_row(t, i, -q)
                    if r:
                        clean = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    q, r = _balanced_div(a[t][j], piv)
                    if q:
                        add_col(t, j, -q)
                    if r:
                        clean = False
            if clean:
                break
            pos = _least_nonzero_pivot(a, t, rows, cols)
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    # enforce the divisibility chain d_i | d_{i+1}
    r = t
    changed = True
    while changed:
        changed = False
        for i in range(r - 1):
            if a[i + 1][i + 1] % a[i][i] != 0:
                # fold d_{i+1} into the 2x2 block at (i, i) and re-reduce
                add_col(i + 1, i, 1)
                q = a[i + 1][i] // a[i][i]
                add_row(i, i + 1, -q)
                while a[i + 1][i] != 0:
                    swap_rows(i, i + 1)
                    q = a[i + 1][i] // a[i][i]
                    add_row(i, i + 1, -q)
                q = a[i][i + 1] // a[i][i]
                add_col(i, i + 1, -q)
                assert a[i][i + 1] == 0
                if a[i][i] < 0:
                    negate_row(i)
                if a[i + 1][i + 1] < 0:
                    negate_row(i + 1)
                changed = True

    divisors = [a[i][i] for i in range(r)]
    assert all(d > 0 for d in divisors)
    assert all(divisors[i + 1] % divisors[i] == 0 for i in range(r - 1))

    transform = None
    vinv_m = None
    if want_transform:
        U = IntMatrix.from_rows(u, rows) if rows else IntMatrix.zeros(0, 0)
        V = IntMatrix.from_rows(v, cols) if cols else IntMatrix.zeros(0, 0)
        vinv_m = IntMatrix.from_rows(vinv, cols) if cols else IntMatrix.zeros(0, 0)
        transform = (U, V)
    return SmithForm(divisors, cols, transform, vinv_m)


def rank_over_field(M, K):
    """Rank of a matrix of field elements by exact Gaussian elimination.

    M is a list of rows of FieldElement, all owned by the handle K.
    An empty matrix (or one with no columns) has rank 0.
    """
    if not M or not M[0]:
        return 0
    rows = [list(r) for r in M]
    m, n = len(rows), len(rows[0])
    for r in rows:
        if len(r) != n:
            raise ValueError("ragged matrix")
        for x in r:
            if x.owner is not K:
                raise ValueError("entry from a different field handle")
    rank = 0
    col = 0
    while rank < m and col < n:
        piv = None
        for i in range(rank, m):
            if not rows[i][col].is_zero():
                piv = i
                break
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inv()
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(rank + 1, m):
            c = rows[i][col]
            if not c.is_zero():
                rows[i] = [x - c * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def corank_over_field(M, K, n_cols):
    """Columns minus rank; n_cols must be supplied so empty matrices work."""
    return n_cols - rank_over_field(M, K)
