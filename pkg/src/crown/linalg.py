"""Sparse exact matrices and the tensor-power (Kronecker) kernels.

Matrices are stored column-major, one dict per column mapping row index to
a nonzero scalar; absent entries are zero.  All arithmetic is exact in the
matrix's field.  Values are immutable after construction and safe to share.

The tensor basis convention is fixed once, here, and used by every module
that produces or consumes tensor-power matrices: the basis of a p-fold
tensor power of a d-dimensional space is indexed by tuples (i1, ..., ip)
in lexicographic order with the FIRST factor most significant, so the flat
index is i1*d^(p-1) + ... + ip.  `kron` follows the same convention:
kron(a, b)[(i1,i2),(j1,j2)] = a[i1,j1] * b[i2,j2].
"""

from __future__ import annotations

import itertools


class Matrix:
    """An exact sparse matrix over a fixed field.

    Construct via the classmethods; `_cols` is internal and must not be
    mutated after construction.
    """

    __slots__ = ("field", "nrows", "ncols", "_cols")

    def __init__(self, field, nrows, ncols, cols):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self._cols = cols

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, field, nrows, ncols):
        return cls(field, nrows, ncols, [dict() for _ in range(ncols)])

    @classmethod
    def identity(cls, field, n):
        one = field.one
        return cls(field, n, n, [{i: one} for i in range(n)])

    @classmethod
    def from_entries(cls, field, nrows, ncols, entries):
        """Build from an iterable of (row, col, value); values accumulate."""
        cols = [dict() for _ in range(ncols)]
        zero = field.zero
        for r, c, v in entries:
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise ValueError(f"entry ({r},{c}) out of range for {nrows}x{ncols}")
            v = field.coerce(v)
            cur = cols[c].get(r)
            w = v if cur is None else field.add(cur, v)
            if w == zero:
                cols[c].pop(r, None)
            else:
                cols[c][r] = w
        return cls(field, nrows, ncols, cols)

    @classmethod
    def from_rows(cls, field, rows):
        """Build from a dense list of row lists."""
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        entries = []
        for r, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for c, v in enumerate(row):
                entries.append((r, c, v))
        return cls.from_entries(field, nrows, ncols, entries)

    # -- accessors ----------------------------------------------------

    def entry(self, r, c):
        return self._cols[c].get(r, self.field.zero)

    def col(self, c):
        """A copy of column c as a dict row -> value."""
        return dict(self._cols[c])

    def nnz(self):
        return sum(len(col) for col in self._cols)

    def is_zero(self):
        return all(not col for col in self._cols)

    def to_triples(self):
        """Sorted list of (row, col, value) over nonzero entries."""
        out = []
        for c, col in enumerate(self._cols):
            for r in sorted(col):
                out.append((r, c, col[r]))
        out.sort(key=lambda t: (t[0], t[1]))
        return out

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self._cols == other._cols
        )

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field!r}, nnz={self.nnz()})"

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        self._check_same_shape(other)
        f = self.field
        zero = f.zero
        cols = []
        for c in range(self.ncols):
            col = dict(self._cols[c])
            for r, v in other._cols[c].items():
                w = f.add(col.get(r, zero), v)
                if w == zero:
                    col.pop(r, None)
                else:
                    col[r] = w
            cols.append(col)
        return Matrix(f, self.nrows, self.ncols, cols)

    def __sub__(self, other):
        return self + other.scale(self.field.neg(self.field.one))

    def scale(self, scalar):
        f = self.field
        scalar = f.coerce(scalar)
        if scalar == f.zero:
            return Matrix.zero(f, self.nrows, self.ncols)
        cols = [{r: f.mul(scalar, v) for r, v in col.items()} for col in self._cols]
        return Matrix(f, self.nrows, self.ncols, cols)

    def __matmul__(self, other):
        return mat_compose(self, other)

    def transpose(self):
        cols = [dict() for _ in range(self.nrows)]
        for c, col in enumerate(self._cols):
            for r, v in col.items():
                cols[r][c] = v
        return Matrix(self.field, self.ncols, self.nrows, cols)

    def _check_same_shape(self, other):
        if self.field != other.field:
            raise ValueError("field mismatch")
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")

    def _row_dicts(self):
        rows = [dict() for _ in range(self.nrows)]
        for c, col in enumerate(self._cols):
            for r, v in col.items():
                rows[r][c] = v
        return rows


def mat_compose(a: Matrix, b: Matrix) -> Matrix:
    """Matrix of the composite linear map: `a` applied after `b`."""
    if a.field != b.field:
        raise ValueError("field mismatch")
    if a.ncols != b.nrows:
        raise ValueError(f"dimension mismatch: {a.ncols} != {b.nrows}")
    f = a.field
    zero = f.zero
    acols = a._cols
    cols = []
    for c in range(b.ncols):
        acc: dict = {}
        for k, v in b._cols[c].items():
            for r, w in acols[k].items():
                x = f.mul(w, v)
                cur = acc.get(r)
                y = x if cur is None else f.add(cur, x)
                if y == zero:
                    acc.pop(r, None)
                else:
                    acc[r] = y
        cols.append(acc)
    return Matrix(f, a.nrows, b.ncols, cols)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product in the fixed lexicographic tensor convention."""
    if a.field != b.field:
        raise ValueError("field mismatch")
    f = a.field
    nrows = a.nrows * b.nrows
    ncols = a.ncols * b.ncols
    cols = [dict() for _ in range(ncols)]
    for ca in range(a.ncols):
        cola = a._cols[ca]
        if not cola:
            continue
        base_c = ca * b.ncols
        for cb in range(b.ncols):
            colb = b._cols[cb]
            if not colb:
                continue
            out = cols[base_c + cb]
            for ra, va in cola.items():
                base_r = ra * b.nrows
                for rb, vb in colb.items():
                    out[base_r + rb] = f.mul(va, vb)
    return Matrix(f, nrows, ncols, cols)


def kron_power(m: Matrix, p: int) -> Matrix:
    """p-fold Kronecker power; p = 0 gives the 1x1 identity."""
    if p < 0:
        raise ValueError("negative tensor power")
    out = Matrix.identity(m.field, 1)
    for _ in range(p):
        out = kron(out, m)
    return out


def vstack(mats) -> Matrix:
    """Stack matrices with equal column count vertically, in order."""
    mats = list(mats)
    if not mats:
        raise ValueError("empty stack")
    f = mats[0].field
    ncols = mats[0].ncols
    for m in mats:
        if m.field != f or m.ncols != ncols:
            raise ValueError("mismatched stack")
    cols = [dict() for _ in range(ncols)]
    offset = 0
    for m in mats:
        for c in range(ncols):
            col = cols[c]
            for r, v in m._cols[c].items():
                col[offset + r] = v
        offset += m.nrows
    return Matrix(f, offset, ncols, cols)


# -- elimination ------------------------------------------------------

def _rref(field, rows, ncols):
    """In-place reduced row echelon form with first-nonzero pivoting.

    `rows` is a list of dicts col -> value.  Returns the pivot column list;
    determinism comes from always taking the topmost row with a nonzero
    entry in the current column.
    """
    zero = field.zero
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(rows)):
            if col in rows[i]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = field.inv(rows[rank][col])
        if inv != field.one:
            rows[rank] = {c: field.mul(inv, v) for c, v in rows[rank].items()}
        pivot_row = rows[rank]
        for i in range(len(rows)):
            if i == rank:
                continue
            fac = rows[i].get(col)
            if fac is None:
                continue
            target = rows[i]
            for c, v in pivot_row.items():
                w = field.sub(target.get(c, zero), field.mul(fac, v))
                if w == zero:
                    target.pop(c, None)
                else:
                    target[c] = w
        pivots.append(col)
        rank += 1
    return pivots


def mat_rank(a: Matrix) -> int:
    """Exact rank by Gaussian elimination (first-nonzero pivot rule)."""
    rows = a._row_dicts()
    return len(_rref(a.field, rows, a.ncols))


def kernel_basis_with_free(a: Matrix):
    """Right-kernel basis plus the free columns that index it.

    Returns (basis, free_cols): one vector per free column of the RREF in
    ascending free-column order; the vector for free column f has a 1 at f
    and its other support lies on pivot columns.
    """
    f = a.field
    rows = a._row_dicts()
    pivots = _rref(f, rows, a.ncols)
    pivot_set = set(pivots)
    basis = []
    free_cols = []
    for free in range(a.ncols):
        if free in pivot_set:
            continue
        vec = {free: f.one}
        for i, pc in enumerate(pivots):
            v = rows[i].get(free)
            if v is not None:
                vec[pc] = f.neg(v)
        basis.append(vec)
        free_cols.append(free)
    return basis, free_cols


def kernel_basis(a: Matrix):
    """Basis of the right kernel as a list of dicts col -> value."""
    return kernel_basis_with_free(a)[0]


def left_inverse(a: Matrix) -> Matrix:
    """A left inverse L with L @ a == identity, for full-column-rank a.

    Raises ValueError when the columns are dependent.  The product is
    re-verified before returning.
    """
    f = a.field
    n = a.ncols
    rows = a._row_dicts()
    for r in range(a.nrows):
        rows[r][n + r] = f.one  # augment with the identity
    pivots = _rref(f, rows, n)  # pivot search restricted to original columns
    if pivots != list(range(n)):
        raise ValueError("matrix does not have full column rank")
    entries = []
    for i in range(n):
        for c, v in rows[i].items():
            if c >= n:
                entries.append((i, c - n, v))
    lift = Matrix.from_entries(f, n, a.nrows, entries)
    if mat_compose(lift, a) != Matrix.identity(f, n):
        raise AssertionError("left inverse verification failed")
    return lift


# -- tensor index helpers ----------------------------------------------

def tensor_flat(indices, dim: int) -> int:
    flat = 0
    for i in indices:
        flat = flat * dim + i
    return flat


def tensor_unflat(flat: int, dim: int, p: int):
    out = []
    for _ in range(p):
        out.append(flat % dim)
        flat //= dim
    return tuple(reversed(out))


def tensor_product_sum_witness(terms, p: int):
    """Exact zero test for  sum_k  c_k * (M_k1 (x) ... (x) M_kp),  streamed.

    `terms` is a list of (coefficient, [p square matrices of equal
    dimension]).  The full operator is never materialized: columns are
    enumerated in blocks sharing the first tensor index, so memory stays
    bounded by one block.  Returns None when the sum is exactly zero,
    otherwise the lowest-index witness (col_tuple, row_tuple, value).
    """
    if not terms:
        return None
    field = terms[0][1][0].field
    dim = terms[0][1][0].ncols
    for _, mats in terms:
        if len(mats) != p:
            raise ValueError("term arity mismatch")
        for m in mats:
            if m.field != field or m.nrows != dim or m.ncols != dim:
                raise ValueError("tensor factors must be square of equal dimension")
    zero = field.zero
    mul = field.mul
    add = field.add
    rest_range = range(dim)
    for k1 in rest_range:
        acc: dict = {}
        for coef, mats in terms:
            col1 = mats[0]._cols[k1]
            if not col1:
                continue
            rest_mats = mats[1:]
            for rest in itertools.product(rest_range, repeat=p - 1):
                cols = [col1]
                ok = True
                for m, j in zip(rest_mats, rest):
                    cj = m._cols[j]
                    if not cj:
                        ok = False
                        break
                    cols.append(cj)
                if not ok:
                    continue
                cflat = tensor_flat(rest, dim)
                bucket = acc.get(cflat)
                if bucket is None:
                    bucket = acc[cflat] = {}
                for combo in itertools.product(*(c.items() for c in cols)):
                    rflat = 0
                    val = coef
                    for r, v in combo:
                        rflat = rflat * dim + r
                        val = mul(val, v)
                    cur = bucket.get(rflat)
                    bucket[rflat] = val if cur is None else add(cur, val)
        for cflat in sorted(acc):
            nonzero = {r: v for r, v in acc[cflat].items() if v != zero}
            if nonzero:
                r = min(nonzero)
                col_tuple = (k1,) + tensor_unflat(cflat, dim, p - 1)
                return (col_tuple, tensor_unflat(r, dim, p), nonzero[r])
    return None


def tensor_power_sum_witness(terms, p: int):
    """Like `tensor_product_sum_witness` for terms (c_k, M_k) with equal factors."""
    return tensor_product_sum_witness([(c, [m] * p) for c, m in terms], p)
