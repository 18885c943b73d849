"""Dense exact linear algebra over a FieldSpec.

Matrices are row-major lists of integer-encoded field elements; vectors are
row vectors and subspaces are row spaces.  Ambient dimensions stay small
(at most 12), so everything is plain Gaussian elimination.
"""

from __future__ import annotations

from .errors import AmbientMismatch, Singular
from .field import FieldSpec


class Mat:
    __slots__ = ("rows", "cols", "data", "spec")

    def __init__(self, rows: int, cols: int, data, spec: FieldSpec):
        if len(data) != rows * cols:
            raise ValueError("entry count does not match shape")
        self.rows = rows
        self.cols = cols
        self.data = list(data)
        self.spec = spec

    @classmethod
    def zeros(cls, rows, cols, spec):
        return cls(rows, cols, [0] * (rows * cols), spec)

    @classmethod
    def identity(cls, n, spec):
        m = cls.zeros(n, n, spec)
        for i in range(n):
            m.data[i * n + i] = 1
        return m

    @classmethod
    def from_rows(cls, rows, spec):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [x for r in rows for x in r], spec)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i * self.cols + j]

    def __setitem__(self, ij, v):
        i, j = ij
        self.data[i * self.cols + j] = v

    def row(self, i):
        return self.data[i * self.cols : (i + 1) * self.cols]

    def row_list(self):
        return [self.row(i) for i in range(self.rows)]

    def copy(self):
        return Mat(self.rows, self.cols, self.data, self.spec)

    def key(self):
        return (self.rows, self.cols, tuple(self.data))

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.spec is other.spec
            and self.key() == other.key()
        )

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        body = "; ".join(" ".join(map(str, self.row(i))) for i in range(self.rows))
        return f"Mat({self.rows}x{self.cols} GF({self.spec.q}): {body})"

    # -- arithmetic --

    def add(self, other):
        f = self.spec
        return Mat(self.rows, self.cols, [f.add(a, b) for a, b in zip(self.data, other.data)], f)

    def sub(self, other):
        f = self.spec
        return Mat(self.rows, self.cols, [f.sub(a, b) for a, b in zip(self.data, other.data)], f)

    def neg(self):
        f = self.spec
        return Mat(self.rows, self.cols, [f.neg(a) for a in self.data], f)

    def scale(self, c):
        f = self.spec
        return Mat(self.rows, self.cols, [f.mul(c, a) for a in self.data], f)

    def mul(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        f = self.spec
        out = Mat.zeros(self.rows, other.cols, f)
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                acc = 0
                for k in range(self.cols):
                    a = ri[k]
                    if a:
                        acc = f.add(acc, f.mul(a, other.data[k * other.cols + j]))
                out.data[i * other.cols + j] = acc
        return out

    def transpose(self):
        out = Mat.zeros(self.cols, self.rows, self.spec)
        for i in range(self.rows):
            for j in range(self.cols):
                out.data[j * self.rows + i] = self.data[i * self.cols + j]
        return out

    def map_entries(self, fn):
        return Mat(self.rows, self.cols, [fn(a) for a in self.data], self.spec)

    def conj(self, base_q):
        f = self.spec
        return self.map_entries(lambda a: f.pow(a, base_q) if a else 0)

    def conj_transpose(self, base_q):
        return self.conj(base_q).transpose()

    def is_symmetric(self):
        return self.rows == self.cols and self == self.transpose()

    def is_hermitian(self, base_q):
        return self.rows == self.cols and self == self.conj_transpose(base_q)

    def is_zero(self):
        return all(a == 0 for a in self.data)


def mat_vec(m: Mat, v):
    """v as row vector: returns v * m."""
    f = m.spec
    out = [0] * m.cols
    for i, a in enumerate(v):
        if a:
            base = i * m.cols
            for j in range(m.cols):
                b = m.data[base + j]
                if b:
                    out[j] = f.add(out[j], f.mul(a, b))
    return out


def _echelonize(rows, spec, reduce_up=True):
    """In-place row echelon; returns pivot column list."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = spec.inv(rows[r][c])
        if inv != 1:
            rows[r] = [spec.mul(inv, x) for x in rows[r]]
        rng = range(nrows) if reduce_up else range(r + 1, nrows)
        for i in rng:
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [spec.sub(x, spec.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rank(m: Mat) -> int:
    rows = m.row_list()
    return len(_echelonize(rows, m.spec, reduce_up=False))


def rref(m: Mat) -> Mat:
    """Unique reduced row echelon form with zero rows dropped."""
    rows = m.row_list()
    pivots = _echelonize(rows, m.spec, reduce_up=True)
    return Mat.from_rows(rows[: len(pivots)], m.spec) if pivots else Mat(0, m.cols, [], m.spec)


def inverse(m: Mat) -> Mat:
    if m.rows != m.cols:
        raise Singular("not square")
    n = m.rows
    aug = [m.row(i) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    pivots = _echelonize(aug, m.spec, reduce_up=True)
    if len(pivots) != n or pivots != list(range(n)):
        raise Singular("matrix is singular")
    return Mat.from_rows([r[n:] for r in aug], m.spec)


def left_kernel(m: Mat) -> Mat:
    """Basis (rref) of {x : x * m = 0}."""
    n = m.rows
    aug = [m.row(i) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    _echelonize(aug, m.spec, reduce_up=True)
    ker = [r[m.cols :] for r in aug if all(x == 0 for x in r[: m.cols])]
    if not ker:
        return Mat(0, n, [], m.spec)
    rows = [list(r) for r in ker]
    _echelonize(rows, m.spec, reduce_up=True)
    return Mat.from_rows(rows, m.spec)


def solve_row(m: Mat, b) -> list[int]:
    """A deterministic particular solution x of x * m = b, or raise Singular."""
    # transpose to solve m^T x^T = b^T by elimination on columns of m
    mt = m.transpose()
    aug = [mt.row(i) + [b[i]] for i in range(mt.rows)]
    spec = m.spec
    pivots = _echelonize(aug, spec, reduce_up=True)
    x = [0] * m.rows
    ncols = m.rows
    for r, c in enumerate(pivots):
        if c == ncols:
            raise Singular("inconsistent system")
        x[c] = aug[r][ncols]
    # verify (guards against free-variable bookkeeping mistakes)
    if mat_vec(m, x) != list(b):
        raise Singular("inconsistent system")
    return x


class Subspace:
    """Row space with canonical rref basis; projective dim = rows - 1."""

    __slots__ = ("ambient_dim", "basis", "spec")

    def __init__(self, basis: Mat):
        self.basis = rref(basis)
        self.ambient_dim = basis.cols
        self.spec = basis.spec

    @classmethod
    def from_rows(cls, rows, spec, ambient_dim=None):
        rows = list(rows)
        if not rows:
            if ambient_dim is None:
                raise ValueError("empty subspace needs ambient_dim")
            return cls(Mat(0, ambient_dim, [], spec))
        return cls(Mat.from_rows(rows, spec))

    @classmethod
    def zero(cls, ambient_dim, spec):
        return cls(Mat(0, ambient_dim, [], spec))

    @property
    def dim(self) -> int:
        """Vector-space dimension."""
        return self.basis.rows

    @property
    def proj_dim(self) -> int:
        return self.basis.rows - 1

    def key(self):
        return (self.ambient_dim, self.basis.key())

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.spec is other.spec and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Subspace(dim {self.dim} of GF({self.spec.q})^{self.ambient_dim})"

    def contains(self, v) -> bool:
        if len(v) != self.ambient_dim:
            raise AmbientMismatch("vector length mismatch")
        spec = self.spec
        v = list(v)
        for i in range(self.basis.rows):
            row = self.basis.row(i)
            piv = next(j for j, x in enumerate(row) if x)
            if v[piv]:
                f = v[piv]
                v = [spec.sub(x, spec.mul(f, y)) for x, y in zip(v, row)]
        return all(x == 0 for x in v)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(other.basis.row(i)) for i in range(other.dim))

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim or self.spec is not other.spec:
            raise AmbientMismatch("subspaces in different ambients")

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        rows = self.basis.row_list() + other.basis.row_list()
        return Subspace.from_rows(rows, self.spec, self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Via the left kernel of the stacked basis [U; -V]."""
        self._check(other)
        ru, rv = self.dim, other.dim
        if ru == 0 or rv == 0:
            return Subspace.zero(self.ambient_dim, self.spec)
        stacked = Mat.from_rows(
            self.basis.row_list() + [r for r in other.basis.neg().row_list()], self.spec
        )
        ker = left_kernel(stacked)
        rows = []
        for i in range(ker.rows):
            coeff = ker.row(i)[:ru]
            rows.append(mat_vec(self.basis, coeff))
        return Subspace.from_rows(rows, self.spec, self.ambient_dim)

    def points(self):
        """Normalized projective points (first nonzero coordinate 1), in
        lexicographic order of the coefficient vectors."""
        spec = self.spec
        k = self.dim
        out = []
        for code in range(1, spec.q**k):
            coeff = []
            c = code
            for _ in range(k):
                coeff.append(c % spec.q)
                c //= spec.q
            lead = next(x for x in coeff if x)
            if lead != 1:
                continue
            out.append(tuple(mat_vec(self.basis, coeff)))
        return out


def subspace_ops(u: Subspace, v: Subspace, kind: str) -> Subspace:
    if kind == "sum":
        return u.sum(v)
    if kind == "intersect":
        return u.intersect(v)
    raise ValueError(f"unknown kind {kind!r}")
