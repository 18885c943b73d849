"""Symplectic and Hermitian polar spaces of PG(2n-1, q).

Points are row vectors; the form is  u * gram * sigma(v)^t  where sigma is
the identity (symplectic, gram [[0,I],[-I,0]]) or the q-power conjugation
(Hermitian over GF(q^2), gram [[0,wI],[w^q I,0]] with w^q = -w).

The chart L(M) = rowspace(I | M) identifies symmetric (resp. Hermitian)
n x n matrices with the generators disjoint from the distinguished
generator at infinity spanned by the last n unit vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    AmbientMismatch,
    LengthMismatch,
    MeetsPi1,
    NotAGenerator,
    NotDisjointLine,
    NotHermitian,
    NotPairwiseDisjoint,
    NotSymmetric,
    OnSpecialGenerator,
    Singular,
)
from .field import FieldSpec
from .linalg import Mat, Subspace, inverse, left_kernel, mat_vec, rank, rref, solve_row

SYMPLECTIC = "symplectic"
HERMITIAN = "hermitian"


class PolarSpace:
    """Ambient polar geometry: kind, half-dimension n, field, Gram matrix."""

    def __init__(self, kind, n, field: FieldSpec, gram: Mat, base_q: int, omega: int | None = None):
        self.kind = kind
        self.n = n
        self.field = field
        self.gram = gram
        self.base_q = base_q
        self.omega = omega
        self.dim = gram.rows  # ambient vector dimension, 2n for standard spaces

    @classmethod
    def symplectic(cls, n: int, q: int) -> "PolarSpace":
        field = FieldSpec.of_order(q)
        g = Mat.zeros(2 * n, 2 * n, field)
        for i in range(n):
            g[i, n + i] = 1
            g[n + i, i] = field.neg(1)
        return cls(SYMPLECTIC, n, field, g, q)

    @classmethod
    def hermitian(cls, n: int, q: int) -> "PolarSpace":
        field = FieldSpec.of_order(q * q)
        w = field.find_omega(q)
        g = Mat.zeros(2 * n, 2 * n, field)
        for i in range(n):
            g[i, n + i] = w
            g[n + i, i] = field.pow(w, q)
        return cls(HERMITIAN, n, field, g, q, omega=w)

    @classmethod
    def from_gram(cls, kind, n, field, gram, base_q, omega=None) -> "PolarSpace":
        return cls(kind, n, field, gram, base_q, omega)

    def standard_sibling(self, n: int | None = None) -> "PolarSpace":
        n = self.n if n is None else n
        if self.kind == SYMPLECTIC:
            return PolarSpace.symplectic(n, self.base_q)
        return PolarSpace.hermitian(n, self.base_q)

    def is_standard_gram(self) -> bool:
        return self.gram == self.standard_sibling().gram and self.dim == 2 * self.n

    # -- form and perp --

    def sigma(self, x: int) -> int:
        if self.kind == SYMPLECTIC:
            return x
        return self.field.pow(x, self.base_q) if x else 0

    def sigma_mat(self, m: Mat) -> Mat:
        if self.kind == SYMPLECTIC:
            return m
        return m.conj(self.base_q)

    def form(self, u, v) -> int:
        if len(u) != self.dim or len(v) != self.dim:
            raise LengthMismatch("vectors must have the ambient length")
        f = self.field
        gv = mat_vec(self.gram, u)
        acc = 0
        for a, b in zip(gv, v):
            if a and b:
                acc = f.add(acc, f.mul(a, self.sigma(b)))
        return acc

    def point(self, v) -> Subspace:
        return Subspace.from_rows([list(v)], self.field)

    def perp(self, s: Subspace) -> Subspace:
        if s.ambient_dim != self.dim:
            raise AmbientMismatch("subspace not in this ambient")
        if s.dim == 0:
            return Subspace(Mat.identity(self.dim, self.field))
        n_mat = self.gram.mul(self.sigma_mat(s.basis).transpose())
        return Subspace(left_kernel(n_mat))

    def is_totally_isotropic(self, s: Subspace) -> bool:
        b = s.basis
        prod = b.mul(self.gram).mul(self.sigma_mat(b).transpose())
        return prod.is_zero()

    def is_generator(self, s: Subspace) -> bool:
        return s.dim == self.n and self.is_totally_isotropic(s)

    # -- the matrix chart --

    def gen_at_infinity(self) -> Subspace:
        """The generator spanned by the last n unit vectors."""
        rows = []
        for i in range(self.n):
            r = [0] * self.dim
            r[self.n + i] = 1
            rows.append(r)
        return Subspace.from_rows(rows, self.field)

    def gen_zero(self) -> Subspace:
        """L(0), spanned by the first n unit vectors."""
        return self.generator_from_matrix(Mat.zeros(self.n, self.n, self.field))

    def check_form_matrix(self, m: Mat):
        if m.rows != self.n or m.cols != self.n:
            raise LengthMismatch("matrix must be n x n")
        if self.kind == SYMPLECTIC:
            if not m.is_symmetric():
                raise NotSymmetric("chart matrices must be symmetric")
        else:
            if not m.is_hermitian(self.base_q):
                raise NotHermitian("chart matrices must be Hermitian")

    def generator_from_matrix(self, m: Mat) -> Subspace:
        """L(M) = rowspace(I | M); a generator disjoint from infinity."""
        self.check_form_matrix(m)
        n = self.n
        rows = []
        for i in range(n):
            rows.append([1 if j == i else 0 for j in range(n)] + m.row(i))
        return Subspace.from_rows(rows, self.field)

    def matrix_from_generator(self, g: Subspace) -> Mat:
        """Invert the chart: g must be a generator disjoint from infinity."""
        if not self.is_generator(g):
            raise NotAGenerator("not a generator of this polar space")
        n = self.n
        b = g.basis
        for i in range(n):
            for j in range(n):
                if b[i, j] != (1 if i == j else 0):
                    raise MeetsPi1("generator meets the one at infinity")
        m = Mat.from_rows([b.row(i)[n:] for i in range(n)], self.field)
        self.check_form_matrix(m)
        return m

    def transform(self, s: Subspace, g: Mat) -> Subspace:
        return Subspace(s.basis.mul(g))

    def is_isometry(self, g: Mat, target: "PolarSpace | None" = None) -> bool:
        tgt = (target or self).gram
        return g.mul(tgt).mul(self.sigma_mat(g).transpose()) == self.gram


# -- matrix enumeration (deterministic orders) --

def enumerate_sym_matrices(n: int, field: FieldSpec):
    """All symmetric n x n matrices, lexicographic in the upper-triangle tuple."""
    q = field.q
    slots = [(i, j) for i in range(n) for j in range(i, n)]
    total = q ** len(slots)
    for code in range(total):
        m = Mat.zeros(n, n, field)
        c = code
        for (i, j) in reversed(slots):
            v = c % q
            c //= q
            m[i, j] = v
            m[j, i] = v
        yield m


def enumerate_herm_matrices(n: int, field: FieldSpec, base_q: int):
    """All Hermitian n x n matrices over GF(base_q^2), deterministic order."""
    diag_vals = field.subfield_elements(base_q)
    slots = [(i, j) for i in range(n) for j in range(i, n)]
    sizes = [len(diag_vals) if i == j else field.q for (i, j) in slots]
    total = 1
    for s in sizes:
        total *= s
    for code in range(total):
        m = Mat.zeros(n, n, field)
        c = code
        for (i, j), size in zip(reversed(slots), reversed(sizes)):
            v = c % size
            c //= size
            if i == j:
                m[i, i] = diag_vals[v]
            else:
                m[i, j] = v
                m[j, i] = field.pow(v, base_q) if v else 0
        yield m


def enumerate_form_matrices(space: PolarSpace):
    if space.kind == SYMPLECTIC:
        return enumerate_sym_matrices(space.n, space.field)
    return enumerate_herm_matrices(space.n, space.field, space.base_q)


# -- Segre planes and the induced transversal polarity --

def segre_planes(space: PolarSpace, a: Mat) -> list[Subspace]:
    """The q+1 pairwise disjoint generators ruling the Segre variety through
    infinity, L(0) and L(A): [infinity, L(0)] + [L(lambda*A), lambda != 0]."""
    space.check_form_matrix(a)
    if rank(a) < space.n:
        raise Singular("A must be invertible")
    out = [space.gen_at_infinity(), space.gen_zero()]
    for lam in range(1, space.field.q):
        if space.kind == HERMITIAN and space.field.pow(lam, space.base_q) != lam:
            continue  # lambda*A Hermitian needs lambda in the base subfield
        out.append(space.generator_from_matrix(a.scale(lam)))
    return out


def transversal_line(space: PolarSpace, p, ga: Subspace, gb: Subspace) -> Subspace:
    """The unique line through p meeting both disjoint generators ga, gb."""
    pt = space.point(p)
    return pt.sum(ga).intersect(pt.sum(gb))


def transversal_polarity(space: PolarSpace, gc: Subspace, ga: Subspace, gb: Subspace) -> Mat:
    """Gram matrix, in the parameter coordinates of gc (its canonical basis
    rows), of the polarity induced on gc by the transversals to ga and gb:
    the image of the point with parameters x is {y : y M sigma(x)^t = 0}."""
    for s, t in ((gc, ga), (gc, gb), (ga, gb)):
        if s.intersect(t).dim != 0:
            raise NotPairwiseDisjoint("the three generators must be pairwise disjoint")
    n = space.n
    f = space.field
    bc = gc.basis

    def image_normal(xparams):
        p = mat_vec(bc, xparams)
        ell = transversal_line(space, p, ga, gb)
        assert ell.dim == 2, "transversal is not a line"
        h = space.perp(ell).intersect(gc)
        assert h.dim == n - 1, "image is not a hyperplane of gc"
        yrows = [solve_row(bc, h.basis.row(i)) for i in range(n - 1)]
        ker = left_kernel(Mat.from_rows(yrows, f).transpose())
        assert ker.rows == 1
        return ker.row(0)

    basis_normals = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        basis_normals.append(image_normal(e))
    mus = [1] + [0] * (n - 1)
    for j in range(1, n):
        e = [0] * n
        e[0] = 1
        e[j] = 1
        mixed = image_normal(e)
        coeff = solve_row(Mat.from_rows([basis_normals[0], basis_normals[j]], f), mixed)
        alpha, beta = coeff
        assert alpha != 0
        mus[j] = f.div(beta, alpha)
    m = Mat.zeros(n, n, f)
    for i in range(n):
        col = [f.mul(mus[i], v) for v in basis_normals[i]]
        for r in range(n):
            m[r, i] = col[r]
    if space.kind == SYMPLECTIC:
        assert m.is_symmetric(), "induced polarity is not symmetric"
    else:
        mh = m.conj_transpose(space.base_q)
        if mh != m:
            # rescale to make the Gram honestly Hermitian
            i0 = next(i for i, v in enumerate(m.data) if v)
            c = f.div(mh.data[i0], m.data[i0])
            t = next(
                (t for t in range(1, f.q) if f.mul(space.sigma(t), c) == t),
                None,
            )
            assert t is not None, "cannot normalize to a Hermitian Gram"
            m = m.scale(t)
            assert m.is_hermitian(space.base_q)
    assert rank(m) == n, "induced polarity is degenerate"
    return m


# -- point and line classifiers on W(2n-1, q) --

POINT_CLASSES = ("P0", "P1", "P2")
LINE_CLASSES = ("L0", "L1", "L2")


def classify_point(space: PolarSpace, r) -> str:
    """Orbit class of a point off the two distinguished generators: P0 when
    its transversal line lies in the polar space, else P1/P2 by the square
    class of the pairing (even q: always P1)."""
    if space.kind != SYMPLECTIC:
        raise AmbientMismatch("point classes are defined on the symplectic side")
    n = space.n
    if len(r) != 2 * n:
        raise LengthMismatch("point must have ambient length")
    x, y = list(r[:n]), list(r[n:])
    if all(v == 0 for v in x) or all(v == 0 for v in y):
        raise OnSpecialGenerator("point lies on a distinguished generator")
    f = space.field
    pairing = 0
    for a, b in zip(x, y):
        if a and b:
            pairing = f.add(pairing, f.mul(a, b))
    if pairing == 0:
        return "P0"
    if f.q % 2 == 0:
        return "P1"
    return "P1" if f.is_square(pairing) else "P2"


def line_frame_w5(space: PolarSpace, ell: Subspace):
    """(r_ell, t_ell, T_ell) for a line of W(5, q) disjoint from both
    distinguished generators."""
    pi1 = space.gen_at_infinity()
    pi2 = space.gen_zero()
    if ell.dim != 2 or not space.is_totally_isotropic(ell):
        raise NotDisjointLine("not a line of the polar space")
    if ell.intersect(pi1).dim or ell.intersect(pi2).dim:
        raise NotDisjointLine("line meets a distinguished generator")
    r_ell = pi2.sum(ell).intersect(pi1)
    t_ell = ell.sum(r_ell).intersect(pi2)
    t_big = r_ell.sum(t_ell)
    assert r_ell.dim == 2 and t_ell.dim == 2 and t_big.dim == 4
    return r_ell, t_ell, t_big


def classify_line_w5(space: PolarSpace, ell: Subspace) -> str:
    if space.kind != SYMPLECTIC or space.n != 3:
        raise AmbientMismatch("line classes are defined on W(5, q)")
    _, _, t_big = line_frame_w5(space, ell)
    t_perp = space.perp(t_big)
    assert t_perp.dim == 2
    if space.is_totally_isotropic(t_perp):
        return "L1"
    hits = sum(1 for p in ell.points() if classify_point(space, p) == "P0")
    q = space.field.q
    if q % 2 == 0:
        assert hits in (1, q + 1)
        return "L0" if hits == q + 1 else "L2"
    assert hits in (0, 2)
    return "L0" if hits == 0 else "L2"


# -- isometries adapted to generators --

def adapt_pair(space: PolarSpace, ga: Subspace, gb: Subspace) -> Mat:
    """Isometry g (acting on row vectors) onto the standard sibling space,
    with ga * g = generator at infinity and gb * g = L(0)."""
    if not (space.is_generator(ga) and space.is_generator(gb)):
        raise NotAGenerator("adapt_pair needs two generators")
    if ga.intersect(gb).dim != 0:
        raise NotPairwiseDisjoint("the generators must be disjoint")
    n = space.n
    f = space.field
    c = 1 if space.kind == SYMPLECTIC else space.standard_sibling().omega
    pairing = gb.basis.mul(space.gram).mul(space.sigma_mat(ga.basis).transpose())
    vrows = []
    for i in range(n):
        target = [0] * n
        target[i] = c
        y = solve_row(pairing, target)
        vrows.append(mat_vec(gb.basis, y))
    b = Mat.from_rows(vrows + ga.basis.row_list(), f)
    std = space.standard_sibling()
    check = b.mul(space.gram).mul(space.sigma_mat(b).transpose())
    assert check == std.gram, "adapted frame does not carry the standard Gram"
    return inverse(b)


def adapt_basis(space: PolarSpace, lam: Subspace) -> Mat:
    """Isometry g of the standard space with lam * g = generator at infinity.

    A disjoint partner generator is chosen deterministically.
    """
    if not space.is_generator(lam):
        raise NotAGenerator("adapt_basis needs a generator")
    candidates = [space.gen_zero(), space.gen_at_infinity()]
    partner = None
    for cand in candidates:
        if lam.intersect(cand).dim == 0:
            partner = cand
            break
    if partner is None:
        for m in enumerate_form_matrices(space):
            cand = space.generator_from_matrix(m)
            if lam.intersect(cand).dim == 0:
                partner = cand
                break
    if partner is None:
        raise NotAGenerator("no disjoint partner generator found")
    return adapt_pair(space, lam, partner)


def hermitian_unit_frame(field: FieldSpec, base_q: int, gram: Mat) -> Mat:
    """Rows C with C * gram * conj(C)^t = I, for a nondegenerate Hermitian Gram."""
    n = gram.rows
    f = field

    def herm_form(u, v):
        gv = mat_vec(gram, u)
        acc = 0
        for a, b in zip(gv, v):
            if a and b:
                acc = f.add(acc, f.mul(a, f.pow(b, base_q)))
        return acc

    comp = Mat.identity(n, f).row_list()
    rows = []
    while comp:
        vec = None
        for r in comp:
            if herm_form(r, r):
                vec = list(r)
                break
        if vec is None:
            found = False
            for i in range(len(comp)):
                for j in range(i + 1, len(comp)):
                    beta = herm_form(comp[i], comp[j])
                    if beta == 0:
                        continue
                    for lam in range(1, f.q):
                        cand = [f.add(a, f.mul(lam, b)) for a, b in zip(comp[i], comp[j])]
                        if herm_form(cand, cand):
                            vec = cand
                            found = True
                            break
                    if found:
                        break
                if found:
                    break
            if vec is None:
                raise Singular("Hermitian Gram is degenerate")
        norm = herm_form(vec, vec)
        target = f.inv(norm)
        t = next(t for t in range(1, f.q) if f.mul(t, f.pow(t, base_q)) == target)
        vec = [f.mul(t, x) for x in vec]
        rows.append(vec)
        # orthogonal complement inside the current span
        bcomp = Mat.from_rows(comp, f)
        pair_col = Mat.from_rows([[herm_form(r, vec)] for r in comp], f)
        ker = left_kernel(pair_col)
        comp = [mat_vec(bcomp, ker.row(i)) for i in range(ker.rows)]
    c = Mat.from_rows(rows, f)
    check = c.mul(gram).mul(c.conj(base_q).transpose())
    assert check == Mat.identity(n, f)
    return c


# -- residual W_P / H_P geometry at a point of L(0) --

@dataclass
class Residual:
    """The rank-(n-1) polar geometry on a 3-space (n=3) inside P-perp."""

    space: PolarSpace          # the induced polar space, residual coordinates
    parent: PolarSpace
    p: tuple
    sigma_basis: Mat           # rows spanning Sigma_P in ambient coordinates
    r: Subspace                # Sigma_P meet infinity, residual coordinates
    t: Subspace                # Sigma_P meet L(0), residual coordinates

    def to_ambient(self, s: Subspace) -> Subspace:
        return Subspace(s.basis.mul(self.sigma_basis))

    def to_residual(self, s: Subspace) -> Subspace:
        rows = [solve_row(self.sigma_basis, s.basis.row(i)) for i in range(s.dim)]
        return Subspace.from_rows(rows, self.space.field, self.sigma_basis.rows)


def residual_from_sigma(space: PolarSpace, p, sigma: Subspace) -> Residual:
    f = space.field
    n = space.n
    if sigma.dim != 2 * n - 2 or sigma.contains(list(p)):
        raise NotAGenerator("Sigma_P must be a complement of P inside P-perp")
    bs = sigma.basis
    gram_sub = bs.mul(space.gram).mul(space.sigma_mat(bs).transpose())
    if rank(gram_sub) != 2 * n - 2:
        raise Singular("induced form on Sigma_P is degenerate")
    sub_space = PolarSpace.from_gram(space.kind, n - 1, f, gram_sub, space.base_q, space.omega)
    res = Residual(sub_space, space, tuple(p), bs, None, None)
    r_amb = sigma.intersect(space.gen_at_infinity())
    t_amb = sigma.intersect(space.gen_zero())
    assert r_amb.dim == n - 1 and t_amb.dim == n - 1
    assert not t_amb.contains(list(p))
    res.r = res.to_residual(r_amb)
    res.t = res.to_residual(t_amb)
    assert sub_space.is_generator(res.r) and sub_space.is_generator(res.t)
    return res


def residual_via_polarity(space: PolarSpace, p, gram2: Mat) -> Residual:
    """Sigma_P = <P-perp meet infinity, P^rho> for P a point of L(0), where
    rho is the polarity of L(0) with the given Gram (in L(0) parameters).

    Only defined for P off the absolute set of rho, so that P^rho avoids P.
    """
    f = space.field
    n = space.n
    if any(p[n:]):
        raise OnSpecialGenerator("P must be a point of L(0)")
    params = list(p[:n])
    normal = [0] * n
    for i in range(n):
        acc = 0
        for j in range(n):
            g = gram2[i, j]
            sx = space.sigma(params[j])
            if g and sx:
                acc = f.add(acc, f.mul(g, sx))
        normal[i] = acc
    t_params = left_kernel(Mat.from_rows([[v] for v in normal], f))
    assert t_params.rows == n - 1
    t_amb = Subspace.from_rows(
        [row + [0] * n for row in t_params.row_list()], f
    )
    if t_amb.contains(list(p)):
        raise OnSpecialGenerator("P is absolute for this polarity")
    r_amb = space.perp(space.point(p)).intersect(space.gen_at_infinity())
    sigma = r_amb.sum(t_amb)
    return residual_from_sigma(space, p, sigma)


def residual(space: PolarSpace, p) -> Residual:
    """Deterministic Sigma_P: perp of <P, b2> where b2 is the canonical
    solution of  form(b2, r_amb) = 0, form(b2, P) = 1."""
    f = space.field
    pt = space.point(p)
    p_perp = space.perp(pt)
    r_amb = p_perp.intersect(space.gen_at_infinity())
    assert r_amb.dim == space.n - 1, "P must avoid the generator at infinity"
    # form(b2, v) = b2 . (gram . sigma(v)^t): build the 2n x k system directly
    targets = r_amb.basis.row_list() + [list(p)]
    gm = space.gram
    sys_mat = Mat.zeros(space.dim, len(targets), f)
    for jcol, v in enumerate(targets):
        sv = [space.sigma(x) for x in v]
        for irow in range(space.dim):
            acc = 0
            for k2 in range(space.dim):
                gk = gm[irow, k2]
                if gk and sv[k2]:
                    acc = f.add(acc, f.mul(gk, sv[k2]))
            sys_mat[irow, jcol] = acc
    rhs = [0] * (len(targets) - 1) + [1]
    b2 = solve_row(sys_mat, rhs)
    sigma = p_perp.intersect(space.perp(space.point(b2)))
    assert sigma.dim == 2 * space.n - 2
    return residual_from_sigma(space, p, sigma)
