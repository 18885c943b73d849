"""Spread machinery: Desarguesian line spreads of W(3, q), additive partial
spreads of H(3, q^2), the field-reduction spread of PG(4m-3, q^2) carrying a
Hermitian structure, and the large partial spread of H(8m-5, q^2) built from
three pairwise disjoint generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import (
    NotAGenerator,
    NotPairwiseDisjoint,
    SearchExhausted,
    Singular,
    TooLarge,
    TowerUnavailable,
    VerificationFailed,
)
from .field import FieldSpec, FieldTower
from .linalg import Mat, Subspace, inverse, rank, solve_row
from .polar import (
    HERMITIAN,
    PolarSpace,
    adapt_pair,
    enumerate_herm_matrices,
    enumerate_sym_matrices,
    hermitian_unit_frame,
    transversal_polarity,
)


@dataclass
class PartialSpread:
    space: PolarSpace
    members: list
    provenance: str = ""

    def __len__(self):
        return len(self.members)

    def validate(self):
        from .linalg import _echelonize

        for g in self.members:
            if not self.space.is_generator(g):
                raise NotAGenerator("partial spread member is not a generator")
        keys = {g.key() for g in self.members}
        if len(keys) != len(self.members):
            raise NotPairwiseDisjoint("repeated member")
        spec = self.space.field
        full = self.space.dim
        for i in range(len(self.members)):
            gi = self.members[i]
            for j in range(i + 1, len(self.members)):
                gj = self.members[j]
                if gi.dim + gj.dim == full:
                    rows = gi.basis.row_list() + gj.basis.row_list()
                    ok = len(_echelonize(rows, spec, reduce_up=False)) == full
                else:
                    ok = gi.intersect(gj).dim == 0
                if not ok:
                    raise NotPairwiseDisjoint(f"members {i} and {j} meet")
        return True

    def covers_all_points(self) -> bool:
        covered = set()
        for g in self.members:
            covered.update(g.points())
        return len(covered) == _polar_point_count(self.space)


def _polar_point_count(space: PolarSpace) -> int:
    q = space.field.q
    n = space.n
    if space.kind == "symplectic":
        return (q ** (2 * n) - 1) // (q - 1)
    # Hermitian H(2n-1, q^2): (q^(2n) - 1)(q^(2n-1) + 1)/(q^2 - 1), q = base
    b = space.base_q
    return (b ** (2 * n) - 1) * (b ** (2 * n - 1) + 1) // (b * b - 1)


def _irreducible_sym_2x2(field: FieldSpec):
    """Symmetric 2x2 matrices with irreducible characteristic polynomial."""
    for t in enumerate_sym_matrices(2, field):
        tr = field.add(t[0, 0], t[1, 1])
        det = field.sub(field.mul(t[0, 0], t[1, 1]), field.mul(t[0, 1], t[1, 0]))
        if all(
            field.add(field.sub(field.mul(x, x), field.mul(tr, x)), det) != 0
            for x in range(field.q)
        ):
            yield t


def _symmetric_spread_sets(field: FieldSpec):
    """2-dimensional spaces of symmetric 2x2 matrices whose nonzero members
    are all invertible (external lines to the rank-1 conic), lex order."""
    from .linalg import left_kernel

    def as_mat(xyz):
        x, y, z = xyz
        return Mat.from_rows([[x, y], [y, z]], field)

    def det(m):
        return field.sub(field.mul(m[0, 0], m[1, 1]), field.mul(m[0, 1], m[1, 0]))

    normals = Subspace(Mat.identity(3, field)).points()
    for nu in normals:
        ker = left_kernel(Mat.from_rows([[v] for v in nu], field))
        if ker.rows != 2:
            continue
        m0, m1 = as_mat(ker.row(0)), as_mat(ker.row(1))
        ok = True
        for a in range(field.q):
            for b in range(field.q):
                if a == 0 and b == 0:
                    continue
                if det(m0.scale(a).add(m1.scale(b))) == 0:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield m0, m1


def _irreducible_herm_2x2(field: FieldSpec, base_q: int):
    """Hermitian 2x2 matrices whose GF(q)-characteristic polynomial has no
    root in the base subfield."""
    sub = field.subfield_elements(base_q)
    for t in enumerate_herm_matrices(2, field, base_q):
        tr = field.add(t[0, 0], t[1, 1])
        det = field.sub(field.mul(t[0, 0], t[1, 1]), field.mul(t[0, 1], t[1, 0]))
        if all(
            field.add(field.sub(field.mul(x, x), field.mul(tr, x)), det) != 0
            for x in sub
        ):
            yield t


def _matrix_field_members(std: PolarSpace, t: Mat, scalars) -> list:
    """The generators L(a*I + b*T) for a, b over the given scalar set."""
    f = std.field
    eye = Mat.identity(2, f)
    out = []
    for a in scalars:
        for b in scalars:
            m = eye.scale(a).add(t.scale(b))
            out.append(std.generator_from_matrix(m))
    return out


def desarguesian_spread_w3(space: PolarSpace, r: Subspace, t: Subspace) -> PartialSpread:
    """Line spread of a rank-2 symplectic space through r and t: in adapted
    coordinates with r = L(0) and t at infinity, the members are t plus
    L(a*I + b*T) for a matrix T with irreducible characteristic polynomial."""
    if space.n != 2 or space.kind != "symplectic":
        raise NotAGenerator("need a rank-2 symplectic space")
    g = adapt_pair(space, t, r)
    ginv = inverse(g)
    std = PolarSpace.symplectic(2, space.field.q)
    tmat = next(_irreducible_sym_2x2(space.field), None)
    if tmat is None:
        raise SearchExhausted("no symmetric matrix with irreducible charpoly; field tables broken")
    members_std = [std.gen_at_infinity()] + _matrix_field_members(
        std, tmat, range(space.field.q)
    )
    members = [space.transform(m, ginv) for m in members_std]
    out = PartialSpread(space, members, f"desarguesian_w3(q={space.field.q})")
    assert members[0] == t and members[1] == r
    return out


def spread_avoiding_regulus(space: PolarSpace, r: Subspace, t: Subspace, regulus) -> PartialSpread:
    """Desarguesian spread through r and t meeting the given regulus exactly
    in r and t; deterministic first-success search over admissible T."""
    q = space.field.q
    if len(regulus) != q + 1:
        raise NotPairwiseDisjoint(f"a regulus has q+1 = {q + 1} lines")
    keys = {m.key() for m in regulus}
    if r.key() not in keys or t.key() not in keys:
        raise NotPairwiseDisjoint("regulus must contain r and t")
    g = adapt_pair(space, t, r)
    std = PolarSpace.symplectic(2, q)
    f = space.field
    others = []
    for m in regulus:
        if m.key() in (r.key(), t.key()):
            continue
        others.append(std.matrix_from_generator(space.transform(m, g)))
    for m0, m1 in _symmetric_spread_sets(f):
        blocked = False
        for m in others:
            try:
                solve_row(Mat.from_rows([m0.data, m1.data], f), m.data)
                blocked = True  # m lies in the spread set span{M0, M1}
                break
            except Singular:
                continue
        if blocked:
            continue
        ginv = inverse(g)
        members_std = [std.gen_at_infinity()]
        for a in range(q):
            for b in range(q):
                members_std.append(
                    std.generator_from_matrix(m0.scale(a).add(m1.scale(b)))
                )
        members = [space.transform(mm, ginv) for mm in members_std]
        out = PartialSpread(space, members, f"avoiding_regulus(q={q})")
        hit = sum(1 for mm in members if mm.key() in keys)
        if hit != 2:
            raise VerificationFailed("spread unexpectedly meets the regulus")
        return out
    raise SearchExhausted(
        "no line spread through r, t avoids this regulus; existence lemma violated"
    )


def additive_partial_spread_h3(space: PolarSpace, r: Subspace, t: Subspace) -> PartialSpread:
    """Partial spread {r} + {L(aI + bT) : a, b in GF(q)} of a rank-2 Hermitian
    space, of size q^2 + 1, in coordinates adapted so t = L(0)."""
    if space.n != 2 or space.kind != HERMITIAN:
        raise NotAGenerator("need a rank-2 Hermitian space")
    base_q = space.base_q
    g = adapt_pair(space, r, t)
    ginv = inverse(g)
    std = PolarSpace.hermitian(2, base_q)
    tmat = next(_irreducible_herm_2x2(space.field, base_q), None)
    if tmat is None:
        raise SearchExhausted("no Hermitian matrix with base-irreducible charpoly")
    scalars = space.field.subfield_elements(base_q)
    members_std = [std.gen_at_infinity()] + _matrix_field_members(std, tmat, scalars)
    members = [space.transform(m, ginv) for m in members_std]
    out = PartialSpread(space, members, f"additive_h3(q={base_q})")
    assert members[0] == r and members[1] == t
    assert len(members) == base_q**2 + 1
    return out


@dataclass
class ReducedSpread:
    """Spread of PG(4m-3, q^2) from the points of PG(1, q^(4m-2)), with the
    Hermitian structure transported through the relative trace."""

    space: PolarSpace           # Hermitian polar space with the trace Gram
    members: list               # one (2m-2)-space per point of PG(1, q^(4m-2))
    hermitian_members: list     # indices of totally isotropic members
    pairing: dict               # index -> index of the polarity partner
    m: int
    q: int

    def pairs(self):
        """Unordered partner pairs {i, j}, each listed once (i < j)."""
        seen = []
        for i, j in sorted(self.pairing.items()):
            if i < j:
                seen.append((i, j))
        return seen


def field_reduction_spread(m: int, q: int) -> ReducedSpread:
    if m < 1:
        raise TowerUnavailable("m must be at least 1")
    sub = FieldSpec.of_order(q * q)
    try:
        sup = FieldSpec.of_order(q ** (4 * m - 2))
    except ValueError as exc:
        raise TowerUnavailable(str(exc)) from exc
    tower = FieldTower(sub, sup)
    sqrt_q = q ** (2 * m - 1)
    omega = sup.find_omega(sqrt_q)

    def sigma_big(z):
        return sup.pow(z, sqrt_q) if z else 0

    def h(xy1, xy2):
        x1, y1 = xy1
        x2, y2 = xy2
        a = sup.mul(sup.mul(x1, omega), sigma_big(y2))
        b = sup.mul(sup.mul(y1, sigma_big(omega)), sigma_big(x2))
        return sup.add(a, b)

    dim = 4 * m - 2
    half = 2 * m - 1
    amb_vecs = [(tower.basis[i], 0) for i in range(half)] + [
        (0, tower.basis[i]) for i in range(half)
    ]
    gram = Mat.zeros(dim, dim, sub)
    for i in range(dim):
        for j in range(dim):
            gram[i, j] = tower.trace(h(amb_vecs[i], amb_vecs[j]))
    if rank(gram) != dim:
        raise VerificationFailed("trace form is degenerate")
    space = PolarSpace.from_gram(HERMITIAN, half, sub, gram, q)

    def member_of(x0, y0):
        rows = []
        for i in range(half):
            bx = sup.mul(tower.basis[i], x0)
            by = sup.mul(tower.basis[i], y0)
            rows.append(list(tower.coords(bx)) + list(tower.coords(by)))
        s = Subspace.from_rows(rows, sub)
        assert s.dim == half
        return s

    proj_points = [(1, y) for y in range(sup.q)] + [(0, 1)]
    members = [member_of(x, y) for (x, y) in proj_points]
    by_key = {mem.key(): i for i, mem in enumerate(members)}
    hermitian_idx = []
    pairing = {}
    for i, mem in enumerate(members):
        absolute = h(proj_points[i], proj_points[i]) == 0
        if space.is_generator(mem):
            if not absolute:
                raise VerificationFailed("isotropy test disagrees with h(P, P)")
            hermitian_idx.append(i)
            continue
        if absolute:
            raise VerificationFailed("absolute point gave a non-isotropic member")
        image = space.perp(mem)
        j = by_key.get(image.key())
        if j is None or j == i:
            raise VerificationFailed("polarity image is not a spread member")
        if mem.intersect(members[j]).dim != 0:
            raise VerificationFailed("paired members are not disjoint")
        pairing[i] = j
    for i, j in pairing.items():
        if pairing.get(j) != i:
            raise VerificationFailed("polarity pairing is not an involution")
    if len(hermitian_idx) != sqrt_q + 1:
        raise VerificationFailed(
            f"expected {sqrt_q + 1} Hermitian members, got {len(hermitian_idx)}"
        )
    return ReducedSpread(space, members, hermitian_idx, pairing, m, q)


def herm_partial_spread(m: int, q: int, a_matrix: Mat | None = None,
                        size_guard: bool = True) -> PartialSpread:
    """Partial spread of H(8m-5, q^2) of size (3 q^(4m-2) - q^(2m-1))/2 + 1.

    Builds the field-reduction spread on the generator at infinity via its
    induced polarity, then assembles Z1 from its Hermitian members and Z2
    from the disjoint polarity pairs, three generators per pair.
    """
    if size_guard and not ((m == 1 and q <= 13) or (m == 2 and q == 2)):
        raise TooLarge("supported by default: m = 1 with q <= 13, or (m, q) = (2, 2); "
                       "pass size_guard=False to override")
    n = 4 * m - 2
    ambient = PolarSpace.hermitian(n, q)
    f = ambient.field
    pi1 = ambient.gen_at_infinity()
    pi2 = ambient.gen_zero()
    amat = a_matrix if a_matrix is not None else Mat.identity(n, f)
    pi3 = ambient.generator_from_matrix(amat)
    if pi3.intersect(pi1).dim or pi3.intersect(pi2).dim:
        raise NotPairwiseDisjoint("A must give a generator disjoint from the frame")

    m1 = transversal_polarity(ambient, pi1, pi2, pi3)
    reduced = field_reduction_spread(m, q)
    c_red = hermitian_unit_frame(f, q, reduced.space.gram)
    c_pol = hermitian_unit_frame(f, q, m1)
    carry = inverse(c_red).mul(c_pol)

    chart = pi1.basis

    def to_ambient(s: Subspace) -> Subspace:
        return Subspace(s.basis.mul(carry).mul(chart))

    amb_members = [to_ambient(s) for s in reduced.members]

    def meet(a: Subspace, b: Subspace) -> Subspace:
        return a.intersect(b)

    def polar_image_in(delta1: Subspace, target: Subspace) -> Subspace:
        out = meet(ambient.perp(delta1), target)
        if out.dim != 2 * m - 1:
            raise VerificationFailed("polarity image has wrong dimension")
        return out

    members = []
    half = 2 * m - 1
    for i in reduced.hermitian_members:
        d1 = amb_members[i]
        d2 = meet(pi3.sum(d1), pi2)
        if d2.dim != half:
            raise VerificationFailed("Delta_2 has wrong dimension")
        gen = d1.sum(d2)
        if not ambient.is_generator(gen):
            raise VerificationFailed("Z1 member is not a generator")
        members.append(gen)

    for i, j in reduced.pairs():
        # deterministic representative: lexicographically smaller basis
        d1, d1r = amb_members[i], amb_members[j]
        if d1r.key() < d1.key():
            d1, d1r = d1r, d1
        d2_of_i = meet(pi3.sum(amb_members[i]), pi2)
        if polar_image_in(d2_of_i, pi1).key() != amb_members[j].key():
            raise VerificationFailed(
                "induced polarity disagrees with the reduced-spread pairing"
            )
        d2 = meet(pi3.sum(d1), pi2)
        d3 = meet(pi2.sum(d1), pi3)
        d2r = polar_image_in(d1, pi2)
        d3r = polar_image_in(d1, pi3)
        if d1r.key() != polar_image_in(d2, pi1).key():
            raise VerificationFailed("Delta_1^rho mismatch against Delta_2-perp")
        for gen in (d1.sum(d2r), d3.sum(d1r), d2.sum(d3r)):
            if not ambient.is_generator(gen):
                raise VerificationFailed("Z2 member is not a generator")
            members.append(gen)

    want = (3 * q ** (4 * m - 2) - q ** (2 * m - 1)) // 2 + 1
    if len(members) != want:
        raise VerificationFailed(f"size {len(members)} != expected {want}")
    out = PartialSpread(ambient, members, f"herm_partial_spread(m={m}, q={q})")
    out.validate()
    return out
