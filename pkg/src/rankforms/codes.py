"""Rank-distance code constructions on symmetric and Hermitian matrices.

Codewords are n x n matrices; the distance between two words is the rank of
their difference.  The 2-code constructions realize each word as a generator
of W(5, q) or H(5, q^2) through a point of the distinguished generator L(0),
cut out by a line spread of the residual rank-2 geometry at that point.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    AmbientTooLarge,
    BadProvider,
    InvariantViolation,
    ParseError,
    TooSmall,
    UnsupportedQ,
    VerificationFailed,
)
from .field import FieldSpec
from .linalg import Mat, Subspace, inverse, rank
from .polar import (
    HERMITIAN,
    SYMPLECTIC,
    PolarSpace,
    adapt_basis,
    adapt_pair,
    enumerate_herm_matrices,
    enumerate_sym_matrices,
    residual,
    residual_via_polarity,
    segre_planes,
    transversal_polarity,
)
from .spreads import (
    PartialSpread,
    additive_partial_spread_h3,
    desarguesian_spread_w3,
    herm_partial_spread,
    spread_avoiding_regulus,
)


@dataclass
class RankCode:
    kind: str                 # "sym" or "herm"
    n: int
    q: int                    # base parameter: entries in GF(q) or GF(q^2)
    field: FieldSpec          # the entry field
    words: list
    min_distance: int | None = None
    provenance: str = ""

    def __len__(self):
        return len(self.words)

    @property
    def ambient_size(self) -> int:
        if self.kind == "sym":
            return self.q ** (self.n * (self.n + 1) // 2)
        return self.q ** (self.n * self.n)

    def check_words(self):
        seen = set()
        for w in self.words:
            if self.kind == "sym":
                if not w.is_symmetric():
                    raise InvariantViolation("non-symmetric word")
            else:
                if not w.is_hermitian(self.q):
                    raise InvariantViolation("non-Hermitian word")
            k = w.key()
            if k in seen:
                raise InvariantViolation("repeated word")
            seen.add(k)
        return True


# -- bulk rank helpers (numpy, table-driven) --

def _np_ops(field: FieldSpec):
    add, mul, neg = field.np_tables
    sub = add[:, neg]
    return add, sub, mul


def words_to_array(words, n) -> np.ndarray:
    return np.array([w.data for w in words], dtype=np.int32 if words[0].spec.q > 255 else np.uint8)


def bulk_rank3(field: FieldSpec, d: np.ndarray) -> np.ndarray:
    """Ranks of 3x3 matrices given as rows of 9 entry indices."""
    add, sub, mul = _np_ops(field)
    a, b, c, dd, e, f, g, h, i = (d[:, k] for k in range(9))

    def mu(x, y):
        return mul[x, y]

    def sb(x, y):
        return sub[x, y]

    m00 = sb(mu(e, i), mu(f, h))
    m01 = sb(mu(dd, i), mu(f, g))
    m02 = sb(mu(dd, h), mu(e, g))
    m10 = sb(mu(b, i), mu(c, h))
    m11 = sb(mu(a, i), mu(c, g))
    m12 = sb(mu(a, h), mu(b, g))
    m20 = sb(mu(b, f), mu(c, e))
    m21 = sb(mu(a, f), mu(c, dd))
    m22 = sb(mu(a, e), mu(b, dd))
    det = sb(add[mu(a, m00), mu(c, m02)], mu(b, m01))
    any_minor = (
        (m00 != 0) | (m01 != 0) | (m02 != 0) | (m10 != 0) | (m11 != 0)
        | (m12 != 0) | (m20 != 0) | (m21 != 0) | (m22 != 0)
    )
    any_entry = (d != 0).any(axis=1)
    out = np.zeros(len(d), dtype=np.uint8)
    out[any_entry] = 1
    out[any_minor] = 2
    out[det != 0] = 3
    return out


def min_distance(code: RankCode) -> int:
    """Exact minimum of rank(a - b) over unordered word pairs."""
    words = code.words
    if len(words) < 2:
        raise TooSmall("need at least two words")
    if code.n == 3 and code.field.q <= 255:
        arr = words_to_array(words, 3)
        _, sub, _ = _np_ops(code.field)
        ii, jj = np.triu_indices(len(words), 1)
        best = 4
        chunk = 1 << 19
        for s in range(0, len(ii), chunk):
            d = sub[arr[ii[s : s + chunk]], arr[jj[s : s + chunk]]]
            r = bulk_rank3(code.field, d)
            best = min(best, int(r.min()))
            if best == 1:
                break
        return best
    best = code.n + 1
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            r = rank(words[i].sub(words[j]))
            best = min(best, r)
            if best == 1:
                return 1
    return best


def verify_distance(code: RankCode, expected: int) -> RankCode:
    code.check_words()
    d = min_distance(code)
    if d != expected:
        raise VerificationFailed(f"minimum distance {d} != expected {expected}")
    return replace(code, min_distance=d)


# -- construction helpers --

def _planes_through_point(space, res, members, skip_keys, p):
    """Words of the generators <P, line> for spread lines off r_P, t_P."""
    words = []
    for m in members:
        if m.key() in skip_keys:
            continue
        line_amb = res.to_ambient(m)
        plane = Subspace.from_rows(
            [list(p)] + line_amb.basis.row_list(), space.field
        )
        assert plane.dim == space.n
        words.append(space.matrix_from_generator(plane))
    return words


def sym2_basic(q: int) -> RankCode:
    """The 2-code of (q+1)(q^3-1)+1 symmetric 3x3 matrices: all generators
    through a point P of L(0) over a Desarguesian spread of the residual
    W(3, q) at P, plus L(0) itself."""
    space = PolarSpace.symplectic(3, q)
    f = space.field
    words = [Mat.zeros(3, 3, f)]
    for p in space.gen_zero().points():
        res = residual(space, p)
        spread = desarguesian_spread_w3(res.space, res.r, res.t)
        skip = {res.r.key(), res.t.key()}
        words.extend(_planes_through_point(space, res, spread.members, skip, p))
    code = RankCode("sym", 3, q, f, words, provenance=f"sym2-basic(q={q})")
    if len(words) != (q + 1) * (q**3 - 1) + 1:
        raise VerificationFailed(f"construction produced {len(words)} words")
    return verify_distance(code, 2)


def _absolute_params(space, gram2, params):
    f = space.field
    acc = 0
    for i, xi in enumerate(params):
        if not xi:
            continue
        for j, xj in enumerate(params):
            if xj:
                acc = f.add(acc, f.mul(f.mul(xi, gram2[i, j]), space.sigma(xj)))
    return acc == 0


def sym2_extended(q: int, complete: bool = True) -> RankCode:
    """The extended 2-code of S_{3,q}, q > 2: regulus-avoiding spreads at the
    points of L(0) off the absolute set of the induced polarity, arbitrary
    Desarguesian spreads on it, the ruling planes L(lambda*I), and (with
    complete=True) the exhaustive completion by the remaining admissible
    invertible words."""
    if q <= 2:
        raise UnsupportedQ("the extended construction needs q > 2")
    space = PolarSpace.symplectic(3, q)
    f = space.field
    amat = Mat.identity(3, f)
    planes = segre_planes(space, amat)
    m2 = transversal_polarity(space, planes[1], planes[0], planes[2])
    words = [Mat.zeros(3, 3, f)]
    for lam in range(1, q):
        words.append(amat.scale(lam))
    special_cnt = 0
    for p in space.gen_zero().points():
        if _absolute_params(space, m2, p[:3]):
            special = True
        else:
            special = False
        if not special and q % 2 == 0:
            # the pole of the absolute line is special as well for even q
            special = _is_pole(space, m2, p[:3])
        if special:
            special_cnt += 1
            res = residual(space, p)
            spread = desarguesian_spread_w3(res.space, res.r, res.t)
        else:
            res = residual_via_polarity(space, p, m2)
            sigma_amb = res.to_ambient(
                Subspace(Mat.identity(res.space.dim, res.space.field))
            )
            regulus = []
            for pl in planes:
                inter = sigma_amb.intersect(pl)
                assert inter.dim == 2
                regulus.append(res.to_residual(inter))
            spread = spread_avoiding_regulus(res.space, res.r, res.t, regulus)
        skip = {res.r.key(), res.t.key()}
        words.extend(_planes_through_point(space, res, spread.members, skip, p))
    assert special_cnt == (q + 2 if q % 2 == 0 else q + 1)
    code = RankCode("sym", 3, q, f, words, provenance=f"sym2-extended(q={q})")
    code = verify_distance(code, 2)
    if complete:
        code = _complete_with_invertible_words(code)
        code = verify_distance(code, 2)
        code = replace(code, provenance=f"sym2-extended(q={q})")
    return code


def _is_pole(space, gram2, params):
    from .linalg import left_kernel, mat_vec

    f = space.field
    # pole of the absolute line: kernel of x -> gram2-image over the line
    absolutes = []
    unit = Subspace(Mat.identity(3, f))
    for x in unit.points():
        if _absolute_params(space, gram2, x):
            absolutes.append(list(x))
    line = Subspace.from_rows(absolutes[:2], f)
    img_cols = gram2.mul(space.sigma_mat(line.basis).transpose())
    pole = left_kernel(img_cols)
    assert pole.rows == 1
    return Subspace.from_rows([list(params)], f) == Subspace(pole)


def _complete_with_invertible_words(code: RankCode) -> RankCode:
    """Greedily adjoin, in enumeration order, every ambient word at rank
    distance >= 2 from the whole code (all such words are invertible)."""
    f = code.field
    arr = words_to_array(code.words, 3)
    cands = np.array(
        [m.data for m in enumerate_sym_matrices(3, f)],
        dtype=arr.dtype,
    )
    _, sub, _ = _np_ops(f)
    ok = np.ones(len(cands), dtype=bool)
    chunk = max(1, (1 << 21) // max(len(cands), 1))
    for s in range(0, len(arr), chunk):
        d = sub[cands[:, None, :], arr[None, s : s + chunk, :]]
        r = bulk_rank3(f, d.reshape(-1, 9)).reshape(len(cands), -1)
        ok &= (r >= 2).all(axis=1)
        if not ok.any():
            break
    extra = []
    for idx in np.flatnonzero(ok):
        m = Mat(3, 3, [int(x) for x in cands[idx]], f)
        if all(rank(m.sub(e)) >= 2 for e in extra):
            extra.append(m)
    if not extra:
        return code
    return replace(code, words=code.words + extra, min_distance=None)


def reference_h3_spread(q: int, provider: str = "field_reduction",
                        spread: PartialSpread | None = None) -> PartialSpread:
    """A partial spread of the standard H(3, q^2) containing the two standard
    disjoint generators (at infinity and L(0)), from the named provider."""
    std = PolarSpace.hermitian(2, q)
    pi1, pi2 = std.gen_at_infinity(), std.gen_zero()
    if provider == "additive":
        return additive_partial_spread_h3(std, pi1, pi2)
    if provider == "field_reduction":
        base = herm_partial_spread(1, q)
    elif provider == "file":
        if spread is None:
            raise BadProvider("file provider needs a loaded spread")
        base = spread
        if base.space.kind != HERMITIAN or base.space.n != 2 or base.space.base_q != q:
            raise BadProvider("spread is not a partial spread of H(3, q^2)")
        base.validate()
        if len(base) < 3:
            raise BadProvider("spread must have at least 3 members")
    else:
        raise BadProvider(f"unknown provider {provider!r}")
    keys = {m.key() for m in base.members}
    if pi1.key() in keys and pi2.key() in keys:
        return base
    g = adapt_pair(base.space, base.members[0], base.members[1])
    members = [std.transform(m, g) for m in base.members]
    out = PartialSpread(std, members, base.provenance + "+normalized")
    assert members[0] == pi1 and members[1] == pi2
    return out


def herm2(q: int, provider: str = "field_reduction",
          spread: PartialSpread | None = None) -> RankCode:
    """The 2-code of Hermitian 3x3 matrices over GF(q^2): through every point
    of L(0), the generators over a partial spread of the residual H(3, q^2)
    through r_P and t_P, plus L(0)."""
    space = PolarSpace.hermitian(3, q)
    f = space.field
    ref = reference_h3_spread(q, provider, spread)
    std = ref.space
    pi1k, pi2k = std.gen_at_infinity().key(), std.gen_zero().key()
    ref_members = [m for m in ref.members if m.key() not in (pi1k, pi2k)]
    if len(ref_members) != len(ref.members) - 2:
        raise BadProvider("reference spread must contain the standard pair")
    words = [Mat.zeros(3, 3, f)]
    for p in space.gen_zero().points():
        res = residual(space, p)
        g = adapt_pair(res.space, res.r, res.t)
        ginv = inverse(g)
        members = [res.space.transform(m, ginv) for m in ref_members]
        skip = set()
        words.extend(_planes_through_point(space, res, members, skip, p))
    size = len(ref.members)
    npoints = q**4 + q**2 + 1
    want = npoints * (size - 2) + 1
    if len(words) != want:
        raise VerificationFailed(f"{len(words)} words != {want}")
    code = RankCode(
        "herm", 3, q, f, words,
        provenance=f"herm2(q={q}, provider={provider}, spread_size={size})",
    )
    return verify_distance(code, 2)


def ncode_from_partial_spread(sp: PartialSpread) -> RankCode:
    """Full-rank-distance code from a partial spread: adapt the lex-least
    member onto the generator at infinity and chart the others."""
    if len(sp) < 2:
        raise TooSmall("need at least two members")
    space = sp.space
    if not space.is_standard_gram():
        raise BadProvider("partial spread must live in a standard polar space")
    lam = min(sp.members, key=lambda s: s.key())
    g = adapt_basis(space, lam)
    words = []
    for m in sp.members:
        if m.key() == lam.key():
            continue
        words.append(space.matrix_from_generator(space.transform(m, g)))
    kind = "sym" if space.kind == SYMPLECTIC else "herm"
    code = RankCode(
        kind, space.n, space.base_q, space.field, words,
        provenance=f"ncode[{sp.provenance}]",
    )
    return verify_distance(code, space.n)


def ambient_words(code_kind: str, n: int, field: FieldSpec, base_q: int):
    if code_kind == "sym":
        return enumerate_sym_matrices(n, field)
    return enumerate_herm_matrices(n, field, base_q)


def is_maximal(code: RankCode) -> bool:
    """No ambient word can be added without dropping the minimum distance."""
    if code.ambient_size > 10**7:
        raise AmbientTooLarge("ambient enumeration over 10^7 words")
    d = code.min_distance if code.min_distance is not None else min_distance(code)
    if code.n == 3 and code.field.q <= 255:
        arr = words_to_array(code.words, 3)
        cands = np.array([m.data for m in ambient_words(code.kind, 3, code.field, code.q)],
                         dtype=arr.dtype)
        _, sub, _ = _np_ops(code.field)
        ok = np.ones(len(cands), dtype=bool)
        chunk = max(1, (1 << 21) // max(len(cands), 1))
        for s in range(0, len(arr), chunk):
            dm = sub[cands[ok][:, None, :], arr[None, s : s + chunk, :]]
            r = bulk_rank3(code.field, dm.reshape(-1, 9)).reshape(-1, dm.shape[1])
            still = (r >= d).all(axis=1)
            idx = np.flatnonzero(ok)
            ok[idx[~still]] = False
            if not ok.any():
                return True
        return not bool(ok.any())
    keys = {w.key() for w in code.words}
    for m in ambient_words(code.kind, code.n, code.field, code.q):
        if m.key() in keys:
            continue
        if all(rank(m.sub(w)) >= d for w in code.words):
            return False
    return True


# -- file format --

def export_code(code: RankCode, path: str):
    lines = [
        f"rankcode kind={code.kind} p={code.field.p} k={code.field.k} "
        f"n={code.n} field={code.field.descriptor()}"
    ]
    lines.append(f"# provenance: {code.provenance}")
    if code.min_distance is not None:
        lines.append(f"# min_distance: {code.min_distance}")
    for w in code.words:
        lines.append(" ".join(str(x) for x in w.data))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def import_code(path: str, trust: bool = False) -> RankCode:
    with open(path) as fh:
        raw = [ln.strip() for ln in fh]
    lines = [ln for ln in raw if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("rankcode "):
        raise ParseError("missing rankcode header")
    fields = {}
    for tok in lines[0].split()[1:]:
        if "=" not in tok:
            raise ParseError(f"bad header token {tok!r}")
        k, v = tok.split("=", 1)
        fields[k] = v
    try:
        kind = fields["kind"]
        p, k, n = int(fields["p"]), int(fields["k"]), int(fields["n"])
        spec = FieldSpec.from_descriptor(fields["field"])
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad header: {exc}") from exc
    if kind not in ("sym", "herm"):
        raise ParseError(f"unknown kind {kind!r}")
    if spec.p != p or spec.k != k:
        raise ParseError("field descriptor disagrees with p, k")
    if kind == "herm":
        if k % 2:
            raise ParseError("Hermitian codes need a square field order")
        base_q = p ** (k // 2)
    else:
        base_q = spec.q
    words = []
    for ln in lines[1:]:
        vals = [int(x) for x in ln.split()]
        if len(vals) != n * n:
            raise ParseError(f"expected {n * n} entries per word")
        if any(not 0 <= v < spec.q for v in vals):
            raise ParseError("entry out of field range")
        words.append(Mat(n, n, vals, spec))
    code = RankCode(kind, n, base_q, spec, words, provenance=f"import({path})")
    if not trust:
        code.check_words()
        if len(words) >= 2:
            code = replace(code, min_distance=min_distance(code))
    return code
