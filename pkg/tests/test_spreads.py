import pytest

from rankforms.errors import NotPairwiseDisjoint, TooLarge
from rankforms.field import FieldSpec
from rankforms.linalg import Mat
from rankforms.polar import (
    PolarSpace,
    residual,
    residual_via_polarity,
    segre_planes,
    transversal_polarity,
)
from rankforms.spreads import (
    PartialSpread,
    additive_partial_spread_h3,
    desarguesian_spread_w3,
    field_reduction_spread,
    herm_partial_spread,
    spread_avoiding_regulus,
)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_desarguesian_spread_w3(q):
    w = PolarSpace.symplectic(2, q)
    r = w.gen_zero()
    t = w.gen_at_infinity()
    sp = desarguesian_spread_w3(w, r, t)
    assert len(sp) == q**2 + 1
    keys = {m.key() for m in sp.members}
    assert r.key() in keys and t.key() in keys
    sp.validate()
    assert sp.covers_all_points()  # every point of W(3,q) exactly once


def test_desarguesian_spread_in_residual_coordinates():
    # the spread builder must work for the induced W_P geometry too
    w = PolarSpace.symplectic(3, 3)
    p = w.gen_zero().points()[2]
    res = residual(w, p)
    sp = desarguesian_spread_w3(res.space, res.r, res.t)
    sp.validate()
    assert len(sp) == 10
    assert sp.covers_all_points()


def segre_regulus_at(w, planes, m2, qpoint):
    """R_Q = {Sigma_Q meet Pi_i} for Q a point of L(0) off the absolute set."""
    from rankforms.linalg import Subspace

    res = residual_via_polarity(w, qpoint, m2)
    sigma_full = res.to_ambient(
        Subspace(Mat.identity(res.space.dim, res.space.field))
    )
    lines = []
    qperp = w.perp(w.point(qpoint))
    for pl in planes:
        inter = sigma_full.intersect(pl)
        assert inter.dim == 2
        if not pl.contains(list(qpoint)):
            assert inter == qperp.intersect(pl)  # Sigma_Q meet Pi_i = Q-perp meet Pi_i
        lines.append(res.to_residual(inter))
    return res, lines


def test_spread_avoiding_regulus_q3_all_admissible_points():
    # odd q: every point of L(0) off the conic admits an avoiding spread
    q = 3
    w = PolarSpace.symplectic(3, q)
    f = w.field
    planes = segre_planes(w, Mat.identity(3, f))
    m2 = transversal_polarity(w, w.gen_zero(), w.gen_at_infinity(), planes[2])
    checked = 0
    for x in w.gen_zero().points():
        params = x[:3]
        acc = 0
        for i, xi in enumerate(params):
            for j, xj in enumerate(params):
                if xi and xj:
                    acc = f.add(acc, f.mul(f.mul(xi, m2[i, j]), xj))
        if acc == 0:
            continue  # absolute point, not admissible
        res, lines = segre_regulus_at(w, planes, m2, x)
        r, t = res.r, res.t
        reg_keys = {ln.key() for ln in lines}
        assert r.key() in reg_keys and t.key() in reg_keys
        sp = spread_avoiding_regulus(res.space, r, t, lines)
        sp.validate()
        assert len(sp) == q**2 + 1
        assert sum(1 for mem in sp.members if mem.key() in reg_keys) == 2
        checked += 1
    assert checked == 9  # q^2 points off the conic


def test_spread_avoiding_regulus_rejects_bad_regulus():
    w = PolarSpace.symplectic(2, 3)
    r, t = w.gen_zero(), w.gen_at_infinity()
    with pytest.raises(NotPairwiseDisjoint):
        spread_avoiding_regulus(w, r, t, [r, t])


@pytest.mark.parametrize("q", [2, 3])
def test_additive_partial_spread_h3(q):
    h = PolarSpace.hermitian(2, q)
    r = h.gen_at_infinity()
    t = h.gen_zero()
    sp = additive_partial_spread_h3(h, r, t)
    assert len(sp) == q**2 + 1
    sp.validate()
    keys = {m.key() for m in sp.members}
    assert r.key() in keys and t.key() in keys


@pytest.mark.parametrize("q,m", [(2, 1), (3, 1), (4, 1), (2, 2)])
def test_field_reduction_spread(q, m):
    rs = field_reduction_spread(m, q)
    assert len(rs.members) == q ** (4 * m - 2) + 1
    assert len(rs.hermitian_members) == q ** (2 * m - 1) + 1
    # pairwise disjoint (spread property)
    for i in range(len(rs.members)):
        for j in range(i + 1, len(rs.members)):
            assert rs.members[i].intersect(rs.members[j]).dim == 0
    # every pair is a proper involution with disjoint partners
    for i, j in rs.pairing.items():
        assert rs.pairing[j] == i and i != j
    # point partition count
    covered = set()
    for mem in rs.members:
        covered.update(mem.points())
    qq = q * q
    total = (qq ** (4 * m - 2) - 1) // (qq - 1)
    assert len(covered) == total


def test_field_reduction_spread_m1_is_point_set():
    rs = field_reduction_spread(1, 3)
    assert all(mem.dim == 1 for mem in rs.members)
    assert len(rs.members) == 10
    assert len(rs.hermitian_members) == 4  # q + 1 absolute points


@pytest.mark.parametrize(
    "m,q,size",
    [(1, 2, 6), (1, 3, 13), (1, 4, 23), (1, 5, 36), (2, 2, 93)],
)
def test_herm_partial_spread_sizes(m, q, size):
    sp = herm_partial_spread(m, q)
    assert len(sp) == size == (3 * q ** (4 * m - 2) - q ** (2 * m - 1)) // 2 + 1
    # validate() already ran inside; re-run to be explicit at small sizes
    if size <= 40:
        sp.validate()


def test_herm_partial_spread_z2_members_span_with_everything():
    # proof property: any two members span the whole space
    sp = herm_partial_spread(1, 3)
    full = sp.space.dim
    for i in range(len(sp.members)):
        for j in range(i + 1, len(sp.members)):
            assert sp.members[i].sum(sp.members[j]).dim == full


def test_herm_partial_spread_guard():
    with pytest.raises(TooLarge):
        herm_partial_spread(2, 3)


def test_partial_spread_validate_catches_meeting_members():
    w = PolarSpace.symplectic(2, 2)
    spread = desarguesian_spread_w3(w, w.gen_zero(), w.gen_at_infinity())
    bad = PartialSpread(w, spread.members[:2] + [spread.members[1]])
    with pytest.raises(NotPairwiseDisjoint):
        bad.validate()
