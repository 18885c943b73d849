"""Closed-form bound and spectrum evaluators, all in exact arithmetic.

Sources of truth are the displayed formulas for the distance-regular graphs
on generators (valencies, eigenvalues, multiplicities), the Cvetkovic and
Hoffman coclique bounds, and the 5x5 / 7x7 quotient matrices of the orbit
partition of the second subconstituent at n = 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadParams, InconsistentSystem, NonIntegerMultiplicity


def _as_int(x: Fraction, err=NonIntegerMultiplicity, what="value") -> int:
    if isinstance(x, Fraction):
        if x.denominator != 1:
            raise err(f"{what} = {x} is not an integer")
        return int(x)
    return int(x)


@dataclass
class SpectrumReport:
    eigenvalues: list
    multiplicities: list
    source: str

    @property
    def vertex_count(self) -> int:
        return sum(self.multiplicities)

    @property
    def valency(self) -> int:
        return max(self.eigenvalues)

    def check_moments(self):
        v = self.vertex_count
        s1 = sum(m * e for m, e in zip(self.multiplicities, self.eigenvalues))
        s2 = sum(m * e * e for m, e in zip(self.multiplicities, self.eigenvalues))
        if s1 != 0 or s2 != v * self.valency:
            raise InconsistentSystem(f"moment identities fail for {self.source}")
        return True

    def min_eigenvalue(self):
        return min(self.eigenvalues)

    def hoffman(self) -> Fraction:
        lam = self.min_eigenvalue()
        k = self.valency
        return Fraction(-self.vertex_count * lam, k - lam)

    def cvetkovic(self) -> int:
        nonneg = sum(m for m, e in zip(self.multiplicities, self.eigenvalues) if e >= 0)
        nonpos = sum(m for m, e in zip(self.multiplicities, self.eigenvalues) if e <= 0)
        return min(nonneg, nonpos)


@dataclass
class QuotientMatrix:
    b: list
    q: int

    def __post_init__(self):
        k = self.q**3 - 1
        for row in self.b:
            if any(x < 0 for x in row):
                raise BadParams("quotient matrix entries must be nonnegative")
            if sum(row) != k:
                raise BadParams(f"row sum {sum(row)} != valency {k}")


def additive_bound(kind: str, n: int, d: int, q: int) -> int:
    """Largest possible additive d-code size."""
    if not (1 <= d <= n) or q < 2:
        raise BadParams("need 1 <= d <= n and q >= 2")
    if kind == "sym":
        if (n - d) % 2 == 0:
            return q ** (n * (n - d + 2) // 2)
        return q ** ((n + 1) * (n - d + 1) // 2)
    if kind == "herm":
        return q ** (n * (n - d + 1))
    raise BadParams(f"unknown kind {kind!r}")


def gamma_w_spectrum(n: int, q: int) -> SpectrumReport:
    """Spectrum of the graph on all generators of W(2n-1, q), adjacency =
    meeting in an (n-2)-space."""
    if n < 1 or q < 2:
        raise BadParams("need n >= 1, q >= 2")
    qf = Fraction(q)
    eigs, mults = [], []
    for j in range(n + 1):
        theta = Fraction(q**j) * (qf ** (n - 2 * j + 1) - 1) / (q - 1) - 1
        f = (
            Fraction(q**j)
            * (qf ** (n - 2 * j + 1) + 1)
            / (q ** (n - j + 1) + 1)
        )
        for i in range(1, j + 1):
            f *= Fraction(q ** (2 * (n - i + 1)) - 1, (q**i - 1) * (q ** (i - 1) + 1))
        eigs.append(_as_int(theta, what=f"theta_{j}"))
        mults.append(_as_int(f, what=f"f_{j}"))
    rep = SpectrumReport(eigs, mults, f"gamma_w(n={n}, q={q})")
    total = 1
    for i in range(1, n + 1):
        total *= q**i + 1
    if rep.vertex_count != total:
        raise InconsistentSystem("multiplicities do not sum to the generator count")
    return rep


def gamma_h_spectrum(n: int, q: int) -> SpectrumReport:
    """Spectrum of the graph on all generators of H(2n-1, q^2)."""
    if n < 1 or q < 2:
        raise BadParams("need n >= 1, q >= 2")
    qf = Fraction(q)
    eigs, mults = [], []
    for j in range(n + 1):
        lam = Fraction(q ** (2 * j)) * (qf ** (2 * n - 4 * j + 1) - 1) / (q**2 - 1) - Fraction(
            1, q + 1
        )
        g = (
            Fraction(q ** (2 * j))
            * (qf ** (2 * n - 4 * j + 1) + 1)
            / (q ** (2 * n - 2 * j + 1) + 1)
        )
        for i in range(1, j + 1):
            g *= Fraction(
                (q ** (2 * n - 2 * i + 2) - 1) * (q ** (2 * n - 2 * i + 1) + 1),
                (q ** (2 * i) - 1) * (q ** (2 * i - 1) + 1),
            )
        eigs.append(_as_int(lam, what=f"lambda_{j}"))
        mults.append(_as_int(g, what=f"g_{j}"))
    rep = SpectrumReport(eigs, mults, f"gamma_h(n={n}, q={q})")
    total = 1
    for i in range(1, n + 1):
        total *= q ** (2 * i - 1) + 1
    if rep.vertex_count != total:
        raise InconsistentSystem("multiplicities do not sum to the generator count")
    return rep


def cvetkovic_bound(kind: str, n: int, q: int) -> int:
    """Upper bound for generators pairwise meeting in at most an (n-3)-space."""
    if n < 2:
        raise BadParams("need n >= 2")
    if kind == "sym":
        if n % 2 == 1:
            rep = gamma_w_spectrum(n, q)
            return sum(rep.multiplicities[j] for j in range((n - 1) // 2 + 1))
        out = 1
        for i in range(2, n + 1):
            out *= q**i + 1
        return out
    if kind == "herm":
        rep = gamma_h_spectrum(n, q)
        if n % 2 == 1:
            return sum(rep.multiplicities[j] for j in range((n - 1) // 2 + 1))
        return sum(rep.multiplicities[j] for j in range(n // 2 + 1, n + 1))
    raise BadParams(f"unknown kind {kind!r}")


def upper_sym3(q: int) -> int:
    """Improved 2-code bound for 3x3 symmetric matrices."""
    return q * (q**2 - 1) * (q**2 + q + 1) // 2 + 1


def quotient_matrix_w5(q: int) -> QuotientMatrix:
    """Quotient matrix of the orbit partition of the second subconstituent."""
    if q % 2 == 0:
        b = [
            [0, q**3 - 1, 0, 0, 0],
            [1, q - 2, 0, q**3 - q, 0],
            [0, 0, 0, q**2 - 1, q**2 * (q - 1)],
            [0, q, 1, q**2 - q - 2, q**2 * (q - 1)],
            [0, 0, 1, q**2 - 1, q**3 - q**2 - 1],
        ]
    else:
        h = lambda x: x // 2
        b = [
            [0, h(q**3 - 1), h(q**3 - 1), 0, 0, 0, 0],
            [1, h(q - 3), h(q - 1), h(q**3 - q), h(q**3 - q), 0, 0],
            [1, h(q - 1), h(q - 3), h(q**3 - q), h(q**3 - q), 0, 0],
            [0, h(q + 1), h(q + 1), h((q - 3) * (q + 1)), h(q**2 - 1),
             h(q**2 * (q - 1)), h(q**2 * (q - 1))],
            [0, h(q - 1), h(q - 1), h((q - 1) ** 2), h(q**2 - 1),
             h(q**2 * (q - 1)), h(q**2 * (q - 1))],
            [0, 0, 0, h(q * (q - 1)), h(q * (q + 1)),
             h(q**2 * (q - 1)) - 1, h(q**2 * (q - 1))],
            [0, 0, 0, h(q * (q - 1)), h(q * (q + 1)),
             h(q**2 * (q - 1)), h(q**2 * (q - 1)) - 1],
        ]
    return QuotientMatrix(b, q)


def charpoly(mat: list) -> list:
    """Exact characteristic polynomial coefficients, highest degree first,
    by the Faddeev-LeVerrier recursion."""
    n = len(mat)
    a = [[Fraction(x) for x in row] for row in mat]
    coeffs = [Fraction(1)]
    m_cur = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A * M_{k-1} + c_{k-1} I
        prev_c = coeffs[-1]
        am = [[sum(a[i][t] * m_cur[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            am[i][i] += prev_c
        m_cur = am
        prod = [[sum(a[i][t] * m_cur[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        trace = sum(prod[i][i] for i in range(n))
        coeffs.append(-trace / k)
    return [_as_int(c, InconsistentSystem, "charpoly coefficient") for c in coeffs]


def integer_root_multiplicities(coeffs: list, candidates: list) -> dict:
    """Divide out each candidate root to full multiplicity; the remainder
    must be the constant 1 (all roots accounted for)."""
    poly = list(coeffs)
    out = {}
    for r in candidates:
        mult = 0
        while True:
            # synthetic division by (x - r)
            quo = [poly[0]]
            for c in poly[1:]:
                quo.append(c + r * quo[-1])
            if quo[-1] != 0:
                break
            poly = quo[:-1]
            mult += 1
        if mult:
            out[r] = mult
    if poly != [1]:
        raise InconsistentSystem(f"roots outside the expected set; remainder {poly}")
    return out


def second_subconstituent_spectrum(q: int) -> SpectrumReport:
    """Spectrum of the graph on the q^6 generators of W(5, q) disjoint from
    the one at infinity: {q^3-1, q^2-1, -1, -q^2-1} with closed-form
    multiplicities, cross-checked against the proof's linear system and the
    quotient matrix."""
    eigs = [q**3 - 1, q**2 - 1, -1, -(q**2) - 1]
    mults = [
        1,
        q * (q + 1) * (q**3 - 1) // 2,
        (q**3 - 1) * (q**3 - q**2 + 1),
        q * (q - 1) * (q**3 - 1) // 2,
    ]
    # cross-check 1: the three moment equations with m0 = 1
    k = q**3 - 1
    v = q**6
    a1, a2, a3 = eigs[1], eigs[2], eigs[3]
    # solve the 3x3 system exactly
    rows = [
        [Fraction(1), Fraction(1), Fraction(1), Fraction(v - 1)],
        [Fraction(a1), Fraction(a2), Fraction(a3), Fraction(-k)],
        [Fraction(a1**2), Fraction(a2**2), Fraction(a3**2), Fraction(v * k - k**2)],
    ]
    for col in range(3):
        piv = next(r for r in range(col, 3) if rows[r][col])
        rows[col], rows[piv] = rows[piv], rows[col]
        rows[col] = [x / rows[col][col] for x in rows[col]]
        for r in range(3):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    solved = [_as_int(rows[r][3], InconsistentSystem, "multiplicity") for r in range(3)]
    if solved != mults[1:]:
        raise InconsistentSystem(f"closed-form multiplicities {mults[1:]} != solved {solved}")
    # cross-check 2: quotient-matrix eigenvalues live in the same set
    b = quotient_matrix_w5(q)
    roots = integer_root_multiplicities(charpoly(b.b), eigs)
    if set(roots) != set(eigs):
        raise InconsistentSystem("quotient matrix misses an eigenvalue")
    rep = SpectrumReport(eigs, mults, f"second_subconstituent(q={q})")
    rep.check_moments()
    return rep


def hermitian_forms_graph_bounds(n: int, q: int) -> tuple[SpectrumReport, int]:
    """Exact spectrum of the Hermitian forms graph (the subconstituent on
    the q^(n^2) generators disjoint from a fixed one) and its Hoffman bound,
    asserted equal to q^((n-1)^2) (q^(2n-1)+1)/(q+1)."""
    if n < 2:
        raise BadParams("need n >= 2")
    mq = -q
    eigs, mults = [], []
    for j in range(n + 1):
        e = Fraction(mq ** (2 * n - j) - 1, q + 1)
        m = Fraction(1)
        for i in range(1, j + 1):
            m *= Fraction(mq ** (n + 1 - i) - 1, mq**i - 1)
        for i in range(j):
            m *= -(mq**n) - mq**i
        eigs.append(_as_int(e, what=f"eigenvalue_{j}"))
        mults.append(_as_int(m, what=f"multiplicity_{j}"))
    rep = SpectrumReport(eigs, mults, f"hermitian_forms_graph(n={n}, q={q})")
    if rep.vertex_count != q ** (n * n):
        raise InconsistentSystem("multiplicities do not sum to q^(n^2)")
    rep.check_moments()
    hoffman = rep.hoffman()
    closed = Fraction(q ** ((n - 1) ** 2) * (q ** (2 * n - 1) + 1), q + 1)
    if hoffman != closed:
        raise InconsistentSystem(
            f"Hoffman bound {hoffman} differs from the closed form {closed}"
        )
    return rep, _as_int(hoffman, InconsistentSystem, "hoffman bound")
