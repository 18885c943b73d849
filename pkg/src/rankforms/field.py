"""Table-driven exact arithmetic in GF(p^k) for small prime powers.

Elements are encoded as integers in [0, q): the index of the coefficient
vector (c0, .., c_{k-1}) of the polynomial basis, i.e. c0 + c1*p + ... .
The defining irreducible polynomial is the lexicographically smallest monic
irreducible of degree k over GF(p), so encodings are bit-stable across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    DivisionByZero,
    EvenCharacteristic,
    IncompatibleTower,
    MixedFields,
    NotAQuadraticExtension,
)

SUPPORTED_PRIMES = (2, 3, 5, 7, 11, 13)
MAX_DEGREE = 12


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p^k, or raise ValueError."""
    for p in SUPPORTED_PRIMES:
        if q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            if m == 1 and k <= MAX_DEGREE:
                return p, k
    raise ValueError(f"{q} is not a supported prime power")


# -- polynomial helpers over GF(p), coefficient lists low-degree first --

def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a, b, mod, p):
    res = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    return _poly_divmod(res, mod, p)[1]


def _poly_divmod(a, b, p):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = pow(lb, p - 2, p)
    quo = [0] * max(len(a) - db, 0)
    while True:
        _poly_trim(a)
        if not a or len(a) - 1 < db:
            break
        shift = len(a) - 1 - db
        c = (a[-1] * inv_lb) % p
        quo[shift] = c
        for i in range(db + 1):
            a[shift + i] = (a[shift + i] - c * b[i]) % p
    return quo, a


def _poly_gcd(a, b, p):
    a, b = list(a), list(b)
    while _poly_trim(b):
        a, b = b, _poly_divmod(a, b, p)[1]
    return a


def _poly_powmod_x(e, mod, p):
    """x^e mod `mod` by square and multiply."""
    result = [1]
    base = _poly_divmod([0, 1], mod, p)[1]
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _is_irreducible(poly, p):
    """Rabin test for a monic polynomial over GF(p)."""
    k = len(poly) - 1
    if k <= 0:
        return False
    # x^(p^k) == x mod poly
    xk = _poly_trim(list(_poly_powmod_x(p ** k, poly, p)))
    if xk != [0, 1]:
        return False
    # for each prime divisor d of k: gcd(x^(p^(k/d)) - x, poly) == const
    d = 2
    kk = k
    divisors = set()
    while d * d <= kk:
        if kk % d == 0:
            divisors.add(d)
            while kk % d == 0:
                kk //= d
        d += 1
    if kk > 1:
        divisors.add(kk)
    for d in divisors:
        xe = _poly_powmod_x(p ** (k // d), poly, p)
        diff = list(xe)
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        g = _poly_gcd(poly, diff, p)
        if len(_poly_trim(list(g))) > 1:
            return False
    return True


def minimal_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lex-smallest monic irreducible of degree k over GF(p), as c0..ck."""
    if k == 1:
        return (0, 1)
    for code in range(p ** k):
        coeffs = []
        c = code
        for _ in range(k):
            coeffs.append(c % p)
            c //= p
        poly = coeffs + [1]
        if _is_irreducible(poly, p):
            return tuple(poly)
    raise RuntimeError(f"no irreducible of degree {k} over GF({p})")


class FieldSpec:
    """Immutable descriptor of GF(p^k) with precomputed log/antilog tables."""

    def __init__(self, p: int, k: int):
        if p not in SUPPORTED_PRIMES or not _is_prime(p):
            raise ValueError(f"unsupported prime {p}")
        if not 1 <= k <= MAX_DEGREE:
            raise ValueError(f"unsupported extension degree {k}")
        self.p = p
        self.k = k
        self.q = p ** k
        self.irreducible = minimal_irreducible(p, k)
        self._build_tables()
        self._np_tables = None

    @classmethod
    @lru_cache(maxsize=None)
    def of_order(cls, q: int) -> "FieldSpec":
        p, k = factor_prime_power(q)
        return cls(p, k)

    # -- encoding helpers --

    def coeffs(self, x: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return tuple(out)

    def encode(self, coeffs) -> int:
        x = 0
        for c in reversed(list(coeffs)):
            x = x * self.p + (c % self.p)
        return x

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        mod = list(self.irreducible)

        def raw_mul(a, b):
            ca, cb = self.coeffs(a), self.coeffs(b)
            prod = _poly_mulmod(list(ca), list(cb), mod, p)
            prod += [0] * (k - len(prod))
            return self.encode(prod)

        # primitive element: smallest g whose powers exhaust GF(q)*
        self.exp_table = None
        self.log_table = None
        for g in range(1, q):
            seen = [False] * q
            exp = [0] * (q - 1)
            x = 1
            ok = True
            for i in range(q - 1):
                if seen[x]:
                    ok = False
                    break
                seen[x] = True
                exp[i] = x
                x = raw_mul(x, g)
            if ok and x == 1:
                self.generator = g
                self.exp_table = exp
                log = [0] * q
                for i, v in enumerate(exp):
                    log[v] = i
                self.log_table = log
                break
        if self.exp_table is None:
            raise RuntimeError("no primitive element found")

    # -- scalar arithmetic on integer-encoded elements --

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        mul = 1
        while a or b:
            out += ((a % p + b % p) % p) * mul
            a //= p
            b //= p
            mul *= p
        return out

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        p = self.p
        out = 0
        mul = 1
        while a:
            out += ((p - a % p) % p) * mul
            a //= p
            mul *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self.exp_table[(-self.log_table[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise DivisionByZero("division by zero")
        if a == 0:
            return 0
        return self.exp_table[(self.log_table[a] - self.log_table[b]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise DivisionByZero("0 to a negative power")
            return 0
        return self.exp_table[(self.log_table[a] * e) % (self.q - 1)]

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    # -- structure maps --

    def conj(self, a: int, base_q: int) -> int:
        """x -> x^base_q, the involution of GF(base_q^2) over GF(base_q)."""
        if self.q != base_q * base_q:
            raise NotAQuadraticExtension(f"GF({self.q}) is not GF({base_q})^2")
        return self.pow(a, base_q)

    def subfield_elements(self, sub_q: int) -> list[int]:
        """Elements fixed by x -> x^sub_q, i.e. the copy of GF(sub_q) inside."""
        if self.q == sub_q:
            return list(range(self.q))
        d = 1
        while sub_q ** d < self.q:
            d += 1
        if sub_q ** d != self.q:
            raise IncompatibleTower(f"GF({sub_q}) does not sit inside GF({self.q})")
        return [x for x in range(self.q) if self.pow(x, sub_q) == x]

    def find_omega(self, base_q: int) -> int:
        """Nonzero w in GF(base_q^2) with w^base_q = -w.

        Even base_q: 1. Odd: g^((base_q+1)/2) for the primitive element g.
        """
        if self.q != base_q * base_q:
            raise NotAQuadraticExtension(f"GF({self.q}) is not GF({base_q})^2")
        if base_q % 2 == 0:
            return 1
        w = self.exp_table[(base_q + 1) // 2]
        assert self.pow(w, base_q) == self.neg(w) and w != 0
        return w

    def is_square(self, a: int) -> bool:
        """Whether a nonzero element of a field of odd order is a square."""
        if self.q % 2 == 0:
            raise EvenCharacteristic("square classes are trivial in characteristic 2")
        if a == 0:
            raise ValueError("zero is neither square nor non-square here")
        return self.pow(a, (self.q - 1) // 2) == 1

    # -- numpy bulk tables (lazy) --

    @property
    def np_tables(self):
        if self._np_tables is None:
            q = self.q
            dtype = np.uint8 if q <= 255 else np.int32
            add = np.zeros((q, q), dtype=dtype)
            mul = np.zeros((q, q), dtype=dtype)
            for a in range(q):
                for b in range(q):
                    add[a, b] = self.add(a, b)
                    mul[a, b] = self.mul(a, b)
            neg = np.array([self.neg(a) for a in range(q)], dtype=dtype)
            self._np_tables = (add, mul, neg)
        return self._np_tables

    def __repr__(self):
        return f"FieldSpec(GF({self.p}^{self.k}))"

    def descriptor(self) -> str:
        """Header string p^k#c0,c1,..,ck used in file formats."""
        coeffs = ",".join(str(c) for c in self.irreducible)
        return f"{self.p}^{self.k}#{coeffs}"

    @classmethod
    def from_descriptor(cls, text: str) -> "FieldSpec":
        from .errors import ParseError

        try:
            head, coeffs = text.split("#")
            p_s, k_s = head.split("^")
            spec = cls.of_order(int(p_s) ** int(k_s))
        except (ValueError, KeyError) as exc:
            raise ParseError(f"bad field descriptor {text!r}") from exc
        got = tuple(int(c) for c in coeffs.split(","))
        if got != spec.irreducible:
            raise ParseError(
                f"field descriptor {text!r} does not match the built-in "
                f"irreducible {spec.irreducible}"
            )
        return spec


@dataclass(frozen=True)
class FieldElement:
    """Integer-encoded element carrying its field; convenience wrapper."""

    value: int
    spec: FieldSpec

    def _check(self, other: "FieldElement"):
        if self.spec is not other.spec:
            raise MixedFields("elements from different fields")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.spec.add(self.value, other.value), self.spec)

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.spec.sub(self.value, other.value), self.spec)

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.spec.mul(self.value, other.value), self.spec)

    def __truediv__(self, other):
        self._check(other)
        return FieldElement(self.spec.div(self.value, other.value), self.spec)

    def __neg__(self):
        return FieldElement(self.spec.neg(self.value), self.spec)

    def __pow__(self, e: int):
        return FieldElement(self.spec.pow(self.value, e), self.spec)

    def inverse(self):
        return FieldElement(self.spec.inv(self.value), self.spec)


def ff_arith(x: FieldElement, y: FieldElement | None, kind: str) -> FieldElement:
    """Dispatch {add, sub, mul, div, neg, inv, pow} on wrapped elements."""
    if kind in ("neg", "inv"):
        return -x if kind == "neg" else x.inverse()
    if kind == "pow":
        return x ** y  # y is a plain int exponent here
    if not isinstance(y, FieldElement):
        raise MixedFields("binary operation needs two field elements")
    return {"add": x + y, "sub": x - y, "mul": x * y, "div": x / y}[kind]


def conj(x: FieldElement, base_q: int) -> FieldElement:
    return FieldElement(x.spec.conj(x.value, base_q), x.spec)


def find_omega(base_q: int) -> FieldElement:
    spec = FieldSpec.of_order(base_q * base_q)
    return FieldElement(spec.find_omega(base_q), spec)


def is_square(x: FieldElement) -> bool:
    return x.spec.is_square(x.value)


class FieldTower:
    """GF(sub_q) inside GF(sup_q): embedding table, basis, coordinates, trace."""

    def __init__(self, sub: FieldSpec, sup: FieldSpec):
        if sub.p != sup.p or sup.k % sub.k != 0:
            raise IncompatibleTower(f"GF({sub.q}) does not embed in GF({sup.q})")
        self.sub = sub
        self.sup = sup
        self.degree = sup.k // sub.k
        self.embed_table = self._build_embedding()
        self.lift_table = {v: i for i, v in enumerate(self.embed_table)}
        self.basis = self._build_basis()

    def _build_embedding(self) -> list[int]:
        """Map t -> smallest root upstairs of the subfield's defining polynomial."""
        sub, sup = self.sub, self.sup
        if sub.q == sup.q:
            return list(range(sub.q))
        root = None
        for cand in range(1, sup.q):
            acc = 0
            power = 1
            for c in sub.irreducible:
                if c:
                    acc = sup.add(acc, sup.mul(c % sup.p, power))
                power = sup.mul(power, cand)
            if acc == 0:
                root = cand
                break
        if root is None:
            raise IncompatibleTower("defining polynomial has no root upstairs")
        table = [0] * sub.q
        for x in range(sub.q):
            cs = self.sub.coeffs(x)
            acc = 0
            power = 1
            for c in cs:
                if c:
                    acc = sup.add(acc, sup.mul(c, power))
                power = sup.mul(power, root)
            table[x] = acc
        assert len(set(table)) == sub.q
        return table

    def _build_basis(self) -> list[int]:
        """Greedy GF(sub)-basis of GF(sup), starting with 1."""
        sup = self.sup
        basis = []
        span = {0}
        for cand in range(1, sup.q):
            if cand in span:
                continue
            basis.append(cand)
            new_span = set()
            for s in span:
                for c in range(self.sub.q):
                    new_span.add(sup.add(s, sup.mul(self.embed_table[c], cand)))
            span = new_span
            if len(basis) == self.degree:
                break
        assert len(span) == sup.q
        # coordinate lookup: value -> tuple of sub coordinates
        self._coord_map = {}
        self._fill_coords(basis, 0, 0, [0] * self.degree)
        return basis

    def _fill_coords(self, basis, idx, acc, coords):
        if idx == self.degree:
            self._coord_map[acc] = tuple(coords)
            return
        sup = self.sup
        for c in range(self.sub.q):
            coords[idx] = c
            self._fill_coords(
                basis, idx + 1, sup.add(acc, sup.mul(self.embed_table[c], basis[idx])), coords
            )
        coords[idx] = 0

    def embed(self, x: int) -> int:
        return self.embed_table[x]

    def coords(self, x: int) -> tuple[int, ...]:
        """Coordinates of x over GF(sub) w.r.t. the fixed basis."""
        return self._coord_map[x]

    def lift(self, coords) -> int:
        sup = self.sup
        acc = 0
        for c, b in zip(coords, self.basis):
            acc = sup.add(acc, sup.mul(self.embed_table[c], b))
        return acc

    def trace(self, x: int) -> int:
        """Relative trace GF(sup) -> GF(sub): sum of x^(sub.q^i)."""
        sup = self.sup
        acc = 0
        power = x
        for _ in range(self.degree):
            acc = sup.add(acc, power)
            power = sup.pow(power, self.sub.q)
        if acc not in self.lift_table:
            raise IncompatibleTower("trace left the subfield; embedding is broken")
        return self.lift_table[acc]


def rel_trace(x: FieldElement, m: int, base_q: int) -> FieldElement:
    """Trace from GF(q^(4m-2)) down to GF(q^2), as in the field-reduction map."""
    sub = FieldSpec.of_order(base_q * base_q)
    tower = FieldTower(sub, x.spec)
    if x.spec.q != base_q ** (4 * m - 2):
        raise IncompatibleTower("element does not live in GF(q^(4m-2))")
    return FieldElement(tower.trace(x.value), sub)
