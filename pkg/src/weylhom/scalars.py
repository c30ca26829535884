"""Exact scalars over a field F with a distinguished unit q.

Two backends are supported: the prime field F_p with q a nonzero residue, and
the cyclotomic field Q[x]/Phi_e(x) with q the class of x.  Every quantity is
exact; there is no floating point anywhere in this module.
"""

from __future__ import annotations

import math
import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class FieldError(ValueError):
    """Invalid field specification."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % k for k in range(3, math.isqrt(n) + 1, 2))


@dataclass(frozen=True)
class PrimeField:
    p: int
    q: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise FieldError(f"p={self.p} is not prime")
        if not 0 < self.q < self.p:
            raise FieldError(f"q={self.q} must satisfy 0 < q < p={self.p}")

    def __str__(self):
        return f"p={self.p},q={self.q}"


@dataclass(frozen=True)
class Cyclotomic:
    e: int

    def __post_init__(self):
        if self.e < 2:
            raise FieldError(f"cyclotomic field needs e >= 2, got {self.e}")

    def __str__(self):
        return f"cyclotomic,e={self.e}"


FieldSpec = PrimeField | Cyclotomic

_PRIME_RE = re.compile(r"^\s*p\s*=\s*(\d+)\s*,\s*q\s*=\s*(-?\d+)\s*$")
_CYCLO_RE = re.compile(r"^\s*cyclotomic\s*,\s*e\s*=\s*(\d+)\s*$")


def parse_field(text: str) -> FieldSpec:
    """Parse ``"p=<prime>,q=<int>"`` or ``"cyclotomic,e=<int>"``."""
    m = _PRIME_RE.match(text)
    if m:
        return PrimeField(int(m.group(1)), int(m.group(2)))
    m = _CYCLO_RE.match(text)
    if m:
        return Cyclotomic(int(m.group(1)))
    raise FieldError(f"cannot parse field specification {text!r}")


# ---------------------------------------------------------------------------
# integer / rational polynomial helpers (coefficient lists, low degree first)

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_divmod(num, den):
    num = [Fraction(x) for x in num]
    den = _trim(den)
    quo = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    lead = Fraction(den[-1])
    while len(_trim(num)) >= len(den):
        num = _trim(num)
        k = len(num) - len(den)
        f = num[-1] / lead
        quo[k] = f
        for i, c in enumerate(den):
            num[i + k] -= f * c
    return _trim(quo), _trim(num)


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _as_int(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_e, lowest degree first.

    Obtained from x^e - 1 by exact division by Phi_d for every proper divisor d.
    """
    poly = [-1] + [0] * (e - 1) + [1]
    for d in range(1, e):
        if e % d == 0:
            quo, rem = _poly_divmod(poly, cyclotomic_polynomial(d))
            assert not rem
            poly = quo
    return tuple(int(_as_int(c)) for c in poly)


# ---------------------------------------------------------------------------
# scalar values

class Scalar:
    """An exact element of F.  Concrete classes: :class:`Residue`, :class:`CycloNumber`."""

    __slots__ = ()

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __radd__(self, other):
        return self + other

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self._lift(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self._lift(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


class Residue(Scalar):
    """Element of F_p, stored as its least nonnegative residue."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _lift(self, n):
        return Residue(n, self.p)

    def _coerce(self, other):
        if isinstance(other, Residue):
            if other.p != self.p:
                raise TypeError("scalars from different fields")
            return other.v
        if isinstance(other, int):
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Residue(self.v + o, self.p)

    def __neg__(self):
        return Residue(-self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Residue(self.v * o, self.p)

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("inverse of zero")
        return Residue(pow(self.v, -1, self.p), self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return (self.v - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.v))

    def __repr__(self):
        return f"Residue({self.v}, p={self.p})"

    def __str__(self):
        return str(self.v)


class _CycloRing:
    """Reduction data for Q[x]/Phi_e(x)."""

    def __init__(self, e: int):
        self.e = e
        self.phi = cyclotomic_polynomial(e)
        self.n = len(self.phi) - 1
        n = self.n
        # x^k mod Phi_e for k < max(e, 2n - 1)
        self.powers = []
        cur = [0] * n
        cur[0] = 1
        for _ in range(max(e, 2 * n - 1)):
            self.powers.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for i in range(n):
                    cur[i] -= top * self.phi[i]

    def element(self, coords):
        return CycloNumber(tuple(coords), self)

    def reduce(self, coeffs):
        """Reduce an integer/rational coefficient list modulo Phi_e."""
        n = self.n
        out = list(coeffs[:n]) + [0] * max(0, n - len(coeffs))
        for k in range(n, len(coeffs)):
            c = coeffs[k]
            if c:
                pk = self.powers[k] if k < len(self.powers) else self.power(k)
                for i in range(n):
                    if pk[i]:
                        out[i] += c * pk[i]
        return out

    def power(self, k):
        return self.powers[k % self.e]


class CycloNumber(Scalar):
    """Element of Q[x]/Phi_e(x), stored as coordinates on 1, x, ..., x^(n-1)."""

    __slots__ = ("c", "ring")

    def __init__(self, c: tuple, ring: _CycloRing):
        self.c = c
        self.ring = ring

    def _lift(self, n):
        return CycloNumber((n,) + (0,) * (self.ring.n - 1), self.ring)

    def __add__(self, other):
        if isinstance(other, CycloNumber):
            if other.ring is not self.ring and other.ring.e != self.ring.e:
                raise TypeError("scalars from different fields")
            return CycloNumber(tuple(x + y for x, y in zip(self.c, other.c)), self.ring)
        if isinstance(other, (int, Fraction)):
            return CycloNumber((self.c[0] + other,) + self.c[1:], self.ring)
        return NotImplemented

    def __neg__(self):
        return CycloNumber(tuple(-x for x in self.c), self.ring)

    def __mul__(self, other):
        if isinstance(other, CycloNumber):
            if other.ring is not self.ring and other.ring.e != self.ring.e:
                raise TypeError("scalars from different fields")
            n = self.ring.n
            if n == 1:
                return CycloNumber((self.c[0] * other.c[0],), self.ring)
            prod = [0] * (2 * n - 1)
            for i, x in enumerate(self.c):
                if x:
                    for j, y in enumerate(other.c):
                        if y:
                            prod[i + j] += x * y
            return CycloNumber(tuple(self.ring.reduce(prod)), self.ring)
        if isinstance(other, (int, Fraction)):
            return CycloNumber(tuple(x * other for x in self.c), self.ring)
        return NotImplemented

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid: find u with u * self = 1 mod Phi_e
        r0, r1 = list(self.ring.phi), _trim(self.c)
        s0, s1 = [], [1]
        while len(r1) > 1:
            quo, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(quo, s1))
        inv = [Fraction(x) / Fraction(r1[0]) for x in s1]
        coords = self.ring.reduce(inv) if len(inv) > self.ring.n else inv + [0] * (self.ring.n - len(inv))
        return CycloNumber(tuple(_as_int(x) for x in coords), self.ring)

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, CycloNumber):
            return self.ring.e == other.ring.e and self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.c[0] == other and not any(self.c[1:])
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.e, self.c))

    def __repr__(self):
        return f"CycloNumber({self}, e={self.ring.e})"

    def __str__(self):
        return format_poly(self.c)


def format_poly(coeffs, var: str = "q") -> str:
    """Render coefficients (lowest degree first) as e.g. ``q^3 - 2*q + 1/2``."""
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_TERM_RE = re.compile(r"([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?(q(?:\s*\^\s*(-?\d+))?)?")


def parse_poly(text: str, var: str = "q") -> dict[int, Fraction]:
    """Parse a Laurent polynomial in ``q`` with rational coefficients."""
    s = text.replace(" ", "")
    if var != "q":
        s = s.replace(var, "q")
    if not s:
        raise ValueError("empty polynomial")
    out: dict[int, Fraction] = {}
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ValueError(f"cannot parse polynomial {text!r}")
        if pos > 0 and not m.group(1):
            raise ValueError(f"cannot parse polynomial {text!r}")
        coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(1) == "-":
            coef = -coef
        if m.group(3):
            k = int(m.group(4)) if m.group(4) is not None else 1
        else:
            k = 0
        out[k] = out.get(k, 0) + coef
        pos = m.end()
    return out


# ---------------------------------------------------------------------------
# quantum characteristic and the parameter object

@lru_cache(maxsize=None)
def _cyclo_ring(e: int) -> _CycloRing:
    return _CycloRing(e)


def quantum_char(field: FieldSpec) -> int | None:
    """Least f >= 2 with 1 + q + ... + q^(f-1) = 0, or None below the search bound."""
    if isinstance(field, PrimeField):
        p, q = field.p, field.q
        total, power = 1, 1
        for f in range(2, p + 1):
            power = power * q % p
            total = (total + power) % p
            if total == 0:
                return f
        return None
    ring = _cyclo_ring(field.e)
    x = ring.element(ring.power(1))
    total = ring.element(ring.power(0))
    power = total
    for f in range(2, field.e + 1):
        power = power * x
        total = total + power
        if not total:
            return f
    return None


_GAUSS_LOCK = threading.Lock()
_GAUSS_ROWS: list[list[tuple[int, ...]]] = [[(1,)]]


def gauss_poly(m: int, j: int) -> tuple[int, ...]:
    """The Gaussian binomial as an integer polynomial in q (lowest degree first).

    Built from the Pascal recurrence gauss(m, j) = gauss(m-1, j-1) + q^j gauss(m-1, j);
    zero (the empty tuple) unless m >= j >= 0.
    """
    if not m >= j >= 0:
        return ()
    if m >= len(_GAUSS_ROWS):
        with _GAUSS_LOCK:
            while m >= len(_GAUSS_ROWS):
                prev = _GAUSS_ROWS[-1]
                k = len(_GAUSS_ROWS)
                row = [(1,)]
                for jj in range(1, k):
                    left, right = prev[jj - 1], prev[jj]
                    out = [0] * max(len(left), len(right) + jj)
                    for i, c in enumerate(left):
                        out[i] += c
                    for i, c in enumerate(right):
                        out[i + jj] += c
                    row.append(tuple(out))
                row.append((1,))
                _GAUSS_ROWS.append(row)
    return _GAUSS_ROWS[m][j]


class QParams:
    """A field together with its quantum characteristic e.

    Provides the scalar constructors used throughout the engine and memoizes
    evaluated Gaussian binomials.
    """

    def __init__(self, field: FieldSpec | str):
        if isinstance(field, str):
            field = parse_field(field)
        self.field = field
        e = quantum_char(field)
        if e is None:
            raise FieldError(f"{field} has no finite quantum characteristic")
        self.e = e
        if isinstance(field, PrimeField):
            self._ring = None
            self.p = field.p
        else:
            self._ring = _cyclo_ring(field.e)
            self.p = 0
        self.zero = self.scalar(0)
        self.one = self.scalar(1)
        self.q = self.q_pow(1)
        self._gauss: dict[tuple[int, int], Scalar] = {}

    def __repr__(self):
        return f"QParams({self.field}, e={self.e})"

    def __eq__(self, other):
        return isinstance(other, QParams) and self.field == other.field

    def __hash__(self):
        return hash(self.field)

    def __reduce__(self):
        return (QParams, (self.field,))

    def scalar(self, value: int | Fraction) -> Scalar:
        if self._ring is None:
            value = Fraction(value)
            if value.denominator % self.p == 0:
                raise ValueError(f"{value} has no image in F_{self.p}")
            return Residue(value.numerator * pow(value.denominator, -1, self.p), self.p)
        return self._ring.element((value,) + (0,) * (self._ring.n - 1))

    def from_poly(self, coeffs, shift: int = 0) -> Scalar:
        """Evaluate sum_k coeffs[k] q^(k + shift) in F."""
        if self._ring is None:
            p, q = self.p, self.field.q
            total = 0
            for c in reversed(coeffs):
                total = (total * q + int(c)) % p
            if shift:
                total = total * pow(q, shift, p)
            return Residue(total, p)
        ring = self._ring
        e = ring.e
        folded = [0] * e
        for k, c in enumerate(coeffs):
            if c:
                folded[(k + shift) % e] += c
        return ring.element(ring.reduce(folded))

    def from_laurent(self, terms: dict[int, Fraction]) -> Scalar:
        total = self.zero
        for k, c in terms.items():
            total = total + self.q_pow(k) * self.scalar(c)
        return total

    def q_pow(self, k: int) -> Scalar:
        if self._ring is None:
            return Residue(pow(self.field.q, k, self.p), self.p)
        return self._ring.element(self._ring.power(k))

    def quantum_int(self, m: int) -> Scalar:
        if m < 0:
            raise ValueError(f"quantum integer needs m >= 0, got {m}")
        return self.from_poly((1,) * m)

    def quantum_factorial(self, m: int) -> Scalar:
        out = self.one
        for k in range(1, m + 1):
            out = out * self.quantum_int(k)
        return out

    def gauss(self, m: int, j: int) -> Scalar:
        key = (m, j)
        val = self._gauss.get(key)
        if val is None:
            val = self.from_poly(gauss_poly(m, j))
            self._gauss[key] = val
        return val

    def parse(self, text: str) -> Scalar:
        """Inverse of ``str`` on scalars (residues or polynomials in q)."""
        return self.from_laurent(parse_poly(str(text)))

    def poly_coords(self, x: Scalar) -> list:
        """Coordinates of ``x``: a residue list [v] or cyclotomic coordinates."""
        if isinstance(x, Residue):
            return [x.v]
        return list(x.c)


def gauss_lucas(params: QParams, m: int, j: int) -> Scalar:
    """Gaussian binomial via the q-Lucas factorization.

    With m = m* e + m' and j = j* e + j' (0 <= m', j' < e), the value is
    binomial(m*, j*) * gauss(m', j'), where the small factor is taken as a
    quotient of quantum factorials (its denominators are nonzero since j', m' < e).
    """
    if not m >= j >= 0:
        return params.zero
    e = params.e
    ms, mr = divmod(m, e)
    js, jr = divmod(j, e)
    if jr > mr:
        return params.zero
    small = params.quantum_factorial(mr) / (params.quantum_factorial(jr) * params.quantum_factorial(mr - jr))
    return params.scalar(math.comb(ms, js)) * small
