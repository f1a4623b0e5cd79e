"""Exact arithmetic in Z, Z[√2], Z[i], Z[ω] and the dyadic ring D[ω].

All values are immutable. Integers are Python ints throughout, so nothing
overflows; the cost of an operation grows with the bit length of the
coefficients.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

__all__ = [
    "ZRootTwo",
    "ZComplex",
    "ZOmega",
    "DOmega",
    "LAMBDA",
    "SILVER",
    "norm",
    "euclid_divmod",
    "gcd",
    "round_div",
    "unit_decompose",
    "unit_reconstruct",
    "unit_sqrt",
    "parse_zroottwo",
    "parse_zcomplex",
    "parse_zomega",
    "parse_domega",
]


def round_div(n: int, d: int) -> int:
    """Nearest integer to n/d, ties to even."""
    if d == 0:
        raise ZeroDivisionError("division by zero")
    if d < 0:
        n, d = -n, -d
    q, r = divmod(n, d)
    twice = 2 * r
    if twice > d or (twice == d and q & 1):
        q += 1
    return q


def _sign_a_plus_b_sqrt2(a: int, b: int) -> int:
    """Exact sign of a + b√2."""
    if a >= 0 and b >= 0:
        return 0 if a == 0 and b == 0 else 1
    if a <= 0 and b <= 0:
        return -1
    # opposite signs: compare a² with 2b²
    diff = a * a - 2 * b * b
    if a > 0:
        return 1 if diff > 0 else -1
    return 1 if diff < 0 else -1


@dataclass(frozen=True, slots=True)
class ZRootTwo:
    """a + b√2 with integer a, b."""

    a: int
    b: int

    @classmethod
    def of(cls, x: int | ZRootTwo) -> ZRootTwo:
        if isinstance(x, ZRootTwo):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        raise TypeError(f"cannot convert {type(x).__name__} to ZRootTwo")

    def __add__(self, other):
        if isinstance(other, int):
            return ZRootTwo(self.a + other, self.b)
        if isinstance(other, ZRootTwo):
            return ZRootTwo(self.a + other.a, self.b + other.b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> ZRootTwo:
        return ZRootTwo(-self.a, -self.b)

    def __sub__(self, other):
        if isinstance(other, (int, ZRootTwo)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return ZRootTwo(self.a * other, self.b * other)
        if isinstance(other, ZRootTwo):
            return ZRootTwo(
                self.a * other.a + 2 * self.b * other.b,
                self.a * other.b + self.b * other.a,
            )
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> ZRootTwo:
        if n < 0:
            return self.inverse() ** (-n)
        result = ZRootTwo(1, 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self.b == 0 and self.a == other
        if isinstance(other, ZRootTwo):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __lt__(self, other):
        other = ZRootTwo.of(other)
        d = self - other
        return _sign_a_plus_b_sqrt2(d.a, d.b) < 0

    def __le__(self, other):
        other = ZRootTwo.of(other)
        d = self - other
        return _sign_a_plus_b_sqrt2(d.a, d.b) <= 0

    def __gt__(self, other):
        return ZRootTwo.of(other) < self

    def __ge__(self, other):
        return ZRootTwo.of(other) <= self

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def sign(self) -> int:
        return _sign_a_plus_b_sqrt2(self.a, self.b)

    def bullet(self) -> ZRootTwo:
        """√2-conjugate a − b√2."""
        return ZRootTwo(self.a, -self.b)

    def norm(self) -> int:
        return self.a * self.a - 2 * self.b * self.b

    def is_unit(self) -> bool:
        return abs(self.norm()) == 1

    def inverse(self) -> ZRootTwo:
        n = self.norm()
        if n == 1:
            return self.bullet()
        if n == -1:
            return -self.bullet()
        raise ZeroDivisionError(f"{self} is not a unit of Z[√2]")

    def divisible_by_sqrt2(self) -> bool:
        return self.a % 2 == 0

    def div_sqrt2(self) -> ZRootTwo:
        """Exact division by √2; caller checks divisibility."""
        return ZRootTwo(self.b, self.a // 2)

    def mul_sqrt2(self) -> ZRootTwo:
        return ZRootTwo(2 * self.b, self.a)

    def to_zomega(self) -> ZOmega:
        # √2 = ω − ω³
        return ZOmega(-self.b, 0, self.b, self.a)

    def __float__(self) -> float:
        return self.a + self.b * 2.0**0.5

    def __str__(self) -> str:
        return f"{self.a}{self.b:+d}√2"


@dataclass(frozen=True, slots=True)
class ZComplex:
    """Gaussian integer a + bi."""

    a: int
    b: int

    def __add__(self, other):
        if isinstance(other, int):
            return ZComplex(self.a + other, self.b)
        if isinstance(other, ZComplex):
            return ZComplex(self.a + other.a, self.b + other.b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> ZComplex:
        return ZComplex(-self.a, -self.b)

    def __sub__(self, other):
        if isinstance(other, (int, ZComplex)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return ZComplex(self.a * other, self.b * other)
        if isinstance(other, ZComplex):
            return ZComplex(
                self.a * other.a - self.b * other.b,
                self.a * other.b + self.b * other.a,
            )
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            return self.b == 0 and self.a == other
        if isinstance(other, ZComplex):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b, "i"))

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def dagger(self) -> ZComplex:
        return ZComplex(self.a, -self.b)

    def norm(self) -> int:
        return self.a * self.a + self.b * self.b

    def to_zomega(self) -> ZOmega:
        # i = ω²
        return ZOmega(0, self.b, 0, self.a)

    def __str__(self) -> str:
        return f"{self.a}{self.b:+d}i"


@dataclass(frozen=True, slots=True)
class ZOmega:
    """aω³ + bω² + cω + d with ω = e^{iπ/4}."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def of(cls, x) -> ZOmega:
        if isinstance(x, ZOmega):
            return x
        if isinstance(x, int):
            return cls(0, 0, 0, x)
        if isinstance(x, (ZRootTwo, ZComplex)):
            return x.to_zomega()
        raise TypeError(f"cannot convert {type(x).__name__} to ZOmega")

    def __add__(self, other):
        if isinstance(other, int):
            return ZOmega(self.a, self.b, self.c, self.d + other)
        if isinstance(other, (ZRootTwo, ZComplex)):
            other = other.to_zomega()
        if isinstance(other, ZOmega):
            return ZOmega(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> ZOmega:
        return ZOmega(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        if isinstance(other, (int, ZRootTwo, ZComplex, ZOmega)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return ZOmega(self.a * other, self.b * other, self.c * other, self.d * other)
        if isinstance(other, (ZRootTwo, ZComplex)):
            other = other.to_zomega()
        if not isinstance(other, ZOmega):
            return NotImplemented
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        # coefficients of ω^0..ω^6, folded with ω⁴ = −1
        c0 = d * h
        c1 = c * h + d * g
        c2 = b * h + c * g + d * f
        c3 = a * h + b * g + c * f + d * e
        c4 = a * g + b * f + c * e
        c5 = a * f + b * e
        c6 = a * e
        return ZOmega(c3, c2 - c6, c1 - c5, c0 - c4)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> ZOmega:
        if n < 0:
            raise ValueError("negative powers are not defined in Z[ω]")
        result = ZOmega(0, 0, 0, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self.a == 0 and self.b == 0 and self.c == 0 and self.d == other
        if isinstance(other, (ZRootTwo, ZComplex)):
            other = other.to_zomega()
        if isinstance(other, ZOmega):
            return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c, self.d, "w"))

    def __bool__(self) -> bool:
        return bool(self.a or self.b or self.c or self.d)

    def dagger(self) -> ZOmega:
        return ZOmega(-self.c, -self.b, -self.a, self.d)

    def bullet(self) -> ZOmega:
        return ZOmega(-self.a, self.b, -self.c, self.d)

    def norm(self) -> int:
        a, b, c, d = self.a, self.b, self.c, self.d
        s = a * a + b * b + c * c + d * d
        t = a * b + b * c + c * d - d * a
        return s * s - 2 * t * t

    def mul_omega(self, j: int = 1) -> ZOmega:
        """Multiply by ω^j, a coefficient rotation."""
        a, b, c, d = self.a, self.b, self.c, self.d
        for _ in range(j % 8):
            a, b, c, d = b, c, d, -a
        return ZOmega(a, b, c, d)

    def divisible_by_sqrt2(self) -> bool:
        return (self.a - self.c) % 2 == 0 and (self.b - self.d) % 2 == 0

    def div_sqrt2(self) -> ZOmega:
        """Exact division by √2; caller checks divisibility."""
        a, b, c, d = self.a, self.b, self.c, self.d
        return ZOmega((b - d) // 2, (c + a) // 2, (d + b) // 2, (c - a) // 2)

    def mul_sqrt2(self) -> ZOmega:
        a, b, c, d = self.a, self.b, self.c, self.d
        return ZOmega(b - d, c + a, d + b, c - a)

    def is_real(self) -> bool:
        return self == self.dagger()

    def to_zroottwo(self) -> ZRootTwo:
        if self.b != 0 or self.a != -self.c:
            raise ValueError(f"{self} is not in Z[√2]")
        return ZRootTwo(self.d, self.c)

    def to_zcomplex(self) -> ZComplex:
        if self.a != 0 or self.c != 0:
            raise ValueError(f"{self} is not in Z[i]")
        return ZComplex(self.d, self.b)

    def to_zomega(self) -> ZOmega:
        return self

    def to_complex(self) -> complex:
        r = 0.5**0.5
        w = complex(r, r)
        return self.a * w**3 + self.b * 1j + self.c * w + self.d

    def __str__(self) -> str:
        return f"{self.a}ω³{self.b:+d}ω²{self.c:+d}ω{self.d:+d}"


Ring = Union[int, ZRootTwo, ZComplex, ZOmega]

LAMBDA = ZRootTwo(1, 1)
"""The fundamental unit λ = 1 + √2."""

SILVER = ZRootTwo(-1, 1)
"""√2 − 1 = λ⁻¹."""


def norm(x: Ring) -> int:
    """Integer norm: identity on Z, rN, iN and yN on the other rings."""
    if isinstance(x, int):
        return x
    return x.norm()


def _divmod_zroottwo(s: ZRootTwo, t: ZRootTwo):
    n = t.norm()
    num = s * t.bullet()
    q = ZRootTwo(round_div(num.a, n), round_div(num.b, n))
    return q, s - q * t


def _divmod_zcomplex(s: ZComplex, t: ZComplex):
    n = t.norm()
    num = s * t.dagger()
    q = ZComplex(round_div(num.a, n), round_div(num.b, n))
    return q, s - q * t


def _divmod_zomega(s: ZOmega, t: ZOmega):
    tb = t.bullet()
    cof = t.dagger() * tb * tb.dagger()
    n = (t * cof).d
    num = s * cof
    q = ZOmega(
        round_div(num.a, n), round_div(num.b, n), round_div(num.c, n), round_div(num.d, n)
    )
    return q, s - q * t


def euclid_divmod(s: Ring, t: Ring):
    """Division with remainder: returns (q, r) with s = q·t + r and |N(r)| ≤ 9/16·|N(t)|.

    Both arguments are promoted to the larger of their two rings. Quotient
    coefficients are rounded to nearest, ties to even.
    """
    if not t:
        raise ZeroDivisionError("division by zero")
    kinds = {type(s), type(t)} - {int}
    if not kinds:
        q = round_div(s, t)
        return q, s - q * t
    if kinds == {ZRootTwo}:
        return _divmod_zroottwo(ZRootTwo.of(s), ZRootTwo.of(t))
    if kinds == {ZComplex}:
        s = s if isinstance(s, ZComplex) else ZComplex(s, 0)
        t = t if isinstance(t, ZComplex) else ZComplex(t, 0)
        return _divmod_zcomplex(s, t)
    return _divmod_zomega(ZOmega.of(s), ZOmega.of(t))


def gcd(s: Ring, t: Ring) -> Ring:
    """Greatest common divisor by Euclid's algorithm, unique up to a unit.

    In Z the result is normalized to be non-negative.
    """
    if not s and not t:
        raise ValueError("gcd(0, 0) is undefined")
    while t:
        _, r = euclid_divmod(s, t)
        s, t = t, r
    if isinstance(s, int):
        return abs(s)
    return s


def unit_decompose(u: ZRootTwo) -> tuple[int, int]:
    """Write a unit of Z[√2] as (−1)ⁿ(√2−1)ᵏ and return (n, k)."""
    u = ZRootTwo.of(u)
    if not u.is_unit():
        raise ValueError(f"{u} is not a unit of Z[√2]")
    k = 0
    a, b = u.a, u.b
    while b != 0:
        if (a > 0) == (b > 0):
            # same sign: multiply by √2−1
            a, b = 2 * b - a, a - b
            k += 1
        else:
            # opposite signs: divide by √2−1, i.e. multiply by √2+1
            a, b = a + 2 * b, a + b
            k -= 1
    # a = ±1 now
    n = 0 if a == 1 else 1
    return n, -k


def unit_reconstruct(n: int, k: int) -> ZRootTwo:
    u = SILVER**k
    return -u if n % 2 else u


def unit_sqrt(u: ZRootTwo) -> ZRootTwo | None:
    """Square root of a unit of Z[√2], or None when the unit is not a square."""
    n, k = unit_decompose(u)
    if n % 2 or k % 2:
        return None
    return SILVER ** (k // 2)


@dataclass(frozen=True, slots=True)
class DOmega:
    """num / √2^k, an element of D[ω] = Z[1/√2, i]."""

    num: ZOmega
    k: int = 0

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("denominator exponent must be non-negative")

    @classmethod
    def of(cls, x) -> DOmega:
        if isinstance(x, DOmega):
            return x
        return cls(ZOmega.of(x), 0)

    def scaled_num(self, k: int) -> ZOmega:
        """Numerator over the larger denominator √2^k (k ≥ self.k)."""
        num = self.num
        m = k - self.k
        if m < 0:
            raise ValueError("cannot lower the denominator exponent")
        if m >= 2:
            num = num * (1 << (m // 2))
        if m % 2:
            num = num.mul_sqrt2()
        return num

    def reduce(self) -> DOmega:
        num, k = self.num, self.k
        if not num:
            return DOmega(num, 0)
        while k > 0 and num.divisible_by_sqrt2():
            num = num.div_sqrt2()
            k -= 1
        return DOmega(num, k)

    def __add__(self, other):
        other = DOmega.of(other)
        k = max(self.k, other.k)
        return DOmega(self.scaled_num(k) + other.scaled_num(k), k)

    __radd__ = __add__

    def __neg__(self) -> DOmega:
        return DOmega(-self.num, self.k)

    def __sub__(self, other):
        return self + (-DOmega.of(other))

    def __rsub__(self, other):
        return DOmega.of(other) + (-self)

    def __mul__(self, other):
        other = DOmega.of(other)
        return DOmega(self.num * other.num, self.k + other.k)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            other = DOmega.of(other)
        except TypeError:
            return NotImplemented
        k = max(self.k, other.k)
        return self.scaled_num(k) == other.scaled_num(k)

    def __hash__(self) -> int:
        r = self.reduce()
        return hash((r.num, r.k))

    def dagger(self) -> DOmega:
        return DOmega(self.num.dagger(), self.k)

    def bullet(self) -> DOmega:
        # (√2)• = −√2
        num = self.num.bullet()
        return DOmega(-num if self.k % 2 else num, self.k)

    def to_complex(self) -> complex:
        return self.num.to_complex() / 2 ** (self.k / 2)

    def __str__(self) -> str:
        return f"({self.num})/√2^{self.k}"


_INT = r"\s*([+-]?\s*\d+)\s*"
_RE_ZRT = re.compile(rf"^{_INT}([+-]\s*\d+)\s*√2\s*$")
_RE_ZC = re.compile(rf"^{_INT}([+-]\s*\d+)\s*i\s*$")
_RE_ZW = re.compile(rf"^{_INT}ω³\s*([+-]\s*\d+)\s*ω²\s*([+-]\s*\d+)\s*ω\s*([+-]\s*\d+)\s*$")
_RE_DW = re.compile(r"^\s*\((.*)\)\s*/\s*√2\^\s*(\d+)\s*$")


def _ints(m: re.Match) -> list[int]:
    return [int(g.replace(" ", "")) for g in m.groups()]


def parse_zroottwo(text: str) -> ZRootTwo:
    m = _RE_ZRT.match(text)
    if not m:
        raise ValueError(f"not a Z[√2] element: {text!r}")
    return ZRootTwo(*_ints(m))


def parse_zcomplex(text: str) -> ZComplex:
    m = _RE_ZC.match(text)
    if not m:
        raise ValueError(f"not a Z[i] element: {text!r}")
    return ZComplex(*_ints(m))


def parse_zomega(text: str) -> ZOmega:
    m = _RE_ZW.match(text)
    if not m:
        raise ValueError(f"not a Z[ω] element: {text!r}")
    return ZOmega(*_ints(m))


def parse_domega(text: str) -> DOmega:
    m = _RE_DW.match(text)
    if not m:
        raise ValueError(f"not a D[ω] element: {text!r}")
    return DOmega(parse_zomega(m.group(1)), int(m.group(2)))
