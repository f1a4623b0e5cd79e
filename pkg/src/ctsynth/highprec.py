"""Arbitrary-precision real intervals with directed rounding.

A :class:`HighPrecReal` is a closed interval ``[lo, hi]`` of binary floating
point numbers at ``prec`` bits that is guaranteed to contain the true value.
Arithmetic rounds the lower endpoint down and the upper endpoint up, so
containment is preserved through every operation.

Values from Q(√2) may additionally carry an exact tag ``(p, q)`` meaning
``p + q√2`` with rational ``p, q``. Comparisons between tagged values are
decided exactly; the tag survives +, −, × and ÷.

The endpoints are raw mpmath ``libmp`` tuples and every call passes its
precision and rounding mode explicitly, so there is no shared context.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Union

from mpmath import libmp as _lm
from mpmath.libmp import (
    fone,
    fzero,
    from_int,
    from_man_exp,
    from_rational,
    mpf_abs,
    mpf_add,
    mpf_cmp,
    mpf_cos_sin,
    mpf_div,
    mpf_log,
    mpf_mul,
    mpf_neg,
    mpf_pi,
    mpf_shift,
    mpf_sqrt,
    mpf_sub,
    round_ceiling,
    round_floor,
    round_nearest,
    to_float,
    to_int,
    to_str,
)

from .rings import ZRootTwo

__all__ = ["HighPrecReal", "RealLike", "to_real", "exact_sign", "exact_floor"]

# extra bits carried when evaluating transcendental functions
_GUARD = 24

Exact = tuple[Fraction, Fraction]


def exact_sign(p: Fraction, q: Fraction) -> int:
    """Sign of p + q√2 for rationals p, q."""
    # scale by the positive p.den·q.den
    a = p.numerator * q.denominator
    b = q.numerator * p.denominator
    return ZRootTwo(a, b).sign()


def exact_floor(p: Fraction, q: Fraction) -> int:
    """floor(p + q√2) for rationals p, q."""
    den = p.denominator * q.denominator
    a = p.numerator * q.denominator
    b = q.numerator * p.denominator
    r = math.isqrt(2 * b * b)
    if b >= 0:
        fl = a + r  # 2b² is never a non-zero square, so isqrt is the floor
    else:
        fl = a - r - (0 if r * r == 2 * b * b else 1)
    return fl // den


def _exact_mul(x: Exact, y: Exact) -> Exact:
    return (x[0] * y[0] + 2 * x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _exact_inv(x: Exact) -> Exact:
    n = x[0] * x[0] - 2 * x[1] * x[1]
    if n == 0:
        raise ZeroDivisionError("division by zero")
    return (x[0] / n, -x[1] / n)


def _mpf_min(a, b):
    return a if mpf_cmp(a, b) <= 0 else b


def _mpf_max(a, b):
    return a if mpf_cmp(a, b) >= 0 else b


def _from_fraction(x: Fraction, prec: int, rnd: str):
    return from_rational(x.numerator, x.denominator, prec, rnd)


class HighPrecReal:
    """Closed interval [lo, hi] of ``prec``-bit floats enclosing a real number."""

    __slots__ = ("lo", "hi", "prec", "exact")

    def __init__(self, lo, hi, prec: int, exact: Exact | None = None):
        if mpf_cmp(lo, hi) > 0:
            raise ValueError("empty interval")
        self.lo = lo
        self.hi = hi
        self.prec = prec
        self.exact = exact

    # -- construction -------------------------------------------------
    @classmethod
    def from_int(cls, n: int, prec: int) -> HighPrecReal:
        return cls.from_qsqrt2(Fraction(n), Fraction(0), prec)

    @classmethod
    def from_fraction(cls, x: Fraction | int, prec: int) -> HighPrecReal:
        return cls.from_qsqrt2(Fraction(x), Fraction(0), prec)

    @classmethod
    def from_qsqrt2(cls, p: Fraction, q: Fraction, prec: int) -> HighPrecReal:
        """The exact value p + q√2."""
        p, q = Fraction(p), Fraction(q)
        if q == 0:
            lo = _from_fraction(p, prec, round_floor)
            hi = _from_fraction(p, prec, round_ceiling)
        else:
            wp = prec + 8
            r2lo = mpf_sqrt(from_int(2), wp, round_floor)
            r2hi = mpf_sqrt(from_int(2), wp, round_ceiling)
            qlo = _from_fraction(q, wp, round_floor)
            qhi = _from_fraction(q, wp, round_ceiling)
            prods = [mpf_mul(a, b, wp, r) for a in (qlo, qhi) for b in (r2lo, r2hi) for r in "fc"]
            plo = _from_fraction(p, wp, round_floor)
            phi = _from_fraction(p, wp, round_ceiling)
            lo = mpf_add(plo, min(prods, key=to_key), prec, round_floor)
            hi = mpf_add(phi, max(prods, key=to_key), prec, round_ceiling)
        return cls(lo, hi, prec, (p, q))

    @classmethod
    def from_zroottwo(cls, x: ZRootTwo, prec: int) -> HighPrecReal:
        return cls.from_qsqrt2(Fraction(x.a), Fraction(x.b), prec)

    @classmethod
    def sqrt2_power(cls, k: int, prec: int) -> HighPrecReal:
        """√2^k exactly, for any integer k."""
        half = Fraction(2) ** (k // 2)
        if k % 2:
            return cls.from_qsqrt2(Fraction(0), half, prec)
        return cls.from_qsqrt2(half, Fraction(0), prec)

    @classmethod
    def from_float(cls, x: float, prec: int) -> HighPrecReal:
        return cls.from_fraction(Fraction(x), prec)

    @classmethod
    def from_decimal(cls, text: str, prec: int) -> HighPrecReal:
        return cls.from_fraction(Fraction(text), prec)

    @classmethod
    def pi(cls, prec: int) -> HighPrecReal:
        return cls(mpf_pi(prec, round_floor), mpf_pi(prec, round_ceiling), prec)

    @classmethod
    def from_mpf_enclosure(cls, mid, rad, prec: int) -> HighPrecReal:
        """Interval mid ± rad."""
        return cls(
            mpf_sub(mid, rad, prec, round_floor), mpf_add(mid, rad, prec, round_ceiling), prec
        )

    # -- inspection ---------------------------------------------------
    def mid(self):
        return mpf_shift(mpf_add(self.lo, self.hi, self.prec + 1, round_nearest), -1)

    def width(self):
        return mpf_sub(self.hi, self.lo, self.prec, round_ceiling)

    def rad(self):
        return mpf_shift(self.width(), -1)

    def __float__(self) -> float:
        return to_float(self.mid())

    def to_mpf(self):
        """Midpoint as an mpmath ``mpf``."""
        import mpmath

        return mpmath.mpf(self.mid())

    def __repr__(self) -> str:
        return f"HighPrecReal([{to_str(self.lo, 20)}, {to_str(self.hi, 20)}], prec={self.prec})"

    def __str__(self) -> str:
        return to_str(self.mid(), max(6, min(40, int(self.prec * 0.30103))))

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> HighPrecReal:
        if isinstance(other, HighPrecReal):
            return other
        if isinstance(other, (int, Fraction)):
            return HighPrecReal.from_fraction(other, self.prec)
        if isinstance(other, ZRootTwo):
            return HighPrecReal.from_zroottwo(other, self.prec)
        raise TypeError(f"cannot combine HighPrecReal with {type(other).__name__}")

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        prec = max(self.prec, o.prec)
        ex = None
        if self.exact is not None and o.exact is not None:
            ex = (self.exact[0] + o.exact[0], self.exact[1] + o.exact[1])
        return HighPrecReal(
            mpf_add(self.lo, o.lo, prec, round_floor),
            mpf_add(self.hi, o.hi, prec, round_ceiling),
            prec,
            ex,
        )

    __radd__ = __add__

    def __neg__(self) -> HighPrecReal:
        ex = None if self.exact is None else (-self.exact[0], -self.exact[1])
        return HighPrecReal(mpf_neg(self.hi), mpf_neg(self.lo), self.prec, ex)

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        prec = max(self.prec, o.prec)
        ends = [(a, b) for a in (self.lo, self.hi) for b in (o.lo, o.hi)]
        lo = min((mpf_mul(a, b, prec, round_floor) for a, b in ends), key=to_key)
        hi = max((mpf_mul(a, b, prec, round_ceiling) for a, b in ends), key=to_key)
        ex = None
        if self.exact is not None and o.exact is not None:
            ex = _exact_mul(self.exact, o.exact)
        return HighPrecReal(lo, hi, prec, ex)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if mpf_cmp(o.lo, fzero) <= 0 <= mpf_cmp(o.hi, fzero):
            raise ZeroDivisionError("divisor interval contains zero")
        prec = max(self.prec, o.prec)
        ends = [(a, b) for a in (self.lo, self.hi) for b in (o.lo, o.hi)]
        lo = min((mpf_div(a, b, prec, round_floor) for a, b in ends), key=to_key)
        hi = max((mpf_div(a, b, prec, round_ceiling) for a, b in ends), key=to_key)
        ex = None
        if self.exact is not None and o.exact is not None:
            ex = _exact_mul(self.exact, _exact_inv(o.exact))
        return HighPrecReal(lo, hi, prec, ex)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def mul_pow2(self, n: int) -> HighPrecReal:
        """Exact multiplication by 2^n."""
        ex = None
        if self.exact is not None:
            f = Fraction(2) ** n
            ex = (self.exact[0] * f, self.exact[1] * f)
        return HighPrecReal(mpf_shift(self.lo, n), mpf_shift(self.hi, n), self.prec, ex)

    def square(self) -> HighPrecReal:
        """x², tighter than x*x when the interval straddles zero."""
        if self.exact is not None:
            return self * self
        a = mpf_abs(self.lo)
        b = mpf_abs(self.hi)
        hi = mpf_mul(_mpf_max(a, b), _mpf_max(a, b), self.prec, round_ceiling)
        if self.surely_ge(0) or self.surely_le(0):
            m = _mpf_min(a, b)
            lo = mpf_mul(m, m, self.prec, round_floor)
        else:
            lo = fzero
        return HighPrecReal(lo, hi, self.prec)

    def sqrt(self) -> HighPrecReal:
        """Square root; a lower endpoint below zero is clamped to zero."""
        if mpf_cmp(self.hi, fzero) < 0:
            raise ValueError("square root of a negative interval")
        lo = self.lo if mpf_cmp(self.lo, fzero) > 0 else fzero
        return HighPrecReal(
            mpf_sqrt(lo, self.prec, round_floor), mpf_sqrt(self.hi, self.prec, round_ceiling), self.prec
        )

    def abs(self) -> HighPrecReal:
        if self.surely_ge(0):
            return self
        if self.surely_le(0):
            return -self
        return HighPrecReal(fzero, _mpf_max(mpf_abs(self.lo), mpf_abs(self.hi)), self.prec)

    def _transcendental(self, f: Callable, lipschitz) -> HighPrecReal:
        """Enclose f over the interval: f(mid) ± (L·rad + rounding slack).

        ``lipschitz`` bounds |f'| on the interval. mpmath's elementary
        functions are accurate to within an ulp at the working precision;
        the slack added here is 2^-prec relative, far above that.
        """
        wp = self.prec + _GUARD
        m = self.mid()
        v = f(m, wp)
        slack = mpf_shift(mpf_abs(v), -self.prec)
        slack = mpf_add(slack, from_man_exp(1, -(wp + 16)), wp, round_ceiling)
        err = mpf_mul(lipschitz, self.rad(), wp, round_ceiling)
        err = mpf_add(err, slack, wp, round_ceiling)
        return HighPrecReal.from_mpf_enclosure(v, err, self.prec)

    def cos(self) -> HighPrecReal:
        r = self._transcendental(lambda x, p: mpf_cos_sin(x, p, round_nearest)[0], fone)
        return r.clamp(-1, 1)

    def sin(self) -> HighPrecReal:
        r = self._transcendental(lambda x, p: mpf_cos_sin(x, p, round_nearest)[1], fone)
        return r.clamp(-1, 1)

    def log(self) -> HighPrecReal:
        if not self.surely_gt(0):
            raise ValueError("log of a non-positive interval")
        # |d/dx log x| ≤ 1/lo
        lip = mpf_div(fone, self.lo, self.prec, round_ceiling)
        return self._transcendental(lambda x, p: mpf_log(x, p, round_nearest), lip)

    def log2(self) -> HighPrecReal:
        return self.log() / HighPrecReal.ln2(self.prec)

    @classmethod
    def ln2(cls, prec: int) -> HighPrecReal:
        return cls(_lm.mpf_ln2(prec, round_floor), _lm.mpf_ln2(prec, round_ceiling), prec)

    def clamp(self, a: int, b: int) -> HighPrecReal:
        lo = _mpf_max(self.lo, from_int(a))
        hi = _mpf_min(self.hi, from_int(b))
        if mpf_cmp(lo, hi) > 0:
            lo = hi
        return HighPrecReal(lo, hi, self.prec)

    def with_prec(self, prec: int) -> HighPrecReal:
        if self.exact is not None:
            return HighPrecReal.from_qsqrt2(*self.exact, prec)
        return HighPrecReal(
            _lm.mpf_pos(self.lo, prec, round_floor), _lm.mpf_pos(self.hi, prec, round_ceiling), prec
        )

    # -- ordering -----------------------------------------------------
    def _cmp(self, other) -> int | None:
        """Sign of self − other when it is certain, else None."""
        o = self._coerce(other)
        if self.exact is not None and o.exact is not None:
            return exact_sign(self.exact[0] - o.exact[0], self.exact[1] - o.exact[1])
        if mpf_cmp(self.hi, o.lo) < 0:
            return -1
        if mpf_cmp(self.lo, o.hi) > 0:
            return 1
        if (
            mpf_cmp(self.lo, self.hi) == 0
            and mpf_cmp(o.lo, o.hi) == 0
            and mpf_cmp(self.lo, o.lo) == 0
        ):
            return 0
        return None

    def surely_lt(self, other) -> bool:
        return self._cmp(other) == -1

    def surely_le(self, other) -> bool:
        c = self._cmp(other)
        if c is not None:
            return c <= 0
        return mpf_cmp(self.hi, self._coerce(other).lo) <= 0

    def surely_gt(self, other) -> bool:
        return self._cmp(other) == 1

    def surely_ge(self, other) -> bool:
        c = self._cmp(other)
        if c is not None:
            return c >= 0
        return mpf_cmp(self.lo, self._coerce(other).hi) >= 0

    def possibly_le(self, other) -> bool:
        return not self.surely_gt(other)

    def possibly_ge(self, other) -> bool:
        return not self.surely_lt(other)

    def contains(self, other) -> bool:
        """True when the interval surely contains the exact value of ``other``."""
        o = self._coerce(other)
        if self.exact is not None and o.exact is not None:
            return self._cmp(o) == 0
        return mpf_cmp(self.lo, o.lo) <= 0 and mpf_cmp(o.hi, self.hi) <= 0

    def floor_candidates(self) -> list[int]:
        """Every integer that can be floor(x) for x in the interval (one or two values)."""
        if self.exact is not None:
            return [exact_floor(*self.exact)]
        a = to_int(self.lo, round_floor)
        b = to_int(self.hi, round_floor)
        return list(range(a, b + 1))

    def floor(self) -> int:
        """floor of the value; raises if the interval does not determine it."""
        c = self.floor_candidates()
        if len(c) != 1:
            raise ArithmeticError("interval too wide to determine floor")
        return c[0]

    def ceil(self) -> int:
        return -(-self).floor()


def to_key(x):
    """Sort key for raw mpf tuples."""
    return _Key(x)


class _Key:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return mpf_cmp(self.v, other.v) < 0

    def __gt__(self, other):
        return mpf_cmp(self.v, other.v) > 0

    def __eq__(self, other):
        return mpf_cmp(self.v, other.v) == 0


RealLike = Union[int, Fraction, float, str, HighPrecReal, Callable[[int], HighPrecReal]]


def mpf_to_fraction(x) -> Fraction:
    """The exact binary value of an mpmath ``mpf``."""
    import mpmath

    raw = x._mpf_ if hasattr(x, "_mpf_") else mpmath.mpf(x)._mpf_
    if raw in (_lm.finf, _lm.fninf, _lm.fnan):
        raise ValueError("not a finite number")
    p, q = _lm.to_rational(raw)
    return Fraction(p, q)


def to_real(x: RealLike, prec: int) -> HighPrecReal:
    """Evaluate a real-valued input at ``prec`` bits.

    Accepts exact numbers, decimal strings, binary floats (taken at their
    exact binary value), anything with an ``evaluate(prec)`` method, and
    plain callables ``prec -> HighPrecReal``.
    """
    if isinstance(x, HighPrecReal):
        return x if x.prec >= prec else x.with_prec(prec)
    if isinstance(x, bool):
        raise TypeError("bool is not a real number")
    if isinstance(x, (int, Fraction)):
        return HighPrecReal.from_fraction(x, prec)
    if isinstance(x, float):
        return HighPrecReal.from_float(x, prec)
    if isinstance(x, str):
        return HighPrecReal.from_decimal(x, prec)
    if type(x).__name__ == "mpf":
        return HighPrecReal.from_fraction(mpf_to_fraction(x), prec)
    if hasattr(x, "evaluate"):
        return x.evaluate(prec)
    if callable(x):
        return x(prec)
    raise TypeError(f"cannot interpret {type(x).__name__} as a real number")
