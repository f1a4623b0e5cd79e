"""Certified error bounds for exact unitaries, and T-count lower bounds."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Sequence

from .exact import UnitaryDOmega
from .highprec import HighPrecReal, RealLike, to_real
from .rings import ZOmega

__all__ = [
    "SynthStats",
    "CInterval",
    "zomega_parts",
    "unitary_intervals",
    "rz_intervals",
    "op_norm_error",
    "op_norm_distance",
    "verification_precision",
    "lower_bound_tcount",
    "typical_lower_bound_tcount",
    "log2_fraction",
]


@dataclass
class SynthStats:
    epsilon: Fraction
    k: int = 0
    t_count: int = 0
    error_bound: HighPrecReal | None = None
    candidates_tried: int = 0
    wall_time: float = 0.0
    k_initial: int = 0
    escalations: int = 0
    slot_draws: int = 0
    norm_failures: int = 0

    def record(self) -> dict:
        """The structured record: field names match the benchmark table."""
        eb = float(self.error_bound) if self.error_bound is not None else None
        return {
            "epsilon": float(self.epsilon),
            "k": self.k,
            "t_count": self.t_count,
            "error_bound": eb,
            "runtime_s": self.wall_time,
            "candidates": self.candidates_tried,
            "time_per_candidate_s": self.wall_time / max(1, self.candidates_tried),
        }

    def as_dict(self) -> dict:
        d = asdict(self)
        d["epsilon"] = str(self.epsilon)
        d["error_bound"] = None if self.error_bound is None else str(self.error_bound)
        return d


@dataclass(frozen=True)
class CInterval:
    re: HighPrecReal
    im: HighPrecReal

    def __add__(self, o: CInterval) -> CInterval:
        return CInterval(self.re + o.re, self.im + o.im)

    def __sub__(self, o: CInterval) -> CInterval:
        return CInterval(self.re - o.re, self.im - o.im)

    def __mul__(self, o: CInterval) -> CInterval:
        return CInterval(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def conj(self) -> CInterval:
        return CInterval(self.re, -self.im)

    def abs2(self) -> HighPrecReal:
        return self.re.square() + self.im.square()


def zomega_parts(x: ZOmega, k: int) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
    """Real and imaginary parts of x/√2^k, each as (p, q) meaning p + q√2."""
    # ω = (1+i)/√2, ω² = i, ω³ = (−1+i)/√2
    parts = [
        (Fraction(x.d), Fraction(x.c - x.a, 2)),
        (Fraction(x.b), Fraction(x.c + x.a, 2)),
    ]
    out = []
    for p, q in parts:
        m = (k + 1) // 2
        if k % 2:
            p, q = 2 * q, p  # times √2
        out.append((p / 2**m, q / 2**m))
    return out[0], out[1]


def _entry(x: ZOmega, k: int, prec: int) -> CInterval:
    (pr, qr), (pi, qi) = zomega_parts(x, k)
    return CInterval(HighPrecReal.from_qsqrt2(pr, qr, prec), HighPrecReal.from_qsqrt2(pi, qi, prec))


def unitary_intervals(u: UnitaryDOmega, prec: int) -> list[list[CInterval]]:
    return [[_entry(u.a, u.k, prec), _entry(u.b, u.k, prec)],
            [_entry(u.c, u.k, prec), _entry(u.d, u.k, prec)]]


def rz_intervals(theta: RealLike, prec: int) -> list[list[CInterval]]:
    """Rz(θ) = diag(e^{−iθ/2}, e^{iθ/2})."""
    half = to_real(theta, prec) * Fraction(1, 2)
    c, s = half.cos(), half.sin()
    zero = HighPrecReal.from_int(0, prec)
    return [[CInterval(c, -s), CInterval(zero, zero)], [CInterval(zero, zero), CInterval(c, s)]]


def verification_precision(k: int) -> int:
    return max(128, 2 * k + 64)


def _upper_point(x: HighPrecReal) -> HighPrecReal:
    return HighPrecReal(x.hi, x.hi, x.prec)


def op_norm_distance(a: Sequence[Sequence[CInterval]], b: Sequence[Sequence[CInterval]]) -> HighPrecReal:
    """Upper bound on the largest singular value of a − b (2×2)."""
    d = [[a[i][j] - b[i][j] for j in range(2)] for i in range(2)]
    frob = d[0][0].abs2() + d[0][1].abs2() + d[1][0].abs2() + d[1][1].abs2()
    det = (d[0][0] * d[1][1] - d[0][1] * d[1][0]).abs2()
    # σ_max² = (F + √(F² − 4|det|²)) / 2
    disc = (frob.square() - det * 4).sqrt()
    smax2 = (frob + disc) * Fraction(1, 2)
    return _upper_point(smax2.clamp(0, 16).sqrt())


def op_norm_error(
    u: UnitaryDOmega, theta: RealLike, precision: int | None = None, method: str = "auto"
) -> HighPrecReal:
    """Certified upper bound on ‖U − Rz(θ)‖, returned as a point interval.

    For det U = 1 both matrices lie in SU(2), where the difference is a
    scalar multiple of a unitary, so ‖U − R‖² = |U₀₀ − R₀₀|² + |U₁₀ − R₁₀|²
    (equivalently 2 − 2·Re(conj(U₀₀)·e^{−iθ/2})). Otherwise the largest
    singular value of the difference is bounded directly.
    """
    prec = precision or verification_precision(u.k)
    if method not in ("auto", "identity", "singular"):
        raise ValueError(f"unknown method {method!r}")
    if method == "auto":
        method = "identity" if u.omega_power_det() == 0 else "singular"
    r = rz_intervals(theta, prec)
    if method == "singular":
        return op_norm_distance(unitary_intervals(u, prec), r)
    u00 = _entry(u.a, u.k, prec)
    u10 = _entry(u.c, u.k, prec)
    err2 = (u00 - r[0][0]).abs2() + u10.abs2()
    return _upper_point(err2.clamp(0, 16).sqrt())


def log2_fraction(x: Fraction) -> float:
    """log2 of a positive rational, safe for huge numerators and denominators."""
    if x <= 0:
        raise ValueError("log of a non-positive number")
    return math.log2(x.numerator) - math.log2(x.denominator)


def _as_fraction(eps) -> Fraction:
    return eps if isinstance(eps, Fraction) else Fraction(str(eps)) if isinstance(eps, str) else Fraction(eps)


def lower_bound_tcount(epsilon) -> float:
    """Worst-case z-rotation bound −9 + 4·log2(1/ε)."""
    eps = _as_fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    return -9 + 4 * log2_fraction(1 / eps)


def typical_lower_bound_tcount(epsilon) -> float:
    """Least real n with 192·(3·2ⁿ − 2) ≥ 1/ε³ (≈ 3·log2(1/ε) − log2(576))."""
    eps = _as_fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    return log2_fraction((1 / (192 * eps**3) + 2) / 3)
