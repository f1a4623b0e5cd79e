"""One-dimensional grid problems over Z[√2].

Find α = a + b√2 with α ∈ [x0, x1] and α• = a − b√2 ∈ [y0, y1]. A solution
always exists once (x1 − x0)(y1 − y0) ≥ (1 + √2)²; below width product 1
there is at most one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Literal

import mpmath

from .highprec import HighPrecReal, RealLike, to_real
from .rings import LAMBDA, ZRootTwo

__all__ = [
    "GridProblem",
    "GridStats",
    "solve_grid",
    "solve_grid_parity",
    "count_solutions_bruteforce",
    "scale_exponent",
    "is_solution",
]

_LAMBDA_BULLET = LAMBDA.bullet()  # 1 − √2 = −λ⁻¹


@dataclass(frozen=True)
class GridProblem:
    x0: HighPrecReal
    x1: HighPrecReal
    y0: HighPrecReal
    y1: HighPrecReal

    @classmethod
    def make(cls, x0: RealLike, x1: RealLike, y0: RealLike, y1: RealLike, prec: int = 128):
        return cls(*(to_real(v, prec) for v in (x0, x1, y0, y1)))

    @property
    def prec(self) -> int:
        return max(self.x0.prec, self.x1.prec, self.y0.prec, self.y1.prec)

    @property
    def delta(self) -> HighPrecReal:
        return self.x1 - self.x0

    @property
    def Delta(self) -> HighPrecReal:
        return self.y1 - self.y0

    def scaled(self, n: int) -> GridProblem:
        """The problem whose solutions are λⁿ·α for solutions α of this one."""
        s = LAMBDA**n
        sb = s.bullet()
        x0, x1 = self.x0 * s, self.x1 * s
        y0, y1 = self.y0 * sb, self.y1 * sb
        if n % 2:
            y0, y1 = y1, y0
        return GridProblem(x0, x1, y0, y1)


@dataclass
class GridStats:
    rescale_steps: int = 0
    exponent: int = 0
    tried: int = 0


def is_solution(alpha: ZRootTwo, gp: GridProblem, *, surely: bool = True) -> bool:
    """Interval membership of (α, α•).

    With ``surely`` the answer is True only when membership is certain;
    otherwise it is True unless non-membership is certain.
    """
    prec = gp.prec
    v = HighPrecReal.from_zroottwo(alpha, prec)
    vb = HighPrecReal.from_zroottwo(alpha.bullet(), prec)
    if surely:
        return (
            v.surely_ge(gp.x0) and v.surely_le(gp.x1) and vb.surely_ge(gp.y0) and vb.surely_le(gp.y1)
        )
    return (
        v.possibly_ge(gp.x0)
        and v.possibly_le(gp.x1)
        and vb.possibly_ge(gp.y0)
        and vb.possibly_le(gp.y1)
    )


def scale_exponent(delta: HighPrecReal, stats: GridStats | None = None) -> int:
    """The n with 1 < λⁿ·δ ≤ λ (decided up to interval resolution)."""
    if not delta.surely_gt(0):
        raise ValueError("interval width must be positive")
    with mpmath.workprec(64):
        t = -mpmath.log(delta.to_mpf()) / mpmath.log(1 + mpmath.sqrt(2))
        n = int(mpmath.floor(t)) + 1
    steps = 0
    lam = HighPrecReal.from_zroottwo(LAMBDA, delta.prec)
    while (delta * (LAMBDA**n)).surely_le(1):
        n += 1
        steps += 1
    while (delta * (LAMBDA**n)).surely_gt(lam):
        n -= 1
        steps += 1
    if stats is not None:
        stats.rescale_steps = abs(n) + steps
        stats.exponent = n
    return n


def _unit_cell(x: HighPrecReal, y: HighPrecReal) -> Iterator[ZRootTwo]:
    """Points α with α ∈ [x, x+1+√2], α• ∈ [y, y+√2], most likely first.

    Follows the explicit three-way construction; when interval rounding
    leaves a floor or a case undecided, every alternative is produced and
    the caller's check picks the valid one.
    """
    prec = max(x.prec, y.prec)
    r2 = HighPrecReal.from_qsqrt2(Fraction(0), Fraction(1), prec)
    half = Fraction(1, 2)
    v = (x + y + r2) * half
    w = (x - y - r2) * half / r2
    for fa in v.floor_candidates():
        for fb in w.floor_candidates():
            a, b = fa + 1, fb + 1
            alpha = ZRootTwo(a, b)
            alt1 = ZRootTwo(a, b + 1)
            alt2 = ZRootTwo(a - 1, b)
            conj = HighPrecReal.from_zroottwo(alpha.bullet(), prec)
            val = HighPrecReal.from_zroottwo(alpha, prec)
            if conj.surely_le(y + r2):
                order = (alpha, alt1, alt2)
            elif val.surely_le(x + 1):
                order = (alt1, alpha, alt2)
            elif conj.surely_gt(y + r2) and val.surely_gt(x + 1):
                order = (alt2, alpha, alt1)
            else:
                order = (alpha, alt1, alt2)
            yield from order


def _candidates(gp: GridProblem, stats: GridStats | None) -> Iterator[ZRootTwo]:
    delta = gp.delta
    n = scale_exponent(delta, stats)
    r2 = HighPrecReal.from_qsqrt2(Fraction(0), Fraction(1), gp.prec)
    sp = gp.scaled(n)
    d1 = sp.delta
    # width now in (1, λ]
    if d1.possibly_ge(r2):
        # width ≥ √2 on x and ≥ λ on y: construct with the roles swapped
        undo = LAMBDA ** (-n)
        for g in _unit_cell(sp.y0, sp.x0):
            yield undo * g.bullet()
    if d1.possibly_le(r2):
        # width in (1, √2]: one more λ step gives widths (≥ λ, ≥ √2)
        sp2 = gp.scaled(n + 1)
        undo = LAMBDA ** (-(n + 1))
        for g in _unit_cell(sp2.x0, sp2.y0):
            yield undo * g


def solve_grid(gp: GridProblem, stats: GridStats | None = None) -> ZRootTwo | None:
    """Some α with α ∈ [x0, x1] and α• ∈ [y0, y1], or None.

    Guaranteed to find one when δΔ ≥ (1+√2)². For smaller widths the
    construction is still attempted and its answer checked.
    """
    if not (gp.delta.surely_gt(0) and gp.Delta.surely_gt(0)):
        return None
    tried = 0
    for alpha in _candidates(gp, stats):
        tried += 1
        if is_solution(alpha, gp):
            if stats is not None:
                stats.tried = tried
            return alpha
    if stats is not None:
        stats.tried = tried
    return None


def _halve_root2(x: HighPrecReal) -> HighPrecReal:
    """x / √2."""
    return x * HighPrecReal.from_qsqrt2(Fraction(0), Fraction(1, 2), x.prec)


def solve_grid_parity(
    gp: GridProblem, parity: Literal["even", "odd"], stats: GridStats | None = None
) -> ZRootTwo | None:
    """Like :func:`solve_grid`, with the rational part a of α even or odd.

    Guaranteed when δΔ ≥ 2(1+√2)².
    """
    if parity == "odd":
        shifted = GridProblem(gp.x0 - 1, gp.x1 - 1, gp.y0 - 1, gp.y1 - 1)
        even = solve_grid_parity(shifted, "even", stats)
        if even is None:
            return None
        alpha = even + 1
    elif parity == "even":
        sub = GridProblem(
            _halve_root2(gp.x0), _halve_root2(gp.x1), -_halve_root2(gp.y1), -_halve_root2(gp.y0)
        )
        beta = solve_grid(sub, stats)
        if beta is None:
            return None
        alpha = beta.mul_sqrt2()
    else:
        raise ValueError(f"parity must be 'even' or 'odd', not {parity!r}")
    if alpha.a % 2 != (1 if parity == "odd" else 0) or not is_solution(alpha, gp):
        return None
    return alpha


def count_solutions_bruteforce(gp: GridProblem, bound: int) -> list[ZRootTwo]:
    """Every α = a + b√2 with |a|, |b| ≤ bound solving the problem.

    Exact endpoints are compared exactly; inexact ones are compared
    outwardly, so the list may over-count but never misses a solution.
    """
    prec = gp.prec
    r2 = HighPrecReal.from_qsqrt2(Fraction(0), Fraction(1), prec)
    # b√2 = (α − α•)/2 and a = (α + α•)/2
    blo = ((gp.x0 - gp.y1) * Fraction(1, 2) / r2).floor_candidates()[0] - 1
    bhi = ((gp.x1 - gp.y0) * Fraction(1, 2) / r2).floor_candidates()[-1] + 1
    out = []
    for b in range(max(blo, -bound), min(bhi, bound) + 1):
        shift = r2 * b
        # a ∈ [x0 − b√2, x1 − b√2] ∩ [y0 + b√2, y1 + b√2]
        lo = max((gp.x0 - shift).floor_candidates()[0], (gp.y0 + shift).floor_candidates()[0])
        hi = min((gp.x1 - shift).floor_candidates()[-1], (gp.y1 + shift).floor_candidates()[-1])
        for a in range(max(lo, -bound), min(hi + 1, bound) + 1):
            alpha = ZRootTwo(a, b)
            if is_solution(alpha, gp, surely=False):
                out.append(alpha)
    return out
