"""Approximating z-rotations, and arbitrary SU(2) targets, over Clifford+T.

The loop draws random candidates u ∈ Z[ω] with û = u/√2^k in the ε-region,
tries to solve t†t = 2^k − u†u, and on success returns

    U = (1/√2^k) [[u, −t†], [t, u†]].

Candidates come from a thin parallelogram inside the ε-region, cut into
n = ⌊4√2/ε⌋ horizontal slots; each slot holds at least one candidate.
"""

from __future__ import annotations

import concurrent.futures as cf
import math
import random
import time
from dataclasses import dataclass, replace
from fractions import Fraction

import mpmath

from .diophantine import solve_norm_equation
from .exact import GateWord, UnitaryDOmega, evaluate_word, normal_form, MANormalForm
from .grid import GridProblem, solve_grid, solve_grid_parity
from .highprec import HighPrecReal, RealLike, exact_sign, mpf_to_fraction, to_real
from .rings import ZOmega, ZRootTwo
from .verify import (
    SynthStats,
    op_norm_distance,
    op_norm_error,
    unitary_intervals,
    verification_precision,
    CInterval,
)

__all__ = [
    "EpsilonProblem",
    "Candidate",
    "Limits",
    "SynthesisError",
    "RzResult",
    "Su2Result",
    "min_k",
    "slot_count",
    "make_problem",
    "region_contains",
    "random_candidate",
    "approximate_rz",
    "synthesize_rz",
    "euler_angles",
    "EulerAngle",
    "approximate_su2",
    "as_fraction",
]

_C = 2.5 + 2 * math.log2(1 + math.sqrt(2))


class SynthesisError(RuntimeError):
    """Raised when every k in the escalation schedule ran out of candidates."""

    def __init__(self, msg: str, stats: SynthStats):
        super().__init__(msg)
        self.stats = stats


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, (int, float)):
        return Fraction(x)
    raise TypeError(f"cannot read {type(x).__name__} as an exact tolerance")


def min_k(epsilon) -> int:
    """⌈C + 2·log2(1/ε)⌉, C = 5/2 + 2·log2(1+√2), computed exactly.

    k ≥ C + 2·log2(1/ε) is the same as ε⁴·4^k ≥ 32·(17 + 12√2).
    """
    eps = as_fraction(epsilon)
    e4 = eps**4
    k = max(0, math.floor(_C + 2 * (math.log2(eps.denominator) - math.log2(eps.numerator))) - 2)
    while exact_sign(e4 * 4**k - 544, Fraction(-384)) < 0:
        k += 1
    while k > 0 and exact_sign(e4 * 4 ** (k - 1) - 544, Fraction(-384)) >= 0:
        k -= 1
    return k


def slot_count(epsilon) -> int:
    """⌊4√2/ε⌋ exactly."""
    eps = as_fraction(epsilon)
    return math.isqrt(32 * eps.denominator**2) // eps.numerator


@dataclass(frozen=True)
class EpsilonProblem:
    theta: RealLike
    epsilon: Fraction
    k: int
    n: int
    prec: int
    quarter_turns: int  # θ = θ_r + m·π/2
    theta_reduced: HighPrecReal
    z: tuple[HighPrecReal, HighPrecReal]
    y_min: HighPrecReal
    y_max: HighPrecReal

    @property
    def correction(self) -> UnitaryDOmega:
        """Rz(m·π/2) = ω^(−m)·S^m, exactly."""
        m = self.quarter_turns
        return evaluate_word("S" * (m % 4) + "W" * (-m % 8))

    @property
    def correction_word(self) -> GateWord:
        m = self.quarter_turns
        return GateWord(("S",) * (m % 4) + ("W",) * (-m % 8))


def working_precision(k: int) -> int:
    return max(64, 2 * k + 32)


def make_problem(theta: RealLike, epsilon, *, k: int | None = None, prec: int | None = None) -> EpsilonProblem:
    eps = as_fraction(epsilon)
    if not 0 < eps <= Fraction(1, 2):
        raise ValueError("epsilon must lie in (0, 1/2]")
    if k is None:
        k = min_k(eps)
    if k < 1:
        raise ValueError("k must be at least 1")
    prec = prec or working_precision(k)
    th = to_real(theta, prec + 16)
    quarter = HighPrecReal.pi(prec + 16) * Fraction(1, 2)
    with mpmath.workprec(64):
        m = int(mpmath.nint((th / quarter).to_mpf()))
    red = (th - quarter * m).with_prec(prec)
    half = red * Fraction(1, 2)
    zx, zy = half.cos(), -half.sin()
    c4 = 1 - eps**2 / 4
    s = HighPrecReal.from_fraction(1 - c4 * c4, prec).sqrt()
    y_min = zy * c4 - s * zx
    y_max = zy * c4 + s * zx
    return EpsilonProblem(theta, eps, k, slot_count(eps), prec, m, red, (zx, zy), y_min, y_max)


def region_contains(u_hat: tuple[HighPrecReal, HighPrecReal], prob: EpsilonProblem) -> bool:
    """û·z ≥ 1 − ε²/2 and |û| ≤ 1, both certain at the problem's precision."""
    ux, uy = u_hat
    zx, zy = prob.z
    dot = ux * zx + uy * zy
    return dot.surely_ge(1 - prob.epsilon**2 / 2) and (ux.square() + uy.square()).surely_le(1)


@dataclass(frozen=True)
class Candidate:
    u: ZOmega
    k: int
    xi: ZRootTwo
    alpha: ZRootTwo
    beta: ZRootTwo
    slot: int

    @staticmethod
    def assemble(alpha: ZRootTwo, beta: ZRootTwo, k: int, slot: int = -1) -> Candidate:
        # u = α + βi with √2 = ω − ω³ and i = ω²
        a, b = alpha.a, alpha.b
        c, d = beta.a, beta.b
        u = ZOmega(d - b, c, b + d, a)
        xi = ZRootTwo(2**k, 0) - alpha * alpha - beta * beta
        return Candidate(u, k, xi, alpha, beta, slot)

    def structurally_valid(self) -> bool:
        """Every candidate condition that does not involve θ or ε."""
        xi = self.xi
        return (
            (self.alpha.a + self.beta.a) % 2 == 1
            and xi.a % 2 == 1
            and xi.b % 2 == 0
            and xi.sign() >= 0
            and xi.bullet().sign() >= 0
            and (self.u.dagger() * self.u).to_zroottwo() == ZRootTwo(2**self.k, 0) - xi
        )

    def u_hat(self, prec: int) -> tuple[HighPrecReal, HighPrecReal]:
        s = HighPrecReal.sqrt2_power(-self.k, prec)
        return (
            HighPrecReal.from_zroottwo(self.alpha, prec) * s,
            HighPrecReal.from_zroottwo(self.beta, prec) * s,
        )


def random_candidate(prob: EpsilonProblem, rng: random.Random) -> Candidate | None:
    """Build a candidate in a uniformly random slot, or None if that fails."""
    k, prec, eps2 = prob.k, prob.prec, prob.epsilon**2
    j = rng.randrange(prob.n)
    yj = prob.y_min + (prob.y_max - prob.y_min) * Fraction(j, prob.n)
    sk = HighPrecReal.sqrt2_power(k, prec)
    h = HighPrecReal.sqrt2_power(k - 1, prec)
    beta = solve_grid(GridProblem(sk * yj, sk * (yj + eps2 / 8), -h, h))
    if beta is None:
        return None
    zx, zy = prob.z
    beta_hat = HighPrecReal.from_zroottwo(beta, prec) / sk
    x0 = (1 - eps2 / 2 - beta_hat * zy) / zx
    parity = "odd" if beta.a % 2 == 0 else "even"
    alpha = solve_grid_parity(GridProblem(sk * x0, sk * (x0 + eps2 / 4), -h, h), parity)
    if alpha is None:
        return None
    cand = Candidate.assemble(alpha, beta, k, j)
    if not cand.structurally_valid() or not region_contains(cand.u_hat(prec), prob):
        return None
    return cand


@dataclass
class Limits:
    max_candidates_per_k: int | None = None  # default 64·k
    max_escalations: int = 3
    max_attempts: int = 2  # draws of b when looking for √−1 mod p
    workers: int = 1
    batch: int = 16  # candidates per task in parallel mode

    def budget(self, k: int) -> int:
        return self.max_candidates_per_k if self.max_candidates_per_k is not None else 64 * k


def _assemble(cand: Candidate, t: ZOmega) -> UnitaryDOmega:
    return UnitaryDOmega(cand.u, -t.dagger(), t, cand.u.dagger(), cand.k)


def _search_batch(prob: EpsilonProblem, seed: int, count: int, max_attempts: int):
    """Worker task: up to ``count`` draws. Returns (draws, candidates, failures, hit)."""
    rng = random.Random(seed)
    cands = fails = 0
    for i in range(count):
        cand = random_candidate(prob, rng)
        if cand is None:
            continue
        cands += 1
        t = solve_norm_equation(cand.xi, rng, max_attempts)
        if t is None:
            fails += 1
            continue
        return i + 1, cands, fails, (cand, t)
    return count, cands, fails, None


def _try_sequential(prob, rng, budget, limits, stats, accept):
    for _ in range(budget):
        stats.slot_draws += 1
        cand = random_candidate(prob, rng)
        if cand is None:
            continue
        stats.candidates_tried += 1
        t = solve_norm_equation(cand.xi, rng, limits.max_attempts)
        if t is None:
            stats.norm_failures += 1
            continue
        out = accept(cand, t)
        if out is not None:
            return out
    return None


def _try_parallel(prob, rng, budget, limits, stats, accept, pool):
    # workers only need the reduced data; θ itself may be an unpicklable callable
    prob = replace(prob, theta=None)
    pending = set()
    issued = 0

    def submit():
        nonlocal issued
        n = min(limits.batch, budget - issued)
        if n <= 0:
            return
        issued += n
        pending.add(pool.submit(_search_batch, prob, rng.getrandbits(64), n, limits.max_attempts))

    for _ in range(limits.workers):
        submit()
    try:
        while pending:
            done, _ = cf.wait(pending, return_when=cf.FIRST_COMPLETED)
            for fut in done:
                pending.discard(fut)
                draws, cands, fails, hit = fut.result()
                stats.slot_draws += draws
                stats.candidates_tried += cands
                stats.norm_failures += fails
                if hit is not None:
                    out = accept(*hit)
                    if out is not None:
                        return out
                submit()
    finally:
        for fut in pending:
            fut.cancel()
    return None


def _approximate(theta, epsilon, rng, limits) -> tuple[UnitaryDOmega, SynthStats, EpsilonProblem]:
    start = time.perf_counter()
    eps = as_fraction(epsilon)
    limits = limits or Limits()
    if rng is None or isinstance(rng, int):
        rng = random.Random(rng)
    prob = make_problem(theta, eps)
    stats = SynthStats(epsilon=eps, k=prob.k, k_initial=prob.k)

    def accept(cand: Candidate, t: ZOmega):
        u = _assemble(cand, t) @ prob.correction
        bound = op_norm_error(u, theta, verification_precision(cand.k))
        if not bound.surely_le(HighPrecReal.from_fraction(eps, bound.prec)):
            return None
        stats.error_bound = bound
        return u

    pool = cf.ProcessPoolExecutor(limits.workers) if limits.workers > 1 else None
    try:
        for esc in range(limits.max_escalations + 1):
            if esc:
                prob = make_problem(theta, eps, k=prob.k + 1)
                stats.k = prob.k
                stats.escalations = esc
            budget = limits.budget(prob.k)
            if pool is None:
                u = _try_sequential(prob, rng, budget, limits, stats, accept)
            else:
                u = _try_parallel(prob, rng, budget, limits, stats, accept, pool)
            if u is not None:
                stats.wall_time = time.perf_counter() - start
                return u, stats, prob
    finally:
        if pool is not None:
            pool.shutdown(wait=True, cancel_futures=True)
    stats.wall_time = time.perf_counter() - start
    raise SynthesisError(
        f"no solution after {stats.candidates_tried} candidates (k up to {prob.k})", stats
    )


def approximate_rz(
    theta: RealLike, epsilon, rng: random.Random | int | None = None, limits: Limits | None = None
) -> tuple[UnitaryDOmega, SynthStats]:
    """An exact D[ω] unitary within certified operator-norm distance ε of Rz(θ).

    Rz(θ) = diag(e^{−iθ/2}, e^{iθ/2}). ``rng`` may be a seed. The returned
    stats carry the T-count of the operator's normal form.
    """
    u, stats, _ = _approximate(theta, epsilon, rng, limits)
    stats.t_count = normal_form(u).t_count
    return u, stats


@dataclass
class RzResult:
    word: GateWord
    unitary: UnitaryDOmega
    normal_form: MANormalForm
    stats: SynthStats


def synthesize_rz(theta: RealLike, epsilon, rng=None, limits: Limits | None = None) -> RzResult:
    """Approximate Rz(θ) and return the normal-form gate word with its stats."""
    u, stats, _ = _approximate(theta, epsilon, rng, limits)
    nf = normal_form(u)
    stats.t_count = nf.t_count
    return RzResult(nf.to_word(), u, nf, stats)


# ---------------------------------------------------------------- SU(2)


def _exact_matrix(m) -> list[list[tuple[Fraction, Fraction]]]:
    """Entries as exact (re, im) rationals; accepts nested sequences or mpmath matrices."""
    if hasattr(m, "rows"):
        rows = [[m[0, 0], m[0, 1]], [m[1, 0], m[1, 1]]]
    else:
        rows = [[m[0][0], m[0][1]], [m[1][0], m[1][1]]]

    def conv(x):
        if isinstance(x, (int, Fraction)):
            return Fraction(x), Fraction(0)
        if isinstance(x, str):
            x = mpmath.mpc(complex(x.replace(" ", "").replace("i", "j")))
        if hasattr(x, "_mpf_"):
            return mpf_to_fraction(x), Fraction(0)
        if not hasattr(x, "_mpc_"):
            x = mpmath.mpc(x)  # rounds to the context precision, so only for plain numbers
        return mpf_to_fraction(x.real), mpf_to_fraction(x.imag)

    return [[conv(x) for x in r] for r in rows]


def _mpc(e) -> mpmath.mpc:
    re, im = e
    return mpmath.mpc(mpmath.mpf(re.numerator) / re.denominator, mpmath.mpf(im.numerator) / im.denominator)


def _euler_mp(m) -> tuple:
    a, b = _mpc(m[0][0]), _mpc(m[1][0])
    gamma = 2 * mpmath.atan2(abs(b), abs(a))
    arg_a = mpmath.arg(a) if a != 0 else mpmath.mpf(0)
    arg_b = mpmath.arg(b) if b != 0 else mpmath.mpf(0)
    return arg_b - arg_a + mpmath.pi / 2, gamma, -arg_a - arg_b - mpmath.pi / 2


@dataclass(frozen=True)
class EulerAngle:
    """One Euler angle of a fixed target, evaluable at any precision.

    The enclosure is the mpmath value widened by 2^(8−prec); mpmath's
    elementary functions are far more accurate than that. Results built on
    it are re-verified against the target with certified intervals.
    """

    matrix: tuple
    index: int

    def evaluate(self, prec: int) -> HighPrecReal:
        with mpmath.workprec(prec + 32):
            v = _euler_mp(self.matrix)[self.index]
            rad = (abs(v) + 1) * mpmath.mpf(2) ** (8 - prec)
            return HighPrecReal.from_mpf_enclosure(v._mpf_, rad._mpf_, prec)

    def __float__(self) -> float:
        return float(self.evaluate(64))


def euler_angles(target, tol: float = 2.0**-40) -> tuple[EulerAngle, EulerAngle, EulerAngle]:
    """(β, γ, δ) with target = Rz(β)·Rx(γ)·Rz(δ) for a special unitary target.

    Writing target = [[a, −b̄], [b, ā]]: γ = 2·atan2(|b|, |a|),
    β = arg b − arg a + π/2 and δ = −arg a − arg b − π/2.
    """
    m = _exact_matrix(target)
    with mpmath.workprec(128):
        c = [[_mpc(e) for e in r] for r in m]
        defect = max(
            abs(abs(c[0][0]) ** 2 + abs(c[1][0]) ** 2 - 1),
            abs(abs(c[0][1]) ** 2 + abs(c[1][1]) ** 2 - 1),
            abs(mpmath.conj(c[0][0]) * c[0][1] + mpmath.conj(c[1][0]) * c[1][1]),
            abs(c[0][0] * c[1][1] - c[0][1] * c[1][0] - 1),
        )
    if defect > tol:
        raise ValueError(f"target is not special unitary (defect {float(defect):.3g})")
    frozen = tuple(tuple(r) for r in m)
    return EulerAngle(frozen, 0), EulerAngle(frozen, 1), EulerAngle(frozen, 2)


@dataclass
class Su2Result:
    word: GateWord
    unitary: UnitaryDOmega
    parts: list[RzResult]
    angles: tuple
    error_bound: HighPrecReal
    t_count: int


def _target_intervals(m, prec: int) -> list[list[CInterval]]:
    return [
        [CInterval(HighPrecReal.from_fraction(re, prec), HighPrecReal.from_fraction(im, prec)) for re, im in r]
        for r in m
    ]


@dataclass(frozen=True)
class _Sum:
    x: EulerAngle
    y: EulerAngle

    def evaluate(self, prec: int) -> HighPrecReal:
        return self.x.evaluate(prec) + self.y.evaluate(prec)


def approximate_su2(target, epsilon, rng=None, limits: Limits | None = None) -> Su2Result:
    """Approximate a special unitary as Rz(β)·H·Rz(γ)·H·Rz(δ), each part to ε/3.

    A diagonal target needs only the single rotation Rz(β + δ), taken at ε.
    The assembled operator is re-verified against the target as given, so a
    target that is only special unitary to double precision cannot be
    certified below about 1e-16; pass mpmath entries for smaller ε.
    """
    eps = as_fraction(epsilon)
    if rng is None or isinstance(rng, int):
        rng = random.Random(rng)
    angles = euler_angles(target)
    m = angles[0].matrix
    if m[1][0] == (0, 0):
        parts = [synthesize_rz(_Sum(angles[0], angles[2]), eps, rng, limits)]
        word = parts[0].word
    else:
        parts = [synthesize_rz(a, eps / 3, rng, limits) for a in angles]
        h = GateWord(("H",))
        word = parts[0].word + h + parts[1].word + h + parts[2].word
    u = evaluate_word(word)
    nf = normal_form(u)
    prec = verification_precision(max(p.unitary.k for p in parts))
    bound = op_norm_distance(unitary_intervals(u, prec), _target_intervals(m, prec))
    return Su2Result(nf.to_word(), u, parts, angles, bound, nf.t_count)
