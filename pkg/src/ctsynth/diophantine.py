"""Solving the relative norm equation t†t = ξ over Z[ω].

The solver never tests primality. It runs the prime-case construction
optimistically and checks the answer exactly; anything that does not check
out is reported as ``None`` so the caller can move on to another candidate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .rings import ZOmega, ZRootTwo, euclid_divmod, gcd, unit_sqrt

__all__ = [
    "NormEquationInstance",
    "MulCounter",
    "modpow",
    "root_minus_one",
    "solve_norm_equation",
    "is_probable_prime",
]


@dataclass(frozen=True)
class NormEquationInstance:
    xi: ZRootTwo

    @property
    def p(self) -> int:
        return self.xi.norm()

    def well_formed(self) -> bool:
        xi = self.xi
        return xi.a % 2 == 1 and xi.b % 2 == 0 and xi.sign() >= 0 and xi.bullet().sign() >= 0


class MulCounter:
    """Counts modular multiplications done by :func:`modpow`."""

    def __init__(self) -> None:
        self.count = 0


def modpow(base: int, exp: int, mod: int, counter: MulCounter | None = None) -> int:
    """base^exp mod ``mod`` by left-to-right repeated squaring."""
    if exp < 0:
        raise ValueError("negative exponent")
    result = 1 % mod
    base %= mod
    n = 0
    for bit in bin(exp)[2:]:
        result = result * result % mod
        n += 1
        if bit == "1":
            result = result * base % mod
            n += 1
    if counter is not None:
        counter.count += n
    return result


def root_minus_one(
    p: int,
    max_attempts: int = 2,
    rng: random.Random | None = None,
    counter: MulCounter | None = None,
) -> int | None:
    """Find h with h² + 1 ≡ 0 (mod p), 0 < h < p, or None.

    Draws b at random and sets h = b^((p−1)/4); h works exactly when
    b^((p−1)/2) ≡ −1, which holds for half of all b when p is a prime
    congruent to 1 mod 4. For composite p this usually just fails, which is
    the intended signal.
    """
    if p <= 1 or p % 2 == 0:
        raise ValueError("p must be an odd integer greater than 1")
    if p % 4 != 1:
        return None
    rng = rng or random.Random()
    e = (p - 1) // 4
    for _ in range(max_attempts):
        b = rng.randrange(1, p)
        h = modpow(b, e, p, counter)
        if (h * h + 1) % p == 0:
            return h
    return None


_SMALL_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_probable_prime(n: int, rounds: int = 16, rng: random.Random | None = None) -> bool:
    """Miller-Rabin. Only used as an optional pre-filter."""
    if n < 2:
        return False
    for q in (2,) + _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    rng = rng or random.Random(n)
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def solve_norm_equation(
    inst: NormEquationInstance | ZRootTwo,
    rng: random.Random | None = None,
    max_attempts: int = 2,
    prefilter: bool = False,
) -> ZOmega | None:
    """Return t ∈ Z[ω] with t†t = ξ, or None.

    Succeeds for every well-formed ξ whose norm p = ξ•ξ is prime (up to the
    randomness in finding a square root of −1 mod p). The returned value is
    always checked exactly before it is handed back.
    """
    if isinstance(inst, ZRootTwo):
        inst = NormEquationInstance(inst)
    if not inst.well_formed():
        return None
    xi = inst.xi
    p = inst.p
    if p == 1:
        # ξ is itself a totally positive unit
        v = unit_sqrt(xi)
        return None if v is None else v.to_zomega()
    if prefilter and not is_probable_prime(p):
        return None
    h = root_minus_one(p, max_attempts, rng)
    if h is None:
        return None
    s = gcd(ZOmega(0, 1, 0, h), xi.to_zomega())
    ss = s.dagger() * s
    try:
        ss = ss.to_zroottwo()
    except ValueError:  # pragma: no cover - s†s is always real
        return None
    if not ss:
        return None
    u, r = euclid_divmod(xi, ss)
    if r or not u.is_unit():
        return None
    v = unit_sqrt(u)
    if v is None:
        return None
    t = v.to_zomega() * s
    if t.dagger() * t != xi.to_zomega():
        return None
    return t
