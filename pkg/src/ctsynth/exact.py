"""Exact Clifford+T words, unitaries over D[ω] and Matsumoto-Amano normal form.

Words are read as matrix products: the leftmost symbol is applied last, so
``evaluate_word("HT") == H @ T``.

Normal forms are computed on the Bloch (SO(3)) image of an operator. Every
syllable T, HT or SHT raises the least √2-denominator exponent of that image
by exactly one, so peeling syllables off the left while the exponent drops
recovers the unique word (T|ε)(HT|SHT)*C, with a T-count equal to the
exponent.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .rings import DOmega, ZOmega, ZRootTwo

__all__ = [
    "UnitaryDOmega",
    "GateWord",
    "GATES",
    "evaluate_word",
    "parse_word",
    "MANormalForm",
    "clifford_table",
    "normal_form",
    "exact_synthesize",
    "ma_normalize",
    "t_count",
    "enumerate_normal_forms",
    "count_distinct_normal_forms",
    "so3_lde",
]

_ZERO = ZOmega(0, 0, 0, 0)
_ONE = ZOmega(0, 0, 0, 1)
_OMEGA = ZOmega(0, 0, 1, 0)
_I = ZOmega(0, 1, 0, 0)


@dataclass(frozen=True)
class UnitaryDOmega:
    """A 2×2 matrix (1/√2^k)·[[a, b], [c, d]] with a, b, c, d ∈ Z[ω].

    Instances are kept at the least k ≥ 0, so equal operators compare and
    hash equal.
    """

    a: ZOmega
    b: ZOmega
    c: ZOmega
    d: ZOmega
    k: int = 0

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("denominator exponent must be non-negative")
        a, b, c, d, k = self.a, self.b, self.c, self.d, self.k
        while k > 0 and all(x.divisible_by_sqrt2() for x in (a, b, c, d)):
            a, b, c, d = (x.div_sqrt2() for x in (a, b, c, d))
            k -= 1
        if k != self.k:
            for name, v in zip("abcdk", (a, b, c, d, k)):
                object.__setattr__(self, name, v)

    @classmethod
    def identity(cls) -> UnitaryDOmega:
        return cls(_ONE, _ZERO, _ZERO, _ONE, 0)

    @classmethod
    def from_entries(cls, rows: Sequence[Sequence[DOmega]]) -> UnitaryDOmega:
        (p, q), (r, s) = rows
        ents = [DOmega.of(x) for x in (p, q, r, s)]
        k = max(x.k for x in ents)
        return cls(*(x.scaled_num(k) for x in ents), k)

    @property
    def entries(self) -> tuple[tuple[DOmega, DOmega], tuple[DOmega, DOmega]]:
        k = self.k
        return (
            (DOmega(self.a, k), DOmega(self.b, k)),
            (DOmega(self.c, k), DOmega(self.d, k)),
        )

    def key(self) -> tuple:
        return (self.k,) + tuple(
            (x.a, x.b, x.c, x.d) for x in (self.a, self.b, self.c, self.d)
        )

    def __matmul__(self, other: UnitaryDOmega) -> UnitaryDOmega:
        if not isinstance(other, UnitaryDOmega):
            return NotImplemented
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return UnitaryDOmega(
            a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h, self.k + other.k
        )

    def adjoint(self) -> UnitaryDOmega:
        return UnitaryDOmega(
            self.a.dagger(), self.c.dagger(), self.b.dagger(), self.d.dagger(), self.k
        )

    def scale_omega(self, j: int) -> UnitaryDOmega:
        return UnitaryDOmega(*(x.mul_omega(j) for x in (self.a, self.b, self.c, self.d)), self.k)

    def det(self) -> DOmega:
        return DOmega(self.a * self.d - self.b * self.c, 2 * self.k).reduce()

    def is_unitary(self) -> bool:
        return self.adjoint() @ self == UnitaryDOmega.identity()

    def omega_power_det(self) -> int | None:
        """j with det = ωʲ, or None."""
        det = self.det()
        for j in range(8):
            if det == DOmega(_ONE.mul_omega(j), 0):
                return j
        return None

    def to_complex(self) -> list[list[complex]]:
        return [[x.to_complex() for x in row] for row in self.entries]

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]/√2^{self.k}"


# ---------------------------------------------------------------- gates

GATES: dict[str, UnitaryDOmega] = {
    "H": UnitaryDOmega(_ONE, _ONE, _ONE, -_ONE, 1),
    "S": UnitaryDOmega(_ONE, _ZERO, _ZERO, _I, 0),
    "T": UnitaryDOmega(_ONE, _ZERO, _ZERO, _OMEGA, 0),
    "X": UnitaryDOmega(_ZERO, _ONE, _ONE, _ZERO, 0),
    "W": UnitaryDOmega(_OMEGA, _ZERO, _ZERO, _OMEGA, 0),
}

_TOKEN = re.compile(r"\s*(?:([HSTXI])|(?:[wWω])(?:\^?(\d+)|([⁰¹²³⁴⁵⁶⁷⁸⁹]+))?)")
_SUPERSCRIPT = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹", "0123456789")


@dataclass(frozen=True)
class GateWord:
    """A Clifford+T word over {H, S, T, X, W}; W is the scalar ω."""

    symbols: tuple[str, ...] = ()

    def __post_init__(self):
        bad = set(self.symbols) - set(GATES)
        if bad:
            raise ValueError(f"unknown gate symbols {sorted(bad)}")

    @classmethod
    def of(cls, w: GateWord | str | Iterable[str]) -> GateWord:
        if isinstance(w, GateWord):
            return w
        if isinstance(w, str):
            return parse_word(w)
        return cls(tuple(w))

    def __add__(self, other: GateWord) -> GateWord:
        return GateWord(self.symbols + GateWord.of(other).symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    @property
    def t_count(self) -> int:
        return self.symbols.count("T")

    def render(self) -> str:
        if not self.symbols:
            return "I"
        out = []
        run = 0
        for s in self.symbols + ("",):
            if s == "W":
                run += 1
                continue
            if run:
                out.append(f"w^{run}")
                run = 0
            out.append(s)
        return "".join(out)

    __str__ = render


def parse_word(text: str) -> GateWord:
    """Inverse of :meth:`GateWord.render`; whitespace is ignored.

    Also accepts a bare ``W``/``ω`` and superscript exponents such as ``ω⁷``.
    """
    syms: list[str] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad gate word at position {pos}: {text[pos:pos + 10]!r}")
        gate, exp, sup = m.groups()
        if gate is not None:
            if gate != "I":
                syms.append(gate)
        else:
            j = int(exp) if exp is not None else int(sup.translate(_SUPERSCRIPT)) if sup else 1
            syms.extend("W" * j)
        pos = m.end()
    return GateWord(tuple(syms))


def evaluate_word(w: GateWord | str | Iterable[str]) -> UnitaryDOmega:
    """Exact matrix of a word (leftmost symbol applied last)."""
    u = UnitaryDOmega.identity()
    for s in GateWord.of(w):
        u = u @ GATES[s]
    return u


# ---------------------------------------------------------------- SO(3)

# Bloch image of U = N/√2^k: R_ij = tr(σ_i N σ_j N†) / √2^(2k+2).


@dataclass(frozen=True)
class _SO3:
    m: tuple[tuple[ZRootTwo, ...], ...]
    e: int

    @staticmethod
    def reduced(m, e) -> _SO3:
        while e > 0 and all(x.divisible_by_sqrt2() for row in m for x in row):
            m = tuple(tuple(x.div_sqrt2() for x in row) for row in m)
            e -= 1
        return _SO3(m, e)

    def __matmul__(self, other: _SO3) -> _SO3:
        a, b = self.m, other.m
        m = tuple(
            tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j] for j in range(3))
            for i in range(3)
        )
        return _SO3.reduced(m, self.e + other.e)


def _pauli_conj(u: UnitaryDOmega, j: int) -> tuple[ZOmega, ZOmega, ZOmega, ZOmega]:
    """Numerator of U σ_j U†."""
    a, b, c, d = u.a, u.b, u.c, u.d
    if j == 0:  # σx
        p, q, r, s = b, a, d, c
    elif j == 1:  # σy = [[0, −i], [i, 0]]
        p, q, r, s = b * _I, -(a * _I), d * _I, -(c * _I)
    else:  # σz
        p, q, r, s = a, -b, c, -d
    ad, bd, cd, dd = a.dagger(), b.dagger(), c.dagger(), d.dagger()
    # [[p, q], [r, s]] @ [[a†, c†], [b†, d†]]
    return (p * ad + q * bd, p * cd + q * dd, r * ad + s * bd, r * cd + s * dd)


def _so3(u: UnitaryDOmega) -> _SO3:
    cols = []
    for j in range(3):
        m00, m01, m10, m11 = _pauli_conj(u, j)
        cols.append(
            (
                (m01 + m10).to_zroottwo(),
                ((m01 - m10) * _I).to_zroottwo(),
                (m00 - m11).to_zroottwo(),
            )
        )
    m = tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))
    return _SO3.reduced(m, 2 * u.k + 2)


def so3_lde(u: UnitaryDOmega) -> int:
    """Least √2-denominator exponent of the Bloch rotation of ``u``."""
    return _so3(u).e


# ---------------------------------------------------------------- Cliffords


@lru_cache(maxsize=None)
def clifford_table() -> tuple[tuple[GateWord, UnitaryDOmega], ...]:
    """The 192 Cliffords as (word, matrix), index 8·c + j for phase ωʲ.

    The 24 classes are ordered breadth-first over {H, S}, each with a
    shortest word.
    """
    reps: list[tuple[str, UnitaryDOmega]] = []
    seen: set = set()
    queue = deque([("", UnitaryDOmega.identity())])
    while queue:
        w, u = queue.popleft()
        cls = _so3(u)
        if cls in seen:
            continue
        seen.add(cls)
        reps.append((w, u))
        for g in "HS":
            queue.append((w + g, u @ GATES[g]))
    table = []
    for w, u in reps:
        for j in range(8):
            table.append((GateWord(tuple(w) + ("W",) * j), u.scale_omega(j)))
    if len(reps) != 24 or len({u.key() for _, u in table}) != 192:
        raise AssertionError("Clifford table construction failed")
    return tuple(table)


@lru_cache(maxsize=None)
def _clifford_index() -> dict[tuple, int]:
    return {u.key(): i for i, (_, u) in enumerate(clifford_table())}


# ---------------------------------------------------------------- normal form

_SYLLABLES = {"T": ("T",), "HT": ("H", "T"), "SHT": ("S", "H", "T")}


@lru_cache(maxsize=None)
def _syllable_data():
    out = {}
    for name, syms in _SYLLABLES.items():
        u = evaluate_word(syms)
        out[name] = (u, u.adjoint(), _so3(u.adjoint()))
    return out


@dataclass(frozen=True)
class MANormalForm:
    leading: bool
    body: tuple[str, ...]
    clifford: int

    def __post_init__(self):
        if any(s not in ("HT", "SHT") for s in self.body):
            raise ValueError("body syllables must be HT or SHT")
        if not 0 <= self.clifford < 192:
            raise ValueError("Clifford index out of range")

    @property
    def t_count(self) -> int:
        return int(self.leading) + len(self.body)

    def to_word(self) -> GateWord:
        syms: list[str] = ["T"] if self.leading else []
        for s in self.body:
            syms.extend(_SYLLABLES[s])
        syms.extend(clifford_table()[self.clifford][0].symbols)
        return GateWord(tuple(syms))

    def evaluate(self) -> UnitaryDOmega:
        return evaluate_word(self.to_word())

    def __str__(self) -> str:
        return self.to_word().render()


def t_count(x: MANormalForm | GateWord | str) -> int:
    if isinstance(x, MANormalForm):
        return x.t_count
    return GateWord.of(x).t_count


def normal_form(u: UnitaryDOmega) -> MANormalForm:
    """Matsumoto-Amano normal form of an exactly unitary D[ω] matrix."""
    if not isinstance(u, UnitaryDOmega):
        raise TypeError("expected a UnitaryDOmega")
    if not u.is_unitary():
        raise ValueError("matrix is not exactly unitary")
    syl = _syllable_data()
    r = _so3(u)
    leading = False
    body: list[str] = []
    first = True
    while r.e > 0:
        for name in ("T", "HT", "SHT") if first else ("HT", "SHT"):
            nxt = syl[name][2] @ r
            if nxt.e == r.e - 1:
                break
        else:  # pragma: no cover - impossible for Clifford+T operators
            raise ValueError("operator is not in the Clifford+T group")
        if name == "T":
            leading = True
        else:
            body.append(name)
        first = False
        r = nxt
    prefix = evaluate_word(
        (["T"] if leading else []) + [g for s in body for g in _SYLLABLES[s]]
    )
    residue = prefix.adjoint() @ u
    idx = _clifford_index().get(residue.key())
    if idx is None:  # pragma: no cover
        raise ValueError("residue is not a Clifford")
    return MANormalForm(leading, tuple(body), idx)


def exact_synthesize(u: UnitaryDOmega) -> GateWord:
    """A word evaluating exactly to ``u`` (global phase included)."""
    return normal_form(u).to_word()


def ma_normalize(w: GateWord | str | Iterable[str]) -> MANormalForm:
    return normal_form(evaluate_word(w))


def enumerate_normal_forms(max_t: int) -> Iterator[tuple[MANormalForm, UnitaryDOmega]]:
    """All normal forms with T-count ≤ ``max_t`` together with their matrices."""
    table = clifford_table()
    syl = _syllable_data()
    for leading in (False, True):
        frontier: list[tuple[tuple[str, ...], UnitaryDOmega]] = [
            ((), syl["T"][0] if leading else UnitaryDOmega.identity())
        ]
        for depth in range(max_t - int(leading) + 1):
            for body, prefix in frontier:
                for i, (_, c) in enumerate(table):
                    yield MANormalForm(leading, body, i), prefix @ c
            if depth == max_t - int(leading):
                break
            frontier = [
                (body + (s,), prefix @ syl[s][0]) for body, prefix in frontier for s in ("HT", "SHT")
            ]


def count_distinct_normal_forms(max_t: int) -> tuple[int, int]:
    """(number of normal forms, number of distinct matrices) up to T-count ``max_t``."""
    total = 0
    keys = set()
    for _, u in enumerate_normal_forms(max_t):
        total += 1
        keys.add(u.key())
    return total, len(keys)
