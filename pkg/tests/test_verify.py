import math
from fractions import Fraction

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from ctsynth.exact import GATES, UnitaryDOmega, evaluate_word
from ctsynth.highprec import HighPrecReal
from ctsynth.rings import ZOmega
from ctsynth.verify import (
    SynthStats,
    lower_bound_tcount,
    op_norm_error,
    typical_lower_bound_tcount,
    zomega_parts,
)


def rz(theta):
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def test_identity_against_rz_pi():
    b = op_norm_error(UnitaryDOmega.identity(), math.pi)
    # I − Rz(π) = diag(1 + i, 1 − i)
    assert abs(float(b) - math.sqrt(2)) < 2**-40
    exact = op_norm_error(UnitaryDOmega.identity(), HighPrecReal.pi)
    assert exact.surely_ge(HighPrecReal.from_qsqrt2(0, 1, 128))
    assert exact.surely_le(HighPrecReal.from_qsqrt2(0, 1, 128) + Fraction(1, 2**60))


def test_identity_against_zero():
    for prec in (64, 128, 300):
        b = op_norm_error(UnitaryDOmega.identity(), 0, prec)
        assert b.surely_le(Fraction(1, 2 ** (prec // 2)))


def test_exact_quarter_turn():
    # Rz(π/2) = ω⁻¹·S exactly, so only rounding is left
    u = evaluate_word("S" + "W" * 7)
    b = op_norm_error(u, lambda p: HighPrecReal.pi(p) / 2)
    assert b.surely_le(Fraction(1, 2**60))
    assert op_norm_error(u, lambda p: HighPrecReal.pi(p) / 2, method="singular").surely_le(Fraction(1, 2**60))


def test_zomega_parts():
    # ω = (1 + i)/√2
    assert zomega_parts(ZOmega(0, 0, 1, 0), 0) == ((Fraction(0), Fraction(1, 2)), (Fraction(0), Fraction(1, 2)))
    (pr, qr), (pi, qi) = zomega_parts(ZOmega(1, 2, 3, 4), 3)
    w = np.exp(1j * np.pi / 4)
    z = (w**3 + 2 * w**2 + 3 * w + 4) / 2**1.5
    assert abs((float(pr) + float(qr) * math.sqrt(2)) - z.real) < 1e-12
    assert abs((float(pi) + float(qi) * math.sqrt(2)) - z.imag) < 1e-12


@given(st.text(alphabet="HSTW", max_size=30), st.floats(-7, 7))
def test_bound_is_tight_upper_bound(word, theta):
    u = evaluate_word(word)
    numeric = np.linalg.norm(np.array(u.to_complex()) - rz(theta), 2)
    for method in ("auto", "singular"):
        b = float(op_norm_error(u, theta, method=method))
        assert b >= numeric - 1e-12
        assert b <= numeric + 1e-7


@given(st.text(alphabet="HST", max_size=30), st.floats(-7, 7))
def test_methods_agree_on_su2(word, theta):
    u = evaluate_word(word)
    # multiply by T if needed so det = ω^j with j even, then fix the phase
    j = u.omega_power_det()
    if j % 2:
        u = u @ GATES["T"]
        j = u.omega_power_det()
    u = u.scale_omega(-j // 2 % 8)
    assert u.omega_power_det() == 0
    a = op_norm_error(u, theta, method="identity")
    b = op_norm_error(u, theta, method="singular")
    assert abs(float(a) - float(b)) < 2**-40


def test_lower_bounds():
    assert lower_bound_tcount(Fraction(1, 2)) == -5
    assert abs(lower_bound_tcount(Fraction(1, 10**10)) - (4 * 10 * math.log2(10) - 9)) < 1e-9
    assert abs(lower_bound_tcount("1e-10") - 123.877) < 1e-3
    diff = typical_lower_bound_tcount(Fraction(1, 10**20)) - typical_lower_bound_tcount(Fraction(1, 10**10))
    assert abs(diff - 30 * math.log2(10)) < 1e-6
    # the typical bound inverts the normal-form count 192·(3·2ⁿ − 2)
    n = typical_lower_bound_tcount(Fraction(1, 1000))
    assert abs(192 * (3 * 2**n - 2) - 1000**3) < 1e-3 * 1000**3


def test_stats_record_fields():
    s = SynthStats(Fraction(1, 10), 10, 18, HighPrecReal.from_fraction(Fraction(1, 20), 64), 4, 0.5)
    rec = s.record()
    assert list(rec) == ["epsilon", "k", "t_count", "error_bound", "runtime_s", "candidates", "time_per_candidate_s"]
    assert rec["time_per_candidate_s"] == 0.125
