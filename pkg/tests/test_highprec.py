from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ctsynth.highprec import HighPrecReal, exact_floor, exact_sign, to_real
from ctsynth.rings import ZRootTwo

fracs = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**9)


def encloses(x: HighPrecReal, value: mpmath.mpf) -> bool:
    return mpmath.mpf(x.lo) <= value <= mpmath.mpf(x.hi)


def test_exact_floor_and_sign():
    assert exact_floor(Fraction(1), Fraction(1)) == 2  # 1 + √2
    assert exact_floor(Fraction(0), Fraction(-1)) == -2
    assert exact_sign(Fraction(-99), Fraction(70)) == -1
    assert exact_sign(Fraction(0), Fraction(0)) == 0
    assert HighPrecReal.from_zroottwo(ZRootTwo(1, 1), 64).floor() == 2


def test_pi_cos_sin_log():
    with mpmath.workprec(400):
        quarter = HighPrecReal.pi(200) * Fraction(1, 4)
        c = quarter.cos()
        assert encloses(c, mpmath.sqrt(2) / 2)
        assert mpmath.mpf(c.width()) < mpmath.mpf(2) ** -180
        assert encloses(HighPrecReal.from_int(10, 200).log2(), mpmath.log(10, 2))
        assert encloses(quarter.sin(), mpmath.sqrt(2) / 2)


def test_log_rejects_nonpositive():
    with pytest.raises(ValueError):
        HighPrecReal.from_int(0, 64).log()


def test_floor_ambiguity_raises():
    x = HighPrecReal.from_mpf_enclosure(mpmath.mpf(3)._mpf_, mpmath.mpf("1e-10")._mpf_, 64)
    assert x.floor_candidates() == [2, 3]
    with pytest.raises(ArithmeticError):
        x.floor()


def test_to_real_inputs():
    assert to_real("0.25", 64).contains(Fraction(1, 4))
    assert to_real(3, 64).contains(3)
    assert to_real(mpmath.mpf(0.5), 64).contains(Fraction(1, 2))
    with pytest.raises(TypeError):
        to_real(True, 64)


@given(fracs, fracs, st.integers(64, 300))
def test_arithmetic_encloses(x, y, prec):
    a, b = HighPrecReal.from_fraction(x, prec), HighPrecReal.from_fraction(y, prec)
    with mpmath.workprec(prec + 200):
        mx, my = mpmath.mpf(x.numerator) / x.denominator, mpmath.mpf(y.numerator) / y.denominator
        assert encloses(a + b, mx + my)
        assert encloses(a - b, mx - my)
        assert encloses(a * b, mx * my)
        if y:
            assert encloses(a / b, mx / my)
        assert encloses(a.abs().sqrt(), mpmath.sqrt(abs(mx)))


@given(fracs, fracs, st.integers(64, 300))
def test_qsqrt2_exact_comparisons(p, q, prec):
    x = HighPrecReal.from_qsqrt2(p, q, prec)
    with mpmath.workprec(prec + 200):
        v = mpmath.mpf(p.numerator) / p.denominator + mpmath.mpf(q.numerator) / q.denominator * mpmath.sqrt(2)
        assert encloses(x, v)
    s = exact_sign(p, q)
    assert x.surely_gt(0) == (s > 0)
    assert x.surely_lt(0) == (s < 0)
    assert x.floor() == exact_floor(p, q)


@given(st.floats(-100, 100, allow_nan=False), st.integers(64, 400))
def test_transcendentals_enclose(t, prec):
    x = HighPrecReal.from_float(t, prec)
    with mpmath.workprec(prec + 100):
        v = mpmath.mpf(t)
        assert encloses(x.cos(), mpmath.cos(v))
        assert encloses(x.sin(), mpmath.sin(v))
        if t > 0:
            assert encloses(x.log(), mpmath.log(v))


@given(fracs, st.integers(64, 300))
def test_relative_accuracy(x, prec):
    # width ≤ 2^(1−p)·|x| for a freshly rounded value
    a = HighPrecReal.from_fraction(x, prec)
    with mpmath.workprec(prec + 64):
        assert mpmath.mpf(a.width()) <= mpmath.mpf(2) ** (1 - prec) * abs(mpmath.mpf(x.numerator) / x.denominator)
