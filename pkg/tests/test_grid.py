import math
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from ctsynth.grid import (
    GridProblem,
    GridStats,
    count_solutions_bruteforce,
    is_solution,
    scale_exponent,
    solve_grid,
    solve_grid_parity,
)
from ctsynth.highprec import HighPrecReal
from ctsynth.rings import ZRootTwo

LAM2 = (1 + math.sqrt(2)) ** 2


def exact_member(alpha: ZRootTwo, x0, x1, y0, y1) -> bool:
    """Membership with exact rational endpoints, decided in Z[√2]."""
    def ge(z: ZRootTwo, q: Fraction) -> bool:
        # z ≥ q  ⟺  q.den·z − q.num ≥ 0
        return (z * q.denominator - q.numerator).sign() >= 0

    ab = alpha.bullet()
    return ge(alpha, x0) and ge(-alpha, -x1) and ge(ab, y0) and ge(-ab, -y1)


def test_unit_square_examples():
    p = 128
    gp = GridProblem(
        HighPrecReal.from_int(0, p),
        HighPrecReal.from_qsqrt2(1, 1, p),
        HighPrecReal.from_qsqrt2(0, -1, p),
        HighPrecReal.from_int(1, p),
    )
    sols = count_solutions_bruteforce(gp, 10)
    assert set(sols) == {ZRootTwo(0, 0), ZRootTwo(1, 0), ZRootTwo(0, 1), ZRootTwo(1, 1)}
    assert solve_grid(gp) in sols


def test_wide_problem():
    gp = GridProblem.make(10, 14, 10, 14)
    a = solve_grid(gp)
    assert a is not None and is_solution(a, gp)
    assert len(count_solutions_bruteforce(gp, 50)) == 7


def test_parity():
    gp = GridProblem.make(0, 4, -2, 2)
    even, odd = solve_grid_parity(gp, "even"), solve_grid_parity(gp, "odd")
    assert even.a % 2 == 0 and odd.a % 2 == 1
    assert is_solution(even, gp) and is_solution(odd, gp)
    with pytest.raises(ValueError):
        solve_grid_parity(gp, "both")


def test_empty_and_degenerate():
    assert solve_grid(GridProblem.make(Fraction(1, 10), Fraction(9, 10), Fraction(1, 10), Fraction(9, 10))) is None
    assert solve_grid(GridProblem.make(1, 1, 0, 5)) is None
    assert solve_grid(GridProblem.make(2, 1, 0, 5)) is None


def test_scale_exponent_window():
    for d in (Fraction(1, 1000), Fraction(1), Fraction(7, 3), Fraction(10**9)):
        st_ = GridStats()
        n = scale_exponent(HighPrecReal.from_fraction(d, 128), st_)
        scaled = d * (1 + math.sqrt(2)) ** n
        assert 1 < scaled <= 1 + math.sqrt(2) + 1e-9
        assert st_.exponent == n


endpoints = st.fractions(min_value=-10**5, max_value=10**5, max_denominator=10**4)
widths = st.fractions(min_value=Fraction(1, 10**4), max_value=10**4, max_denominator=10**4)


@given(endpoints, endpoints, widths, st.floats(1.0, 4.0))
def test_solvable_problems(x0, y0, d, slack):
    D = Fraction(LAM2 * slack) / d
    gp = GridProblem.make(x0, x0 + d, y0, y0 + D)
    a = solve_grid(gp)
    assert a is not None
    assert exact_member(a, x0, x0 + d, y0, y0 + D)


@given(endpoints, endpoints, widths, st.floats(1.0, 4.0), st.sampled_from(["even", "odd"]))
def test_parity_problems(x0, y0, d, slack, parity):
    D = Fraction(2 * LAM2 * slack) / d
    a = solve_grid_parity(GridProblem.make(x0, x0 + d, y0, y0 + D), parity)
    assert a is not None and a.a % 2 == (parity == "odd")
    assert exact_member(a, x0, x0 + d, y0, y0 + D)


@given(st.integers(-200, 200), st.integers(-200, 200), st.fractions(Fraction(1, 100), 100, max_denominator=1000),
       st.floats(0.01, 0.99))
def test_small_area_at_most_one(x0, y0, d, frac):
    D = Fraction(frac) / d
    gp = GridProblem.make(x0, x0 + d, y0, y0 + D)
    sols = count_solutions_bruteforce(gp, 10**6)
    assert len(sols) <= 1
    found = solve_grid(gp)
    if found is not None:
        assert found in sols


@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(-5, 5))
def test_scaling_maps_solutions(a, b, n):
    alpha = ZRootTwo(a, b)
    f = float(alpha)
    fb = float(alpha.bullet())
    gp = GridProblem.make(Fraction(f) - 1, Fraction(f) + 1, Fraction(fb) - 1, Fraction(fb) + 1)
    assume(is_solution(alpha, gp))
    scaled = alpha * ZRootTwo(1, 1) ** n
    assert is_solution(scaled, gp.scaled(n))
