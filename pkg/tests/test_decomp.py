from fractions import Fraction

import pytest

from moonring.decomp import (
    SYSTEM_6A, DecompositionError, FeasibilityInterval, InfeasibleError, d_series_4B, decompose_4A,
    feasibility_6A, multiplicities_6A, rank_consistent, series_of, solve_parametric, trace_check,
)
from moonring.homfinder import enumerate_characters
from moonring.modfun import hauptmodul


@pytest.fixture(scope="module")
def dec():
    return decompose_4A(100)


@pytest.fixture(scope="module")
def chars(dec):
    return {c.name: c for c in enumerate_characters(dec.ring)}


def test_low_grades(dec):
    assert dec.mults[0].as_dict() == {"A": 1}
    assert dec.mults[1].as_dict() == {}
    assert dec.mults[2].as_dict() == {"A": 276, "D": 49152}
    assert dec.mults[3].as_dict() == {"D": 5371904, "CA": 2048}
    assert 276 + 4 * 49152 == 196884


def test_all_modules(dec):
    assert all(m.is_module() for m in dec.mults)
    assert rank_consistent(dec)


def test_trace_checks(dec, chars):
    assert trace_check(dec, chars["rank"], "1A")
    assert trace_check(dec, chars["trace-g2"], "2B")
    assert trace_check(dec, chars["trace-g"], "4A")
    assert not trace_check(dec, chars["trace-g"], "2B")


def test_tate_series(dec, chars):
    a = [m.coeffs[dec.ring.label_index("A")] for m in dec.mults]
    c = [m.coeffs[dec.ring.label_index("CA")] for m in dec.mults]
    tate = series_of(dec, chars["tate"])
    t2b = series_of(dec, chars["trace-g2"])
    for n in range(dec.nmax + 1):
        assert tate[n - 1] == a[n] + c[n]
        assert t2b[n - 1] == a[n] - c[n]


def test_negative_nmax():
    with pytest.raises(ValueError):
        decompose_4A(-1)


def test_d_series():
    s = d_series_4B(101)
    assert (s[0], s[1], s[2], s[3]) == (0, 48128, 5349376, 215764992)
    assert all(s[n] >= 0 and s[n].denominator == 1 for n in range(-1, 101))
    t = hauptmodul("1A", 101)
    ratios = [4 * s[n] / t[n] for n in range(1, 101)]
    # the free module D takes over: the share tends to 1
    assert ratios[-1] > ratios[0] and ratios[-1] < 1


def test_6A_grade2():
    iv = feasibility_6A(2)
    assert iv.lower == 79 and iv.upper == 783 and iv.stride == 2
    m = multiplicities_6A(2, 79)
    assert m == (79, 352, 1431, 0, 31968)
    rhs = [sum(a * x for a, x in zip(row, m)) for row in SYSTEM_6A]
    assert rhs == [196884, 4372, 783, 79, 79]


def test_6A_sandwich_range():
    t3 = hauptmodul("3A", 61)
    t6 = hauptmodul("6A", 61)
    for n in range(2, 61):
        iv = feasibility_6A(n)
        x = int(t6[n - 1])
        assert x in iv
        assert multiplicities_6A(n, x)[3] == 0
        assert iv.lower >= x and iv.upper <= t3[n - 1]
        assert all(min(multiplicities_6A(n, v)) >= 0 for v in (iv.lower, iv.upper))


def test_6A_outside_interval_infeasible():
    iv = feasibility_6A(3)
    with pytest.raises(InfeasibleError):
        multiplicities_6A(3, iv.upper + iv.stride)
    with pytest.raises(InfeasibleError):
        multiplicities_6A(3, iv.lower + 1)  # wrong parity


def test_6A_needs_grade_2():
    with pytest.raises(ValueError):
        feasibility_6A(1)


def test_interval_type():
    iv = FeasibilityInterval(5, 3, 11, 4)
    assert list(iv.values()) == [3, 7, 11]
    assert 7 in iv and 5 not in iv
    with pytest.raises(InfeasibleError):
        FeasibilityInterval(5, 4, 3, 1)


def test_solve_parametric_small():
    # m1 + m2 = 4, m1 - m2 = X: X in {-4, -2, ..., 4}
    iv, u, v = solve_parametric([[1, 1], [1, -1]], [4], 0)
    assert (iv.lower, iv.upper, iv.stride) == (-4, 4, 2)
    assert u == [Fraction(2), Fraction(2)] and v == [Fraction(1, 2), Fraction(-1, 2)]


def test_solve_parametric_infeasible():
    with pytest.raises(InfeasibleError):
        solve_parametric([[1, 1], [1, -1]], [-1], 0)


def test_solve_parametric_unbounded():
    with pytest.raises(DecompositionError):
        solve_parametric([[1, -1], [0, 1]], [0], 0)
