import math
from fractions import Fraction as F

import numpy as np
import pytest

from edcrg import bounds as B
from edcrg.constructions import SrgParams, gen_furedi
from edcrg.crg import f_line


def test_exact_ed_examples():
    assert B.exact_ed(3, "1/2") == F(1, 4)
    assert B.exact_ed(4, "1/4") == F(11, 60)
    assert B.exact_ed(3, 0) == 0
    with pytest.raises(B.BoundDomainError):
        B.exact_ed(5, "1/2")


def test_exact_tail_examples():
    assert B.exact_tail(5, "1/3") == F(1, 6)
    assert B.exact_tail(4, "1/2") == F(1, 6)
    assert B.exact_tail(9, 1) == 0
    with pytest.raises(B.BoundDomainError):
        B.exact_tail(5, "1/4")
    with pytest.raises(B.BoundDomainError):
        B.exact_tail(3, "1/2")


def test_general_lower_bound_examples():
    for t in range(3, 10):
        assert B.lower_genLB(t, 0) == 0
    assert B.lower_genLB(5, "3/10") == F(1, 6)
    assert B.lower_genLB(4, "13/59") == F(10, 59)
    assert B.lower_genLB(5, "1/5") == F(11, 75)  # radicand 16/25
    assert isinstance(B.lower_genLB(5, "1/7"), float)
    with pytest.raises(B.BoundDomainError):
        B.lower_genLB(5, "1/2")


def test_general_lower_bound_value_at_032():
    # plain evaluation; the chord step in the envelope lifts it to 1/6
    v = B.lower_genLB(5, 0.32)
    assert abs(v - 0.165893367) < 1e-8 and v < 1 / 6


@pytest.mark.parametrize("t", range(3, 12))
def test_general_lower_bound_peak(t):
    p = F(2 * t - 1, t * (t + 1))
    assert B.lower_genLB(t, p) == F(1, t + 1)
    for dp in (F(-1, 1000), F(1, 1000)):
        assert B.lower_genLB(t, p + dp) < F(1, t + 1)


def test_k24_conclusion():
    assert abs(B.lower_k24_conclusion(F(13, 59)) - 10 / 59) < 1e-15
    assert abs(B.lower_k24_conclusion(1e-9)) < 1e-8
    # (2/5 + 6 - 6*sqrt(0.6))/11
    assert abs(B.lower_k24_conclusion(F(1, 5)) - 0.1593109076864636) < 1e-12
    for p in np.linspace(0.01, 0.49, 49):
        assert abs(B.lower_k24_conclusion(p) - B.lower_genLB(4, float(p))) < 1e-14


def test_srg_line_examples():
    assert B.srg_line(SrgParams(15, 6, 1, 3), 4).line == (F(1, 15), F(7, 15))
    assert B.srg_line(SrgParams(13, 6, 2, 3), 5).name == "(1+5p)/13"
    with pytest.raises(B.BoundDomainError, match="eligible"):
        B.srg_line(SrgParams(15, 6, 1, 3), 3)


def test_srg_feasible_examples():
    assert B.srg_feasible(SrgParams(15, 6, 1, 3))
    assert B.srg_feasible(SrgParams(10, 3, 0, 1))
    assert not B.srg_feasible(SrgParams(10, 3, 0, 2))


def test_equality_line_examples():
    L = B.srg_equality_line(4, 6)
    assert L.line == (F(1, 15), F(7, 15)) and L.integral and L.hypothetical
    L = B.srg_equality_line(5, 3)
    assert L.line == (F(1, 4), F(-1, 4))
    assert B.srg_equality_line(4, 2).line == (F(1, 3), F(-1, 3))
    with pytest.raises(B.BoundDomainError):
        B.srg_equality_line(4, 0)


@pytest.mark.parametrize("t", range(3, 10))
def test_theoretical_min_is_general_lower_bound(t):
    ps = np.linspace(0, 0.499, 1000)
    diff = max(abs(B.srg_theoretical_min(t, float(p)) - B.lower_genLB(t, float(p))) for p in ps)
    assert diff < 1e-12


def test_tangency_examples():
    assert B.tangency_check(4, 6) == (F(13, 59), F(10, 59), True)
    p, val, ok = B.tangency_check(5, 6)
    assert p == F(13, 58) and ok
    # the line (1+5p)/13 is the Paley(13) line, not the d=6 equality line
    assert val == F(9, 58) != (1 + 5 * p) / 13
    p = B.srg_tangency_p(7, 4)
    assert p == F(9, 28)
    assert abs(float(B.srg_equality_line(7, 4)(p)) - B.srg_theoretical_min(7, float(p))) < 1e-12
    with pytest.raises(B.BoundDomainError):
        B.srg_tangency_p(8, 1)


@pytest.mark.parametrize("t", range(3, 10))
def test_every_tangency_touches(t):
    for d in range(1, 40):
        try:
            p = B.srg_tangency_p(t, d)
        except B.BoundDomainError:
            continue
        if p >= F(1, 2):
            continue
        val = B.srg_equality_line(t, d)(p)
        s = B.genlb_surd(t, p)
        if s.exact() is not None:
            assert s.equals(val)
        else:
            assert abs(float(s) - float(val)) < 1e-12
        # the line stays above the bound nearby (tangency, not crossing)
        for dp in (F(-1, 500), F(1, 500)):
            q = p + dp
            if 0 < q < F(1, 2):
                assert float(B.srg_equality_line(t, d)(q)) >= B.lower_genLB(t, float(q)) - 1e-12


def test_integral_tangencies_t4():
    rows = B.integral_tangencies(4, 10)
    assert {(r["params"], r["p"], r["value"]) for r in rows} >= {((15, 6, 1, 3), F(13, 59), F(10, 59))}
    assert all(r["feasible"] for r in rows)


@pytest.mark.parametrize("q, t, line", [
    (5, 5, (F(1, 12), F(5, 12))),
    (13, 7, (F(1, 56), F(41, 56))),
    (29, 8, (F(7, 1680), F(1463, 1680))),
])
def test_furedi_line_examples(q, t, line):
    assert B.furedi_line(q, t).line == line


@pytest.mark.parametrize("q, t", [(5, 5), (7, 4), (13, 7), (8, 8), (4, 4), (9, 5), (7, 7)])
def test_furedi_line_matches_crg(q, t):
    assert f_line(gen_furedi(q, t)) == B.furedi_line(q, t).line
    c0, c1 = B.furedi_line(q, t).line
    assert c0 == F(t - 1, 2 * (q * q - 1)) > 0


def test_furedi_divisibility():
    with pytest.raises(B.BoundDomainError):
        B.furedi_line(7, 5)
    with pytest.raises(B.BoundDomainError):
        B.furedi_improvement_interval(6, 6)


def test_improvement_interval_t9_q17():
    lo, hi = B.furedi_improvement_interval(17, 9)
    assert abs(lo - (152 - math.sqrt(4672)) / 1152) < 1e-15
    assert abs(hi - (152 + math.sqrt(4672)) / 1152) < 1e-15
    assert B.furedi_minimizing_p(17, 9) == F(19, 144)
    L = B.furedi_line(17, 9)
    for p in np.linspace(0, 1, 201):
        inside = lo < p < hi
        below = float(L(float(p))) < p * (1 - p)
        if abs(p - lo) > 1e-6 and abs(p - hi) > 1e-6:
            assert inside == below


def test_no_improvement_for_t5_q5():
    L = B.furedi_line(5, 5)
    for p in np.linspace(0, 1, 1001):
        env = min(p * (1 - p), (3 * p + 1) / 10, (1 - p) / 4)
        assert env <= float(L(float(p))) + 1e-15
    assert B.furedi_envelope_improvement(5, 5) is None


def test_envelope_improvement_t7_q13_and_t8_q29():
    lo, hi = B.furedi_envelope_improvement(13, 7)
    assert abs(lo - 0.125) < 0.005 and abs(hi - 0.1358) < 0.005
    assert abs(hi - 11 / 81) < 1e-12
    lo, hi = B.furedi_envelope_improvement(29, 8)
    assert 0.06 < lo < hi < 0.07
    assert B.furedi_envelope_improvement(7, 7) is None
    assert B.furedi_envelope_improvement(8, 8) is None


def test_qlists():
    assert B.furedi_feasible_q(5) == [5]
    assert B.furedi_feasible_q(6) == []
    assert B.furedi_feasible_q(7) == [7, 13]
    assert B.furedi_feasible_q(8) == [8, 29]
    with pytest.raises(B.BoundDomainError):
        B.furedi_feasible_q(9)


def test_t9_left_endpoints_decrease():
    lefts = [B.furedi_improvement_interval(q, 9)[0] for q in (17, 41, 73)]
    assert lefts[0] > lefts[1] > lefts[2] > 0


def test_monotone_check():
    assert B.furedi_monotone_check(7, 13, 7)
    assert B.furedi_monotone_check(5, 13, 5)
    with pytest.raises(B.BoundDomainError):
        B.furedi_monotone_check(13, 7, 7)


@pytest.mark.parametrize("t", range(5, 12))
def test_small_p_gap_is_at_most_half(t):
    # p(1-p)/2 <= lower bound <= p(1-p) below the exact tail
    for p in np.linspace(0, 2 / (t + 1), 400):
        p = float(p)
        gap = p * (1 - p) - B.lower_genLB(t, p)
        assert -1e-15 <= gap <= 0.5 * p * (1 - p) + 1e-15


@pytest.mark.parametrize("t", range(5, 12))
def test_small_p_gap_is_quadratic_near_zero(t):
    # the gap is ((t-1)/4 - 1) p^2 + O(p^3), so no bound of the form c*p(1-p), c > 0,
    # holds all the way down to p = 0
    p = 1e-3
    gap = p * (1 - p) - B.lower_genLB(t, p)
    assert abs(gap / p**2 - ((t - 1) / 4 - 1)) < 0.05
    assert gap < (0.5 - 1 / (t - 1)) * p * (1 - p)


def test_catalog_lists():
    assert [c.name for c in B.thm_sum_catalog(6)] == [
        "p(1-p)", "(1+63p)/85", "(1+14p)/26", "(1+7p)/17", "(1+2p)/10", "(1-p)/5"]
    names7 = [c.name for c in B.thm_sum_catalog(7)]
    assert "1/8" in names7 and "(1+5p)/16" in names7
    assert "1/6" in [c.name for c in B.thm_sum_catalog(5)]
    with pytest.raises(B.BoundDomainError):
        B.thm_sum_catalog(9)


def test_formula_helpers():
    assert B.formula_coeffs("(1+75p)/96") == (F(1, 96), F(75, 96))
    assert B.formula_coeffs("(3p+1)/13") == (F(1, 13), F(3, 13))
    assert B.formula_coeffs("p(1-p)") == (0, 1, -1)
    assert B.line_formula(F(1, 15), F(7, 15)) == "(1+7p)/15"
    assert B.line_formula(F(1, 4), F(-1, 4)) == "(1-p)/4"
    assert B.line_formula(F(1, 6), 0) == "1/6"


def test_surd_equality_by_squaring():
    s = B.Surd(F(1), F(1), F(2))
    assert s.exact() is None and not s.equals(F(12, 5))
    assert B.Surd(F(1), F(-1), F(4)).equals(-1)
    assert abs(float(s) - (1 + math.sqrt(2))) < 1e-15
