import json
from fractions import Fraction as F

import numpy as np
import pytest

from edcrg import bounds as B
from edcrg.envelope import (
    assemble_envelope, bound_at, envelope_csv, envelope_json, upper_curves,
)


@pytest.fixture(scope="module")
def envs():
    return {t: assemble_envelope(t, 401) for t in range(3, 11)}


@pytest.mark.parametrize("t", [3, 4])
def test_exact_everywhere_for_t3_t4(envs, t):
    env = envs[t]
    assert env.exact.all()
    for i, p in enumerate(env.p):
        pr = F(i, len(env.p) - 1)
        assert env.upper_exact[i] == B.exact_ed(t, pr)
        assert abs(env.lower[i] - float(B.exact_ed(t, pr))) < 1e-9


def test_extreme_points(envs):
    x3, x4, x5 = envs[3].extreme, envs[4].extreme, envs[5].extreme
    assert (x3.lo, x3.hi, x3.d_star, x3.exact) == (F(1, 2), F(1, 2), F(1, 4), True)
    assert (x4.lo, x4.hi, x4.d_star, x4.exact) == (F(1, 3), F(1, 3), F(2, 9), True)
    assert x5.exact and x5.d_star == F(1, 6) and x5.lo <= F(3, 10) and x5.hi >= F(1, 3)


def test_t5_at_three_tenths(envs):
    env = envs[5]
    i = int(np.argmin(np.abs(env.p - 0.3)))
    assert env.exact[i] and abs(env.upper[i] - 1 / 6) < 1e-12 and abs(env.lower[i] - 1 / 6) < 1e-12


def test_chord_lifts_032():
    b = bound_at(5, "0.32")
    assert b.lower == F(1, 6) == b.upper and b.exact
    b = bound_at(6, "0.2")
    assert isinstance(b.lower, float) and b.lower < b.upper and not b.exact


@pytest.mark.parametrize("t", range(3, 11))
def test_lower_never_above_upper(envs, t):
    env = envs[t]
    assert np.all(env.lower <= env.upper + 1e-12)


@pytest.mark.parametrize("t", range(5, 10))
def test_general_bound_below_upper(envs, t):
    env = envs[t]
    for p, u in zip(env.p, env.upper):
        if p < 0.5:
            assert B.lower_genLB(t, float(p)) <= u + 1e-12


@pytest.mark.parametrize("t", [3, 4])
def test_general_bound_exceeds_ed_near_zero_for_small_t(t):
    # it only bounds black-vertex p-cores; for t < 5 those lose to K(1,1) near p = 0
    p = F(1, 100)
    assert B.lower_genLB(t, p) > B.exact_ed(t, p)


@pytest.mark.parametrize("t", range(3, 11))
def test_lower_is_concave(envs, t):
    env = envs[t]
    slopes = np.diff(env.lower) / np.diff(env.p)
    assert np.all(np.diff(slopes) <= 1e-6)


@pytest.mark.parametrize("t", range(5, 11))
def test_exact_tail_region(envs, t):
    env = envs[t]
    m = env.p >= 2 / (t + 1)
    assert env.exact[m].all()
    assert np.allclose(env.upper[m], (1 - env.p[m]) / (t - 1), atol=1e-12)


@pytest.mark.parametrize("t", [5, 7, 9])
def test_odd_plateau(envs, t):
    env = envs[t]
    m = (env.p >= (2 * t - 1) / (t * (t + 1)) - 1e-12) & (env.p <= 2 / (t + 1) + 1e-12)
    assert np.allclose(env.upper[m], 1 / (t + 1), atol=1e-9)
    assert np.allclose(env.lower[m], 1 / (t + 1), atol=1e-9)


def test_t9_upper_uses_furedi_lines():
    names = [c.name for c in upper_curves(9)]
    assert any("furedi(q=17)" in n for n in names)
    assert any("furedi(q=41)" in n for n in names)
    assert not any("chart" in n for n in names)
    assert "furedi(q=41)" in bound_at(9, F(5, 100)).active_upper
    assert "paley(q=29)" in bound_at(9, F(1, 10)).active_upper


def test_catalog_adds_chart_rows():
    plain = {c.name for c in upper_curves(7)}
    more = {c.name for c in upper_curves(7, catalog=True)}
    assert any("chart(156,30,4,6)" in n for n in more - plain)
    b = bound_at(7, F(1, 10), catalog=True)
    assert b.upper <= bound_at(7, F(1, 10)).upper


@pytest.mark.parametrize("t", range(5, 9))
def test_envelope_below_summary_list(t):
    # with chart rows switched on, the envelope is at most the stored list
    for i in range(0, 101):
        p = F(i, 100)
        listed = min(c(p) for c in B.thm_sum_catalog(t))
        assert bound_at(t, p, catalog=True).upper <= listed


def test_bound_at_exact_rationals():
    b = bound_at(4, "1/4")
    assert (b.upper, b.lower, b.exact) == (F(11, 60), F(11, 60), True)
    b = bound_at(7, "0.25")
    assert b.upper == b.lower == F(1, 8)


def test_csv_and_json_outputs():
    env = assemble_envelope(5, 11)
    text = envelope_csv(env)
    lines = text.splitlines()
    assert lines[0] == "p,upper,lower,exact,active_upper"
    assert len(lines) == 12
    p, u, l, e, a = lines[4].split(",", 4)
    assert float(p) == pytest.approx(0.3) and e == "1" and float(u) == pytest.approx(1 / 6)
    assert len(u.replace("0.", "").lstrip("0")) <= 18
    data = json.loads(json.dumps(envelope_json(env)))
    row = data["points"][3]
    assert row["exact"] == 1 and row["upper_rational"] == "1/6" and row["p_rational"] == "3/10"
    assert data["extreme"]["d_star"] == "1/6"
