"""Self-check suites run by ``edcrg verify``.

Each check recomputes a known identity from scratch and reports pass/fail
with a short description of the result it reproduces.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bounds import (
    furedi_envelope_improvement,
    furedi_feasible_q,
    furedi_improvement_interval,
    furedi_line,
    genlb_surd,
    line_formula,
    lower_genLB,
    srg_tangency_p,
    srg_equality_line,
)
from .constructions import gen_furedi, gen_gray_clique, gen_matching, parse_construction, srg_parameters, SrgParams
from .crg import Crg, EdgeColor, VertexColor, f_line, f_value
from .envelope import assemble_envelope, bound_at
from .forbid import forbids_k2t
from .graph import SimpleGraph
from .gsolve import g_exact, gray_degree_report
from .oracle import brute_edit_distance, grid_g, sample_gnp_distance, scan_small_pcores
from .summary import summary_drift


@dataclass
class CheckResult:
    key: str
    about: str
    passed: bool
    detail: str
    seconds: float


def _timed(fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    return ok, detail, time.perf_counter() - t0


def check_exact_functions():
    bad = []
    for i in range(101):
        p = Fraction(i, 100)
        b3, b4 = bound_at(3, p), bound_at(4, p)
        e3 = min(p * (1 - p), (1 - p) / 2)
        e4 = min(p * (1 - p), (1 + 7 * p) / 15, (1 - p) / 3)
        if not (b3.upper == b3.lower == e3 and b4.upper == b4.lower == e4):
            bad.append(str(p))
    x3 = assemble_envelope(3, 101).extreme
    x4 = assemble_envelope(4, 101).extreme
    ok = not bad and (x3.lo, x3.hi, x3.d_star) == (Fraction(1, 2), Fraction(1, 2), Fraction(1, 4)) \
        and (x4.lo, x4.hi, x4.d_star) == (Fraction(1, 3), Fraction(1, 3), Fraction(2, 9))
    return ok, f"mismatches={bad[:5]}, extreme t=3 ({x3.lo},{x3.d_star}), t=4 ({x4.lo},{x4.d_star})"


def check_gq22():
    spec = parse_construction("triangular_complement(6)")
    K = spec.build()
    prm = srg_parameters(K.gray_graph())
    line = f_line(K)
    p = srg_tangency_p(4, 6)
    val = srg_equality_line(4, 6)(p)
    ok = (prm == SrgParams(15, 6, 1, 3) and forbids_k2t(K, 4) and line == (Fraction(1, 15), Fraction(7, 15))
          and p == Fraction(13, 59) and val == Fraction(10, 59) and lower_genLB(4, p) == Fraction(10, 59)
          and genlb_surd(4, p).equals(val))
    return ok, f"params {prm}, line {line_formula(*line)}, tangency p={p} value={val}"


def check_odd_t():
    notes = []
    ok = True
    for t in (5, 7, 9):
        K = gen_matching(t)
        lo_p, hi_p = Fraction(2 * t - 1, t * (t + 1)), Fraction(2, t + 1)
        ok &= forbids_k2t(K, t) and f_line(K) == (Fraction(1, t + 1), Fraction(0))
        ok &= lower_genLB(t, lo_p) == Fraction(1, t + 1)
        env = assemble_envelope(t, 2001)
        m = (env.p >= float(lo_p) - 1e-15) & (env.p <= float(hi_p) + 1e-15)
        ok &= bool(np.all(np.abs(env.upper[m] - 1 / (t + 1)) <= 1e-9) and np.all(np.abs(env.lower[m] - 1 / (t + 1)) <= 1e-9))
        for p in (lo_p, hi_p):
            b = bound_at(t, p)
            ok &= b.upper == b.lower == Fraction(1, t + 1)
        notes.append(f"t={t}: plateau [{lo_p},{hi_p}]")
    return bool(ok), "; ".join(notes)


def check_g_closed_forms():
    ok = True
    count = 0
    for i in range(1, 10):
        p = Fraction(i, 10)
        s = g_exact(gen_gray_clique(1, 1), p)
        ok &= s.g == p * (1 - p)
        for m in range(2, 7):
            s = g_exact(gen_gray_clique(0, m), p)
            ok &= s.g == (1 - p) / m
            if s.is_pcore:
                r = gray_degree_report(gen_gray_clique(0, m), s)
                ok &= r.dg_holds is True and (r.xbound_holds is not False)
                count += 1
    return bool(ok), f"gray-degree identities checked on {count} all-black p-cores"


def random_crg(rng: np.random.Generator, k: int) -> Crg:
    vc = [VertexColor(int(c)) for c in rng.integers(0, 2, k)]
    ec = {(i, j): EdgeColor(int(rng.integers(0, 3))) for i in range(k) for j in range(i + 1, k)}
    return Crg(vc, ec)


def check_oracles(n_crgs: int = 20, resolution: int = 200, seed: int = 7):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_crgs):
        K = random_crg(rng, int(rng.integers(1, 6)))
        for p in (Fraction(1, 5), Fraction(7, 20), Fraction(9, 20)):
            worst = max(worst, abs(grid_g(K, p, resolution) - float(g_exact(K, p).g)))
    viol = []
    for p in (Fraction(3, 10), Fraction(7, 10)):
        viol += scan_small_pcores(4, p, 3).violations
    return worst <= 5e-3 and not viol, f"max |grid - exact| = {worst:.2e}; scan violations = {len(viol)}"


def check_summary_drift():
    bad = []
    for t in range(5, 9):
        bad += [f"t={t} {e.formula}: {e.detail}" for e in summary_drift(t).mismatches]
    return not bad, f"{len(bad)} mismatches" + (": " + "; ".join(bad) if bad else "")


def check_furedi():
    ok = True
    for q, t in ((5, 5), (7, 4), (13, 7), (8, 8)):
        K = gen_furedi(q, t)
        ok &= f_line(K) == furedi_line(q, t).line
    ok &= [furedi_feasible_q(t) for t in (5, 6, 7, 8)] == [[5], [], [7, 13], [8, 29]]
    iv = furedi_envelope_improvement(13, 7)
    ok &= iv is not None and 0.12 < iv[0] < iv[1] < 0.14
    lefts = []
    for q in (17, 41, 73):
        r = furedi_improvement_interval(q, 9)
        ok &= r is not None
        lefts.append(r[0] if r else math.nan)
    ok &= lefts[0] > lefts[1] > lefts[2]
    return bool(ok), f"t=7,q=13 interval ({iv[0]:.4f}, {iv[1]:.4f}); t=9 left ends {[round(x, 4) for x in lefts]}"


def check_edit_distance(trials: int = 50, seed: int = 42):
    from .bounds import exact_ed

    d23 = brute_edit_distance(SimpleGraph.complete_bipartite(2, 3), 3).distance
    d24 = brute_edit_distance(SimpleGraph.complete_bipartite(2, 4), 4).distance
    samples = sample_gnp_distance(8, Fraction(1, 2), 3, trials, seed)
    worst = max(s.normalized - float(exact_ed(3, Fraction(s.density).limit_denominator(1000))) for s in samples)
    return d23 == 1 and d24 == 1 and worst <= 0.15, f"K_2,3 -> {d23}, K_2,4 -> {d24}, worst excess {worst:.3f}"


CHECKS = {
    "exact": ("exact functions for t=3,4 and their extreme points", check_exact_functions),
    "gq22": ("GQ(2,2) construction, line and tangency", check_gq22),
    "plateau": ("odd t: matching CRG and the 1/(t+1) plateau", check_odd_t),
    "gsolve": ("g of K(1,1) and K(0,m) against closed forms", check_g_closed_forms),
    "oracle": ("grid search and small-CRG scan against the exact solver", check_oracles),
    "summary": ("stored upper-bound lists for t=5..8 re-derived", check_summary_drift),
    "furedi": ("Füredi lines, admissible q and improvement intervals", check_furedi),
    "editdist": ("brute-force edit distances of small graphs", check_edit_distance),
}

SUITES = {
    "quick": ["exact", "gq22", "plateau", "gsolve", "summary", "furedi"],
    "paper": list(CHECKS),
}


def run_suite(name: str) -> list[CheckResult]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    out = []
    for key in SUITES[name]:
        about, fn = CHECKS[key]
        try:
            ok, detail, secs = _timed(fn)
        except Exception as exc:  # report, keep going
            ok, detail, secs = False, f"error: {exc!r}", 0.0
        out.append(CheckResult(key, about, bool(ok), detail, secs))
    return out
