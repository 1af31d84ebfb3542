"""Re-derive the stored upper-bound lists for 5 <= t <= 8.

Every stored entry is rebuilt from its source: the trivial CRGs, the
matching and cycle-power CRGs, and the SRG CRGs that have a built-in
generator are constructed, checked to forbid K_{2,t}, and their f (or g)
compared with the stored formula. SRG rows without a generator are checked
against the chart: the row must be listed, feasible, eligible for t, and
its line must agree with the formula.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import SRG_CHART, SUMMARY_LISTS, formula_coeffs, line_formula
from .constructions import BUILTIN_SRGS, SrgParams, gen_cycle_power, gen_gray_clique, gen_matching, srg_parameters
from .constructions import ConstructionSpec
from .crg import f_line
from .forbid import forbids_k2t
from .gsolve import g_exact


@dataclass
class EntryCheck:
    formula: str
    tag: str
    route: str
    ok: bool
    detail: str = ""


@dataclass
class DriftReport:
    t: int
    entries: list[EntryCheck] = field(default_factory=list)
    dominated: list[str] = field(default_factory=list)

    @property
    def mismatches(self) -> list[EntryCheck]:
        return [e for e in self.entries if not e.ok]


def _coeffs2(formula: str) -> tuple[Fraction, Fraction]:
    c = formula_coeffs(formula) + (Fraction(0), Fraction(0))
    return c[0], c[1]


def _builtin_for(params: SrgParams) -> ConstructionSpec | None:
    for spec in BUILTIN_SRGS:
        if spec.srg_params() == params:
            return spec
    return None


def _check_line(K, t: int, formula: str) -> tuple[bool, str]:
    if not forbids_k2t(K, t):
        return False, f"CRG does not forbid K_2,{t}"
    got = f_line(K)
    want = _coeffs2(formula)
    if tuple(got) != want:
        return False, f"f line {line_formula(*got)} differs from {formula}"
    return True, f"f line {line_formula(*got)}"


def check_entry(t: int, formula: str, tag: str) -> EntryCheck:
    if formula == "p(1-p)":
        K = gen_gray_clique(1, 1)
        pts = (Fraction(1, 5), Fraction(1, 3), Fraction(3, 5))
        ok = forbids_k2t(K, t) and all(g_exact(K, p).g == p * (1 - p) for p in pts)
        return EntryCheck(formula, tag, "g of K(1,1)", ok, "" if ok else "g of K(1,1) differs from p(1-p)")
    if tag == "trivial":
        ok, msg = _check_line(gen_gray_clique(0, t - 1), t, formula)
        return EntryCheck(formula, tag, f"K(0,{t - 1})", ok, msg)
    if tag == "matching":
        ok, msg = _check_line(gen_matching(t), t, formula)
        return EntryCheck(formula, tag, f"matching({t})", ok, msg)
    if tag == "cycle":
        ok, msg = _check_line(gen_cycle_power(t + 5, 2), t, formula)
        return EntryCheck(formula, tag, f"cycle_power({t + 5},2)", ok, msg)
    if tag.startswith("srg:"):
        params = SrgParams(*(int(x) for x in tag[5:-1].split(",")))
        spec = _builtin_for(params)
        if spec is not None:
            K = spec.build()
            G = K.gray_graph()
            if srg_parameters(G) != params:
                return EntryCheck(formula, tag, spec.name, False, "generator produced other parameters")
            ok, msg = _check_line(K, t, formula)
            return EntryCheck(formula, tag, spec.name, ok, msg)
        rows = [(tmin, s) for tmin, prm, s in SRG_CHART if prm == params]
        if not rows:
            return EntryCheck(formula, tag, "chart", False, "parameters not in the chart")
        tmin, s = rows[0]
        problems = []
        if tmin > t:
            problems.append(f"chart lists it from t={tmin}")
        if not params.feasible():
            problems.append("infeasible parameters")
        if not params.eligible(t):
            problems.append(f"not eligible for t={t}")
        if _coeffs2(s) != _coeffs2(formula):
            problems.append(f"chart formula {s} differs")
        if tuple(params.line()) != _coeffs2(formula):
            problems.append(f"SRG line {line_formula(*params.line())} differs")
        return EntryCheck(formula, tag, "chart", not problems, "; ".join(problems) or "chart row matches")
    return EntryCheck(formula, tag, "?", False, f"unknown source tag {tag}")


def _dominated(t: int, n: int = 4000) -> list[str]:
    """Affine entries that never touch the minimum of the list (away from ties)."""
    import numpy as np

    ps = np.linspace(0, 1, n + 1)
    vals = {}
    for formula, _ in SUMMARY_LISTS[t]:
        if formula == "p(1-p)":
            vals[formula] = ps * (1 - ps)
        else:
            c0, c1 = _coeffs2(formula)
            vals[formula] = float(c0) + float(c1) * ps
    env = np.min(np.vstack(list(vals.values())), axis=0)
    return [f for f, v in vals.items() if not np.any(v <= env + 1e-12)]


def summary_drift(t: int) -> DriftReport:
    if t not in SUMMARY_LISTS:
        raise ValueError("stored lists exist for 5 <= t <= 8")
    rep = DriftReport(t)
    for formula, tag in SUMMARY_LISTS[t]:
        rep.entries.append(check_entry(t, formula, tag))
    rep.dominated = _dominated(t)
    return rep
