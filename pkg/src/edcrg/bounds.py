"""Closed-form bounds on ed(p) for Forb(K_{2,t}).

Exact pieces (t = 3, 4 and the tail p >= 2/(t+1)), the general lower bound
for black-vertex p-cores, the SRG and Füredi upper-bound lines, and the
stored summary lists for 5 <= t <= 8.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np
import sympy

from .constructions import ConstructionSpec, SrgParams, furedi_line_coeffs
from .crg import as_probability
from .field import is_prime_power


class BoundDomainError(ValueError):
    """Arguments outside the validity range of a bound."""


# ---------------------------------------------------------------- surds


def _rational_sqrt(r: Fraction) -> Fraction | None:
    if r < 0:
        return None
    n, d = r.numerator, r.denominator
    sn, sd = math.isqrt(n), math.isqrt(d)
    if sn * sn == n and sd * sd == d:
        return Fraction(sn, sd)
    return None


@dataclass(frozen=True)
class Surd:
    """The real number a + b*sqrt(r) with rational a, b and r >= 0."""

    a: Fraction
    b: Fraction
    r: Fraction

    def exact(self) -> Fraction | None:
        s = _rational_sqrt(self.r)
        return None if s is None else self.a + self.b * s

    def __float__(self):
        e = self.exact()
        if e is not None:
            return float(e)
        return float(self.a) + float(self.b) * math.sqrt(self.r)

    def value(self):
        """Fraction when the radical clears, float otherwise."""
        e = self.exact()
        return e if e is not None else float(self)

    def equals(self, c) -> bool:
        """Exact test a + b sqrt(r) == c for rational c, by squaring."""
        c = Fraction(c)
        if self.b == 0 or self.r == 0:
            return self.a == c
        lhs = (c - self.a) / self.b
        return lhs >= 0 and lhs * lhs == self.r

    def same_as(self, other: "Surd") -> bool:
        """Exact equality of two surds sharing the radicand."""
        if self.r != other.r:
            raise ValueError("radicands differ")
        return self.a == other.a and (self.b == other.b or self.r == 0)


# ---------------------------------------------------------------- exact pieces


def exact_ed(t: int, p):
    """ed(p) for t = 3 and t = 4."""
    p = as_probability(p)
    if t == 3:
        return min(p * (1 - p), (1 - p) / 2)
    if t == 4:
        return min(p * (1 - p), (7 * p + 1) / 15, (1 - p) / 3)
    raise BoundDomainError("exact_ed is only known for t = 3 and t = 4")


def exact_tail(t: int, p):
    """(1-p)/(t-1), exact for t >= 4 and p >= 2/(t+1)."""
    p = as_probability(p)
    if t < 4:
        raise BoundDomainError("exact_tail needs t >= 4")
    if p < Fraction(2, t + 1):
        raise BoundDomainError(f"exact_tail needs p >= 2/(t+1) = {Fraction(2, t + 1)}")
    return (1 - p) / (t - 1)


def genlb_surd(t: int, p) -> Surd:
    """p - ((t-1)/(4t-5)) [3p - 2 + 2 sqrt(1 - 3p + (t+1) p^2)] as a surd."""
    p = Fraction(p)
    c = Fraction(t - 1, 4 * t - 5)
    return Surd(p - c * (3 * p - 2), -2 * c, 1 - 3 * p + (t + 1) * p * p)


def lower_genLB(t: int, p):
    """Lower bound on g for black-vertex p-cores forbidding K_{2,t}, p < 1/2.

    Returns a Fraction when the radicand is a rational square (p rational),
    a float otherwise.
    """
    if t < 3:
        raise BoundDomainError("the general lower bound needs t >= 3")
    p = as_probability(p)
    if p >= Fraction(1, 2):
        raise BoundDomainError("the general lower bound needs p < 1/2")
    if isinstance(p, Fraction):
        return genlb_surd(t, p).value()
    c = (t - 1) / (4 * t - 5)
    return p - c * (3 * p - 2 + 2 * math.sqrt(1 - 3 * p + (t + 1) * p * p))


def lower_k24_conclusion(p) -> float:
    """(2p + 6 - 6 sqrt(1 - 3p + 5p^2)) / 11 for 0 < p < 1/2."""
    p = float(as_probability(p))
    if not 0 < p < 0.5:
        raise BoundDomainError("needs 0 < p < 1/2")
    return (2 * p + 6 - 6 * math.sqrt(1 - 3 * p + 5 * p * p)) / 11


def srg_theoretical_min(t: int, p) -> float:
    """Minimum over d of the hypothetical (k,d,t-3,t-1) SRG line at fixed p."""
    p = float(as_probability(p))
    return (p * (t - 2) + 2 * (t - 1)) / (4 * t - 5) - 2 * (t - 1) / (4 * t - 5) * math.sqrt(1 - 3 * p + (t + 1) * p * p)


def srg_theoretical_min_surd(t: int, p) -> Surd:
    p = Fraction(p)
    return Surd(Fraction(p * (t - 2) + 2 * (t - 1), 4 * t - 5), Fraction(-2 * (t - 1), 4 * t - 5),
                1 - 3 * p + (t + 1) * p * p)


# ---------------------------------------------------------------- curves


@dataclass(frozen=True)
class BoundCurve:
    """A named bound p -> value on [a, b].

    ``line`` holds (intercept, slope) for affine curves; ``evaluator`` is
    used otherwise. Affine curves evaluate exactly at rational p.
    """

    name: str
    side: str  # upper | lower | exact
    interval: tuple = (Fraction(0), Fraction(1))
    provenance: str = ""
    line: tuple[Fraction, Fraction] | None = None
    evaluator: Callable | None = field(default=None, compare=False)
    source: ConstructionSpec | None = None
    hypothetical: bool = False
    integral: bool = True

    def __call__(self, p):
        p = as_probability(p)
        a, b = self.interval
        if not a <= p <= b:
            raise BoundDomainError(f"{self.name} is only valid on [{a}, {b}]")
        if self.line is not None:
            c0, c1 = self.line
            return c0 + c1 * p
        return self.evaluator(p)

    def sample(self, ps: np.ndarray) -> np.ndarray:
        if self.line is not None:
            return float(self.line[0]) + float(self.line[1]) * ps
        return np.array([float(self.evaluator(float(x))) for x in ps])


def line_formula(intercept: Fraction, slope: Fraction) -> str:
    """Render 1/k + (s/k) p as (1+sp)/k when possible."""
    if slope == 0:
        return str(intercept)
    den = math.lcm(intercept.denominator, slope.denominator)
    a, b = intercept * den, slope * den
    a, b = int(a), int(b)
    if b == -a:
        return f"({a}-p)/{den}" if a == 1 else f"{a}(1-p)/{den}"
    bs = "p" if abs(b) == 1 else f"{abs(b)}p"
    sign = "+" if b > 0 else "-"
    return f"({a}{sign}{bs})/{den}"


def parse_formula(text: str):
    """Parse a bound formula such as '(1+75p)/96' or 'p(1-p)' into sympy."""
    s = text.replace(" ", "").replace("−", "-")
    s = re.sub(r"(\d)(p)", r"\1*\2", s)
    s = re.sub(r"(p|\))\(", r"\1*(", s)
    s = re.sub(r"(\d)\(", r"\1*(", s)
    return sympy.sympify(s, locals={"p": sympy.Symbol("p")})


def formula_coeffs(text: str) -> tuple[Fraction, ...]:
    """Polynomial coefficients (constant term first) of a bound formula."""
    P = sympy.Poly(parse_formula(text), sympy.Symbol("p"))
    cs = [Fraction(int(c.p), int(c.q)) for c in reversed(P.all_coeffs())]
    return tuple(cs)


def trivial_parabola() -> BoundCurve:
    return BoundCurve("p(1-p)", "upper", provenance="g of K(1,1)",
                      evaluator=lambda p: p * (1 - p),
                      source=ConstructionSpec.of("gray_clique", w=1, b=1))


def trivial_tail(t: int) -> BoundCurve:
    return BoundCurve(f"(1-p)/{t - 1}", "upper", provenance=f"g of K(0,{t - 1})",
                      line=(Fraction(1, t - 1), Fraction(-1, t - 1)),
                      source=ConstructionSpec.of("gray_clique", w=0, b=t - 1))


def cycle_line(t: int) -> BoundCurve:
    return BoundCurve(f"(3p+1)/{t + 5}", "upper", provenance=f"f of C({t + 5},2)",
                      line=(Fraction(1, t + 5), Fraction(3, t + 5)),
                      source=ConstructionSpec.of("cycle_power", k=t + 5, r=2))


def matching_line(t: int) -> BoundCurve:
    if t % 2 == 0:
        raise BoundDomainError("the matching construction needs odd t")
    return BoundCurve(f"1/{t + 1}", "upper", provenance=f"f of the {t + 1}-vertex matching CRG",
                      line=(Fraction(1, t + 1), Fraction(0)), source=ConstructionSpec.of("matching", t=t))


# ---------------------------------------------------------------- SRG lines


def srg_feasible(params: SrgParams) -> bool:
    return params.feasible()


def srg_line(params: SrgParams, t: int, source: ConstructionSpec | None = None) -> BoundCurve:
    """Upper bound 1/k + ((k-d-2)/k) p from an SRG eligible for t."""
    if not params.feasible():
        raise BoundDomainError(f"{params} violates d(d-lambda-1) = mu(k-d-1)")
    if not params.eligible(t):
        raise BoundDomainError(f"{params} is not eligible for t={t}: need lambda <= {t - 3} and mu <= {t - 1}")
    c0, c1 = params.line()
    return BoundCurve(line_formula(c0, c1), "upper", provenance=f"SRG {params}", line=(c0, c1), source=source)


def srg_equality_line(t: int, d: int, verified: bool = False) -> BoundCurve:
    """Line of a hypothetical (k, d, t-3, t-1) SRG, k = (t-1+d(d+1))/(t-1).

    Flagged hypothetical unless ``verified``; ``integral`` records whether
    k is an integer.
    """
    if d < 1:
        raise BoundDomainError("d must be at least 1")
    n = t - 1 + d * (d + 1)
    c0 = Fraction(t - 1, n)
    c1 = 1 - Fraction((d + 2) * (t - 1), n)
    k = Fraction(n, t - 1)
    return BoundCurve(line_formula(c0, c1), "upper", provenance=f"hypothetical ({k},{d},{t - 3},{t - 1}) SRG",
                      line=(c0, c1), hypothetical=not verified, integral=k.denominator == 1)


def srg_equality_k(t: int, d: int) -> Fraction:
    return Fraction(t - 1 + d * (d + 1), t - 1)


def srg_tangency_p(t: int, d: int) -> Fraction:
    """Point where the equality line touches the general lower bound."""
    den = (d + 1) * (d + 3) - t
    if den <= 0:
        raise BoundDomainError("tangency denominator (d+1)(d+3)-t must be positive")
    return Fraction(2 * d + 1, den)


def tangency_check(t: int, d: int) -> tuple[Fraction, Fraction, bool]:
    """(p, line value, exact equality with the general lower bound)."""
    p = srg_tangency_p(t, d)
    val = srg_equality_line(t, d)(p)
    return p, val, genlb_surd(t, p).equals(val)


def integral_tangencies(t: int, d_max: int = 200) -> list[dict]:
    """All d <= d_max with integral k and tangency inside (0, 1/2)."""
    out = []
    for d in range(1, d_max + 1):
        k = srg_equality_k(t, d)
        if k.denominator != 1 or d >= k:
            continue
        try:
            p = srg_tangency_p(t, d)
        except BoundDomainError:
            continue
        if 0 < p < Fraction(1, 2):
            out.append({"d": d, "k": int(k), "params": (int(k), d, t - 3, t - 1), "p": p,
                        "value": srg_equality_line(t, d)(p),
                        "feasible": SrgParams(int(k), d, t - 3, t - 1).feasible()})
    return out


# ---------------------------------------------------------------- Füredi


def _check_furedi(q: int, t: int) -> None:
    if t < 3:
        raise BoundDomainError("needs t >= 3")
    if not is_prime_power(q):
        raise BoundDomainError(f"{q} is not a prime power")
    if (q - 1) % (t - 1):
        raise BoundDomainError(f"t-1 = {t - 1} does not divide q-1 = {q - 1}")


def furedi_line(q: int, t: int) -> BoundCurve:
    _check_furedi(q, t)
    c0, c1 = furedi_line_coeffs(q, t)
    return BoundCurve(line_formula(c0, c1), "upper", provenance=f"Füredi q={q}",
                      line=(c0, c1), source=ConstructionSpec.of("furedi", q=q, t=t))


def _quad_roots(a: float, b: float, c: float) -> tuple[float, float] | None:
    disc = b * b - 4 * a * c
    if disc <= 0:
        return None
    s = math.sqrt(disc)
    return (-b - s) / (2 * a), (-b + s) / (2 * a)


def furedi_improvement_interval(q: int, t: int) -> tuple[float, float] | None:
    """Open interval where the Füredi line lies below p(1-p), if any.

    The roots of 2p^2(q^2-1) - p(t-1)(q+2) + (t-1).
    """
    _check_furedi(q, t)
    return _quad_roots(2 * (q * q - 1), -(t - 1) * (q + 2), t - 1)


def furedi_minimizing_p(q: int, t: int) -> Fraction:
    return Fraction((t - 1) * (q + 2), 4 * (q * q - 1))


def furedi_envelope_improvement(q: int, t: int) -> tuple[float, float] | None:
    """Interval where the Füredi line beats min{p(1-p), (3p+1)/(t+5), (1-p)/(t-1)}."""
    iv = furedi_improvement_interval(q, t)
    if iv is None:
        return None
    lo, hi = iv
    c0, c1 = (float(v) for v in furedi_line_coeffs(q, t))
    for d0, d1 in ((1 / (t + 5), 3 / (t + 5)), (1 / (t - 1), -1 / (t - 1))):
        # c0 + c1 p < d0 + d1 p
        a, b = c1 - d1, d0 - c0
        if a > 0:
            hi = min(hi, b / a)
        elif a < 0:
            lo = max(lo, b / a)
        elif b <= 0:
            return None
    lo, hi = max(lo, 0.0), min(hi, 1.0)
    return (lo, hi) if lo < hi else None


def furedi_q_threshold(t: int) -> float:
    return ((t - 1) + math.sqrt((t - 1) ** 2 + (9 - t) * (t + 1))) / (0.5 * (9 - t))


def furedi_feasible_q(t: int) -> list[int]:
    """Prime powers q with t-1 | q-1 below the threshold that permits improvement."""
    if not 5 <= t <= 8:
        raise BoundDomainError("the q bound is stated for 5 <= t <= 8")
    bound = furedi_q_threshold(t)
    return [q for q in range(2, math.ceil(bound) + 1)
            if q < bound and (q - 1) % (t - 1) == 0 and is_prime_power(q)]


def furedi_monotone_check(q0: int, q: int, t: int, grid: int = 100) -> bool:
    """Füredi line for q0 stays below the one for q on [2/(4+q0), 1/3)."""
    if not q0 < q:
        raise BoundDomainError("need q0 < q")
    _check_furedi(q0, t)
    _check_furedi(q, t)
    f0, f1 = furedi_line(q0, t), furedi_line(q, t)
    lo = Fraction(2, 4 + q0)
    hi = Fraction(1, 3)
    pts = [lo + (hi - lo) * Fraction(i, grid) for i in range(grid)]
    return all(f0(p) <= f1(p) for p in pts)


# ---------------------------------------------------------------- summary lists

# SRG chart: (smallest t the row is listed for, parameters, f line as printed).
SRG_CHART = (
    (5, SrgParams(13, 6, 2, 3), "(1+5p)/13"),
    (5, SrgParams(40, 12, 2, 4), "(1+26p)/40"),
    (5, SrgParams(96, 19, 2, 4), "(1+75p)/96"),
    (6, SrgParams(10, 6, 3, 4), "(1+2p)/10"),
    (6, SrgParams(17, 8, 3, 4), "(1+7p)/17"),
    (6, SrgParams(26, 10, 3, 4), "(1+14p)/26"),
    (6, SrgParams(85, 20, 3, 5), "(1+63p)/85"),
    (7, SrgParams(16, 9, 4, 6), "(1+5p)/16"),
    (7, SrgParams(36, 14, 4, 6), "(1+20p)/36"),
    (7, SrgParams(49, 16, 3, 6), "(1+31p)/49"),
    (7, SrgParams(64, 18, 2, 6), "(1+44p)/64"),
    (7, SrgParams(100, 22, 0, 6), "(1+76p)/100"),
    (7, SrgParams(156, 30, 4, 6), "(1+124p)/156"),
    (8, SrgParams(25, 12, 5, 6), "(1+11p)/25"),
    (8, SrgParams(76, 21, 2, 7), "(1+53p)/76"),
    (8, SrgParams(125, 28, 3, 7), "(1+95p)/125"),
)

_SRG = {str(prm): prm for _, prm, _ in SRG_CHART}

# Upper-bound lists for 5 <= t <= 8, verbatim, each with its source tag.
SUMMARY_LISTS = {
    5: [("p(1-p)", "trivial"), ("(1+75p)/96", "srg:(96,19,2,4)"), ("(1+26p)/40", "srg:(40,12,2,4)"),
        ("(1+5p)/13", "srg:(13,6,2,3)"), ("1/6", "matching"), ("(1-p)/4", "trivial")],
    6: [("p(1-p)", "trivial"), ("(1+63p)/85", "srg:(85,20,3,5)"), ("(1+14p)/26", "srg:(26,10,3,4)"),
        ("(1+7p)/17", "srg:(17,8,3,4)"), ("(1+2p)/10", "srg:(10,6,3,4)"), ("(1-p)/5", "trivial")],
    7: [("p(1-p)", "trivial"), ("(1+124p)/156", "srg:(156,30,4,6)"), ("(1+76p)/100", "srg:(100,22,0,6)"),
        ("(1+44p)/64", "srg:(64,18,2,6)"), ("(1+31p)/49", "srg:(49,16,3,6)"), ("(1+20p)/36", "srg:(36,14,4,6)"),
        ("(1+5p)/16", "srg:(16,9,4,6)"), ("1/8", "matching"), ("(1-p)/6", "trivial")],
    8: [("p(1-p)", "trivial"), ("(1+124p)/156", "srg:(156,30,4,6)"), ("(1+95p)/125", "srg:(125,28,3,7)"),
        ("(1+53p)/76", "srg:(76,21,2,7)"), ("(1+20p)/36", "srg:(36,14,4,6)"), ("(1+11p)/25", "srg:(25,12,5,6)"),
        ("(1+5p)/16", "srg:(16,9,4,6)"), ("(3p+1)/13", "cycle"), ("(1-p)/7", "trivial")],
}


def chart_params(t: int) -> list[SrgParams]:
    """Chart rows listed for t or any smaller t."""
    return [prm for tmin, prm, _ in SRG_CHART if tmin <= t]


def thm_sum_catalog(t: int) -> list[BoundCurve]:
    """The stored summary list for t as BoundCurves tagged with their source."""
    if t not in SUMMARY_LISTS:
        raise BoundDomainError("summary lists exist for 5 <= t <= 8")
    out = []
    for formula, tag in SUMMARY_LISTS[t]:
        if formula == "p(1-p)":
            out.append(trivial_parabola())
            continue
        c = formula_coeffs(formula)
        c0, c1 = (c + (Fraction(0), Fraction(0)))[:2]
        src = None
        if tag.startswith("srg:"):
            src = ConstructionSpec.of("srg_file", params=tuple(int(x) for x in tag[5:-1].split(",")))
        elif tag == "matching":
            src = ConstructionSpec.of("matching", t=t)
        elif tag == "cycle":
            src = ConstructionSpec.of("cycle_power", k=t + 5, r=2)
        elif tag == "trivial":
            src = ConstructionSpec.of("gray_clique", w=0, b=t - 1)
        out.append(BoundCurve(formula, "upper", provenance=tag, line=(c0, c1), source=src))
    return out


def srg_params_from_tag(tag: str) -> SrgParams:
    return _SRG.get(tag[4:]) or SrgParams(*(int(x) for x in tag[5:-1].split(",")))
