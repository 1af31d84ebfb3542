"""Upper and lower envelopes for ed(p) on Forb(K_{2,t}).

The upper envelope is the pointwise minimum of the registered upper curves.
The lower envelope is the pointwise best known lower bound, strengthened to
its upper concave hull (ed is concave, so chords between valid lower-bound
points are again valid lower bounds).
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .bounds import (
    BoundCurve,
    chart_params,
    cycle_line,
    furedi_improvement_interval,
    furedi_line,
    genlb_surd,
    integral_tangencies,
    matching_line,
    srg_line,
    trivial_parabola,
    trivial_tail,
)
from .constructions import BUILTIN_SRGS
from .crg import as_probability
from .field import is_prime_power

FUREDI_Q_MAX = 1024
DEFAULT_RESOLUTION = 2001
EXACT_TOL = 1e-9


@lru_cache(maxsize=None)
def _upper_curves(t: int, catalog: bool) -> tuple[BoundCurve, ...]:
    curves = [trivial_parabola(), trivial_tail(t), cycle_line(t)]
    if t % 2:
        curves.append(matching_line(t))
    seen = set()
    for spec in BUILTIN_SRGS:
        prm = spec.srg_params()
        if prm.eligible(t):
            seen.add(prm)
            c = srg_line(prm, t, source=spec)
            curves.append(BoundCurve(f"{c.name} [{spec.name}]", "upper", provenance=c.provenance,
                                     line=c.line, source=spec))
    for q in range(3, FUREDI_Q_MAX + 1):
        if (q - 1) % (t - 1) == 0 and is_prime_power(q) and furedi_improvement_interval(q, t):
            c = furedi_line(q, t)
            curves.append(BoundCurve(f"{c.name} [furedi(q={q})]", "upper", provenance=c.provenance,
                                     line=c.line, source=c.source))
    if catalog:
        for prm in chart_params(t):
            if prm not in seen and prm.eligible(t):
                c = srg_line(prm, t)
                curves.append(BoundCurve(f"{c.name} [chart{prm}]", "upper", provenance=f"chart row {prm}",
                                         line=c.line))
    return tuple(curves)


def upper_curves(t: int, catalog: bool = False) -> list[BoundCurve]:
    """Upper curves backed by a construction (chart rows only with ``catalog``)."""
    if t < 3:
        raise ValueError("t must be at least 3")
    return list(_upper_curves(t, catalog))


def upper_at(t: int, p, catalog: bool = False):
    """(value, curve name) of the upper envelope; exact for rational p."""
    p = as_probability(p)
    best, name = None, None
    for c in _upper_curves(t, catalog):
        v = c(p)
        if best is None or v < best:
            best, name = v, c.name
    return best, name


def exact_region(t: int, p) -> str | None:
    """Name of the result giving ed(p) exactly at p, or None."""
    if t in (3, 4):
        return f"exact t={t}"
    if p >= Fraction(1, 2) or p >= Fraction(2, t + 1):
        return "tail (1-p)/(t-1)"
    if t % 2 and Fraction(2 * t - 1, t * (t + 1)) <= p:
        return "odd-t plateau 1/(t+1)"
    return None


def lower_raw(t: int, p):
    """(value, source, exact) of the pointwise lower bound before chords."""
    p = as_probability(p)
    region = exact_region(t, p)
    if t == 3:
        return min(p * (1 - p), (1 - p) / 2), region, True
    if t == 4:
        return min(p * (1 - p), (7 * p + 1) / 15, (1 - p) / 3), region, True
    if region is not None and region.startswith("tail"):
        return (1 - p) / (t - 1), region, True
    if region is not None:
        return Fraction(1, t + 1), region, True
    if isinstance(p, Fraction):
        gl = genlb_surd(t, p).value()
    else:
        gl = p - (t - 1) / (4 * t - 5) * (3 * p - 2 + 2 * math.sqrt(1 - 3 * p + (t + 1) * p * p))
    cands = [(p * (1 - p), "p(1-p)"), ((1 - p) / (t - 1), "(1-p)/(t-1)"), (gl, "general lower bound")]
    v, src = min(cands, key=lambda c: c[0])
    return v, src, False


def knots(t: int, catalog: bool = False) -> list[Fraction | float]:
    """Breakpoints worth sampling exactly: thresholds, intersections, tangencies."""
    ks: set = {Fraction(0), Fraction(1), Fraction(1, 2), Fraction(2, t + 1), Fraction(2 * t - 1, t * (t + 1))}
    lines = [c.line for c in _upper_curves(t, catalog) if c.line is not None]
    lines += [(Fraction(1, 15), Fraction(7, 15))] if t == 4 else []
    for (a0, a1), (b0, b1) in itertools.combinations(lines, 2):
        if a1 != b1:
            x = (b0 - a0) / (a1 - b1)
            if 0 < x < 1:
                ks.add(x)
    for c0, c1 in lines:
        # c0 + c1 p = p - p^2
        disc = (c1 - 1) ** 2 - 4 * c0
        if disc >= 0:
            r = math.isqrt(disc.numerator), math.isqrt(disc.denominator)
            for sgn in (-1, 1):
                if r[0] ** 2 == disc.numerator and r[1] ** 2 == disc.denominator:
                    x = (-(c1 - 1) + sgn * Fraction(*r)) / 2
                else:
                    x = (-(float(c1) - 1) + sgn * math.sqrt(disc)) / 2
                if 0 < x < 1:
                    ks.add(x)
    for row in integral_tangencies(t, 60):
        ks.add(row["p"])
    return sorted(ks, key=float)


def _hull_indices(xs: np.ndarray, ys: np.ndarray) -> list[int]:
    """Indices of the upper concave hull of points sorted by x (monotone chain)."""
    hull: list[int] = []
    for i in range(len(xs)):
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            cross = (xs[b] - xs[a]) * (ys[i] - ys[a]) - (ys[b] - ys[a]) * (xs[i] - xs[a])
            if cross >= 0:
                hull.pop()
            else:
                break
        hull.append(i)
    return hull


@dataclass(frozen=True)
class ExtremePoint:
    """Where the envelope peaks: p_star = [lo, hi], d_star the value there.

    When the bracket is not closed (``exact`` false) d_star is the upper
    envelope maximum and ``d_lower`` the lower envelope maximum.
    """

    lo: Fraction | float
    hi: Fraction | float
    d_star: Fraction | float
    exact: bool
    d_lower: Fraction | float

    def as_dict(self) -> dict:
        return {"p_star": [_fmt_exact(self.lo), _fmt_exact(self.hi)], "d_star": _fmt_exact(self.d_star),
                "exact": self.exact, "d_lower": _fmt_exact(self.d_lower)}


@dataclass
class Envelope:
    t: int
    p: np.ndarray
    upper: np.ndarray
    lower: np.ndarray
    exact: np.ndarray
    active_upper: list[str]
    upper_exact: list
    lower_exact: list
    extreme: ExtremePoint
    catalog: bool = False

    def rows(self):
        for i in range(len(self.p)):
            yield self.p[i], self.upper[i], self.lower[i], bool(self.exact[i]), self.active_upper[i]


def _sample(t: int, pts: list, catalog: bool):
    n = len(pts)
    up = np.empty(n)
    lo = np.empty(n)
    up_ex, lo_ex, act, ex = [], [], [], np.zeros(n, dtype=bool)
    for i, p in enumerate(pts):
        u, name = upper_at(t, p, catalog)
        l, _, is_exact = lower_raw(t, p)
        up[i], lo[i] = float(u), float(l)
        up_ex.append(u)
        lo_ex.append(l)
        act.append(name)
        ex[i] = is_exact
    return up, lo, up_ex, lo_ex, act, ex


def assemble_envelope(t: int, resolution: int = DEFAULT_RESOLUTION, catalog: bool = False) -> Envelope:
    """Sample both envelopes on a uniform grid of [0, 1].

    Knots (thresholds, line intersections, tangency points) are sampled as
    well so that hull corners and extreme points land on exact rationals.
    """
    if t < 3:
        raise ValueError("t must be at least 3")
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    grid = [Fraction(i, resolution - 1) for i in range(resolution)]
    pts = sorted(set(grid) | set(knots(t, catalog)), key=float)
    xs = np.array([float(p) for p in pts])
    up, lo, up_ex, lo_ex, act, ex = _sample(t, pts, catalog)
    hull = _hull_indices(xs, lo)
    lo_h = np.interp(xs, xs[hull], lo[hull])
    lo_h = np.maximum(lo_h, lo)
    lo_h[ex] = lo[ex]  # proved exact values are ed itself; drop interpolation noise
    # keep exact values only where the chord did not raise the bound
    lo_ex = [lo_ex[i] if lo_h[i] <= lo[i] + 1e-15 else float(lo_h[i]) for i in range(len(pts))]
    exact = ex | (np.abs(up - lo_h) <= EXACT_TOL)
    extreme = _extreme(pts, up, lo_h, up_ex, lo_ex, exact)
    idx = {p: i for i, p in enumerate(pts)}
    sel = [idx[p] for p in grid]
    return Envelope(t, xs[sel], up[sel], lo_h[sel], exact[sel], [act[i] for i in sel],
                    [up_ex[i] for i in sel], [lo_ex[i] for i in sel], extreme, catalog)


def _extreme(pts, up, lo, up_ex, lo_ex, exact) -> ExtremePoint:
    i_lo = int(np.argmax(lo))
    d_lo, d_hi = lo[i_lo], up.max()
    if abs(d_hi - d_lo) <= EXACT_TOL:
        on = np.flatnonzero(lo >= d_lo - EXACT_TOL)
        a, b = int(on[0]), int(on[-1])
        d = up_ex[i_lo]
        return ExtremePoint(pts[a], pts[b], d, True, lo_ex[i_lo])
    on = np.flatnonzero(up >= d_lo - 1e-12)
    i_up = int(np.argmax(up))
    return ExtremePoint(pts[int(on[0])], pts[int(on[-1])], up_ex[i_up], False, lo_ex[i_lo])


@dataclass(frozen=True)
class PointBound:
    t: int
    p: Fraction | float
    upper: Fraction | float
    lower: Fraction | float
    exact: bool
    active_upper: str
    lower_source: str

    def as_dict(self) -> dict:
        return {"t": self.t, "p": _fmt_exact(self.p), "upper": _fmt_exact(self.upper),
                "lower": _fmt_exact(self.lower), "exact": self.exact, "active_upper": self.active_upper,
                "lower_source": self.lower_source}


def bound_at(t: int, p, catalog: bool = False, hull_resolution: int = 401) -> PointBound:
    """Best known bracket on ed(p) at a single p.

    Rational p gives rational output wherever no square root or chord is
    involved; the chord step samples the lower bound on a coarser grid.
    """
    p = as_probability(p)
    u, name = upper_at(t, p, catalog)
    l, src, is_exact = lower_raw(t, p)
    if not is_exact:
        grid = {Fraction(i, hull_resolution - 1) for i in range(hull_resolution)}
        pts = sorted(grid | set(knots(t, catalog)) | {p}, key=float)
        xs = np.array([float(x) for x in pts])
        ys = np.array([float(lower_raw(t, x)[0]) for x in pts])
        hull = _hull_indices(xs, ys)
        h = float(np.interp(float(p), xs[hull], ys[hull]))
        if h > float(l) + 1e-15:
            l, src = h, "concave chord"
    if isinstance(u, Fraction) and isinstance(l, Fraction):
        is_exact = is_exact or u == l
    else:
        is_exact = is_exact or abs(float(u) - float(l)) <= EXACT_TOL
    if is_exact and isinstance(u, Fraction) and not isinstance(l, Fraction):
        l = u
    return PointBound(t, p, u, l, is_exact, name, src or "")


# ---------------------------------------------------------------- output


def _fmt_exact(v):
    if isinstance(v, Fraction):
        return str(v)
    return float(v)


def _dec(v) -> str:
    return format(float(v), ".17g")


def envelope_csv(env: Envelope) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p", "upper", "lower", "exact", "active_upper"])
    for p, u, l, e, a in env.rows():
        w.writerow([_dec(p), _dec(u), _dec(l), int(e), a])
    return buf.getvalue()


def envelope_json(env: Envelope) -> dict:
    n = len(env.p)
    pts = []
    for i in range(n):
        p = Fraction(i, n - 1)
        row = {"p": _dec(env.p[i]), "upper": _dec(env.upper[i]), "lower": _dec(env.lower[i]),
               "exact": int(env.exact[i]), "active_upper": env.active_upper[i]}
        if env.exact[i]:
            row["p_rational"] = str(p)
            if isinstance(env.upper_exact[i], Fraction):
                row["upper_rational"] = str(env.upper_exact[i])
            if isinstance(env.lower_exact[i], Fraction):
                row["lower_rational"] = str(env.lower_exact[i])
        pts.append(row)
    return {"t": env.t, "resolution": n, "catalog": env.catalog, "points": pts,
            "extreme": env.extreme.as_dict()}


def envelope_json_text(env: Envelope) -> str:
    return json.dumps(envelope_json(env), indent=1)
