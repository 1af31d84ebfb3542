"""Minimum of u^T M_K(p) u over the probability simplex.

M_K(p) is indefinite in general, so convex QP solvers do not apply. The
exact solver visits every face of the simplex: for each nonempty support S
it solves the stationarity system M_S x = nu 1, sum(x) = 1 and keeps the
strictly positive solutions. The global minimum is the least such nu.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog

from .crg import Crg, as_probability, weighted_matrix
from .linalg import matvec, solve_affine

log = logging.getLogger(__name__)

EXACT_LIMIT = 20
# Above this order supports are screened in floating point before the exact solve.
SCREEN_ABOVE = 8
_SCREEN_TOL = 1e-7
_SING_TOL = 1e-9


class SizeLimitError(ValueError):
    """CRG too large for support enumeration; use g_iterative instead."""


@dataclass(frozen=True)
class Minimizer:
    support: tuple[int, ...]
    x: tuple[Fraction, ...]
    degenerate: bool = False


@dataclass(frozen=True)
class GSolution:
    g: Fraction | float
    x: tuple
    support: tuple[int, ...]
    p: Fraction | float
    is_pcore: bool | None
    all_minimizers: tuple[Minimizer, ...] = ()
    approximate: bool = False
    converged: bool = True

    def kkt_holds(self, K: Crg) -> bool:
        """(M x)(v) >= g everywhere, with equality on the support.

        Exact for rational solutions; 1e-9 slack for approximate ones.
        """
        M = weighted_matrix(K, self.p)
        Mx = matvec(M.tolist(), list(self.x))
        slack = 1e-9 if self.approximate else 0
        for v in range(K.k):
            if Mx[v] < self.g - slack:
                return False
            if v in self.support and abs(Mx[v] - self.g) > slack:
                return False
        return sum(self.x) == 1 or (self.approximate and abs(sum(self.x) - 1) < 1e-9)


def _stationary_exact(M, S):
    """Exact stationary set of the face S.

    Returns None (no strictly positive stationary point) or
    (nu, x_S, degenerate).
    """
    m = len(S)
    A = [[M[i][j] for j in S] + [Fraction(-1)] for i in S]
    A.append([Fraction(1)] * m + [Fraction(0)])
    b = [Fraction(0)] * m + [Fraction(1)]
    sol = solve_affine(A, b)
    if sol is None:
        return None
    x0, basis = sol
    nu = x0[m]
    if not basis:
        xs = x0[:m]
        if all(v > 0 for v in xs):
            return nu, tuple(xs), False
        return None
    # nu is constant over the solution set (M symmetric); look for a positive point.
    if any(vec[m] != 0 for vec in basis):
        raise AssertionError("multiplier not determined on a consistent face")
    xs = _positive_point(x0[:m], [vec[:m] for vec in basis])
    if xs is None:
        return None
    return nu, xs, True


def _positive_point(x0, basis):
    """A rational point of x0 + span(basis) with all coordinates > 0, or None."""
    m, r = len(x0), len(basis)
    N = np.array([[float(v[i]) for v in basis] for i in range(m)])
    f0 = np.array([float(v) for v in x0])
    # maximize s subject to x0 + N z >= s, s <= 1
    c = np.zeros(r + 1)
    c[-1] = -1.0
    A_ub = np.hstack([-N, np.ones((m, 1))])
    res = linprog(c, A_ub=A_ub, b_ub=f0, bounds=[(None, None)] * r + [(None, 1.0)], method="highs")
    if res.status != 0 or res.x[-1] <= 1e-12:
        return None
    for den in (10**3, 10**6, 10**9):
        z = [Fraction(float(v)).limit_denominator(den) for v in res.x[:r]]
        xs = [x0[i] + sum(z[j] * basis[j][i] for j in range(r)) for i in range(m)]
        if all(v > 0 for v in xs):
            return tuple(xs)
    return None


def _screen_supports(Mf: np.ndarray, size: int):
    """Float prefilter for supports of one size.

    Yields (S, nu_float, singular) for faces that may carry a positive
    stationary point.
    """
    k = Mf.shape[0]
    subsets = np.array(list(itertools.combinations(range(k), size)), dtype=np.intp)
    for chunk in np.array_split(subsets, max(1, len(subsets) // 4096)):
        n = len(chunk)
        B = np.zeros((n, size + 1, size + 1))
        B[:, :size, :size] = Mf[chunk[:, :, None], chunk[:, None, :]]
        B[:, :size, size] = -1.0
        B[:, size, :size] = 1.0
        U, s, Vt = np.linalg.svd(B)
        singular = s[:, -1] <= _SING_TOL * s[:, 0]
        s_inv = np.where(s > _SING_TOL * s[:, :1], 1.0 / np.where(s == 0, 1, s), 0.0)
        # rhs is e_size, so U^T rhs is row `size` of U
        y = np.einsum("nji,nj->ni", Vt, s_inv * U[:, size, :])
        for i in range(n):
            if singular[i]:
                yield tuple(chunk[i].tolist()), None, True
            elif y[i, :size].min() > -_SCREEN_TOL:
                yield tuple(chunk[i].tolist()), float(y[i, size]), False


def g_exact(K: Crg, p, limit: int = EXACT_LIMIT, screen_above: int = SCREEN_ABOVE) -> GSolution:
    """Exact g_K(p) for rational p by support enumeration."""
    p = as_probability(p)
    if not isinstance(p, Fraction):
        raise TypeError("g_exact needs a rational p (Fraction or 'a/b' string)")
    if K.k > limit:
        raise SizeLimitError(f"k={K.k} exceeds the exact limit {limit}; use g_iterative")
    M = weighted_matrix(K, p).tolist()
    k = K.k
    cands: list[tuple[Fraction, tuple[int, ...], tuple, bool]] = []
    if k <= screen_above:
        for size in range(1, k + 1):
            for S in itertools.combinations(range(k), size):
                r = _stationary_exact(M, S)
                if r is not None:
                    cands.append((r[0], S, r[1], r[2]))
    else:
        Mf = np.array([[float(v) for v in row] for row in M])
        pending = []
        for size in range(1, k + 1):
            pending.extend(_screen_supports(Mf, size))
        finite = [nu for _, nu, sing in pending if not sing]
        cutoff = min(finite) + 1e-6 if finite else np.inf
        for S, nu_f, sing in pending:
            if sing or nu_f <= cutoff:
                r = _stationary_exact(M, S)
                if r is not None:
                    cands.append((r[0], S, r[1], r[2]))
    g = min(c[0] for c in cands)
    mins = []
    for nu, S, xs, deg in cands:
        if nu == g:
            full = [Fraction(0)] * k
            for v, w in zip(S, xs):
                full[v] = w
            mins.append(Minimizer(S, tuple(full), deg))
    best = mins[0]
    pcore = len(mins) == 1 and len(best.support) == k and not best.degenerate
    return GSolution(g=g, x=best.x, support=best.support, p=p, is_pcore=pcore, all_minimizers=tuple(mins))


def is_pcore(K: Crg, p) -> bool:
    """Unique optimal weighting with every entry positive."""
    return bool(g_exact(K, p).is_pcore)


def project_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto {x >= 0, sum x = 1} (sort-based)."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, len(v) + 1)
    rho = np.nonzero(u - css / idx > 0)[0][-1]
    return np.maximum(v - css[rho] / (rho + 1), 0.0)


def _polish(Mf: np.ndarray, x: np.ndarray) -> np.ndarray | None:
    S = np.flatnonzero(x > 1e-10)
    m = len(S)
    B = np.zeros((m + 1, m + 1))
    B[:m, :m] = Mf[np.ix_(S, S)]
    B[:m, m] = -1.0
    B[m, :m] = 1.0
    rhs = np.zeros(m + 1)
    rhs[m] = 1.0
    try:
        y = np.linalg.solve(B, rhs)
    except np.linalg.LinAlgError:
        return None
    if not np.all(np.isfinite(y)) or y[:m].min() <= 0:
        return None
    out = np.zeros_like(x)
    out[S] = y[:m]
    return out


def g_iterative(K: Crg, p, restarts: int = 8, tol: float = 1e-9, max_iter: int = 20000, seed: int = 0) -> GSolution:
    """Projected gradient descent from several starts: the barycentre, the
    simplex vertices (at most 64 of them) and ``restarts`` random points.

    The objective is not convex, so this is a local method: the value is an
    upper bound on g. The result is flagged approximate and never carries a
    p-core verdict.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    p = as_probability(p)
    Mf = weighted_matrix(K, float(p)).astype(float)
    k = K.k
    L = 2.0 * max(np.linalg.norm(Mf, 2), 1e-12)
    rng = np.random.default_rng(seed)
    corners = range(k) if k <= 64 else rng.choice(k, 64, replace=False)
    starts = [np.full(k, 1.0 / k)] + [np.eye(k)[i] for i in corners]
    starts += [rng.dirichlet(np.ones(k)) for _ in range(restarts)]
    best_x, best_val, best_conv = None, np.inf, False
    for x in starts:
        conv = False
        for _ in range(max_iter):
            grad = 2.0 * Mf @ x
            x_new = project_simplex(x - grad / L)
            if np.abs(x_new - x).max() < tol * 1e-2:
                x = x_new
                conv = True
                break
            x = x_new
        pol = _polish(Mf, x)
        if pol is not None and pol @ Mf @ pol <= x @ Mf @ x + 1e-15:
            x = pol
        Mx = Mf @ x
        val = float(x @ Mx)
        if val - Mx.min() < tol:
            conv = True
        if val < best_val:
            best_x, best_val, best_conv = x, val, conv
    support = tuple(int(i) for i in np.flatnonzero(best_x > 1e-12))
    if not best_conv:
        log.warning("g_iterative did not reach tol=%g; returning best found", tol)
    return GSolution(g=best_val, x=tuple(float(v) for v in best_x), support=support, p=p,
                     is_pcore=None, approximate=True, converged=best_conv)


@dataclass(frozen=True)
class GrayDegreeReport:
    """Gray degree d_G(v) vs the p-core prediction (p - g)/p + ((1-2p)/p) x(v)."""

    d_gray: tuple
    predicted: tuple | None
    weight_cap: Fraction | None
    applicable: bool
    dg_holds: bool | None = None
    xbound_holds: bool | None = None
    notes: list[str] = field(default_factory=list)


def gray_degree_report(K: Crg, sol: GSolution) -> GrayDegreeReport:
    p, g, x = sol.p, sol.g, sol.x
    A = K.gray_adjacency()
    d = tuple(sum((x[u] for u in range(K.k) if A[v, u]), Fraction(0)) for v in range(K.k))
    applicable = K.is_all_black and bool(sol.is_pcore)
    notes = []
    if p == 0:
        notes.append("p = 0: gray-degree formula divides by p; suppressed")
        return GrayDegreeReport(d, None, None, applicable, None, None, notes)
    pred = tuple((p - g) / p + (1 - 2 * p) / p * xv for xv in x)
    cap = g / (1 - p) if p != 1 else None
    dg = None
    xb = None
    if applicable:
        dg = all(a == b for a, b in zip(d, pred))
        if 0 < p <= Fraction(1, 2):
            xb = all(xv <= cap for xv in x)
    else:
        notes.append("equalities only asserted for all-black p-core CRGs")
    return GrayDegreeReport(d, pred, cap, applicable, dg, xb, notes)
