"""Brute-force cross-checks.

Exact edit distance of small graphs to the class with no induced K_{2,t},
a grid search for g_K(p), and an exhaustive scan of small CRGs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .crg import Crg, EdgeColor, VertexColor, as_probability, serialize_crg, weighted_matrix
from .envelope import bound_at
from .forbid import forbids_k2t
from .graph import SimpleGraph
from .gsolve import g_exact

MAX_BRUTE_N = 10
MAX_GRID_K = 6
MAX_SCAN_K = 4


class OracleLimitError(ValueError):
    """Input too large for a brute-force oracle."""


# ---------------------------------------------------------------- edit distance


def _masks(n: int, edges) -> list[int]:
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def _independent_subset(cand: int, adj: list[int], size: int) -> list[int] | None:
    """An independent set of ``size`` vertices inside the bitmask ``cand``."""
    if size == 0:
        return []
    while cand and cand.bit_count() >= size:
        v = (cand & -cand).bit_length() - 1
        cand &= ~(1 << v)
        rest = _independent_subset(cand & ~adj[v], adj, size - 1)
        if rest is not None:
            return [v] + rest
    return None


def find_induced_k2t(n: int, adj: list[int], t: int) -> tuple[int, ...] | None:
    """Vertices (a, b, c_1..c_t) of an induced K_{2,t}, or None."""
    for a in range(n):
        for b in range(a + 1, n):
            if adj[a] >> b & 1:
                continue
            common = adj[a] & adj[b]
            if common.bit_count() < t:
                continue
            ind = _independent_subset(common, adj, t)
            if ind is not None:
                return (a, b, *ind)
    return None


def is_k2t_free(G: SimpleGraph, t: int) -> bool:
    """No induced K_{2,t} in G."""
    return find_induced_k2t(G.n, _masks(G.n, G.edges), t) is None


@dataclass(frozen=True)
class EditResult:
    """Edit distance to the K_{2,t}-free class.

    When the search budget runs out, ``exceeded`` is set, ``distance`` is
    the proven lower bound budget+1 and there is no witness.
    """

    distance: int
    witness: SimpleGraph | None
    exceeded: bool = False
    edits: tuple = ()


def _pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def brute_edit_distance(G: SimpleGraph, t: int, budget: int | None = None, method: str = "branch") -> EditResult:
    """Exact minimum number of edge toggles making G induced-K_{2,t}-free.

    ``branch`` deepens the budget one level at a time and, at each level,
    branches on the pairs of one induced K_{2,t} (every repair must toggle
    one of them). ``enumerate`` tries every edit set of size 0, 1, 2, ...
    in turn; it is slower and kept as an independent check.
    """
    if G.n > MAX_BRUTE_N:
        raise OracleLimitError(f"n={G.n} exceeds the brute-force limit {MAX_BRUTE_N}")
    if t < 2:
        raise ValueError("t must be at least 2")
    if budget is None:
        budget = len(_pairs(G.n))
    n = G.n
    index = {pr: i for i, pr in enumerate(_pairs(n))}
    start = 0
    for u, v in G.edges:
        start |= 1 << index[(min(u, v), max(u, v))]
    pairs = _pairs(n)

    def adj_of(mask: int) -> list[int]:
        return _masks(n, (pairs[i] for i in range(len(pairs)) if mask >> i & 1))

    def witness(mask: int, edits) -> EditResult:
        H = SimpleGraph.from_edges(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])
        return EditResult(bin(mask ^ start).count("1"), H, False, tuple(pairs[i] for i in sorted(edits)))

    if method == "enumerate":
        for d in range(budget + 1):
            for combo in itertools.combinations(range(len(pairs)), d):
                mask = start
                for i in combo:
                    mask ^= 1 << i
                if find_induced_k2t(n, adj_of(mask), t) is None:
                    return witness(mask, combo)
        return EditResult(budget + 1, None, True)
    if method != "branch":
        raise ValueError(f"unknown method {method!r}")

    failed: dict[int, int] = {}

    def search(mask: int, depth: int, used: frozenset):
        if failed.get(mask, -1) >= depth:
            return None
        obs = find_induced_k2t(n, adj_of(mask), t)
        if obs is None:
            return used
        if depth == 0:
            failed[mask] = 0
            return None
        for u, v in itertools.combinations(sorted(obs), 2):
            i = index[(u, v)]
            if i in used:
                continue
            r = search(mask ^ (1 << i), depth - 1, used | {i})
            if r is not None:
                return r
        failed[mask] = max(failed.get(mask, -1), depth)
        return None

    for d in range(budget + 1):
        used = search(start, d, frozenset())
        if used is not None:
            mask = start
            for i in used:
                mask ^= 1 << i
            return witness(mask, used)
    return EditResult(budget + 1, None, True)


def sample_gnp(n: int, p: float, rng: np.random.Generator) -> SimpleGraph:
    pairs = _pairs(n)
    draws = rng.random(len(pairs))
    return SimpleGraph.from_edges(n, [pr for pr, x in zip(pairs, draws) if x < p])


@dataclass(frozen=True)
class GnpSample:
    graph: SimpleGraph
    distance: int
    normalized: float
    density: float


def sample_gnp_distance(n: int, p, t: int, trials: int, seed: int = 0, budget: int | None = None) -> list[GnpSample]:
    """Normalized edit distance dist/C(n,2) of seeded G(n,p) samples."""
    if n > MAX_BRUTE_N:
        raise OracleLimitError(f"n={n} exceeds the brute-force limit {MAX_BRUTE_N}")
    p = float(as_probability(p))
    rng = np.random.default_rng(seed)
    N = n * (n - 1) // 2
    out = []
    for _ in range(trials):
        G = sample_gnp(n, p, rng)
        r = brute_edit_distance(G, t, budget)
        out.append(GnpSample(G, r.distance, r.distance / N if N else 0.0, G.num_edges / N if N else 0.0))
    return out


# ---------------------------------------------------------------- grid search for g


def _compositions(parts: int, total: int) -> np.ndarray:
    """All nonnegative integer rows of length ``parts`` with sum <= total."""
    rows = np.zeros((1, 0), dtype=np.int64)
    rem = np.array([total], dtype=np.int64)
    for _ in range(parts):
        counts = rem + 1
        idx = np.repeat(np.arange(len(rows)), counts)
        starts = np.repeat(np.cumsum(counts) - counts, counts)
        vals = np.arange(idx.size) - starts
        rows = np.hstack([rows[idx], vals[:, None]])
        rem = rem[idx] - vals
    return rows


def _grid_min_block(M: np.ndarray, prefix: np.ndarray, r: int) -> float:
    """Min over grid points whose first k-2 coordinates are the rows of prefix.

    The last two coordinates split the remainder; the objective is a
    quadratic in the split, minimized exactly over the integers.
    """
    k = M.shape[0]
    c = prefix / r
    sigma = 1.0 - c.sum(axis=1)
    A, m1, m2 = M[: k - 2, : k - 2], M[: k - 2, k - 2], M[: k - 2, k - 1]
    M11, M12, M22 = M[k - 2, k - 2], M[k - 2, k - 1], M[k - 1, k - 1]
    const = np.einsum("ni,ij,nj->n", c, A, c) + 2 * sigma * (c @ m2) + M22 * sigma**2
    beta = 2 * (c @ (m1 - m2)) + 2 * sigma * (M12 - M22)
    alpha = M11 - 2 * M12 + M22
    s_int = r - prefix.sum(axis=1)
    cands = [np.zeros_like(sigma), sigma]
    if alpha > 0:
        ystar = np.clip(-beta / (2 * alpha), 0, sigma)
        a = np.floor(ystar * r)
        cands.append(np.minimum(a, s_int) / r)
        cands.append(np.minimum(a + 1, s_int) / r)
    best = np.full(len(sigma), np.inf)
    for y in cands:
        best = np.minimum(best, const + beta * y + alpha * y * y)
    return float(best.min())


def grid_g(K: Crg, p, resolution: int) -> float:
    """Minimum of u^T M_K(p) u over simplex points with denominator ``resolution``."""
    if K.k > MAX_GRID_K:
        raise OracleLimitError(f"k={K.k} exceeds the grid limit {MAX_GRID_K}")
    if resolution < 1:
        raise ValueError("resolution must be positive")
    M = weighted_matrix(K, float(as_probability(p))).astype(float)
    k, r = K.k, resolution
    if k == 1:
        return float(M[0, 0])
    if k <= 4:
        return _grid_min_block(M, _compositions(k - 2, r), r)
    # chunk on the first coordinate to bound memory
    best = np.inf
    for x0 in range(r + 1):
        rest = _compositions(k - 3, r - x0)
        prefix = np.hstack([np.full((len(rest), 1), x0), rest])
        best = min(best, _grid_min_block(M, prefix, r))
    return best


def grid_lipschitz(K: Crg, p) -> float:
    """Crude constant L with grid_g - g <= L / resolution."""
    M = np.abs(weighted_matrix(K, float(as_probability(p))).astype(float))
    return 2.0 * K.k * float(M.max()) + K.k**2 * float(M.max())


# ---------------------------------------------------------------- small CRG scan


def _encode(vc, E, perm) -> tuple:
    k = len(vc)
    return tuple(vc[perm[i]] for i in range(k)) + tuple(
        E[perm[i]][perm[j]] for i in range(k) for j in range(i + 1, k))


def enumerate_crgs(k: int):
    """One CRG of order k per color-preserving isomorphism class."""
    pairs = _pairs(k)
    perms = list(itertools.permutations(range(k)))
    seen = set()
    for vc in itertools.product((VertexColor.BLACK, VertexColor.WHITE), repeat=k):
        for ec in itertools.product((EdgeColor.GRAY, EdgeColor.WHITE, EdgeColor.BLACK), repeat=len(pairs)):
            E = [[0] * k for _ in range(k)]
            for (i, j), c in zip(pairs, ec):
                E[i][j] = E[j][i] = int(c)
            vci = [int(c) for c in vc]
            canon = min(_encode(vci, E, perm) for perm in perms)
            if canon in seen:
                continue
            seen.add(canon)
            yield Crg(vc, {pr: c for pr, c in zip(pairs, ec)})


def edge_structure_violations(K: Crg, p) -> list[str]:
    """Departures of a p-core from the allowed non-gray edge pattern."""
    out = []
    vc = K.vertex_colors
    for i, j in itertools.combinations(range(K.k), 2):
        c = K.edge(i, j)
        if c == EdgeColor.GRAY:
            continue
        both_black = vc[i] == VertexColor.BLACK and vc[j] == VertexColor.BLACK
        both_white = vc[i] == VertexColor.WHITE and vc[j] == VertexColor.WHITE
        if p < Fraction(1, 2) and not (c == EdgeColor.WHITE and both_black):
            out.append(f"edge {i}-{j} is {c.name.lower()} at p<1/2")
        elif p > Fraction(1, 2) and not (c == EdgeColor.BLACK and both_white):
            out.append(f"edge {i}-{j} is {c.name.lower()} at p>1/2")
        elif p == Fraction(1, 2):
            out.append(f"edge {i}-{j} is {c.name.lower()} at p=1/2")
    return out


@dataclass
class ScanReport:
    p: Fraction
    t: int
    max_k: int
    classes: int = 0
    forbidding: int = 0
    pcores: int = 0
    min_g: Fraction | None = None
    argmin: Crg | None = None
    lower_bound: Fraction | float | None = None
    violations: list[str] = field(default_factory=list)
    pcore_list: list[tuple[Crg, Fraction]] = field(default_factory=list)


def scan_small_pcores(max_k: int, p, t: int) -> ScanReport:
    """Exhaustive check of every CRG with at most max_k vertices.

    For each CRG forbidding K_{2,t}: g must not fall below the lower
    envelope; each p-core must have the allowed edge pattern; at p <= 1/2 a
    p-core beating both trivial bounds must have only black vertices.
    """
    if max_k > MAX_SCAN_K:
        raise OracleLimitError(f"max_k={max_k} exceeds the scan limit {MAX_SCAN_K}")
    p = as_probability(p)
    if not isinstance(p, Fraction):
        raise TypeError("scan_small_pcores needs a rational p")
    lb = bound_at(t, p).lower
    rep = ScanReport(p, t, max_k, lower_bound=lb)
    trivial = min(p * (1 - p), (1 - p) / (t - 1))
    for k in range(1, max_k + 1):
        for K in enumerate_crgs(k):
            rep.classes += 1
            if not forbids_k2t(K, t):
                continue
            rep.forbidding += 1
            sol = g_exact(K, p)
            tag = serialize_crg(K).strip().replace("\n", "; ")
            if sol.g < lb and not (isinstance(lb, float) and float(sol.g) >= lb - 1e-12):
                rep.violations.append(f"g={sol.g} below lower bound {lb}: {tag}")
            if rep.min_g is None or sol.g < rep.min_g:
                rep.min_g, rep.argmin = sol.g, K
            if not sol.is_pcore:
                continue
            rep.pcores += 1
            rep.pcore_list.append((K, sol.g))
            for msg in edge_structure_violations(K, p):
                rep.violations.append(f"{msg}: {tag}")
            if p <= Fraction(1, 2) and sol.g < trivial and not K.is_all_black:
                rep.violations.append(f"p-core below trivial bounds has a white vertex: {tag}")
    return rep
