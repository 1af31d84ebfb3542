"""Colored homomorphisms into CRGs and the K_{2,t}-forbidding criterion."""

from __future__ import annotations

import numpy as np

from .crg import Crg, EdgeColor, VertexColor
from .graph import SimpleGraph


def _compat_masks(K: Crg) -> tuple[list[int], list[int]]:
    """Per CRG vertex a, bitmasks of b allowed for an H-edge / H-non-edge.

    The a == b bit encodes co-location: edges need a black vertex,
    non-edges a white one.
    """
    cm = K.color_matrix
    edge_ok = (cm == EdgeColor.BLACK) | (cm == EdgeColor.GRAY)
    non_ok = (cm == EdgeColor.WHITE) | (cm == EdgeColor.GRAY)
    for a, c in enumerate(K.vertex_colors):
        edge_ok[a, a] = c == VertexColor.BLACK
        non_ok[a, a] = c == VertexColor.WHITE
    weights = 1 << np.arange(K.k, dtype=object)

    def to_masks(m):
        return [int(sum(weights[m[a]])) for a in range(K.k)]

    return to_masks(edge_ok), to_masks(non_ok)


def _twin_classes(H: SimpleGraph) -> list[int]:
    """Representative (smallest index) of each vertex's twin class.

    Twins (same open neighbourhood if nonadjacent, same closed one if
    adjacent) are interchangeable in any embedding.
    """
    nb = [frozenset(H.neighbors(v)) for v in range(H.n)]
    rep = list(range(H.n))
    for v in range(H.n):
        for u in range(v):
            if rep[u] != u:
                continue
            if H.has_edge(u, v):
                same = nb[u] | {u} == nb[v] | {v}
            else:
                same = nb[u] == nb[v]
            if same:
                rep[v] = u
                break
    return rep


def find_embedding(H: SimpleGraph, K: Crg) -> dict[int, int] | None:
    """A colored homomorphism V(H) -> V(K), or None if there is none.

    Backtracking with forward checking over bitmask domains; variables are
    taken in descending H-degree order and twins of H are forced to take
    non-decreasing images.
    """
    if H.loops:
        raise ValueError("pattern graph must be loopless")
    edge_mask, non_mask = _compat_masks(K)
    full = (1 << K.k) - 1
    order = sorted(range(H.n), key=lambda v: (-H.degree(v), v))
    rep = _twin_classes(H)
    later_twins = {v: [w for w in range(H.n) if w > v and rep[w] == rep[v]] for v in range(H.n)}
    adj = [[H.has_edge(u, v) for v in range(H.n)] for u in range(H.n)]
    phi: dict[int, int] = {}

    def search(pos: int, dom: list[int]) -> bool:
        if pos == len(order):
            return True
        v = order[pos]
        d = dom[v]
        while d:
            low = d & -d
            a = low.bit_length() - 1
            d ^= low
            nd = dom[:]
            ok = True
            for w in order[pos + 1:]:
                nd[w] &= edge_mask[a] if adj[v][w] else non_mask[a]
                if w in later_twins[v]:
                    nd[w] &= full ^ ((1 << a) - 1)
                if not nd[w]:
                    ok = False
                    break
            if ok:
                phi[v] = a
                if search(pos + 1, nd):
                    return True
                del phi[v]
        return False

    if search(0, [full] * H.n):
        return dict(phi)
    return None


def is_colored_homomorphism(H: SimpleGraph, K: Crg, phi: dict[int, int]) -> bool:
    """Check both homomorphism clauses for an explicit map."""
    for u in range(H.n):
        for v in range(u + 1, H.n):
            a, b = phi[u], phi[v]
            if H.has_edge(u, v):
                ok = K.vertex_colors[a] == VertexColor.BLACK if a == b else K.edge(a, b) != EdgeColor.WHITE
            else:
                ok = K.vertex_colors[a] == VertexColor.WHITE if a == b else K.edge(a, b) != EdgeColor.BLACK
            if not ok:
                return False
    return True


def embeds(H: SimpleGraph, K: Crg) -> bool:
    return find_embedding(H, K) is not None


def _check_t(t: int) -> None:
    if not isinstance(t, (int, np.integer)) or t < 2:
        raise ValueError(f"t must be an integer >= 2, got {t!r}")


def common_gray_counts(K: Crg) -> np.ndarray:
    A = K.gray_adjacency().astype(np.int64)
    return A @ A


def gray_k2t_free(K: Crg, t: int) -> bool:
    """No two distinct vertices share t or more gray neighbours."""
    _check_t(t)
    C = common_gray_counts(K)
    np.fill_diagonal(C, 0)
    return bool(C.max(initial=0) < t)


def gray_book_free(K: Crg, t: int) -> bool:
    """No gray edge lies in t-2 or more gray triangles (no gray B_{t-2})."""
    _check_t(t)
    if t < 3:
        raise ValueError("the book B_{t-2} needs t >= 3")
    A = K.gray_adjacency()
    C = common_gray_counts(K)
    return not bool((C[A] >= t - 2).any())


def gray_criterion_applies(K: Crg) -> bool:
    """All vertices black and no black edges."""
    return K.is_all_black and not K.has_black_edges


def forbids_k2t(K: Crg, t: int) -> bool:
    """True iff K admits no colored homomorphism of K_{2,t}.

    All-black white/gray CRGs use the gray K_{2,t} / gray book criterion;
    everything else (and t = 2) falls back to the general search.
    """
    _check_t(t)
    if t >= 3 and gray_criterion_applies(K):
        return gray_k2t_free(K, t) and gray_book_free(K, t)
    return not embeds(SimpleGraph.complete_bipartite(2, t), K)


def forbids_k2t_general(K: Crg, t: int) -> bool:
    """The backtracking route only, for cross-checking the criterion."""
    _check_t(t)
    return not embeds(SimpleGraph.complete_bipartite(2, t), K)
