"""Colored regularity graphs: data model, text format, f and the weight matrix."""

from __future__ import annotations

import enum
from fractions import Fraction
from numbers import Rational

import numpy as np

from .graph import SimpleGraph


class VertexColor(enum.IntEnum):
    BLACK = 0
    WHITE = 1


class EdgeColor(enum.IntEnum):
    GRAY = 0
    WHITE = 1
    BLACK = 2


_VTOK = {"B": VertexColor.BLACK, "W": VertexColor.WHITE}
_ETOK = {"b": EdgeColor.BLACK, "w": EdgeColor.WHITE, "g": EdgeColor.GRAY}
_VSTR = {v: k for k, v in _VTOK.items()}
_ESTR = {v: k for k, v in _ETOK.items()}


class CrgParseError(ValueError):
    """Malformed CRG text; the message names the offending line."""


def as_probability(p):
    """Coerce ``p`` to a probability.

    Strings ``"a/b"`` and decimals such as ``"0.35"`` become exact
    ``Fraction``s, as do ints and Fractions; floats stay floats.
    """
    if isinstance(p, str):
        p = Fraction(p.strip())
    elif isinstance(p, bool):
        raise TypeError("bool is not a probability")
    elif isinstance(p, Rational):
        p = Fraction(p)
    elif isinstance(p, (float, np.floating)):
        p = float(p)
    else:
        raise TypeError(f"cannot interpret {p!r} as a probability")
    if not 0 <= p <= 1:
        raise ValueError(f"probability {p} outside [0, 1]")
    return p


class Crg:
    """A complete graph with black/white vertices and black/white/gray edges.

    Colours live in a dense symmetric matrix of ``EdgeColor`` codes (the
    diagonal is unused). Instances are immutable and hashable.
    """

    __slots__ = ("_vc", "_ec", "_key")

    def __init__(self, vertex_colors, edge_colors=None):
        vc = tuple(VertexColor(c) for c in vertex_colors)
        k = len(vc)
        if k < 1:
            raise ValueError("a CRG needs at least one vertex")
        ec = np.zeros((k, k), dtype=np.int8)
        for (i, j), c in (edge_colors or {}).items():
            if i == j:
                raise ValueError("CRGs have no self-loops")
            if not (0 <= i < k and 0 <= j < k):
                raise ValueError(f"edge ({i},{j}) out of range")
            ec[i, j] = ec[j, i] = EdgeColor(c)
        np.fill_diagonal(ec, -1)
        ec.setflags(write=False)
        self._vc = vc
        self._ec = ec
        self._key = (vc, ec.tobytes())

    @classmethod
    def from_matrix(cls, vertex_colors, matrix) -> "Crg":
        m = np.asarray(matrix)
        k = len(vertex_colors)
        edges = {(i, j): int(m[i, j]) for i in range(k) for j in range(i + 1, k) if m[i, j] != EdgeColor.GRAY}
        return cls(vertex_colors, edges)

    @property
    def k(self) -> int:
        return len(self._vc)

    @property
    def vertex_colors(self) -> tuple:
        return self._vc

    @property
    def color_matrix(self) -> np.ndarray:
        """Read-only k x k matrix of EdgeColor codes, diagonal -1."""
        return self._ec

    def edge(self, i: int, j: int) -> EdgeColor:
        if i == j:
            raise ValueError("no edge from a vertex to itself")
        return EdgeColor(int(self._ec[i, j]))

    def vertices_of(self, color: VertexColor) -> list[int]:
        return [i for i, c in enumerate(self._vc) if c == color]

    def edges_of(self, color: EdgeColor) -> list[tuple[int, int]]:
        iu, ju = np.triu_indices(self.k, 1)
        sel = self._ec[iu, ju] == color
        return list(zip(iu[sel].tolist(), ju[sel].tolist()))

    def gray_adjacency(self) -> np.ndarray:
        """Boolean adjacency matrix of the gray subgraph."""
        return self._ec == EdgeColor.GRAY

    def gray_graph(self) -> SimpleGraph:
        return SimpleGraph.from_edges(self.k, self.edges_of(EdgeColor.GRAY))

    @property
    def is_all_black(self) -> bool:
        return all(c == VertexColor.BLACK for c in self._vc)

    @property
    def has_black_edges(self) -> bool:
        return bool((self._ec == EdgeColor.BLACK).any())

    def counts(self) -> dict[str, int]:
        iu, ju = np.triu_indices(self.k, 1)
        e = self._ec[iu, ju]
        nw = sum(1 for c in self._vc if c == VertexColor.WHITE)
        return {
            "vw": nw,
            "vb": self.k - nw,
            "ew": int((e == EdgeColor.WHITE).sum()),
            "eb": int((e == EdgeColor.BLACK).sum()),
            "eg": int((e == EdgeColor.GRAY).sum()),
        }

    def permuted(self, perm) -> "Crg":
        """Relabel so that new vertex ``i`` is old vertex ``perm[i]``."""
        perm = list(perm)
        return Crg.from_matrix([self._vc[i] for i in perm], self._ec[np.ix_(perm, perm)])

    def __eq__(self, other):
        return isinstance(other, Crg) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        c = self.counts()
        return f"Crg(k={self.k}, vw={c['vw']}, vb={c['vb']}, ew={c['ew']}, eb={c['eb']}, eg={c['eg']})"


def parse_crg(text) -> Crg:
    """Parse the line-oriented CRG format; unlisted pairs are gray."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    k = None
    vcol: dict[int, VertexColor] = {}
    ecol: dict[tuple[int, int], EdgeColor] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            nums = [int(x) for x in tok[1:-1]] if tok[0] in ("v", "e") else None
        except ValueError:
            raise CrgParseError(f"line {lineno}: bad integer in {raw.strip()!r}") from None
        if k is None:
            if tok[0] != "crg" or len(tok) != 2 or not tok[1].isdigit() or int(tok[1]) < 1:
                raise CrgParseError(f"line {lineno}: expected header 'crg <k>' with k >= 1")
            k = int(tok[1])
        elif tok[0] == "v" and len(tok) == 3:
            (i,) = nums
            if not 0 <= i < k:
                raise CrgParseError(f"line {lineno}: vertex index {i} out of range 0..{k - 1}")
            if i in vcol:
                raise CrgParseError(f"line {lineno}: duplicate vertex index {i}")
            if tok[2] not in _VTOK:
                raise CrgParseError(f"line {lineno}: bad vertex color {tok[2]!r} (want B or W)")
            vcol[i] = _VTOK[tok[2]]
        elif tok[0] == "e" and len(tok) == 4:
            i, j = nums
            if not (0 <= i < k and 0 <= j < k) or i == j:
                raise CrgParseError(f"line {lineno}: edge endpoint out of range or loop ({i},{j})")
            if tok[3] not in _ETOK:
                raise CrgParseError(f"line {lineno}: bad edge color {tok[3]!r} (want b, w or g)")
            key = (min(i, j), max(i, j))
            c = _ETOK[tok[3]]
            if key in ecol and ecol[key] != c:
                raise CrgParseError(f"line {lineno}: edge {key} repeated with conflicting color")
            ecol[key] = c
        else:
            raise CrgParseError(f"line {lineno}: unrecognised line {raw.strip()!r}")
    if k is None:
        raise CrgParseError("missing 'crg <k>' header")
    missing = [i for i in range(k) if i not in vcol]
    if missing:
        raise CrgParseError(f"vertices without a color line: {missing}")
    return Crg([vcol[i] for i in range(k)], ecol)


def serialize_crg(K: Crg) -> str:
    """Canonical text: vertices by index, non-gray edges in lexicographic order."""
    lines = [f"crg {K.k}"]
    lines += [f"v {i} {_VSTR[c]}" for i, c in enumerate(K.vertex_colors)]
    m = K.color_matrix
    for i in range(K.k):
        for j in range(i + 1, K.k):
            if m[i, j] != EdgeColor.GRAY:
                lines.append(f"e {i} {j} {_ESTR[EdgeColor(int(m[i, j]))]}")
    return "\n".join(lines) + "\n"


def f_value(K: Crg, p):
    """Uniform-weight objective (1/k^2)[p(|VW|+2|EW|) + (1-p)(|VB|+2|EB|)].

    Exact ``Fraction`` for rational ``p``, float otherwise.
    """
    p = as_probability(p)
    c = K.counts()
    white = c["vw"] + 2 * c["ew"]
    black = c["vb"] + 2 * c["eb"]
    return (p * white + (1 - p) * black) / (K.k * K.k)


def f_line(K: Crg) -> tuple[Fraction, Fraction]:
    """(intercept, slope) of the affine map p -> f_value(K, p)."""
    f0 = f_value(K, Fraction(0))
    return f0, f_value(K, Fraction(1)) - f0


def weighted_matrix(K: Crg, p) -> np.ndarray:
    """Symmetric weight matrix: black -> 1-p, white -> p, gray -> 0.

    Object array of Fractions for rational ``p``; float64 otherwise.
    """
    p = as_probability(p)
    exact = isinstance(p, Fraction)
    q = 1 - p
    zero = Fraction(0) if exact else 0.0
    table = {EdgeColor.GRAY: zero, EdgeColor.WHITE: p, EdgeColor.BLACK: q}
    k = K.k
    M = np.empty((k, k), dtype=object if exact else np.float64)
    cm = K.color_matrix
    for i in range(k):
        M[i, i] = q if K.vertex_colors[i] == VertexColor.BLACK else p
        for j in range(i + 1, k):
            M[i, j] = M[j, i] = table[EdgeColor(int(cm[i, j]))]
    return M


def sub_crg(K: Crg, vertices) -> Crg:
    """Induced sub-CRG on ``vertices`` (kept in ascending order)."""
    vs = sorted(set(vertices))
    if not vs:
        raise ValueError("sub_crg needs a nonempty vertex subset")
    if vs[0] < 0 or vs[-1] >= K.k:
        raise ValueError("sub_crg vertex out of range")
    return Crg.from_matrix([K.vertex_colors[i] for i in vs], K.color_matrix[np.ix_(vs, vs)])


def bipartite_double(G: SimpleGraph) -> Crg:
    """All-black CRG on two copies v', v'' of V(G).

    Gray edges are v_i' v_j'' for every edge v_i v_j of G, in both
    orientations, plus v_i' v_i'' for each loop; everything else is white.
    Vertex v_i' is ``i`` and v_i'' is ``n + i``.
    """
    n = G.n
    edges = {}
    for i in range(2 * n):
        for j in range(i + 1, 2 * n):
            edges[(i, j)] = EdgeColor.WHITE
    for u, v in G.edges:
        edges[(u, n + v)] = EdgeColor.GRAY
        edges[(v, n + u)] = EdgeColor.GRAY
    for v in G.loops:
        edges[(v, n + v)] = EdgeColor.GRAY
    return Crg([VertexColor.BLACK] * (2 * n), edges)
