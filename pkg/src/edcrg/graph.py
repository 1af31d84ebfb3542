"""Plain simple graphs (optionally with loops) and their text format."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


class GraphFormatError(ValueError):
    """Raised for malformed SimpleGraph text."""


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected graph on vertices ``0..n-1``.

    Loops are only meaningful for the Füredi intermediate graph; every other
    consumer rejects them.
    """

    n: int
    edges: frozenset = field(default_factory=frozenset)
    loops: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a graph needs at least one vertex")
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"edge ({u},{v}) is a loop; use loops=")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range for n={self.n}")
            norm.add((min(u, v), max(u, v)))
        for v in self.loops:
            if not 0 <= v < self.n:
                raise ValueError(f"loop at {v} out of range for n={self.n}")
        object.__setattr__(self, "edges", frozenset(norm))
        object.__setattr__(self, "loops", frozenset(self.loops))

    @classmethod
    def from_edges(cls, n: int, edges, loops=()) -> "SimpleGraph":
        return cls(n, frozenset(map(tuple, edges)), frozenset(loops))

    @classmethod
    def complete(cls, n: int) -> "SimpleGraph":
        return cls(n, frozenset(itertools.combinations(range(n), 2)))

    @classmethod
    def empty(cls, n: int) -> "SimpleGraph":
        return cls(n)

    @classmethod
    def complete_bipartite(cls, s: int, t: int) -> "SimpleGraph":
        """K_{s,t} with the s-side on vertices 0..s-1."""
        return cls(s + t, frozenset((i, s + j) for i in range(s) for j in range(t)))

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return u in self.loops
        return (min(u, v), max(u, v)) in self.edges

    def neighbors(self, v: int) -> set[int]:
        out = {b if a == v else a for a, b in self.edges if v in (a, b)}
        if v in self.loops:
            out.add(v)
        return out

    def adjacency_masks(self) -> list[int]:
        """Bitmask neighbourhoods, loops excluded."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return masks

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def density(self) -> float:
        pairs = self.n * (self.n - 1) // 2
        return self.num_edges / pairs if pairs else 0.0

    def toggled(self, pairs) -> "SimpleGraph":
        """Graph with every pair in ``pairs`` flipped (edge <-> non-edge)."""
        e = set(self.edges)
        for u, v in pairs:
            e ^= {(min(u, v), max(u, v))}
        return SimpleGraph(self.n, frozenset(e), self.loops)

    def complement(self) -> "SimpleGraph":
        allp = set(itertools.combinations(range(self.n), 2))
        return SimpleGraph(self.n, frozenset(allp - self.edges))

    def to_text(self) -> str:
        lines = [f"graph {self.n}"]
        lines += [f"e {u} {v}" for u, v in sorted(self.edges)]
        lines += [f"loop {v}" for v in sorted(self.loops)]
        return "\n".join(lines) + "\n"


def parse_graph(text, allow_loops: bool = False) -> SimpleGraph:
    """Parse ``graph <n>`` / ``e <i> <j>`` / ``loop <i>`` text.

    ``loop`` lines are rejected unless the caller documents loop support.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    n = None
    edges: set[tuple[int, int]] = set()
    loops: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if n is None:
                if tok[0] != "graph" or len(tok) != 2:
                    raise GraphFormatError(f"line {lineno}: expected 'graph <n>'")
                n = int(tok[1])
                if n < 1:
                    raise GraphFormatError(f"line {lineno}: order must be positive")
            elif tok[0] == "e" and len(tok) == 3:
                u, v = int(tok[1]), int(tok[2])
                if u == v:
                    raise GraphFormatError(f"line {lineno}: self-loop written as edge")
                if not (0 <= u < n and 0 <= v < n):
                    raise GraphFormatError(f"line {lineno}: endpoint out of range")
                edges.add((min(u, v), max(u, v)))
            elif tok[0] == "loop" and len(tok) == 2:
                if not allow_loops:
                    raise GraphFormatError(f"line {lineno}: loops not allowed here")
                v = int(tok[1])
                if not 0 <= v < n:
                    raise GraphFormatError(f"line {lineno}: loop vertex out of range")
                loops.add(v)
            else:
                raise GraphFormatError(f"line {lineno}: unrecognised line {raw!r}")
        except ValueError as exc:
            if isinstance(exc, GraphFormatError):
                raise
            raise GraphFormatError(f"line {lineno}: bad integer in {raw!r}") from exc
    if n is None:
        raise GraphFormatError("missing 'graph <n>' header")
    return SimpleGraph(n, frozenset(edges), frozenset(loops))
