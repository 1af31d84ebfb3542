"""Generators for every named CRG construction, plus a per-t registry."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from pathlib import Path

import numpy as np

from .crg import Crg, EdgeColor, VertexColor, bipartite_double, f_line
from .field import GF, is_prime_power
from .forbid import forbids_k2t
from .graph import SimpleGraph, parse_graph


class ConstructionError(ValueError):
    """Parameters outside a construction's preconditions."""


class ConstructionIntegrityError(RuntimeError):
    """A generated object failed its mandatory postcondition checks."""


@dataclass(frozen=True)
class SrgParams:
    k: int
    d: int
    lam: int
    mu: int

    def __post_init__(self):
        if min(self.k, self.d, self.lam, self.mu) < 0:
            raise ValueError("SRG parameters are nonnegative")
        if not self.d < self.k:
            raise ValueError("SRG degree must be below the order")
        if self.lam > self.d:
            raise ValueError("lambda cannot exceed the degree")

    def feasible(self) -> bool:
        """The counting identity d(d - lambda - 1) = mu(k - d - 1)."""
        return self.d * (self.d - self.lam - 1) == self.mu * (self.k - self.d - 1)

    def eligible(self, t: int) -> bool:
        """lambda <= t-3 and mu <= t-1: the CRG forbids K_{2,t}."""
        return self.lam <= t - 3 and self.mu <= t - 1

    def line(self) -> tuple[Fraction, Fraction]:
        """(intercept, slope) of 1/k + ((k-d-2)/k) p."""
        return Fraction(1, self.k), Fraction(self.k - self.d - 2, self.k)

    def __str__(self):
        return f"({self.k},{self.d},{self.lam},{self.mu})"


def srg_parameters(G: SimpleGraph) -> SrgParams | None:
    """Parameters of G if it is strongly regular (checked on every pair)."""
    if G.loops:
        return None
    A = np.zeros((G.n, G.n), dtype=np.int64)
    for u, v in G.edges:
        A[u, v] = A[v, u] = 1
    deg = A.sum(axis=1)
    if len(set(deg.tolist())) != 1:
        return None
    C = A @ A
    iu, ju = np.triu_indices(G.n, 1)
    adj = A[iu, ju] == 1
    lam_vals = set(C[iu, ju][adj].tolist())
    mu_vals = set(C[iu, ju][~adj].tolist())
    if len(lam_vals) > 1 or len(mu_vals) > 1:
        return None
    return SrgParams(G.n, int(deg[0]), lam_vals.pop() if lam_vals else 0, mu_vals.pop() if mu_vals else 0)


def srg_crg(G: SimpleGraph) -> Crg:
    """All-black CRG: gray on the edges of G, white on its non-edges."""
    edges = {(i, j): EdgeColor.WHITE for i, j in itertools.combinations(range(G.n), 2)}
    for e in G.edges:
        edges[e] = EdgeColor.GRAY
    return Crg([VertexColor.BLACK] * G.n, edges)


# ---------------------------------------------------------------- graphs


def paley_graph(q: int) -> SimpleGraph:
    if not is_prime_power(q) or q % 4 != 1:
        raise ConstructionError(f"Paley graph needs a prime power q = 1 mod 4, got {q}")
    F = GF(q)
    edges = [(a, b) for a, b in itertools.combinations(range(q), 2) if F.is_square(F.sub(a, b))]
    return SimpleGraph.from_edges(q, edges)


def _pairs(m: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(m), 2))


def triangular_complement_graph(m: int) -> SimpleGraph:
    """Complement of the line graph of K_m: 2-subsets, adjacent when disjoint."""
    if m < 4:
        raise ConstructionError("triangular_complement needs m >= 4")
    P = _pairs(m)
    edges = [(i, j) for i, j in itertools.combinations(range(len(P)), 2) if not set(P[i]) & set(P[j])]
    return SimpleGraph.from_edges(len(P), edges)


def rook_complement_graph(m: int) -> SimpleGraph:
    """Complement of the m x m rook's graph."""
    if m < 3:
        raise ConstructionError("rook_complement needs m >= 3")
    cells = [(i, j) for i in range(m) for j in range(m)]
    edges = [(a, b) for a, b in itertools.combinations(range(m * m), 2)
             if cells[a][0] != cells[b][0] and cells[a][1] != cells[b][1]]
    return SimpleGraph.from_edges(m * m, edges)


def petersen_complement_graph() -> SimpleGraph:
    """Line graph of K_5, i.e. the complement of the Petersen graph."""
    P = _pairs(5)
    edges = [(i, j) for i, j in itertools.combinations(range(10), 2) if set(P[i]) & set(P[j])]
    return SimpleGraph.from_edges(10, edges)


def furedi_graph(q: int, t: int) -> SimpleGraph:
    """Füredi's K_{2,t}-free graph over GF(q), loops kept.

    Vertices are the orbits of GF(q)^2 minus the origin under scaling by
    the order-(t-1) subgroup H of GF(q)*; orbit <(a,b)> is joined to <(x,y)>
    when ax + by lies in H. Orbits are numbered by their lexicographically
    least member.
    """
    if t < 3:
        raise ConstructionError("Füredi construction needs t >= 3")
    if not is_prime_power(q):
        raise ConstructionError(f"{q} is not a prime power")
    if (q - 1) % (t - 1):
        raise ConstructionError(f"t-1 = {t - 1} does not divide q-1 = {q - 1}")
    F = GF(q)
    H = F.subgroup_of_order(t - 1)
    reps = []
    seen = set()
    for a, b in itertools.product(range(q), repeat=2):
        if (a, b) == (0, 0) or (a, b) in seen:
            continue
        orbit = {(F.mul(h, a), F.mul(h, b)) for h in H}
        seen |= orbit
        reps.append(min(orbit))
    reps.sort()
    n = len(reps)
    edges, loops = [], []
    for i in range(n):
        a, b = reps[i]
        for j in range(i, n):
            x, y = reps[j]
            if F.add(F.mul(a, x), F.mul(b, y)) in H:
                if i == j:
                    loops.append(i)
                else:
                    edges.append((i, j))
    return SimpleGraph.from_edges(n, edges, loops)


# ---------------------------------------------------------------- CRGs


def gen_gray_clique(w: int, b: int) -> Crg:
    """K(w, b): w white then b black vertices, every edge gray."""
    if w < 0 or b < 0 or w + b < 1:
        raise ConstructionError("K(w,b) needs w, b >= 0 and w + b >= 1")
    return Crg([VertexColor.WHITE] * w + [VertexColor.BLACK] * b)


def gen_matching(t: int) -> Crg:
    """t+1 black vertices, white perfect matching {2i, 2i+1}, rest gray."""
    if t < 3 or t % 2 == 0:
        raise ConstructionError(f"matching construction needs odd t >= 3, got {t}")
    edges = {(2 * i, 2 * i + 1): EdgeColor.WHITE for i in range((t + 1) // 2)}
    return Crg([VertexColor.BLACK] * (t + 1), edges)


def gen_cycle_power(k: int, r: int) -> Crg:
    """C_{k,r}: black vertices, white edges of the r-th power of C_k, rest gray."""
    if r < 1 or k < 2 * r + 2:
        raise ConstructionError(f"cycle power needs r >= 1 and k >= 2r+2, got k={k}, r={r}")
    edges = {}
    for i, j in itertools.combinations(range(k), 2):
        if min(j - i, k - (j - i)) <= r:
            edges[(i, j)] = EdgeColor.WHITE
    return Crg([VertexColor.BLACK] * k, edges)


_SRG_KINDS = {
    "paley": (paley_graph, lambda q: SrgParams(q, (q - 1) // 2, (q - 5) // 4, (q - 1) // 4)),
    "triangular_complement": (
        triangular_complement_graph,
        lambda m: SrgParams(comb(m, 2), comb(m - 2, 2), comb(m - 4, 2), comb(m - 3, 2)),
    ),
    "rook_complement": (
        rook_complement_graph,
        lambda m: SrgParams(m * m, (m - 1) ** 2, (m - 2) ** 2, (m - 1) * (m - 2)),
    ),
}


def gen_srg(kind: str, param: int | None = None, *, graph: SimpleGraph | None = None,
            params: SrgParams | None = None) -> tuple[Crg, SrgParams]:
    """Build an SRG-backed CRG and verify the graph pair by pair.

    ``kind`` is one of paley, triangular_complement, rook_complement,
    petersen_complement or srg_file (the last takes ``graph`` and the
    declared ``params``).
    """
    if kind == "petersen_complement":
        G, declared = petersen_complement_graph(), SrgParams(10, 6, 3, 4)
    elif kind == "srg_file":
        if graph is None or params is None:
            raise ConstructionError("srg_file needs a graph and declared parameters")
        G, declared = graph, params
    elif kind in _SRG_KINDS:
        if param is None:
            raise ConstructionError(f"{kind} needs a parameter")
        build, expect = _SRG_KINDS[kind]
        G = build(param)
        declared = expect(param)
    else:
        raise ConstructionError(f"unknown SRG kind {kind!r}")
    found = srg_parameters(G)
    if found != declared:
        raise ConstructionIntegrityError(f"{kind}: graph is not a {declared} strongly regular graph (found {found})")
    return srg_crg(G), declared


def load_srg_file(path, params: SrgParams) -> tuple[Crg, SrgParams]:
    G = parse_graph(Path(path).read_text(encoding="utf-8"))
    return gen_srg("srg_file", graph=G, params=params)


def furedi_line_coeffs(q: int, t: int) -> tuple[Fraction, Fraction]:
    """(intercept, slope) of (t-1 + p(2q^2 - q(t-1) - 2t)) / (2(q^2-1))."""
    den = 2 * (q * q - 1)
    return Fraction(t - 1, den), Fraction(2 * q * q - q * (t - 1) - 2 * t, den)


def gen_furedi(q: int, t: int) -> Crg:
    """Bipartite double of the looped Füredi graph, with integrity checks."""
    G = furedi_graph(q, t)
    n = G.n
    if n * (t - 1) != q * q - 1:
        raise ConstructionIntegrityError("wrong number of orbits")
    nbr = [G.neighbors(v) for v in range(n)]
    if any(len(s) != q for s in nbr):
        raise ConstructionIntegrityError("Füredi graph is not q-regular (loops counted once)")
    for u, v in itertools.combinations(range(n), 2):
        if len(nbr[u] & nbr[v]) > t - 1:
            raise ConstructionIntegrityError(f"vertices {u},{v} share more than t-1 neighbours")
    K = bipartite_double(G)
    if len(K.edges_of(EdgeColor.GRAY)) != n * q:
        raise ConstructionIntegrityError("doubled CRG does not have nq gray edges")
    if not forbids_k2t(K, t):
        raise ConstructionIntegrityError("doubled Füredi CRG admits K_{2,t}")
    if f_line(K) != furedi_line_coeffs(q, t):
        raise ConstructionIntegrityError("f line differs from the closed form")
    return K


# ---------------------------------------------------------------- registry


@dataclass(frozen=True)
class ConstructionSpec:
    """A named construction and its parameters, e.g. ('paley', (('q', 13),))."""

    kind: str
    params: tuple = ()

    @classmethod
    def of(cls, kind: str, **params) -> "ConstructionSpec":
        return cls(kind, tuple(sorted(params.items())))

    @property
    def kw(self) -> dict:
        return dict(self.params)

    @property
    def name(self) -> str:
        if not self.params:
            return self.kind
        return f"{self.kind}(" + ",".join(f"{k}={v}" for k, v in self.params) + ")"

    def build(self) -> Crg:
        try:
            return self._build(self.kw)
        except KeyError as exc:
            raise ConstructionError(f"{self.kind} is missing parameter {exc.args[0]!r}") from None

    def _build(self, kw: dict) -> Crg:
        if self.kind == "gray_clique":
            return gen_gray_clique(kw["w"], kw["b"])
        if self.kind == "matching":
            return gen_matching(kw["t"])
        if self.kind == "cycle_power":
            return gen_cycle_power(kw["k"], kw["r"])
        if self.kind == "furedi":
            return gen_furedi(kw["q"], kw["t"])
        if self.kind == "srg_file":
            if not {"path", "params"} <= kw.keys():
                raise ConstructionError("srg_file needs path=FILE,params=k:d:lambda:mu")
            return load_srg_file(kw["path"], SrgParams(*kw["params"]))[0]
        if self.kind == "petersen_complement":
            return gen_srg("petersen_complement")[0]
        if self.kind in _SRG_KINDS:
            if len(kw) != 1:
                raise ConstructionError(f"{self.kind} takes exactly one parameter")
            (val,) = kw.values()
            return gen_srg(self.kind, val)[0]
        raise ConstructionError(f"unknown construction {self.kind!r}")

    def srg_params(self) -> SrgParams | None:
        kw = self.kw
        if self.kind == "petersen_complement":
            return SrgParams(10, 6, 3, 4)
        if self.kind in _SRG_KINDS:
            if len(kw) != 1:
                raise ConstructionError(f"{self.kind} takes exactly one parameter")
            (val,) = kw.values()
            return _SRG_KINDS[self.kind][1](val)
        if self.kind == "srg_file":
            return SrgParams(*kw["params"]) if "params" in kw else None
        return None


# Built-in SRG generators instantiated in the registry.
BUILTIN_SRGS = (
    ConstructionSpec.of("paley", q=5),
    ConstructionSpec.of("paley", q=9),
    ConstructionSpec.of("paley", q=13),
    ConstructionSpec.of("paley", q=17),
    ConstructionSpec.of("paley", q=25),
    ConstructionSpec.of("paley", q=29),
    ConstructionSpec.of("triangular_complement", m=5),
    ConstructionSpec.of("triangular_complement", m=6),
    ConstructionSpec.of("triangular_complement", m=7),
    ConstructionSpec.of("rook_complement", m=3),
    ConstructionSpec.of("rook_complement", m=4),
    ConstructionSpec.of("rook_complement", m=5),
    ConstructionSpec.of("petersen_complement"),
)

# Füredi CRGs are built in the registry only up to this order.
FUREDI_REGISTRY_MAX_K = 64


@dataclass(frozen=True)
class RegistryEntry:
    spec: ConstructionSpec
    source: str  # trivial | matching | cycle | srg | furedi
    line: tuple[Fraction, Fraction] | None  # None for K(1,1), whose f is constant 1/4 but g is p(1-p)


def registry(t: int) -> list[RegistryEntry]:
    """Every built-in construction that forbids K_{2,t}, with its f line."""
    if t < 3:
        raise ValueError("registry is defined for t >= 3")
    out = [
        RegistryEntry(ConstructionSpec.of("gray_clique", w=1, b=1), "trivial", None),
        RegistryEntry(ConstructionSpec.of("gray_clique", w=0, b=t - 1), "trivial",
                      (Fraction(1, t - 1), Fraction(-1, t - 1))),
        RegistryEntry(ConstructionSpec.of("cycle_power", k=t + 5, r=2), "cycle",
                      (Fraction(1, t + 5), Fraction(3, t + 5))),
    ]
    if t % 2:
        out.append(RegistryEntry(ConstructionSpec.of("matching", t=t), "matching", (Fraction(1, t + 1), Fraction(0))))
    for spec in BUILTIN_SRGS:
        prm = spec.srg_params()
        if prm.eligible(t):
            out.append(RegistryEntry(spec, "srg", prm.line()))
    for q in range(t, 64):
        if (q - 1) % (t - 1) == 0 and is_prime_power(q) and 2 * (q * q - 1) // (t - 1) <= FUREDI_REGISTRY_MAX_K:
            out.append(RegistryEntry(ConstructionSpec.of("furedi", q=q, t=t), "furedi", furedi_line_coeffs(q, t)))
    return out


def parse_construction(name: str, params: str | dict | None = None) -> ConstructionSpec:
    """Build a spec from a CLI-style name plus ``K=V,...`` parameters.

    Accepts both ``paley --params q=13`` and the inline ``paley(13)`` /
    ``gray_clique(1,1)`` forms.
    """
    kw: dict = {}
    if "(" in name:
        base, inner = name.split("(", 1)
        inner = inner.rstrip(")")
        name = base.strip()
        positional = [s.strip() for s in inner.split(",") if s.strip()]
        keys = {
            "gray_clique": ["w", "b"], "matching": ["t"], "cycle_power": ["k", "r"],
            "paley": ["q"], "triangular_complement": ["m"], "rook_complement": ["m"],
            "furedi": ["q", "t"], "petersen_complement": [],
        }.get(name)
        if keys is None or len(positional) != len(keys):
            raise ConstructionError(f"cannot parse construction {name!r} with arguments {positional}")
        kw.update({k: int(v) for k, v in zip(keys, positional)})
    if isinstance(params, str) and params.strip():
        for part in params.split(","):
            key, _, val = part.partition("=")
            key, val = key.strip(), val.strip()
            if key == "path":
                kw[key] = val
            elif key == "params":
                kw[key] = tuple(int(v) for v in val.split(":"))
            else:
                kw[key] = int(val)
    elif isinstance(params, dict):
        kw.update(params)
    return ConstructionSpec.of(name, **kw)
