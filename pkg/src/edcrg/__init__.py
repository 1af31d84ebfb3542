"""Edit distance bounds for the hereditary classes Forb(K_{2,t}).

Colored regularity graphs (CRGs), the simplex quadratic program g_K(p),
forbidden-embedding checks, the named constructions, closed-form bounds,
and brute-force oracles that cross-check them.
"""

from .crg import Crg, EdgeColor, VertexColor, f_line, f_value, parse_crg, serialize_crg
from .graph import SimpleGraph, parse_graph
from .gsolve import g_exact, g_iterative, is_pcore
from .forbid import embeds, forbids_k2t

__all__ = [
    "Crg", "EdgeColor", "VertexColor", "SimpleGraph", "parse_crg", "serialize_crg", "parse_graph",
    "f_value", "f_line", "g_exact", "g_iterative", "is_pcore", "embeds", "forbids_k2t",
]
