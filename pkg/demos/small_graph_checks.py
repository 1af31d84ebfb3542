"""Brute-force ground truth on small graphs and small CRGs.

Run: python3 demos/small_graph_checks.py
"""
from fractions import Fraction

from edcrg.bounds import exact_ed
from edcrg.graph import SimpleGraph
from edcrg.oracle import brute_edit_distance, sample_gnp_distance, scan_small_pcores

for s, t in ((2, 3), (2, 4), (3, 3)):
    G = SimpleGraph.complete_bipartite(s, t)
    r = brute_edit_distance(G, t)
    print(f"K_{s},{t} -> distance {r.distance} to K_2,{t}-free, edits {list(r.edits)}")

print("\nG(8,1/2), t=3, normalized distance vs the limit function:")
rows = sample_gnp_distance(8, Fraction(1, 2), 3, 20, seed=42)
for s in rows[:8]:
    lim = exact_ed(3, Fraction(s.density).limit_denominator(1000))
    print(f"  density {s.density:.3f}  dist/C(8,2) = {s.normalized:.3f}  ed_3 = {float(lim):.3f}")

print("\nexhaustive scan of CRGs on at most 3 vertices:")
for p, t in ((Fraction(3, 10), 3), (Fraction(2, 5), 4), (Fraction(7, 10), 3)):
    rep = scan_small_pcores(3, p, t)
    print(f"  p={p}, t={t}: {rep.classes} classes, {rep.forbidding} forbid, {rep.pcores} p-cores, "
          f"min g = {rep.min_g} (lower bound {rep.lower_bound}), violations {len(rep.violations)}")
