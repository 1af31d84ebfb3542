"""The (15,6,1,3) SRG CRG and where its line touches the general lower bound.

Run: python3 demos/gq22_tangency.py
"""
from fractions import Fraction

from edcrg import bounds as B
from edcrg.constructions import parse_construction, srg_parameters
from edcrg.crg import f_line, f_value
from edcrg.forbid import forbids_k2t
from edcrg.gsolve import g_exact

spec = parse_construction("triangular_complement(6)")
K = spec.build()
print(f"{spec.name}: k={K.k}, gray graph parameters {srg_parameters(K.gray_graph())}")
print("forbids K_2,4:", forbids_k2t(K, 4), "| forbids K_2,3:", forbids_k2t(K, 3))

c0, c1 = f_line(K)
print("f line:", B.line_formula(c0, c1))

# uniform weights are optimal, so g = f on the whole range where K is a p-core
for p in (Fraction(1, 10), Fraction(1, 5), Fraction(13, 59), Fraction(1, 3)):
    s = g_exact(K, p)
    print(f"  p={str(p):>6}  f={str(f_value(K, p)):>7}  g={str(s.g):>7}  p-core={s.is_pcore}")

p = B.srg_tangency_p(4, 6)
line = B.srg_equality_line(4, 6)
print(f"\ntangency with the general lower bound at p={p}: line={line(p)}, bound={B.lower_genLB(4, p)}")
for q in (p - Fraction(1, 50), p, p + Fraction(1, 50)):
    print(f"  p={float(q):.4f}  line-bound = {float(line(q)) - B.lower_genLB(4, float(q)):.2e}")

print("\nexact function for K_2,4 at a few points:")
for i in (1, 2, 3, 4, 5):
    p = Fraction(i, 10)
    print(f"  ed({p}) = {B.exact_ed(4, p)}")
