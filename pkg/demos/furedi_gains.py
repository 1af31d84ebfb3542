"""Where the Furedi K_2,t-free graphs beat the other known upper bounds.

Run: python3 demos/furedi_gains.py
"""
from edcrg import bounds as B
from edcrg.constructions import gen_furedi
from edcrg.crg import f_line
from edcrg.forbid import forbids_k2t

for t in (5, 6, 7, 8):
    qs = B.furedi_feasible_q(t)
    print(f"t={t}: admissible q below {B.furedi_q_threshold(t):.3f}: {qs}")
    for q in qs:
        iv = B.furedi_envelope_improvement(q, t)
        msg = f"improves on ({iv[0]:.4f}, {iv[1]:.4f})" if iv else "never improves"
        print(f"   q={q}: line {B.furedi_line(q, t).name}, {msg}")

print("\nt=9: improvement over p(1-p) creeps toward p=0 as q grows")
for q in (17, 41, 73, 97, 113):
    lo, hi = B.furedi_improvement_interval(q, 9)
    print(f"   q={q:>3}: ({lo:.4f}, {hi:.4f})  minimum gap at p={float(B.furedi_minimizing_p(q, 9)):.4f}")

print("\nthe formula agrees with the built CRG:")
for q, t in ((5, 5), (13, 7), (8, 8)):
    K = gen_furedi(q, t)
    print(f"   q={q}, t={t}: k={K.k}, forbids={forbids_k2t(K, t)}, "
          f"line {B.line_formula(*f_line(K))} == {B.furedi_line(q, t).name}")
