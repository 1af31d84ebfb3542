"""Upper and lower envelopes for t = 3..12, with their maxima.

Run: python3 demos/envelope_survey.py [--csv DIR]
"""
import argparse
from pathlib import Path

from edcrg.envelope import assemble_envelope, envelope_csv

ap = argparse.ArgumentParser()
ap.add_argument("--csv", help="directory for envelope_t<t>.csv files")
ap.add_argument("--resolution", type=int, default=1001)
args = ap.parse_args()

print(f"{'t':>3} {'exact share':>11} {'max gap':>9}  {'p* interval':<24} d*")
for t in range(3, 13):
    env = assemble_envelope(t, args.resolution)
    x = env.extreme
    gap = float((env.upper - env.lower).max())
    where = f"[{x.lo}, {x.hi}]" if x.exact else f"~{float(x.lo):.4f}"
    dstar = str(x.d_star) if x.exact else f"in [{float(x.d_lower):.5f}, {float(x.d_star):.5f}]"
    print(f"{t:>3} {env.exact.mean():>11.3f} {gap:>9.5f}  {where:<24} {dstar}")
    if args.csv:
        out = Path(args.csv)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"envelope_t{t}.csv").write_text(envelope_csv(env))

# the active upper curves along the envelope for one t
env = assemble_envelope(9, 201)
print("\nactive upper curves, t=9:")
last = None
for p, name in zip(env.p, env.active_upper):
    if name != last:
        print(f"  from p={p:.3f}: {name}")
        last = name
