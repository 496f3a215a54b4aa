"""Peeling: strip the cells whose blue neighborhood meets the rest finitely.

Run: python demos/peeling.py
"""

from ramseylab.analyzers import peel_deep_tree_sets, peel_short_tree_sets, short_path_proxy
from ramseylab.colorings import RED, ForwardIntervalColoring, TStarColoring
from ramseylab.harness import tstar_rule_violations

c = ForwardIntervalColoring()
a = c.scheme.boundaries(5)
print("forward interval coloring, boundaries:", a)
res = peel_deep_tree_sets(c, horizon=a[5])
print(f"  peeled in {res.stages_used} stage(s); R starts {res.members('R')[:6]}, "
      f"S starts {res.members('S')[:6]}")
print("  red pairs in R without a red path of length <= 2:",
      len(short_path_proxy(c, res.members("R")[:200], RED, a[5])))
short = peel_short_tree_sets(c, horizon=a[5])
print(f"  two-color peel: anchor {short.anchor}, color {short.color}, "
      f"density {float(short.anchor_density):.3f}")

t = TStarColoring(2)
print("\nT-star coloring d=2, block boundaries:", [t.a(i) for i in range(5)])
print("  rule violations up to 1000:", tstar_rule_violations(t, 1000))
