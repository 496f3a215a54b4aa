"""Rado coloring: common neighborhoods thin out by a factor of two per vertex.

Run: python demos/rado_densities.py
"""

from fractions import Fraction

from ramseylab.colorings import RadoColoring
from ramseylab.core import density_profile, geometric_schedule, intersection
from ramseylab.zoo import RadoGraph

rc = RadoColoring()
print("color of {s,t} is bit s of t (bits from 1):")
for s, t in [(2, 14), (5, 14), (1, 14)]:
    print(f"  {{{s},{t}}} -> {rc.color(s, t)}    14 = {14:b}b")

schedule = geometric_schedule(2 ** 20)
print("\ncommon color-c neighborhoods of F, density at 2^20 versus 2^-|F|:")
for fs in [(1,), (1, 2), (2, 5, 7), (1, 3, 4, 9)]:
    for c in (0, 1):
        s = intersection(*(rc.neighborhood(v, c) for v in fs))
        prof = density_profile(s, schedule)
        want = Fraction(1, 2 ** len(fs))
        print(f"  F={fs!s:14} c={c}  {float(prof.samples[-1]):.6f}  (2^-|F| = {float(want):.6f})")

g = RadoGraph()
print("\nthe greedy clique needs every earlier bit, so it grows like a tower:")
print("  ", [g.clique_member(i) for i in range(1, 6)])
