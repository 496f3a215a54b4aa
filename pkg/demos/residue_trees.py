"""Residue colorings: every vertex has a finite neighborhood in all but one color,
yet each color holds a greedy monochromatic D-ary tree of positive density.

Run: python demos/residue_trees.py
"""

from ramseylab.colorings import ResidueColoring
from ramseylab.core import VertexSet, prefix_density
from ramseylab.embeddings import greedy_residue_tree

rc = ResidueColoring(2)
print("{m,n} gets min(m,n) mod r;  r=2:")
print("  {3,7} ->", rc.color(3, 7), "   color-0 neighbors of 7:", rc.neighbors_upto(7, 0, 50))

horizon = 20000
for r, d in [(2, 2), (2, 3), (3, 2)]:
    rc = ResidueColoring(r)
    for color in range(r):
        tree = greedy_residue_tree(rc, color, d, horizon)
        members = set(tree.members().tolist())
        dens = prefix_density(VertexSet(lambda n: n in members), horizon)
        print(f"  r={r} D={d} color={color}: {len(members):6d} vertices, "
              f"density {float(dens):.4f}")
