"""
Latin rectangles and hopping patterns
=====================================

Build a family of orthogonal Latin squares, cut them down to a
16-channel, 12-slot superframe and look at the hop patterns they give.
"""

import numpy as np

from dail import cut_rectangle, generate_mols, overlap_count, pattern_of, rectangle_family
from dail.oracle import exhaustive_theorem_check

# a small family first: q = 5 gives 4 squares, each row a cyclic shift
fam = generate_mols(5)
for s in fam:
    print(s.grid, end="\n\n")

# symbol 2 of the first square, as (channel, slot) hops
r = cut_rectangle(fam[0], 5, 5)
print("pattern of symbol 2:", pattern_of(r, 2).hops)

# patterns from one square never meet, patterns from two squares meet once
a, b = pattern_of(r, 2), pattern_of(cut_rectangle(fam[1], 5, 5), 3)
print("same square:", overlap_count(a, pattern_of(r, 4)), " different squares:", overlap_count(a, b))

# the superframe size used in the sweeps: 16 channels x 12 slots needs q = 17
fam, rects = rectangle_family(16, 12)
print(f"q={fam.order}, {len(rects)} rectangles of shape {rects[0].shape}")
hops = np.array([len(pattern_of(rects[0], s)) for s in range(fam.order)])
print("hops per symbol:", hops)

# every pattern pair of the cut, checked by enumeration
rep = exhaustive_theorem_check(fam, 16, 12)
print(f"{rep.pairs_checked} pairs checked, {len(rep.violations)} violations")
