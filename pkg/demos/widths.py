"""Rank profiles, widths, and a matching-based check that the middle level is largest.

Run: python demos/widths.py
"""

from divlab.poset import (
    all_subsets,
    cube_rank_profile,
    dilworth_width,
    dominance_rank_profile,
    lemma1_check,
    lemma2_threshold,
)

print("lattice cube [n]^d, level sizes:")
for n, d in [(3, 2), (4, 3), (5, 4)]:
    prof = cube_rank_profile(n, d)
    b = lemma1_check(n, d)
    print(f"  n={n} d={d}: {list(prof.sizes)}  width^2*d = {b.bound_squared_lhs} <= {b.bound_squared_rhs}")

print("\ndominance order on d-subsets of [n]:")
for n, d in [(6, 3), (8, 4), (10, 3)]:
    prof = dominance_rank_profile(n, d)
    w = dilworth_width(all_subsets(n, d))
    print(f"  n={n} d={d}: largest level {prof.width}, max antichain via matching {w}")

print("\nfirst n from which width * n * sqrt(d) < 2 C(n, d) holds up to n = 60:")
for d in range(2, 6):
    print(f"  d={d}: n >= {lemma2_threshold(d, 60).threshold}")
