"""The four-element set whose 2-subset divisors beat the binomial target.

Run: python demos/counterexample.py
"""

from math import comb

from divlab import GroundSet, count_divisors
from divlab.core import format_rational
from divlab.families import build_anti_pencil

A = GroundSet.parse("1,5,7,11")
report = count_divisors(A, 2, 1, list_witnesses=True)
print(f"A = {{{A}}}, sum = {A.total}")
for mask in report.witnesses:
    part = sorted(mask.values(A))
    shown = ", ".join(map(format_rational, part))
    print(f"  {{{shown}}} sums to {format_rational(sum(part))}, which divides {format_rational(A.total)}")
print(f"d_2(A) = {report.count}, C(3,2) = {comb(3, 2)}, anti-pencil: {report.is_anti_pencil}")

# For contrast: the anti-pencil completion of {1,2,3} meets the target exactly.
built = build_anti_pencil([1, 2, 3], k=2)
print(f"\nanti-pencil completion: {{{built.ground_set}}}, total {built.total}")
print(f"d_2 = {count_divisors(built.ground_set, 2).count}, strict: {built.strict}")
