"""Exception families: sets that exceed the anti-pencil count for small parameters.

Run: python demos/families.py
"""

from divlab import count_divisors
from divlab.errors import InfeasibleFamilyError
from divlab.families import gen_k1_exception, gen_s_exception

print("k = 1: n unit fractions summing to 1, so every element divides the total")
for n in (3, 5, 8):
    A = gen_k1_exception(n)
    print(f"  n={n}: {{{A}}}  d_1 = {count_divisors(A, 1).count}")

print("\n(n-1)-subsets that are s-divisors:")
for s in range(2, 5):
    for n in range(3, 8):
        try:
            A = gen_s_exception(s, n)
        except InfeasibleFamilyError as exc:
            print(f"  s={s}, n={n}: infeasible (smallest n is {exc.minimal_n})")
            break
        print(f"  s={s}, n={n}: d = {count_divisors(A, n - 1, s).count}  {{{A}}}")
