"""Solving m/n = a/x + b/y through divisors, checked against brute force.

Run: python demos/fracpairs.py
"""

from divlab.numtheory import FracPairInstance, frac_pair_oracle, frac_pair_solutions, lemma3_scan, lemma4_counts

inst = FracPairInstance(m=1, n=6, a=1, b=1)
sols = frac_pair_solutions(inst)
print("1/6 = 1/x + 1/y:", [(s.x, s.y) for s in sols])
assert sols == frac_pair_oracle(inst)

print("\nsolution counts for 3/n = 1/x + 2/y:")
print(" ", lemma4_counts(3, 1, 2, 20))

for k in (1, 2, 3):
    scan = lemma3_scan(k, 10**5)
    print(f"max d(n)^{k}/n for n <= 1e5: {scan.ratio} at n = {scan.argmax}")
