"""Exhaustive search over integer sets, with a resumable checkpoint.

Run: python demos/search.py [workdir]
"""

import sys
import tempfile
from pathlib import Path

from divlab.search import SearchBudgetExceeded, SearchConfig, exhaustive_search, verify_theorem_grid

workdir = Path(sys.argv[1] if len(sys.argv) > 1 else tempfile.mkdtemp())

summary = exhaustive_search(SearchConfig(n=4, k=2, s=1, sum_bound=40)).summary()
print(f"n=4 k=2, totals <= 40: scanned {summary['sets_scanned']} sets, best count {summary['max_count']}")
print("  attained by", summary["attainers"])

# stop after a small budget, then pick up where it left off
cfg = SearchConfig(n=5, k=2, s=1, sum_bound=60, jobs=2, checkpoint_path=str(workdir / "n5k2.jsonl"))
try:
    exhaustive_search(cfg, budget=5000)
except SearchBudgetExceeded as exc:
    print(f"\ninterrupted; next total to scan is {exc.cursor}")
done = exhaustive_search(cfg).summary()
print(f"resumed: best count {done['max_count']} over {done['sets_scanned']} sets")

print("\nsets at or above C(n-1, k) that are not anti-pencils (totals <= 20):")
for row in verify_theorem_grid(range(3, 6), range(1, 3), 1, 20):
    print(f"  n={row.n} k={row.k}: target {row.target}, best {row.max_count}, {len(row.violations)} found")
