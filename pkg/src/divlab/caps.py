"""Resource caps.

Every cap scales linearly with ``DIVLAB_CAP_MB`` (default 256), so a user
with more memory can raise them all at once.
"""

import os

_DEFAULT_MB = 256

_BASE = {
    "profile_length": 1_000_000,  # RankProfile entries
    "dilworth_elements": 5_000,  # poset elements given to the matching oracle
    "factor_limit": 10**12,  # largest integer we trial-divide
    "oracle_iterations": 10**7,  # brute-force loop length for frac_pair_oracle
    "scan_limit": 10**7,  # divisor-count sieve length
    "search_sets": 5 * 10**7,  # ground sets visited by one exhaustive search
}


def budget_mb():
    raw = os.environ.get("DIVLAB_CAP_MB")
    if not raw:
        return _DEFAULT_MB
    try:
        mb = int(raw)
    except ValueError:
        return _DEFAULT_MB
    return mb if mb > 0 else _DEFAULT_MB


def cap(name):
    """Return the current value of the named cap."""
    scale = budget_mb() / _DEFAULT_MB
    return max(1, int(_BASE[name] * scale))
