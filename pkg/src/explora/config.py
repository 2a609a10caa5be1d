"""Runtime knobs, overridable through environment variables.

EXPLORE_CHANNEL_BUDGET caps the number of parity channels a game objective may
use (per-token channels grow with the token count).  EXPLORE_LASSO_BOUND sets
the default bound of the lasso-equivalence oracle.  Both are surfaced in the
CLI's JSON output so runs are reproducible.
"""

from __future__ import annotations

import os

DEFAULT_CHANNEL_BUDGET = 5
DEFAULT_LASSO_BOUND = 6

# Soft cap on how many lassos a *build-time* monitor validation may enumerate;
# the bound is lowered (never below 2) until the count fits.  Large alphabets
# (e.g. machine reductions) would otherwise make bound-6 checks take hours.
ORACLE_LASSO_CAP = 60_000


def channel_budget() -> int:
    return int(os.environ.get("EXPLORE_CHANNEL_BUDGET", DEFAULT_CHANNEL_BUDGET))


def lasso_bound() -> int:
    return int(os.environ.get("EXPLORE_LASSO_BOUND", DEFAULT_LASSO_BOUND))


def capped_lasso_bound(alphabet_size: int, bound: int | None = None) -> int:
    """Largest bound <= `bound` whose lasso count stays under ORACLE_LASSO_CAP."""
    b = lasso_bound() if bound is None else bound
    while b > 2:
        count = sum(t * alphabet_size**t for t in range(1, b + 1))
        if count <= ORACLE_LASSO_CAP:
            break
        b -= 1
    return b
