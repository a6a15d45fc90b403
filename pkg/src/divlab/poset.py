"""Rank profiles and widths of the lattice cube and of the dominance order.

Two independent routes to the width of the dominance order on d-subsets
of an n-set:

* the largest coefficient of the Gaussian binomial ``[n choose d]_q``
  (valid because the order is rank-symmetric, unimodal and Sperner), and
* Dilworth's theorem: ``N - |maximum matching|`` on the bipartite split of
  the strict order, computed here with Hopcroft-Karp.

Every bound verdict is an integer comparison; square roots are removed by
squaring both sides.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from divlab.caps import cap
from divlab.core import SubsetMask, colex_masks, strictly_dominates
from divlab.errors import DivlabError, ResourceCapError


@dataclass(frozen=True)
class RankProfile:
    """Level sizes of a ranked poset, lowest rank first."""

    sizes: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.sizes)

    @property
    def width(self) -> int:
        return max(self.sizes)

    @property
    def middle_rank(self) -> int:
        return (len(self.sizes) - 1) // 2

    def is_symmetric(self) -> bool:
        return self.sizes == self.sizes[::-1]

    def is_unimodal(self) -> bool:
        peak = self.sizes.index(self.width)
        up = all(a <= b for a, b in zip(self.sizes[:peak], self.sizes[1 : peak + 1]))
        down = all(a >= b for a, b in zip(self.sizes[peak:], self.sizes[peak + 1 :]))
        return up and down


def _check_length(length: int) -> None:
    if length > cap("profile_length"):
        raise ResourceCapError(f"rank profile of length {length} exceeds cap {cap('profile_length')}")


def cube_rank_profile(n: int, d: int) -> RankProfile:
    """Level sizes of ``{0..n-1}^d`` under the product order.

    Coefficients of ``(1 + q + ... + q^(n-1))^d``, built one factor at a time
    with a sliding window sum.
    """
    if n < 1 or d < 1:
        raise DivlabError("cube needs n >= 1 and d >= 1")
    _check_length(d * (n - 1) + 1)
    coeffs = [1]
    for _ in range(d):
        out = [0] * (len(coeffs) + n - 1)
        window = 0
        for r in range(len(out)):
            if r < len(coeffs):
                window += coeffs[r]
            if r - n >= 0:
                window -= coeffs[r - n]
            out[r] = window
        coeffs = out
    return RankProfile(tuple(coeffs))


def gaussian_binomial(n: int, d: int) -> list[int]:
    """Coefficients of ``[n choose d]_q`` (partitions in a d x (n-d) box)."""
    if not 0 <= d <= n:
        raise DivlabError(f"need 0 <= d <= n, got n={n}, d={d}")
    d = min(d, n - d)
    length = d * (n - d) + 1
    _check_length(length)
    # prod_{i=1..d} (1 - q^(n-d+i)) / (1 - q^i); every partial quotient is a polynomial,
    # and the largest intermediate degree is length - 1 + d
    coeffs = [0] * (length + d)
    coeffs[0] = 1
    for i in range(1, d + 1):
        a = n - d + i
        for r in range(len(coeffs) - 1, a - 1, -1):
            coeffs[r] -= coeffs[r - a]
        for r in range(i, len(coeffs)):
            coeffs[r] += coeffs[r - i]
    assert not any(coeffs[length:])
    del coeffs[length:]
    return coeffs


def dominance_rank_profile(n: int, d: int) -> RankProfile:
    """Level sizes of the dominance order on d-subsets of an n-set, ranked by index sum."""
    if not 1 <= d <= n:
        raise DivlabError(f"need 1 <= d <= n, got n={n}, d={d}")
    return RankProfile(tuple(gaussian_binomial(n, d)))


@dataclass(frozen=True)
class BoundComparison:
    """``width**2 * d`` against ``2 * (n+d-2)**(2(d-1))``, i.e. the squared cube-width bound."""

    n: int
    d: int
    exact_width: int
    bound_squared_lhs: int
    bound_squared_rhs: int

    @property
    def holds(self) -> bool:
        return self.bound_squared_lhs <= self.bound_squared_rhs

    @property
    def equality(self) -> bool:
        return self.bound_squared_lhs == self.bound_squared_rhs


def lemma1_check(n: int, d: int) -> BoundComparison:
    """Exact width of the n^d lattice cube against ``(n+d-2)^(d-1) * sqrt(2/d)``."""
    if n < 2 or d < 1:
        raise DivlabError("lemma1_check needs n >= 2 and d >= 1")
    w = cube_rank_profile(n, d).width
    return BoundComparison(n, d, w, w * w * d, 2 * (n + d - 2) ** (2 * (d - 1)))


# -- Dilworth oracle -----------------------------------------------------------


def _as_tuple(x) -> tuple[int, ...]:
    if isinstance(x, SubsetMask):
        return x.indices()
    return tuple(sorted(x))


def _as_mask(x) -> int:
    if isinstance(x, SubsetMask):
        return x.bits
    return SubsetMask.from_indices(x).bits


def _mask_indices(m: int) -> tuple[int, ...]:
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return tuple(out)


def _hopcroft_karp(above: np.ndarray) -> int:
    """Maximum matching in the bipartite graph with left/right copies of the
    vertices and an edge ``u -> v`` wherever ``above[u, v]`` is set.

    Layering is done with whole-frontier numpy reductions; the augmenting
    DFS is iterative and caches each vertex's admissible edges per phase.
    """
    num = above.shape[0]
    pair_u = np.full(num, -1, dtype=np.int64)
    pair_v = np.full(num, -1, dtype=np.int64)

    # greedy seed: each u takes its lowest free successor
    free_v = np.ones(num, dtype=bool)
    for u in range(num):
        cand = above[u] & free_v
        v = int(cand.argmax())
        if cand[v]:
            pair_u[u], pair_v[v] = v, u
            free_v[v] = False

    while True:
        dist = np.full(num, -1, dtype=np.int64)
        frontier = np.flatnonzero(pair_u == -1)
        dist[frontier] = 0
        seen_v = np.zeros(num, dtype=bool)
        depth = 0
        found = False
        while frontier.size:
            reach = above[frontier].any(axis=0) & ~seen_v
            seen_v |= reach
            vs = np.flatnonzero(reach)
            if (pair_v[vs] == -1).any():
                found = True
                break
            nxt = pair_v[vs]
            nxt = nxt[dist[nxt] == -1]
            depth += 1
            dist[nxt] = depth
            frontier = nxt
        if not found:
            return int((pair_u != -1).sum())

        partner_dist = np.where(pair_v == -1, -1, dist[np.maximum(pair_v, 0)])
        cache: dict[int, list[int]] = {}
        ptr: dict[int, int] = {}
        used_v = np.zeros(num, dtype=bool)

        def admissible(u):
            row = cache.get(u)
            if row is None:
                du = dist[u]
                ok = above[u] & ~used_v
                if du == depth:
                    ok &= pair_v == -1
                else:
                    ok &= (pair_v != -1) & (partner_dist == du + 1)
                row = np.flatnonzero(ok).tolist()
                cache[u] = row
                ptr[u] = 0
            return row

        for root in np.flatnonzero(pair_u == -1).tolist():
            stack, via = [root], []
            while stack:
                u = stack[-1]
                row = admissible(u)
                pushed = False
                while ptr[u] < len(row):
                    v = row[ptr[u]]
                    ptr[u] += 1
                    if used_v[v]:
                        continue
                    w = int(pair_v[v])
                    if w == -1:
                        via.append(v)
                        for uu, vv in zip(stack, via):
                            pair_u[uu], pair_v[vv] = vv, uu
                            used_v[vv] = True
                        stack = []
                        pushed = True
                        break
                    if dist[w] == dist[u] + 1:
                        via.append(v)
                        stack.append(w)
                        pushed = True
                        break
                if not pushed:
                    dist[u] = -2
                    stack.pop()
                    if via:
                        via.pop()


def _strict_order_matrix(arr: np.ndarray, chunk: int = 256) -> np.ndarray:
    """``above[i, j]`` iff row ``j`` strictly dominates row ``i``; rows sorted by sum, distinct."""
    num = arr.shape[0]
    above = np.zeros((num, num), dtype=bool)
    for lo in range(0, num, chunk):
        block = arr[lo : lo + chunk]
        above[lo : lo + chunk] = np.all(arr[None, :, :] >= block[:, None, :], axis=2)
    # distinct rows dominating each other must have a strictly larger sum
    np.fill_diagonal(above, False)
    return above


def dilworth_width(elements: Iterable) -> int:
    """Exact width of a family of equal-size subsets under dominance.

    By Dilworth's theorem the width equals the minimum number of chains
    covering the family, which is ``N`` minus a maximum matching of the
    strict order viewed as a bipartite graph.

    Complementation inside ``range(max + 1)`` reverses the dominance order,
    so when complements are the shorter encoding they are used instead;
    the width of a poset and its dual coincide.
    """
    masks = {_as_mask(x) for x in elements}
    num = len(masks)
    if num == 0:
        return 0
    if num > cap("dilworth_elements"):
        raise ResourceCapError(f"{num} elements exceeds the Dilworth cap {cap('dilworth_elements')}")
    size = next(iter(masks)).bit_count()
    if any(m.bit_count() != size for m in masks):
        raise DivlabError("dominance compares subsets of equal size only")
    universe = max(m.bit_length() for m in masks)
    if 2 * size > universe:
        full = (1 << universe) - 1
        masks = {full ^ m for m in masks}
        size = universe - size
    if size == 0 or num == 1:
        return 1
    items = [_mask_indices(m) for m in masks]
    ordered = sorted(items, key=lambda t: (sum(t), t))
    arr = np.array(ordered, dtype=np.int64).reshape(num, size)
    return num - _hopcroft_karp(_strict_order_matrix(arr))


def all_subsets(n: int, d: int) -> list[SubsetMask]:
    """Every d-subset of ``range(n)``, colex order."""
    return [SubsetMask(m) for m in colex_masks(n, d)]


def antichain_verify(subsets: Sequence) -> bool:
    """True when the given equal-size subsets are pairwise incomparable under dominance."""
    items = [_as_tuple(x) for x in subsets]
    if items and any(len(t) != len(items[0]) for t in items):
        raise DivlabError("antichain_verify needs subsets of equal size")
    for a, b in combinations(items, 2):
        if a == b or strictly_dominates(a, b) or strictly_dominates(b, a):
            return False
    return True


# -- Lemma 2 style bound on the dominance order ---------------------------------


@dataclass(frozen=True)
class Lemma2Report:
    """``w * n * sqrt(d) < 2 * C(n, d)``, compared as ``(w*n)**2 * d < 4 * C(n,d)**2``."""

    n: int
    d: int
    width: int
    subsets: int
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs < self.rhs


def lemma2_check(n: int, d: int) -> Lemma2Report:
    if not 1 < d <= n:
        raise DivlabError(f"lemma2_check needs 1 < d <= n, got n={n}, d={d}")
    w = dominance_rank_profile(n, d).width
    total = math.comb(n, d)
    return Lemma2Report(n, d, w, total, (w * n) ** 2 * d, 4 * total * total)


@dataclass(frozen=True)
class Lemma2Threshold:
    d: int
    n_max: int
    threshold: int | None  # smallest n0 with the bound holding on every n in [n0, n_max]
    failures: tuple[int, ...]


def lemma2_threshold(d: int, n_max: int) -> Lemma2Threshold:
    """Scan ``n = d..n_max`` and report where the bound starts holding for good."""
    if d < 2 or n_max < d:
        raise DivlabError("lemma2_threshold needs d >= 2 and n_max >= d")
    failures = [n for n in range(d, n_max + 1) if not lemma2_check(n, d).holds]
    if failures and failures[-1] == n_max:
        threshold = None
    else:
        threshold = failures[-1] + 1 if failures else d
    return Lemma2Threshold(d, n_max, threshold, tuple(failures))
