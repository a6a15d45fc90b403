"""Exact subset-divisor counting over finite sets of positive rationals.

A subset ``B`` of a ground set ``A`` is an *s-divisor* when ``sum(B)``
divides ``s * sum(A)``, i.e. when ``s * sum(A) / sum(B)`` is a positive
integer. Everything here is exact: values are :class:`fractions.Fraction`
and no float is ever produced.

Subsets are identified by index bitmasks over the sorted ground set and
are always enumerated in colexicographic order (increasing mask value).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from divlab.errors import DivlabError, DuplicateElementError

Rational = Fraction

_RATIONAL_RE = re.compile(r"-?\d+(?:/\d+)?")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; decimals, ``q = 0`` and signed denominators are refused."""
    text = text.strip()
    if not _RATIONAL_RE.fullmatch(text):
        raise DivlabError(f"malformed rational {text!r}: expected 'p' or 'p/q'")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise DivlabError(f"malformed rational {text!r}: zero denominator")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class GroundSet(Sequence):
    """The set A: distinct positive rationals kept in increasing order.

    Input may be unsorted; duplicates raise :class:`DuplicateElementError`.
    """

    __slots__ = ("_elements",)

    def __init__(self, values: Iterable):
        elems = []
        for v in values:
            if isinstance(v, str):
                v = parse_rational(v)
            if isinstance(v, float):
                raise DivlabError("floats are not accepted; use ints, Fractions or 'p/q' strings")
            v = Fraction(v)
            if v <= 0:
                raise DivlabError(f"ground set elements must be positive, got {format_rational(v)}")
            elems.append(v)
        if not elems:
            raise DivlabError("ground set must be nonempty")
        elems.sort()
        for lo, hi in zip(elems, elems[1:]):
            if lo == hi:
                raise DuplicateElementError(f"duplicate element {format_rational(lo)}")
        self._elements = tuple(elems)

    @classmethod
    def parse(cls, text: str) -> GroundSet:
        return cls(part for part in text.split(",") if part.strip())

    @property
    def elements(self) -> tuple:
        return self._elements

    @property
    def n(self) -> int:
        return len(self._elements)

    @property
    def total(self) -> Fraction:
        return sum(self._elements, Fraction(0))

    def __getitem__(self, i):
        return self._elements[i]

    def __len__(self):
        return len(self._elements)

    def __eq__(self, other):
        if isinstance(other, GroundSet):
            return self._elements == other._elements
        return NotImplemented

    def __hash__(self):
        return hash(self._elements)

    def __repr__(self):
        return f"GroundSet([{', '.join(map(format_rational, self._elements))}])"

    def __str__(self):
        return ",".join(map(format_rational, self._elements))

    def integer_form(self) -> tuple[tuple[int, ...], int]:
        """Return ``(ints, scale)`` with ``ints[i] == elements[i] * scale``, scale minimal."""
        scale = math.lcm(*(x.denominator for x in self._elements))
        return tuple(int(x * scale) for x in self._elements), scale

    def scaled(self, c) -> GroundSet:
        c = Fraction(c)
        if c <= 0:
            raise DivlabError("scaling factor must be positive")
        return GroundSet(x * c for x in self._elements)

    def is_normalized(self) -> bool:
        return self.total == 1


@dataclass(frozen=True, order=True)
class SubsetMask:
    """A subset of a ground set, as a bitmask over element indices."""

    bits: int

    def __post_init__(self):
        if self.bits < 0:
            raise DivlabError("subset mask must be nonnegative")

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> SubsetMask:
        bits = 0
        for i in indices:
            if i < 0 or bits >> i & 1:
                raise DivlabError(f"bad or repeated index {i}")
            bits |= 1 << i
        return cls(bits)

    @property
    def k(self) -> int:
        return self.bits.bit_count()

    def indices(self) -> tuple[int, ...]:
        out, bits, i = [], self.bits, 0
        while bits:
            if bits & 1:
                out.append(i)
            bits >>= 1
            i += 1
        return tuple(out)

    def check_fits(self, n: int) -> None:
        if self.bits >> n:
            raise DivlabError(f"subset mask {self.bits:#x} indexes past n={n}")

    def values(self, A: GroundSet) -> tuple:
        self.check_fits(A.n)
        return tuple(A[i] for i in self.indices())

    def total(self, A: GroundSet) -> Fraction:
        return sum(self.values(A), Fraction(0))


def colex_masks(n: int, k: int) -> Iterator[int]:
    """All ``k``-subsets of ``range(n)`` as bitmasks, in colex (increasing) order."""
    if k < 0 or k > n:
        return
    if k == 0:
        yield 0
        return
    mask = (1 << k) - 1
    limit = 1 << n
    while mask < limit:
        yield mask
        # Gosper's hack: next integer with the same popcount
        low = mask & -mask
        ripple = mask + low
        mask = ripple | (((mask ^ ripple) >> 2) // low)


def _mask_sum(ints: Sequence[int], mask: int) -> int:
    total, i = 0, 0
    while mask:
        if mask & 1:
            total += ints[i]
        mask >>= 1
        i += 1
    return total


def _check_k(A: GroundSet, k: int) -> None:
    if not 1 <= k <= A.n:
        raise DivlabError(f"k must satisfy 1 <= k <= n={A.n}, got {k}")


def _check_s(s: int) -> None:
    if not isinstance(s, int) or s < 1:
        raise DivlabError(f"s must be a positive integer, got {s!r}")


def normalize(A: GroundSet) -> GroundSet:
    """Rescale ``A`` so that it sums to exactly 1."""
    return A.scaled(1 / A.total)


def is_s_divisor(A: GroundSet, B: SubsetMask, s: int = 1) -> bool:
    """True when ``sum(B)`` divides ``s * sum(A)``."""
    _check_s(s)
    B.check_fits(A.n)
    if B.bits == 0:
        return False
    q = s * A.total / B.total(A)
    return q.denominator == 1


def s_divisor_masks(A: GroundSet, k: int, s: int = 1) -> list[int]:
    """Bitmasks of every ``k``-subset s-divisor of ``A``, in colex order."""
    _check_k(A, k)
    _check_s(s)
    ints, _ = A.integer_form()
    target = s * sum(ints)
    return [m for m in colex_masks(A.n, k) if target % _mask_sum(ints, m) == 0]


@dataclass(frozen=True)
class DivisorReport:
    n: int
    k: int
    s: int
    count: int
    binom_target: int
    is_anti_pencil: bool
    witnesses: tuple[SubsetMask, ...] | None = None

    @property
    def exceeds(self) -> bool:
        return self.count > self.binom_target


def _anti_pencil_from_masks(n: int, k: int, masks: Sequence[int]) -> bool:
    # every k-subset avoiding the top index is present and nothing else is
    top = 1 << (n - 1)
    if any(m & top for m in masks):
        return False
    return len(masks) == math.comb(n - 1, k)


def count_divisors(A: GroundSet, k: int, s: int = 1, list_witnesses: bool = False) -> DivisorReport:
    """Count the ``k``-subset s-divisors of ``A``."""
    masks = s_divisor_masks(A, k, s)
    return DivisorReport(
        n=A.n,
        k=k,
        s=s,
        count=len(masks),
        binom_target=math.comb(A.n - 1, k),
        is_anti_pencil=_anti_pencil_from_masks(A.n, k, masks),
        witnesses=tuple(SubsetMask(m) for m in masks) if list_witnesses else None,
    )


def is_anti_pencil(A: GroundSet, k: int, s: int = 1) -> bool:
    """True when the k-subset s-divisors of ``A`` are exactly the k-subsets missing its maximum."""
    return _anti_pencil_from_masks(A.n, k, s_divisor_masks(A, k, s))


def dominates(lower: Sequence[int], upper: Sequence[int]) -> bool:
    """Dominance order on equal-size sorted tuples: ``lower[i] <= upper[i]`` for every i."""
    if len(lower) != len(upper):
        raise DivlabError("dominance compares subsets of equal size only")
    return all(a <= b for a, b in zip(lower, upper))


def strictly_dominates(lower: Sequence[int], upper: Sequence[int]) -> bool:
    return tuple(lower) != tuple(upper) and dominates(lower, upper)


def divisor_chain(A: GroundSet, k: int, s: int = 1) -> list[SubsetMask]:
    """A longest dominance chain ``B_0 < B_1 < ... < B_m`` of k-subset s-divisors.

    Longest path over the dominance DAG restricted to s-divisors. Ties are
    broken toward colex-earlier subsets so the output is deterministic.
    """
    masks = s_divisor_masks(A, k, s)
    if not masks:
        return []
    idx = [SubsetMask(m).indices() for m in masks]
    # index sum is a linear extension of dominance
    order = sorted(range(len(masks)), key=lambda i: (sum(idx[i]), masks[i]))
    length = {}
    parent = {}
    for pos, i in enumerate(order):
        best, via = 1, None
        for j in order[:pos]:
            if length[j] + 1 > best and strictly_dominates(idx[j], idx[i]):
                best, via = length[j] + 1, j
        length[i], parent[i] = best, via
    end = max(order, key=length.__getitem__)
    chain = []
    while end is not None:
        chain.append(SubsetMask(masks[end]))
        end = parent[end]
    chain.reverse()
    return chain


@dataclass(frozen=True)
class ChainBoundResult:
    """Outcome of :func:`check_chain_bound`; truthy when every bound holds."""

    holds: bool
    m: int
    q: int | None = None
    violation: SubsetMask | None = None
    detail: str = ""

    def __bool__(self):
        return self.holds


def check_chain_bound(A: GroundSet, chain: Sequence[SubsetMask], s: int = 1) -> ChainBoundResult:
    """Check the sum bounds forced on the bottom of a chain of s-divisors.

    With sums taken relative to ``sum(A)`` and the top of the chain summing
    to ``s/q``, the bottom must satisfy ``sum(B_0) <= s/(q+m)`` and each of
    its elements must be below ``s/(s+m)``.
    """
    _check_s(s)
    if not chain:
        raise DivlabError("chain must contain at least one subset")
    total = A.total
    idx = [B.indices() for B in chain]
    for B in chain:
        B.check_fits(A.n)
        if not is_s_divisor(A, B, s):
            raise DivlabError(f"chain member {B.indices()} is not an s-divisor")
    for lo, hi in zip(idx, idx[1:]):
        if not strictly_dominates(lo, hi):
            raise DivlabError(f"{lo} < {hi} fails in the dominance order")
    m = len(chain) - 1
    top = chain[-1].total(A) / total
    q = s / top
    assert q.denominator == 1
    q = int(q)
    if m == 0:
        return ChainBoundResult(True, m, q)
    bottom = chain[0].total(A) / total
    # sums along a chain of s-divisors are s/q_0 < ... < s/q_m with distinct q_i
    if bottom > Fraction(s, q + m):
        return ChainBoundResult(False, m, q, chain[0], f"sum(B_0)={bottom} > {s}/{q + m}")
    for i in idx[0]:
        if A[i] / total >= Fraction(s, s + m):
            return ChainBoundResult(False, m, q, chain[0], f"element {A[i] / total} >= {s}/{s + m}")
    return ChainBoundResult(True, m, q)


# -- generalised sum predicates ------------------------------------------------


@dataclass(frozen=True)
class SDivisor:
    """Normalised sums of the form ``s/m`` for a positive integer m."""

    s: int

    def __post_init__(self):
        _check_s(self.s)

    def __contains__(self, x: Fraction) -> bool:
        return x > 0 and (self.s / x).denominator == 1


@dataclass(frozen=True)
class OpenInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if not self.lo < self.hi:
            raise DivlabError("OpenInterval needs lo < hi")

    def __contains__(self, x: Fraction) -> bool:
        return self.lo < x < self.hi


@dataclass(frozen=True)
class Union:
    parts: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    def __contains__(self, x: Fraction) -> bool:
        return any(x in p for p in self.parts)


SumPredicate = SDivisor | OpenInterval | Union


def count_predicate(A: GroundSet, k: int, pred: SumPredicate) -> int:
    """Count k-subsets whose sum, taken relative to ``sum(A)``, lies in ``pred``."""
    _check_k(A, k)
    total = A.total
    return sum(1 for combo in combinations(A.elements, k) if sum(combo, Fraction(0)) / total in pred)


@dataclass(frozen=True)
class MMSReport:
    n: int
    k: int
    count: int
    target: int
    applies: bool
    conjecture_holds: bool | None


def mms_count(values: Iterable, k: int) -> MMSReport:
    """Count k-subsets with nonnegative sum in a multiset of rationals with nonnegative total.

    ``conjecture_holds`` is ``None`` outside the ``n >= 4k`` regime.
    """
    vals = []
    for v in values:
        if isinstance(v, str):
            v = parse_rational(v)
        if isinstance(v, float):
            raise DivlabError("floats are not accepted")
        vals.append(Fraction(v))
    n = len(vals)
    if not 1 <= k <= n:
        raise DivlabError(f"k must satisfy 1 <= k <= n={n}, got {k}")
    if sum(vals) < 0:
        raise DivlabError("values must have a nonnegative total")
    count = sum(1 for combo in combinations(vals, k) if sum(combo) >= 0)
    target = math.comb(n - 1, k - 1)
    applies = n >= 4 * k
    return MMSReport(n, k, count, target, applies, (count >= target) if applies else None)
