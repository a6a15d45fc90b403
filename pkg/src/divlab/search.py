"""Exhaustive search for integer sets with many k-subset s-divisors.

Every set of ``n`` distinct positive integers with total ``T <= sum_bound``
and element gcd 1 is visited exactly once. Since divisor counts are
invariant under scaling, the gcd-1 representative covers its whole class
of positive rational rescalings.

Work is split by total ``T``. Workers share nothing; results are merged in
increasing ``T`` and, within one ``T``, in lexicographic order of the set,
so any worker count yields identical output. After each completed ``T``
one JSON line is appended to the checkpoint, chained to the previous line
by a SHA-256 digest. A rerun with the same checkpoint path resumes from
the first missing ``T``.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from pathlib import Path
from typing import Iterator

from divlab.caps import cap
from divlab.errors import ConfigMismatchError, CorruptCheckpointError, DivlabError, ResourceCapError

MAX_LISTED_ATTAINERS = 20


class SearchBudgetExceeded(ResourceCapError):
    def __init__(self, message, cursor):
        super().__init__(message)
        self.cursor = cursor


@dataclass(frozen=True)
class SearchConfig:
    n: int
    k: int
    s: int = 1
    sum_bound: int = 0
    jobs: int = 1
    checkpoint_path: str | None = None
    report_threshold: int | None = None

    def __post_init__(self):
        if self.n < 1 or self.s < 1:
            raise DivlabError("n and s must be positive")
        if not 1 <= self.k <= self.n:
            raise DivlabError(f"k must satisfy 1 <= k <= n={self.n}")
        if self.sum_bound < self.min_total:
            raise DivlabError(f"sum_bound must be at least n(n+1)/2 = {self.min_total}")
        if self.jobs < 1:
            raise DivlabError("jobs must be at least 1")
        if self.report_threshold is None:
            object.__setattr__(self, "report_threshold", self.target)

    @property
    def min_total(self) -> int:
        return self.n * (self.n + 1) // 2

    @property
    def target(self) -> int:
        return math.comb(self.n - 1, self.k)

    def identity(self) -> dict:
        """The fields a checkpoint must agree on to be resumable."""
        return {"n": self.n, "k": self.k, "s": self.s, "report_threshold": self.report_threshold}


@dataclass(frozen=True)
class SearchRecord:
    elements: tuple[int, ...]
    total: int
    count: int
    is_anti_pencil: bool
    exceeds: bool

    def to_json(self) -> dict:
        return {
            "set": list(self.elements),
            "total": self.total,
            "count": self.count,
            "anti_pencil": self.is_anti_pencil,
            "exceeds": self.exceeds,
        }

    @classmethod
    def from_json(cls, obj: dict) -> SearchRecord:
        return cls(tuple(obj["set"]), obj["total"], obj["count"], obj["anti_pencil"], obj["exceeds"])


def distinct_partitions(total: int, parts: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``total`` into ``parts`` distinct positive parts, each ``<= largest``.

    Recursive on the largest part, which runs downward; parts come out in
    decreasing order.
    """
    if largest is None:
        largest = total
    if parts == 0:
        if total == 0:
            yield ()
        return
    # the remaining parts - 1 values are distinct and below the chosen one
    floor = parts * (parts - 1) // 2
    hi = min(largest, total - floor)
    for top in range(hi, 0, -1):
        if top * parts - parts * (parts - 1) // 2 < total:
            break
        for rest in distinct_partitions(total - top, parts - 1, top - 1):
            yield (top,) + rest


def divisor_stats(elements: tuple[int, ...], k: int, s: int) -> tuple[int, bool]:
    """``(count, is_anti_pencil)`` for an increasing tuple of integers."""
    target = s * sum(elements)
    top = elements[-1]
    count = 0
    hits_top = False
    misses_base = False
    for combo in combinations(elements, k):
        if target % sum(combo) == 0:
            count += 1
            if combo[-1] == top:
                hits_top = True
        elif combo[-1] != top:
            misses_base = True
    return count, not (hits_top or misses_base)


@dataclass
class TotalScan:
    """Everything the merger needs from one value of the total."""

    t: int
    scanned: int = 0
    best_count: int = -1
    best_multiplicity: int = 0
    best_sets: list = field(default_factory=list)
    records: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "scanned": self.scanned,
            "best": {"count": self.best_count, "multiplicity": self.best_multiplicity, "sets": self.best_sets},
            "records": [r.to_json() for r in self.records],
        }

    @classmethod
    def from_json(cls, obj: dict) -> TotalScan:
        best = obj["best"]
        return cls(
            obj["t"],
            obj["scanned"],
            best["count"],
            best["multiplicity"],
            [list(x) for x in best["sets"]],
            [SearchRecord.from_json(r) for r in obj["records"]],
        )


def scan_total(t: int, n: int, k: int, s: int, threshold: int) -> TotalScan:
    out = TotalScan(t)
    target = math.comb(n - 1, k)
    found = []
    for desc in distinct_partitions(t, n):
        if reduce(math.gcd, desc) != 1:
            continue
        elements = desc[::-1]
        out.scanned += 1
        count, anti = divisor_stats(elements, k, s)
        found.append((elements, count))
        if count >= threshold:
            out.records.append(SearchRecord(elements, t, count, anti, count > target))
    if found:
        out.best_count = max(c for _, c in found)
        best = sorted(e for e, c in found if c == out.best_count)
        out.best_multiplicity = len(best)
        out.best_sets = [list(e) for e in best[:MAX_LISTED_ATTAINERS]]
    out.records.sort(key=lambda r: r.elements)
    return out


def _scan_args(args):
    return scan_total(*args)


# -- checkpoint ----------------------------------------------------------------


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _chain(prev: str, body: dict) -> str:
    return hashlib.sha256((prev + _canonical(body)).encode()).hexdigest()


@dataclass
class CheckpointState:
    next_t: int
    scans: list[TotalScan]
    digest: str


def load_checkpoint(path, cfg: SearchConfig) -> CheckpointState:
    """Read and verify a checkpoint; a missing or empty file means a fresh start."""
    path = Path(path)
    header = {"config": cfg.identity()}
    fresh_digest = _chain("", header)
    if not path.exists() or path.stat().st_size == 0:
        return CheckpointState(cfg.min_total, [], fresh_digest)
    raw = path.read_bytes()
    offset = 0
    scans: list[TotalScan] = []
    digest = ""
    expected_t = cfg.min_total
    for lineno, line in enumerate(raw.splitlines(keepends=True)):
        if not line.endswith(b"\n"):
            raise CorruptCheckpointError("truncated final line", offset)
        try:
            obj = json.loads(line)
            stored = obj.pop("digest")
        except (ValueError, KeyError, AttributeError):
            raise CorruptCheckpointError(f"unparseable line {lineno + 1}", offset) from None
        if _chain(digest, obj) != stored:
            raise CorruptCheckpointError(f"digest mismatch on line {lineno + 1}", offset)
        digest = stored
        if lineno == 0:
            if "config" not in obj:
                raise CorruptCheckpointError("missing header", offset)
            if obj["config"] != cfg.identity():
                raise ConfigMismatchError(f"checkpoint was written for {obj['config']}, not {cfg.identity()}")
        else:
            scan = TotalScan.from_json(obj)
            if scan.t != expected_t:
                raise CorruptCheckpointError(f"expected t={expected_t}, found t={scan.t}", offset)
            expected_t += 1
            scans.append(scan)
        offset += len(line)
    return CheckpointState(expected_t, scans, digest)


class _CheckpointWriter:
    def __init__(self, path, cfg: SearchConfig, state: CheckpointState):
        self.path = Path(path)
        self.digest = state.digest
        if not self.path.exists() or self.path.stat().st_size == 0:
            header = {"config": cfg.identity()}
            self.digest = _chain("", header)
            self._append({**header, "digest": self.digest})

    def _append(self, obj):
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(_canonical(obj) + "\n")
            fh.flush()
            os.fsync(fh.fileno())

    def write(self, scan: TotalScan):
        body = scan.to_json()
        self.digest = _chain(self.digest, body)
        self._append({**body, "digest": self.digest})


# -- driver --------------------------------------------------------------------


@dataclass
class SearchResult:
    config: SearchConfig
    scans: list[TotalScan]

    @property
    def records(self) -> list[SearchRecord]:
        return [r for scan in self.scans if scan.t <= self.config.sum_bound for r in scan.records]

    def summary(self) -> dict:
        cfg = self.config
        scans = [sc for sc in self.scans if sc.t <= cfg.sum_bound]
        max_count = max((sc.best_count for sc in scans), default=-1)
        attainers, multiplicity = [], 0
        for sc in scans:
            if sc.best_count == max_count:
                multiplicity += sc.best_multiplicity
                attainers.extend(sc.best_sets)
        records = self.records
        return {
            "n": cfg.n,
            "k": cfg.k,
            "s": cfg.s,
            "sum_bound": cfg.sum_bound,
            "target": cfg.target,
            "report_threshold": cfg.report_threshold,
            "sets_scanned": sum(sc.scanned for sc in scans),
            "max_count": max_count,
            "attainer_count": multiplicity,
            "attainers": attainers[:MAX_LISTED_ATTAINERS],
            "exceptions": [list(r.elements) for r in records if r.exceeds],
            "non_anti_pencil_at_target": [
                list(r.elements) for r in records if r.count == cfg.target and not r.is_anti_pencil
            ],
        }


def exhaustive_search(cfg: SearchConfig, budget: int | None = None) -> SearchResult:
    """Scan every canonical set with total up to ``cfg.sum_bound``.

    ``budget`` caps the number of sets visited in this invocation (default:
    the ``search_sets`` cap). When it runs out, completed totals are already
    in the checkpoint and :class:`SearchBudgetExceeded` carries the cursor.
    """
    budget = cap("search_sets") if budget is None else budget
    if cfg.checkpoint_path:
        state = load_checkpoint(cfg.checkpoint_path, cfg)
        writer = _CheckpointWriter(cfg.checkpoint_path, cfg, state)
    else:
        state = CheckpointState(cfg.min_total, [], "")
        writer = None
    scans = list(state.scans)
    todo = range(state.next_t, cfg.sum_bound + 1)
    args = [(t, cfg.n, cfg.k, cfg.s, cfg.report_threshold) for t in todo]
    visited = 0

    def consume(results):
        nonlocal visited
        for scan in results:
            scans.append(scan)
            if writer:
                writer.write(scan)
            visited += scan.scanned
            if visited > budget and scan.t < cfg.sum_bound:
                raise SearchBudgetExceeded(f"visited {visited} sets, budget {budget}", scan.t + 1)

    if cfg.jobs == 1 or len(args) <= 1:
        consume(map(_scan_args, args))
    else:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            try:
                consume(pool.map(_scan_args, args))
            except SearchBudgetExceeded:
                pool.shutdown(cancel_futures=True)
                raise
    return SearchResult(cfg, scans)


# -- output files --------------------------------------------------------------


def write_records_jsonl(result: SearchResult, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rec in result.records:
            fh.write(_canonical({"n": result.config.n, "k": result.config.k, "s": result.config.s, **rec.to_json()}) + "\n")


def write_summary_json(result: SearchResult, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(_canonical(result.summary()) + "\n")


CSV_COLUMNS = ("n", "k", "s", "T", "set", "count", "target", "anti_pencil", "exceeds")


def write_csv(result: SearchResult, path) -> None:
    cfg = result.config
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in result.records:
            writer.writerow(
                [cfg.n, cfg.k, cfg.s, r.total, " ".join(map(str, r.elements)), r.count, cfg.target,
                 int(r.is_anti_pencil), int(r.exceeds)]
            )


# -- theorem grid ----------------------------------------------------------------


@dataclass(frozen=True)
class GridRow:
    n: int
    k: int
    s: int
    target: int
    max_count: int
    sets_scanned: int
    violations: tuple[SearchRecord, ...]  # count >= target but not an anti-pencil


def verify_theorem_grid(n_range, k_range, s: int, sum_bound: int, jobs: int = 1) -> list[GridRow]:
    """For each (k, n), list canonical sets reaching ``C(n-1, k)`` without being (k, s)-anti-pencils."""
    rows = []
    for n in n_range:
        for k in k_range:
            if not 1 <= k <= n or sum_bound < n * (n + 1) // 2:
                continue
            cfg = SearchConfig(n=n, k=k, s=s, sum_bound=sum_bound, jobs=jobs)
            result = exhaustive_search(cfg)
            summary = result.summary()
            bad = tuple(r for r in result.records if not r.is_anti_pencil)
            rows.append(GridRow(n, k, s, cfg.target, summary["max_count"], summary["sets_scanned"], bad))
    return rows
