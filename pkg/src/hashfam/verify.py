"""Verification of separation, fractality, bounds, and covering designs.

A row separates a partition of a column subset when columns in distinct
classes carry distinct symbols in that row.  The exhaustive verifiers
enumerate column subsets in lexicographic order and, for each subset,
partitions as restricted-growth strings with a bounded class count, also in
lexicographic order; the reported witness is therefore the first failure
under that fixed order, regardless of thread count.
"""

from __future__ import annotations

import itertools
import math
import warnings
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import HashFamily, Partition, VerifyReport

# Enumeration sizes up to this many (subset, partition) checks are considered
# exhaustively verifiable; beyond it callers fall back to sampling.
EXHAUSTIVE_BUDGET = 10_000_000

_SAMPLE_CHUNK = 65536


class UncoveredSubsetError(ValueError):
    """A covering design misses some d-subset; .witness holds the subset."""

    def __init__(self, subset: Sequence[int]):
        self.witness = tuple(subset)
        inner = ",".join(str(x) for x in subset)
        super().__init__(f"subset {{{inner}}} is not contained in any block")


@dataclass(frozen=True)
class BoundCheckResult:
    """Outcome of a necessary-condition check: holds iff lhs vs rhs passes."""

    name: str
    holds: bool
    lhs: int
    rhs: int
    witness: tuple[int, ...] | None = None

    def describe(self) -> str:
        verdict = "holds" if self.holds else "FAILS"
        out = f"{self.name}: {verdict} ({self.lhs} vs {self.rhs})"
        if self.witness is not None:
            out += f" witness: {list(self.witness)}"
        return out


def restricted_growth_strings(length: int, max_blocks: int) -> Iterable[tuple[int, ...]]:
    """Yield restricted-growth label tuples in lexicographic order.

    A restricted-growth string starts at 0 and never jumps more than one
    above the running maximum; max_blocks caps the number of distinct labels.
    """
    if length < 1:
        raise ValueError("length must be at least 1")
    if max_blocks < 1:
        raise ValueError("max_blocks must be at least 1")

    def rec(prefix: list[int], cur_max: int):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        top = min(cur_max + 1, max_blocks - 1)
        for v in range(top + 1):
            prefix.append(v)
            yield from rec(prefix, max(cur_max, v))
            prefix.pop()

    yield from rec([0], 0)


def rgs_total(length: int, max_blocks: int) -> int:
    """Count restricted-growth strings of the given length and block cap."""
    if length < 1 or max_blocks < 1:
        raise ValueError("length and max_blocks must be at least 1")
    # ways[m] = completions given current maximum label m
    ways = [1] * max_blocks
    for _ in range(length - 1):
        nxt = [0] * max_blocks
        for m in range(max_blocks):
            nxt[m] = (m + 1) * ways[m] + (ways[m + 1] if m + 1 < max_blocks else 0)
        ways = nxt
    return ways[0]


def dhhf_check_count(k: int, t: int, p: int) -> int:
    """Number of (t-subset, nontrivial partition) pairs a full pass examines."""
    return math.comb(k, t) * (rgs_total(t, min(p, t)) - 1)


def fractal_check_count(k: int, t: int, p: int) -> int:
    """Number of checks a full fractality pass examines."""
    total = 0
    for ell in range(2, t + 1):
        total += math.comb(k, ell) * (rgs_total(ell, min(p, ell)) - 1)
    return total


def _row_separates(rowsub: Sequence[int], labels: Sequence[int]) -> bool:
    seen: dict[int, int] = {}
    for sym, lab in zip(rowsub, labels):
        prev = seen.get(sym)
        if prev is None:
            seen[sym] = lab
        elif prev != lab:
            return False
    return True


def separates(family: HashFamily, row: int, partition: Partition) -> bool:
    """Does the given row separate the partition?"""
    if not 0 <= row < family.rows:
        raise ValueError(f"row {row} out of range [0, {family.rows})")
    cells = family.cells[row]
    k = family.cols
    seen: dict[int, int] = {}
    for ci, cls in enumerate(partition.classes):
        for col in cls:
            if not 0 <= col < k:
                raise ValueError(f"column {col} out of range [0, {k})")
            sym = cells[col]
            prev = seen.get(sym)
            if prev is None:
                seen[sym] = ci
            elif prev != ci:
                return False
    return True


def count_separating_rows(family: HashFamily, partition: Partition) -> int:
    """How many rows separate the partition."""
    return sum(1 for r in range(family.rows) if separates(family, r, partition))


def _clamp_parts(t: int, p: int) -> int:
    if p < 1:
        raise ValueError("part budget must be at least 1")
    if p > t:
        warnings.warn(f"part budget {p} exceeds strength {t}; clamping to {t}", stacklevel=3)
        return t
    return p


def _scan_chunk(cells, cols_list, parts_list):
    """Scan (subset, partition) pairs; return (checks, first failing pair)."""
    checks = 0
    for cols in cols_list:
        subs = [tuple(row[c] for c in cols) for row in cells]
        for labels in parts_list:
            checks += 1
            if not any(_row_separates(sub, labels) for sub in subs):
                return checks, (cols, labels)
    return checks, None


def verify_dhhf(family: HashFamily, t: int, p: int, threads: int = 1) -> VerifyReport:
    """Exhaustively check separation of every partition of every t-subset
    into at most p nonempty classes.

    Single-class partitions are vacuously separated and skipped.  On failure
    the witness is the lexicographically first (subset, partition) pair.
    """
    if t < 1:
        raise ValueError("strength must be at least 1")
    if family.cols < t:
        raise ValueError(f"needs at least {t} columns, family has {family.cols}")
    p = _clamp_parts(t, p)
    parts_list = [lab for lab in restricted_growth_strings(t, p) if any(lab)]
    combos = itertools.combinations(range(family.cols), t)
    if threads <= 1 or not parts_list:
        checks, hit = _scan_chunk(family.cells, combos, parts_list)
    else:
        checks, hit = scan_parallel(
            lambda chunk: _scan_chunk(family.cells, chunk, parts_list), combos, threads)
    if hit is None:
        return VerifyReport(True, None, checks, "exhaustive")
    cols, labels = hit
    witness = Partition.from_labels(cols, labels, p)
    return VerifyReport(False, witness, checks, "exhaustive")


def scan_parallel(scan, combos, threads, chunk_size=1024):
    """Chunked scan of column subsets with an ordered reduction.

    ``scan`` maps a list of column tuples to ``(checks, witness_or_None)``.
    Chunks are consumed in submission order, so the returned witness and the
    check count (full chunks before the witness chunk plus the partial count
    inside it) match the sequential scan exactly.
    """
    checks = 0
    with ThreadPoolExecutor(max_workers=threads) as pool:
        pending: deque = deque()

        def submit_next() -> bool:
            chunk = list(itertools.islice(combos, chunk_size))
            if not chunk:
                return False
            pending.append(pool.submit(scan, chunk))
            return True

        for _ in range(threads * 2):
            if not submit_next():
                break
        while pending:
            got, hit = pending.popleft().result()
            checks += got
            if hit is not None:
                return checks, hit
            submit_next()
    return checks, None


def verify_phf(family: HashFamily, t: int, threads: int = 1) -> VerifyReport:
    """Perfect-family check: separation with the part budget equal to t."""
    return verify_dhhf(family, t, t, threads)


def verify_fractal(family: HashFamily, t: int, p: int) -> VerifyReport:
    """Check the row-deletion-closure property of a t-row, strength-t family.

    Passes iff for every 2 <= ell <= t, every partition of every ell-subset
    into at most min(p, ell) classes is separated by at least t+1-ell rows.
    Subsets and partitions are scanned in the same order as verify_dhhf,
    with ell ascending.
    """
    if family.rows != t:
        raise ValueError(f"fractality is defined for rows == strength; rows={family.rows}, t={t}")
    if family.cols < t:
        raise ValueError(f"needs at least {t} columns, family has {family.cols}")
    p = _clamp_parts(t, p)
    checks = 0
    for ell in range(2, t + 1):
        need = t + 1 - ell
        q = min(p, ell)
        parts_list = [lab for lab in restricted_growth_strings(ell, q) if any(lab)]
        for cols in itertools.combinations(range(family.cols), ell):
            subs = [tuple(row[c] for c in cols) for row in family.cells]
            for labels in parts_list:
                checks += 1
                got = sum(1 for sub in subs if _row_separates(sub, labels))
                if got < need:
                    witness = Partition.from_labels(cols, labels, q)
                    note = f"separated by {got} rows, needs {need}"
                    return VerifyReport(False, witness, checks, "exhaustive", note)
    return VerifyReport(True, None, checks, "exhaustive")


def _rgs_completion_table(t: int, p: int) -> np.ndarray:
    """table[i, m] = completions of positions i..t-1 given current max m."""
    table = np.zeros((t + 2, p + 1), dtype=np.float64)
    table[t, :p] = 1.0
    for i in range(t - 1, 0, -1):
        for m in range(p):
            table[i, m] = (m + 1) * table[i + 1, m] + table[i + 1, m + 1]
    return table


def _draw_subsets(rng: np.random.Generator, batch: int, k: int, t: int) -> np.ndarray:
    """Uniform sorted t-subsets of range(k), one per batch row."""
    if t == k:
        return np.tile(np.arange(k, dtype=np.int64), (batch, 1))
    cols = rng.integers(0, k, size=(batch, t), dtype=np.int64)
    cols.sort(axis=1)
    redo = np.flatnonzero((np.diff(cols, axis=1) == 0).any(axis=1))
    while redo.size:
        fresh = rng.integers(0, k, size=(redo.size, t), dtype=np.int64)
        fresh.sort(axis=1)
        cols[redo] = fresh
        redo = redo[(np.diff(fresh, axis=1) == 0).any(axis=1)]
    return cols


def _draw_rgs(rng: np.random.Generator, batch: int, t: int, p: int,
              table: np.ndarray) -> np.ndarray:
    """Uniform restricted-growth strings with at most p blocks, one per row."""
    labels = np.zeros((batch, t), dtype=np.int64)
    cur = np.zeros(batch, dtype=np.int64)
    for i in range(1, t):
        f_reuse = table[i + 1, cur]
        f_new = table[i + 1, cur + 1]
        reuse_weight = (cur + 1) * f_reuse
        u = rng.random(batch) * (reuse_weight + f_new)
        is_new = u >= reuse_weight
        reuse_val = np.minimum((u / f_reuse).astype(np.int64), cur)
        val = np.where(is_new, cur + 1, reuse_val)
        labels[:, i] = val
        cur = np.maximum(cur, val)
    return labels


def _batch_separated(arr: np.ndarray, cols: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """For each sampled (subset, labels) row: does some array row separate it?"""
    sub = arr[:, cols]  # (rows, batch, t)
    t = cols.shape[1]
    viol = np.zeros(sub.shape[:2], dtype=bool)
    for i in range(t):
        li = labels[:, i]
        si = sub[:, :, i]
        for j in range(i + 1, t):
            cross = li != labels[:, j]
            viol |= (si == sub[:, :, j]) & cross[np.newaxis, :]
    return (~viol).any(axis=0)


def sample_verify(family: HashFamily, t: int, p: int, samples: int, seed: int) -> VerifyReport:
    """Randomized separation check over seeded (subset, partition) draws.

    Each sample is a uniform t-subset paired with a uniform restricted-growth
    partition with at most p classes.  The draw stream is fully determined by
    the seed, so identical inputs give identical reports.  A failing sample
    refutes the property; passing is evidence, not proof.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if t < 1:
        raise ValueError("strength must be at least 1")
    if family.cols < t:
        raise ValueError(f"needs at least {t} columns, family has {family.cols}")
    p = _clamp_parts(t, p)
    mode = f"sampled(seed={seed},samples={samples})"
    rng = np.random.Generator(np.random.PCG64(seed))
    arr = np.array(family.cells, dtype=np.int64)
    table = _rgs_completion_table(t, p)
    done = 0
    while done < samples:
        batch = min(_SAMPLE_CHUNK, samples - done)
        cols = _draw_subsets(rng, batch, family.cols, t)
        labels = _draw_rgs(rng, batch, t, p, table)
        ok = _batch_separated(arr, cols, labels)
        bad = np.flatnonzero(~ok)
        if bad.size:
            i = int(bad[0])
            witness = Partition.from_labels([int(c) for c in cols[i]],
                                            [int(x) for x in labels[i]], p)
            return VerifyReport(False, witness, done + i + 1, mode)
        done += batch
    return VerifyReport(True, None, samples, mode)


def alpha_of(family: HashFamily) -> int:
    """Number of rows whose symbols are pairwise distinct."""
    k = family.cols
    return sum(1 for row in family.cells if len(set(row)) == k)


@dataclass(frozen=True)
class SingletonArray:
    """0/1 array marking cells whose symbol occurs exactly once in its row."""

    bits: tuple[tuple[int, ...], ...]

    @property
    def rows(self) -> int:
        return len(self.bits)

    @property
    def cols(self) -> int:
        return len(self.bits[0])

    def column_masks(self) -> list[int]:
        """Per-column bitmask over rows of the singleton cells."""
        masks = [0] * self.cols
        for r, row in enumerate(self.bits):
            bit = 1 << r
            for c, v in enumerate(row):
                if v:
                    masks[c] |= bit
        return masks


def singleton_array(family: HashFamily) -> SingletonArray:
    """Mark the cells holding a symbol used exactly once in their row."""
    rows = []
    for row in family.cells:
        counts: dict[int, int] = {}
        for s in row:
            counts[s] = counts.get(s, 0) + 1
        rows.append(tuple(1 if counts[s] == 1 else 0 for s in row))
    return SingletonArray(tuple(rows))


def check_singleton_cover(family: HashFamily, d: int) -> BoundCheckResult:
    """Every d-subset of columns must be all-singleton in some row.

    Necessary for a family of strength rows+d whenever the part budget is at
    least d+1; a failure refutes that claim.  lhs counts covered d-subsets,
    rhs counts all of them.
    """
    if not 1 <= d <= family.cols:
        raise ValueError(f"d must be in [1, {family.cols}]")
    masks = singleton_array(family).column_masks()
    total = math.comb(family.cols, d)
    covered = 0
    witness: tuple[int, ...] | None = None
    for subset in itertools.combinations(range(family.cols), d):
        acc = masks[subset[0]]
        for c in subset[1:]:
            acc &= masks[c]
        if acc:
            covered += 1
        elif witness is None:
            witness = subset
    return BoundCheckResult("singleton-cover", covered == total, covered, total, witness)


def check_column_bound(family: HashFamily, t: int) -> BoundCheckResult:
    """Column-count bound: when strength exceeds the row count, the number of
    columns cannot exceed the sum of the row widths."""
    if t <= family.rows:
        raise ValueError("column bound applies only when strength exceeds the row count")
    rhs = sum(family.row_widths)
    return BoundCheckResult("column-sum", family.cols <= rhs, family.cols, rhs)


def check_niu_cao(k: int, w: int, t: int) -> BoundCheckResult:
    """Quadratic column bound for a t-row, strength-t, w-symbol family:
    k <= w*w, tightening to k <= w*w - w when t >= 4."""
    if t < 2:
        raise ValueError("strength must be at least 2")
    if k < 1 or w < 1:
        raise ValueError("k and w must be positive")
    rhs = w * w - (w if t >= 4 else 0)
    return BoundCheckResult("niu-cao", k <= rhs, k, rhs)


def implies_perfect(t: int, p: int) -> bool:
    """True when strength t below p(p+1)/2 forces any distributing family
    with part budget p to be perfect."""
    if p < 2 or t < p:
        raise ValueError("requires t >= p >= 2")
    return t < p * (p + 1) // 2


def is_fractal_by_singletons(family: HashFamily) -> bool:
    """Sufficient test: a perfect strength-rows family with at most one
    singleton per row is fractal.  Returns the per-row singleton condition;
    a False result decides nothing."""
    return all(sum(row) <= 1 for row in singleton_array(family).bits)


def verify_covering(sets: Sequence[Sequence[int]], n: int, m: int, d: int) -> tuple[int, ...]:
    """Validate an (n, m, d)-covering design and return its type vector.

    Every d-subset of range(m) must lie inside some block.  Raises
    UncoveredSubsetError (with .witness) on the first uncovered subset in
    lexicographic order.
    """
    if len(sets) != n:
        raise ValueError(f"expected {n} blocks, got {len(sets)}")
    if not 1 <= d <= m:
        raise ValueError("d must be in [1, m]")
    blocks = []
    for i, block in enumerate(sets):
        fs = frozenset(block)
        if len(fs) != len(tuple(block)):
            raise ValueError(f"block {i} has repeated elements")
        for x in fs:
            if not 0 <= x < m:
                raise ValueError(f"block {i}: element {x} out of range [0, {m})")
        blocks.append(fs)
    for subset in itertools.combinations(range(m), d):
        want = set(subset)
        if not any(want <= b for b in blocks):
            raise UncoveredSubsetError(subset)
    return tuple(sum(1 for b in blocks if c in b) for c in range(m))
