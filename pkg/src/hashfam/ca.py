"""Covering arrays and their composition with hash families.

A covering array CA(N; t, k, v) is an N x k array over v symbols in which
every t columns exhibit every one of the v^t symbol tuples in some row.
Column replacement turns a hash family whose symbols index the columns of a
covering array into a larger covering array: constant rows are emitted once,
and each hash-family row stamps out one copy of the non-constant part.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .core import HashFamily
from .verify import scan_parallel


@dataclass(frozen=True)
class CoveringArray:
    """An N x k array over symbols 0..v-1 claiming strength t."""

    cells: tuple[tuple[int, ...], ...]
    alphabet: int
    strength: int

    def __post_init__(self) -> None:
        cells = tuple(tuple(row) for row in self.cells)
        object.__setattr__(self, "cells", cells)
        if not cells or not cells[0]:
            raise ValueError("needs at least one row and one column")
        k = len(cells[0])
        if any(len(row) != k for row in cells):
            raise ValueError("rows must have equal length")
        if self.alphabet < 1:
            raise ValueError("alphabet must be positive")
        if not 1 <= self.strength <= k:
            raise ValueError(
                f"strength {self.strength} must be between 1 and {k}")
        for i, row in enumerate(cells):
            for s in row:
                if not 0 <= s < self.alphabet:
                    raise ValueError(
                        f"symbol {s} in row {i} outside 0..{self.alphabet - 1}")

    @property
    def rows(self) -> int:
        return len(self.cells)

    @property
    def cols(self) -> int:
        return len(self.cells[0])

    @property
    def constant_rows(self) -> int:
        return sum(1 for row in self.cells if len(set(row)) == 1)

    def constant_symbols(self) -> tuple[int, ...]:
        """Symbols of the constant rows, in row order."""
        return tuple(row[0] for row in self.cells if len(set(row)) == 1)

    def describe(self) -> str:
        return (f"CA({self.rows};{self.strength},{self.cols},"
                f"{self.alphabet}) constant_rows={self.constant_rows}")


@dataclass(frozen=True)
class CoverageWitness:
    """A t-tuple of symbols missing from the projection onto some columns."""

    columns: tuple[int, ...]
    assignment: tuple[int, ...]

    def describe(self) -> str:
        cols = ",".join(str(c) for c in self.columns)
        vals = ",".join(str(v) for v in self.assignment)
        return f"cols=[{cols}] assignment=[{vals}]"


@dataclass(frozen=True)
class CaReport:
    passed: bool
    witness: CoverageWitness | None
    checks: int
    mode: str = "exhaustive"

    def describe(self) -> str:
        head = "PASS" if self.passed else "FAIL"
        out = f"{head} mode={self.mode} checks={self.checks}"
        if self.witness is not None:
            out += f" witness: {self.witness.describe()}"
        return out


def _scan_chunk_ca(cells, cols_list, v, t):
    checks = 0
    for cols in cols_list:
        seen = {tuple(row[c] for c in cols) for row in cells}
        for assignment in itertools.product(range(v), repeat=t):
            checks += 1
            if assignment not in seen:
                return checks, CoverageWitness(cols, assignment)
    return checks, None


def verify_ca(array: CoveringArray, t: int, threads: int = 1) -> CaReport:
    """Exhaustively check coverage at strength t.

    Column subsets are scanned in lexicographic order and the v^t symbol
    tuples per subset likewise, so the witness is the lexicographically
    first missing (columns, assignment) pair.  Checks count every examined
    tuple including the failing one.
    """
    if not 1 <= t <= array.cols:
        raise ValueError(f"strength {t} must be between 1 and {array.cols}")
    v = array.alphabet
    combos = itertools.combinations(range(array.cols), t)
    if threads <= 1:
        checks, hit = _scan_chunk_ca(array.cells, combos, v, t)
    else:
        checks, hit = scan_parallel(
            lambda chunk: _scan_chunk_ca(array.cells, chunk, v, t),
            combos, threads, chunk_size=64)
    return CaReport(hit is None, hit, checks)


def full_factorial_ca(t: int, v: int) -> CoveringArray:
    """All v^t rows on t columns, in lexicographic row order."""
    if t < 1 or v < 1:
        raise ValueError("t and v must be positive")
    cells = tuple(itertools.product(range(v), repeat=t))
    return CoveringArray(cells, v, t)


def normalize_constant_rows(array: CoveringArray) -> CoveringArray:
    """Relabel symbols per column so the first row is all zeros.

    Swapping, in every column j, the first row's symbol with 0 is a symbol
    bijection per column, so coverage is untouched; afterwards at least one
    constant row exists.
    """
    first = array.cells[0]
    cells = []
    for row in array.cells:
        cells.append(tuple(
            0 if s == first[j] else (first[j] if s == 0 else s)
            for j, s in enumerate(row)))
    return CoveringArray(tuple(cells), array.alphabet, array.strength)


def greedy_ca(t: int, k: int, v: int, seed: int) -> CoveringArray:
    """Seeded greedy construction of a small covering array.

    Each round draws a batch of random rows plus one row forced to cover the
    first still-missing tuple, and keeps the row covering the most missing
    tuples.  The forced candidate guarantees progress, so the loop
    terminates; results are deterministic in (t, k, v, seed).
    """
    if t < 1 or v < 1:
        raise ValueError("t and v must be positive")
    if k < t:
        raise ValueError(f"needs at least {t} columns, got {k}")
    rng = random.Random(seed)
    subsets = list(itertools.combinations(range(k), t))
    missing = {(i, asg) for i in range(len(subsets))
               for asg in itertools.product(range(v), repeat=t)}
    rows: list[tuple[int, ...]] = []
    while missing:
        target_i, target_asg = min(missing)
        candidates = [tuple(rng.randrange(v) for _ in range(k))
                      for _ in range(32)]
        forced = [rng.randrange(v) for _ in range(k)]
        for pos, col in enumerate(subsets[target_i]):
            forced[col] = target_asg[pos]
        candidates.append(tuple(forced))
        best_row = None
        best_gain = -1
        for cand in candidates:
            gain = sum(
                1 for i, cols in enumerate(subsets)
                if (i, tuple(cand[c] for c in cols)) in missing)
            if gain > best_gain:
                best_gain = gain
                best_row = cand
        rows.append(best_row)
        for i, cols in enumerate(subsets):
            missing.discard((i, tuple(best_row[c] for c in cols)))
    return CoveringArray(tuple(rows), v, t)


def _split_constant(array: CoveringArray):
    constant = []
    rest = []
    for row in array.cells:
        (constant if len(set(row)) == 1 else rest).append(row)
    return constant, rest


def _check_claims(family: HashFamily, strength: int,
                  min_parts: int | None) -> None:
    if (family.claimed_strength is not None
            and family.claimed_strength < strength):
        raise ValueError(
            f"hash family claims strength {family.claimed_strength}, "
            f"composition needs {strength}")
    if (min_parts is not None and family.claimed_parts is not None
            and family.claimed_parts < min_parts):
        raise ValueError(
            f"hash family claims part budget {family.claimed_parts}, "
            f"composition needs {min_parts}")


def _column_replace(family: HashFamily, array: CoveringArray) -> CoveringArray:
    """Constant rows once, then one copy of the rest per hash-family row."""
    constant, rest = _split_constant(array)
    syms = [row[0] for row in constant]
    if len(set(syms)) != len(syms):
        raise ValueError(
            "constant rows repeat a symbol; normalize the array first")
    out = [(row[0],) * family.cols for row in constant]
    for hrow in family.cells:
        for row in rest:
            out.append(tuple(row[c] for c in hrow))
    return CoveringArray(tuple(out), array.alphabet, array.strength)


def compose_phf(family: HashFamily, array: CoveringArray) -> CoveringArray:
    """Column replacement through a perfect hash family.

    The family's symbols index the array's columns (the widest row width
    must equal the column count).  Any t output columns map to at most t
    array columns; some family row keeps them distinct, and within that copy
    the array supplies every assignment.
    """
    if max(family.row_widths) != array.cols:
        raise ValueError(
            f"family symbol count {max(family.row_widths)} does not match "
            f"array column count {array.cols}")
    _check_claims(family, array.strength, None)
    return _column_replace(family, array)


def compose_dhf(family: HashFamily, array: CoveringArray,
                v: int) -> CoveringArray:
    """Column replacement through a distributing family.

    With v symbols in the target array, separation into min(t, v) parts
    already suffices: a t-tuple over v symbols takes at most min(t, v)
    distinct values, and columns assigned the same value may share an array
    column.
    """
    if array.alphabet != v:
        raise ValueError(
            f"array alphabet {array.alphabet} does not match v={v}")
    need = min(array.strength, v)
    if array.cols < need:
        raise ValueError(
            f"array needs at least {need} columns, has {array.cols}")
    if max(family.row_widths) != array.cols:
        raise ValueError(
            f"family symbol count {max(family.row_widths)} does not match "
            f"array column count {array.cols}")
    _check_claims(family, array.strength, need)
    return _column_replace(family, array)


def compose_hetgen(family: HashFamily,
                   arrays: list[CoveringArray] | tuple[CoveringArray, ...],
                   ) -> CoveringArray:
    """Column replacement through a heterogeneous distributing family.

    Each distinct row width of the family must match the column count of
    exactly one supplied array (all sharing alphabet and strength).  Every
    copy donates a set of guaranteed symbols, chosen round robin so the
    guarantees spread evenly; within a copy the symbols are renamed by the
    order-preserving bijection sending the constant rows' symbols onto the
    non-guaranteed ones.  If the guarantees cannot exhaust the alphabet,
    constant rows on the least-covered symbols make up the difference.
    """
    if not arrays:
        raise ValueError("needs at least one covering array")
    v = arrays[0].alphabet
    t = arrays[0].strength
    by_width: dict[int, CoveringArray] = {}
    for array in arrays:
        if array.alphabet != v or array.strength != t:
            raise ValueError(
                "all covering arrays must share alphabet and strength")
        if array.cols in by_width:
            raise ValueError(
                f"two covering arrays have {array.cols} columns")
        by_width[array.cols] = array
    class_widths = sorted(set(family.row_widths))
    if sorted(by_width) != class_widths:
        raise ValueError(
            f"array column counts {sorted(by_width)} do not match the "
            f"family's row widths {class_widths}")
    _check_claims(family, t, min(t, v))

    splits = {}
    for w, array in by_width.items():
        constant, rest = _split_constant(array)
        syms = [row[0] for row in constant]
        if len(set(syms)) != len(syms):
            raise ValueError(
                "constant rows repeat a symbol; normalize the array first")
        splits[w] = (sorted(syms), rest)

    rows_out = []
    coverage = [0] * v
    pointer = 0
    for r in range(family.rows):
        const_syms, rest = splits[family.row_widths[r]]
        guaranteed = sorted((pointer + i) % v
                            for i in range(v - len(const_syms)))
        pointer += v - len(const_syms)
        for s in guaranteed:
            coverage[s] += 1
        outside = sorted(set(range(v)) - set(guaranteed))
        relabel = dict(zip(const_syms, outside))
        others = [s for s in range(v) if s not in const_syms]
        relabel.update(zip(others, guaranteed))
        hrow = family.cells[r]
        for row in rest:
            rows_out.append(tuple(relabel[row[hrow[c]]]
                                  for c in range(family.cols)))

    deficit = v - sum(v - len(splits[w][0]) for w in family.row_widths)
    chi = max(0, deficit)
    padding = sorted(range(v), key=lambda s: (coverage[s], s))[:chi]
    out = [(s,) * family.cols for s in sorted(padding)]
    return CoveringArray(tuple(out + rows_out), v, t)


def serialize_ca(array: CoveringArray) -> str:
    lines = [f"CA {array.rows} {array.cols} {array.alphabet} "
             f"{array.strength}"]
    for row in array.cells:
        lines.append(" ".join(str(s) for s in row))
    return "\n".join(lines) + "\n"


def parse_ca(text: str) -> CoveringArray:
    lines = [ln for ln in text.splitlines()
             if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty covering-array input")
    head = lines[0].split()
    if len(head) != 5 or head[0] != "CA":
        raise ValueError(f"bad covering-array header: {lines[0]!r}")
    n, k, v, t = (int(x) for x in head[1:])
    if len(lines) - 1 != n:
        raise ValueError(f"expected {n} rows, found {len(lines) - 1}")
    cells = []
    for ln in lines[1:]:
        row = tuple(int(x) for x in ln.split())
        if len(row) != k:
            raise ValueError(f"expected {k} symbols per row, got {len(row)}")
        cells.append(row)
    return CoveringArray(tuple(cells), v, t)
