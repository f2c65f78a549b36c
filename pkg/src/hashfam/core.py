"""Core types and plumbing for heterogeneous hash families.

A hash family is an N x k symbol array in which row r draws symbols from its
own alphabet of declared size row_widths[r].  Rows act as hash functions,
columns as items.  Widths are capacities: a row may use fewer distinct symbols
than its declared width, but every symbol must lie in [0, width).  All types
here are immutable values; verification and construction never mutate them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


@dataclass(frozen=True)
class HashFamily:
    """An N x k array with per-row alphabet sizes and optional claims.

    claimed_strength / claimed_parts record what a construction promises
    (strength t, partition classes p).  They are metadata, excluded from
    equality, and verifiers never trust them.
    """

    cells: tuple[tuple[int, ...], ...]
    row_widths: tuple[int, ...]
    claimed_strength: int | None = field(default=None, compare=False)
    claimed_parts: int | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not self.cells:
            raise ValueError("hash family needs at least one row")
        k = len(self.cells[0])
        if k < 1:
            raise ValueError("hash family needs at least one column")
        for r, row in enumerate(self.cells):
            if len(row) != k:
                raise ValueError(f"ragged matrix: row {r} has {len(row)} cells, expected {k}")
        if len(self.row_widths) != len(self.cells):
            raise ValueError("row_widths length must equal the number of rows")
        for r, (row, w) in enumerate(zip(self.cells, self.row_widths)):
            if w < 1:
                raise ValueError(f"row {r}: width must be at least 1")
            for s in row:
                if not 0 <= s < w:
                    raise ValueError(f"row {r}: symbol {s} outside [0, {w})")
        if self.claimed_parts is not None:
            if self.claimed_parts < 1:
                raise ValueError("claimed_parts must be at least 1")
            if self.claimed_strength is not None and self.claimed_parts > self.claimed_strength:
                raise ValueError("claimed_parts cannot exceed claimed_strength")

    @property
    def rows(self) -> int:
        return len(self.cells)

    @property
    def cols(self) -> int:
        return len(self.cells[0])

    def row(self, r: int) -> tuple[int, ...]:
        return self.cells[r]

    def distinct_counts(self) -> tuple[int, ...]:
        """Number of distinct symbols actually used in each row."""
        return tuple(len(set(row)) for row in self.cells)

    def width_profile(self) -> str:
        """Widths grouped as w^count terms, ascending by width."""
        groups: dict[int, int] = {}
        for w in self.row_widths:
            groups[w] = groups.get(w, 0) + 1
        return " ".join(f"{w}^{c}" for w, c in sorted(groups.items()))

    def with_claims(self, strength: int | None, parts: int | None) -> "HashFamily":
        return HashFamily(self.cells, self.row_widths, strength, parts)

    def describe(self) -> str:
        t = self.claimed_strength
        p = self.claimed_parts
        claim = "" if t is None else f" strength={t} parts={p if p is not None else t}"
        return f"HF rows={self.rows} cols={self.cols} widths=[{self.width_profile()}]{claim}"


@dataclass(frozen=True)
class Partition:
    """A set partition of a column subset, in canonical form.

    Classes are sorted tuples, ordered by their smallest element; this is the
    restricted-growth normalization.  part_budget records the class limit the
    partition was drawn under, and does not take part in equality.
    """

    classes: tuple[tuple[int, ...], ...]
    part_budget: int | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        seen: set[int] = set()
        if not self.classes:
            raise ValueError("partition needs at least one class")
        for cls in self.classes:
            if not cls:
                raise ValueError("partition classes must be nonempty")
            if list(cls) != sorted(cls):
                raise ValueError("partition classes must be sorted")
            for x in cls:
                if x in seen:
                    raise ValueError(f"column {x} appears in two classes")
                seen.add(x)
        mins = [cls[0] for cls in self.classes]
        if mins != sorted(mins):
            raise ValueError("classes must be ordered by smallest element")

    @classmethod
    def from_labels(cls, columns: Sequence[int], labels: Sequence[int],
                    part_budget: int | None = None) -> "Partition":
        """Build a canonical partition from parallel column/label sequences."""
        if len(columns) != len(labels):
            raise ValueError("columns and labels must have equal length")
        buckets: dict[int, list[int]] = {}
        for col, lab in zip(columns, labels):
            buckets.setdefault(lab, []).append(col)
        classes = sorted((tuple(sorted(b)) for b in buckets.values()), key=lambda c: c[0])
        return cls(tuple(classes), part_budget)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(x for cls in self.classes for x in cls))

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def label_of(self) -> dict[int, int]:
        """Column -> class index map."""
        return {x: i for i, cls in enumerate(self.classes) for x in cls}

    def rgs(self) -> tuple[int, ...]:
        """Restricted-growth labels over the sorted support."""
        lab = self.label_of()
        return tuple(lab[x] for x in self.support)

    def describe(self) -> str:
        cols = ",".join(str(x) for x in self.support)
        labels = ",".join(str(x) for x in self.rgs())
        return f"cols=[{cols}] rgs=[{labels}]"


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of a verification run.

    witness is the first failing object under the documented enumeration
    order (a Partition for hash families, a (columns, assignment) pair for
    covering arrays), or None on a pass.  checks counts the (subset,
    partition) or (subset, assignment) pairs actually examined.
    """

    passed: bool
    witness: object | None
    checks: int
    mode: str
    note: str = ""

    def describe(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        out = f"{verdict} mode={self.mode} checks={self.checks}"
        if self.witness is not None:
            if isinstance(self.witness, Partition):
                out += f" witness: {self.witness.describe()}"
            else:
                out += f" witness: {self.witness}"
        if self.note:
            out += f" ({self.note})"
        return out


def canonicalize(matrix: "HashFamily | Sequence[Sequence[int]]",
                 widths: Sequence[int] | None = None) -> HashFamily:
    """Relabel each row's symbols to 0..d-1 in order of first appearance.

    Accepts a HashFamily (whose declared widths and claims are preserved) or
    a raw matrix of non-negative integers.  Explicit widths may declare spare
    capacity; they must be at least each row's distinct-symbol count.
    """
    claims: tuple[int | None, int | None] = (None, None)
    if isinstance(matrix, HashFamily):
        rows = matrix.cells
        if widths is None:
            widths = matrix.row_widths
        claims = (matrix.claimed_strength, matrix.claimed_parts)
    else:
        rows = tuple(tuple(row) for row in matrix)
    relabeled = []
    for r, row in enumerate(rows):
        mapping: dict[int, int] = {}
        out = []
        for s in row:
            if s < 0:
                raise ValueError(f"row {r}: negative symbol {s}")
            if s not in mapping:
                mapping[s] = len(mapping)
            out.append(mapping[s])
        relabeled.append(tuple(out))
    if widths is None:
        final_widths = tuple(len(set(row)) for row in relabeled)
    else:
        final_widths = tuple(widths)
        for r, (row, w) in enumerate(zip(relabeled, final_widths)):
            if len(set(row)) > w:
                raise ValueError(f"row {r}: declared width {w} below distinct count {len(set(row))}")
    return HashFamily(tuple(relabeled), final_widths, claims[0], claims[1])


def concat_disjoint(families: Sequence[HashFamily]) -> HashFamily:
    """Juxtapose families on symbol-disjoint alphabets, row by row.

    Block c's symbols in row r are offset by the sum of the declared widths
    of earlier blocks in that row, so row widths add up.  Claims are dropped;
    callers asserting a strength for the result set their own.
    """
    if not families:
        raise ValueError("concat_disjoint needs at least one family")
    n = families[0].rows
    for f in families:
        if f.rows != n:
            raise ValueError(f"mismatched row counts: {f.rows} vs {n}")
    rows = []
    widths = []
    for r in range(n):
        offset = 0
        row: list[int] = []
        for f in families:
            row.extend(s + offset for s in f.cells[r])
            offset += f.row_widths[r]
        rows.append(tuple(row))
        widths.append(offset)
    return HashFamily(tuple(rows), tuple(widths))


def serialize(family: HashFamily) -> str:
    """Render the HF text format: header, widths line, claim comments, rows."""
    lines = [f"HF {family.rows} {family.cols}"]
    lines.append("W " + " ".join(str(w) for w in family.row_widths))
    if family.claimed_strength is not None:
        lines.append(f"# strength {family.claimed_strength}")
    if family.claimed_parts is not None:
        lines.append(f"# parts {family.claimed_parts}")
    for row in family.cells:
        lines.append(" ".join(str(s) for s in row))
    return "\n".join(lines) + "\n"


def parse(text: str) -> HashFamily:
    """Parse the HF text format.

    Comment lines (starting '#') and blank lines are ignored.  Symbols must
    already be canonical with respect to the declared or derived widths; use
    canonicalize() for raw data.  Claim metadata is not read back.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty input")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "HF":
        raise ValueError(f"bad header: {lines[0]!r}")
    try:
        n, k = int(head[1]), int(head[2])
    except ValueError:
        raise ValueError(f"bad header: {lines[0]!r}") from None
    if n < 1 or k < 1:
        raise ValueError("header dimensions must be positive")
    body = lines[1:]
    widths: tuple[int, ...] | None = None
    if body and body[0].startswith("W"):
        wtok = body[0].split()
        if wtok[0] != "W" or len(wtok) != n + 1:
            raise ValueError(f"bad widths line: {body[0]!r}")
        widths = tuple(int(x) for x in wtok[1:])
        body = body[1:]
    if len(body) != n:
        raise ValueError(f"expected {n} data rows, found {len(body)}")
    rows = []
    for r, ln in enumerate(body):
        toks = ln.split()
        if len(toks) != k:
            raise ValueError(f"row {r}: expected {k} symbols, found {len(toks)}")
        try:
            rows.append(tuple(int(x) for x in toks))
        except ValueError:
            raise ValueError(f"row {r}: non-integer symbol") from None
    if widths is None:
        widths = tuple(len(set(row)) for row in rows)
    for r, row in enumerate(rows):
        if min(row) < 0:
            raise ValueError(f"row {r}: negative symbol")
        if max(row) >= widths[r]:
            raise ValueError(
                f"row {r}: symbol {max(row)} outside declared width {widths[r]}"
                " (run canonicalize on raw data first)")
    return HashFamily(tuple(rows), widths)
