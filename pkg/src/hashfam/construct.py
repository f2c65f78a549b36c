"""Constructions for perfect and heterogeneous hash families.

Two kinds of building blocks live here.  Direct constructions (easy_product,
dhhf3, extend_strength, varbb_extend) build or grow a family outright.
Composition constructions (blackburn_compose and the recipes built on it)
glue fractal ingredient families together over a covering design: each
ingredient occupies a disjoint band of columns, is fully distinct on the rows
named by its covering block, and replays its own base rows everywhere else.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field

from .core import HashFamily, concat_disjoint
from .verify import (
    EXHAUSTIVE_BUDGET,
    UncoveredSubsetError,
    fractal_check_count,
    sample_verify,
    verify_covering,
    verify_fractal,
)

# Placement entries use None to mean "this row is all-distinct"; the alias
# exists so placement tables read as intent rather than as missing data.
DISTINCT = None


@dataclass(frozen=True)
class Covering:
    """An (n, m, d)-covering design: n blocks over m points, every d-subset
    of points inside some block."""

    blocks: tuple[tuple[int, ...], ...]
    m: int
    d: int

    def __post_init__(self) -> None:
        norm = tuple(tuple(sorted(b)) for b in self.blocks)
        object.__setattr__(self, "blocks", norm)
        # Raises UncoveredSubsetError or ValueError when the design is bad.
        verify_covering(norm, len(norm), self.m, self.d)

    @property
    def n(self) -> int:
        return len(self.blocks)

    @property
    def type_vector(self) -> tuple[int, ...]:
        """Per-point block counts (rho_0, ..., rho_{m-1})."""
        return verify_covering(self.blocks, self.n, self.m, self.d)

    def describe(self) -> str:
        return f"({self.n},{self.m},{self.d})-covering type {self.type_vector}"


def serialize_covering(cov: Covering) -> str:
    lines = [f"COV {cov.n} {cov.m} {cov.d}"]
    for block in cov.blocks:
        lines.append(" ".join(str(x) for x in block))
    return "\n".join(lines) + "\n"


def parse_covering(text: str) -> Covering:
    """Parse the COV format.

    A blank line is a data line (the empty block), so only comment lines are
    skipped once the header has been read.
    """
    lines = [ln for ln in text.splitlines() if not ln.lstrip().startswith("#")]
    header_at = next((i for i, ln in enumerate(lines) if ln.strip()), None)
    if header_at is None:
        raise ValueError("empty covering input")
    head = lines[header_at].split()
    if len(head) != 4 or head[0] != "COV":
        raise ValueError(f"bad covering header: {lines[header_at]!r}")
    n, m, d = (int(x) for x in head[1:])
    body = lines[header_at + 1:]
    if len(body) < n:
        raise ValueError(f"expected {n} block lines, found {len(body)}")
    blocks = tuple(tuple(int(x) for x in body[i].split()) for i in range(n))
    for extra in body[n:]:
        if extra.strip():
            raise ValueError(f"unexpected trailing line: {extra!r}")
    return Covering(blocks, m, d)


@dataclass(frozen=True)
class FractalIngredient:
    """A base family plus a row placement for composition.

    ``placement[r]`` says what output row r looks like on this ingredient's
    columns: DISTINCT (None) for an all-distinct row, or the index of the
    base row replayed there.  The integer entries must use every base row
    exactly once.
    """

    base: HashFamily
    placement: tuple[int | None, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "placement", tuple(self.placement))
        used = [e for e in self.placement if e is not None]
        if sorted(used) != list(range(self.base.rows)):
            raise ValueError(
                f"placement {self.placement} must use each of the "
                f"{self.base.rows} base rows exactly once")

    @property
    def rows(self) -> int:
        return len(self.placement)

    def realize(self) -> HashFamily:
        """Expand to a full-height family on this ingredient's columns."""
        k = self.base.cols
        cells = []
        widths = []
        for entry in self.placement:
            if entry is None:
                cells.append(tuple(range(k)))
                widths.append(k)
            else:
                cells.append(self.base.cells[entry])
                widths.append(self.base.row_widths[entry])
        return HashFamily(tuple(cells), tuple(widths))


@dataclass(frozen=True)
class BipartiteColoring:
    """A proper edge coloring of the block/point non-incidence graph."""

    m: int
    d: int
    colors: tuple[tuple[int, int, int], ...]  # (block, point, color), lex
    _lookup: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "_lookup", {(r, c): col for r, c, col in self.colors})

    @property
    def n_colors(self) -> int:
        return 1 + max(col for _, _, col in self.colors)

    def color_of(self, block: int, point: int) -> int:
        return self._lookup[(block, point)]


def easy_product(*widths: int) -> HashFamily:
    """The t-row product family on prod(widths) columns.

    Columns are the mixed-radix tuples over the factors with the first
    coordinate varying fastest; row j maps a column to the rank of the tuple
    with coordinate j erased.  Perfect of strength t and fractal: deleting
    any row leaves the product family on the remaining factors, padded with
    repeats.
    """
    if not widths:
        raise ValueError("needs at least one factor")
    if any(a < 1 for a in widths):
        raise ValueError(f"factors must be positive, got {widths}")
    t = len(widths)
    total = math.prod(widths)
    rows = []
    stride = 1
    for a in widths:
        rows.append(tuple((c // (stride * a)) * stride + c % stride
                          for c in range(total)))
        stride *= a
    return HashFamily(
        tuple(rows), tuple(total // a for a in widths), t, t)


def dhhf3(a1: int, a2: int) -> HashFamily:
    """Three rows separating every 2-class split of every 3 columns.

    Columns are the pairs (x, y) with x < a1, y < a2 in lexicographic order;
    the rows read x, (x + y) mod a1, and y.  Any two columns disagree in at
    least two of the three rows, which is exactly 2-part separation for
    strength 3.
    """
    if a2 < 1 or a1 < a2:
        raise ValueError(f"requires a1 >= a2 >= 1, got ({a1}, {a2})")
    cols = [(x, y) for x in range(a1) for y in range(a2)]
    r0 = tuple(x for x, _ in cols)
    r1 = tuple((x + y) % a1 for x, y in cols)
    r2 = tuple(y for _, y in cols)
    return HashFamily((r0, r1, r2), (a1, a1, a2), 3, 2)


def append_distinct_rows(family: HashFamily, count: int) -> HashFamily:
    """Append rows where every column gets its own symbol.

    Each appended row raises the claimed strength by one.  A perfect input
    stays perfect; a family with a smaller part budget keeps that budget.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    if count == 0:
        return family
    k = family.cols
    cells = family.cells + tuple(tuple(range(k)) for _ in range(count))
    widths = family.row_widths + (k,) * count
    t = family.claimed_strength
    p = family.claimed_parts
    if t is not None:
        if p is not None and p >= t:
            p = t + count
        t = t + count
    return HashFamily(cells, widths, t, p)


def extend_strength(family: HashFamily, ell: int) -> HashFamily:
    """Raise a perfect strength-t family to strength t+1.

    Lays down ell symbol-disjoint copies of the family and appends one row
    whose symbol in column (copy, original column c) is c.  Any t+1 columns
    either fall in one copy already handled there, or meet at most t copies
    and the new row plus copy-local separation covers them.
    """
    t = family.rows
    k = family.cols
    if t < 2:
        raise ValueError("base must have at least 2 rows")
    if k <= t:
        raise ValueError(
            f"needs more columns than rows, got {k} columns for {t} rows")
    if ell < 1:
        raise ValueError("ell must be at least 1")
    if family.claimed_strength not in (None, t):
        raise ValueError(
            f"base claims strength {family.claimed_strength}, "
            f"expected {t} (one per row)")
    copies = concat_disjoint([family] * ell)
    cells = copies.cells + (tuple(range(k)) * ell,)
    widths = copies.row_widths + (k,)
    return HashFamily(cells, widths, t + 1, t + 1)


def varbb_extend(family: HashFamily, d: int, alpha: int, k: int) -> HashFamily:
    """Trade strength margin for extra rows.

    Needs claimed strength rows+d with d >= 1.  One step appends a fully
    distinct row, then adjoins k new columns that are all-distinct on every
    old row and constant on the new row; this adds one row, k columns, and
    two levels of strength.  Repeats alpha times (alpha = 0 is the identity).
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    if alpha == 0:
        return family
    if k < 1:
        raise ValueError("k must be at least 1")
    t = family.claimed_strength
    if t is None or t != family.rows + d:
        raise ValueError(
            f"input must claim strength rows+d = {family.rows + d}, "
            f"claims {t}")
    perfect = family.claimed_parts is None or family.claimed_parts >= t
    cells = [list(row) for row in family.cells]
    widths = list(family.row_widths)
    for _ in range(alpha):
        kc = len(cells[0])
        for i, row in enumerate(cells):
            row.extend(range(widths[i], widths[i] + k))
            widths[i] += k
        cells.append(list(range(kc)) + [kc] * k)
        widths.append(kc + 1)
    t_out = t + 2 * alpha
    p_out = t_out if perfect else family.claimed_parts
    return HashFamily(
        tuple(tuple(row) for row in cells), tuple(widths), t_out, p_out)


def _ingredient_parts(base: HashFamily) -> int | None:
    """Part budget a base family brings to a composition; None if perfect."""
    p = base.claimed_parts
    if p is None or p >= base.rows:
        return None
    return p


def blackburn_compose(
    covering: Covering,
    ingredients: list[FractalIngredient] | tuple[FractalIngredient, ...],
    parts: int | None = None,
    trusted: bool = False,
    sample_seed: int = 42,
) -> HashFamily:
    """Compose fractal ingredients over a covering design.

    Ingredient c must be all-distinct exactly on the rows whose covering
    block contains point c, and must be fractal with rows equal to its base
    strength.  The result has n rows, the ingredients' columns side by side,
    strength n+d, and part budget p when p < n-d, else n+d (a perfect
    family).  Fractality of each distinct base is checked exhaustively
    within budget, by seeded sampling of plain separation beyond it, or not
    at all when trusted is set.
    """
    n, m, d = covering.n, covering.m, covering.d
    if not 1 <= d < n:
        raise ValueError(f"requires 1 <= d < n, got d={d}, n={n}")
    if len(ingredients) != m:
        raise ValueError(f"need {m} ingredients, got {len(ingredients)}")
    for c, ing in enumerate(ingredients):
        if ing.rows != n:
            raise ValueError(
                f"ingredient {c}: placement spans {ing.rows} rows, "
                f"covering has {n}")
        distinct_at = {r for r, e in enumerate(ing.placement) if e is None}
        expected = {r for r in range(n) if c in covering.blocks[r]}
        if distinct_at != expected:
            raise ValueError(
                f"ingredient {c}: distinct rows {sorted(distinct_at)} do not "
                f"match its covering blocks {sorted(expected)}")

    inferred = n
    checked: set[int] = set()
    for c, ing in enumerate(ingredients):
        base = ing.base
        if base.claimed_strength not in (None, base.rows):
            raise ValueError(
                f"ingredient {c}: base claims strength "
                f"{base.claimed_strength}, expected {base.rows}")
        p_c = _ingredient_parts(base)
        inferred = min(inferred, n if p_c is None else p_c)
        if trusted or id(base) in checked:
            continue
        checked.add(id(base))
        q = base.rows if p_c is None else p_c
        if fractal_check_count(base.cols, base.rows, q) <= EXHAUSTIVE_BUDGET:
            report = verify_fractal(base, base.rows, q)
        else:
            warnings.warn(
                f"ingredient {c} too large for an exhaustive fractality "
                "check; sampling plain separation instead", stacklevel=2)
            report = sample_verify(base, base.rows, q, 1_000_000, sample_seed)
        if not report.passed:
            raise ValueError(
                f"ingredient {c} is not usable: {report.describe()}")

    if parts is None:
        parts = inferred
    elif parts > inferred:
        raise ValueError(
            f"requested part budget {parts} exceeds what the ingredients "
            f"support ({inferred})")
    if parts < 1:
        raise ValueError("part budget must be at least 1")
    wide = concat_disjoint([ing.realize() for ing in ingredients])
    p_out = parts if parts < n - d else n + d
    return wide.with_claims(n + d, p_out)


def all_d_subsets_covering(m: int, d: int) -> Covering:
    """The covering whose blocks are all d-subsets of m points, in
    colexicographic order."""
    if not 1 <= d < m:
        raise ValueError(f"requires 1 <= d < m, got d={d}, m={m}")
    blocks = sorted(itertools.combinations(range(m), d),
                    key=lambda s: tuple(reversed(s)))
    return Covering(tuple(blocks), m, d)


def cyclic_covering(n: int) -> Covering:
    """Blocks {j, j+1, j+3} mod n, one per rotation.

    Covers all pairs for n in {6, 7}; other n fail validation with an
    uncovered-pair witness.
    """
    if n < 4:
        raise ValueError("n must be at least 4")
    blocks = tuple(tuple(sorted({j, (j + 1) % n, (j + 3) % n}))
                   for j in range(n))
    return Covering(blocks, n, 2)


def konig_edge_color(m: int, d: int,
                     covering: Covering | None = None) -> BipartiteColoring:
    """Properly color the non-incidence edges of the all-d-subsets covering.

    Vertices are blocks (left) and points (right), with an edge when the
    point is outside the block.  The graph is regular enough that the
    maximum degree C(m-1, d) colors suffice; the classic argument applies:
    take the lowest color free at each endpoint, and when neither is free at
    both, flip the maximal two-color alternating path hanging off the point.
    """
    if covering is None:
        covering = all_d_subsets_covering(m, d)
    elif covering.blocks != all_d_subsets_covering(m, d).blocks:
        raise ValueError("covering must be the all-d-subsets design")
    at_block: list[dict[int, int]] = [dict() for _ in range(covering.n)]
    at_point: list[dict[int, int]] = [dict() for _ in range(m)]
    color_of: dict[tuple[int, int], int] = {}

    def assign(r: int, c: int, col: int) -> None:
        color_of[(r, c)] = col
        at_block[r][col] = c
        at_point[c][col] = r

    for r in range(covering.n):
        inside = set(covering.blocks[r])
        for c in range(m):
            if c in inside:
                continue
            alpha = next(x for x in itertools.count() if x not in at_block[r])
            beta = next(x for x in itertools.count() if x not in at_point[c])
            if alpha not in at_point[c]:
                assign(r, c, alpha)
                continue
            if beta not in at_block[r]:
                assign(r, c, beta)
                continue
            # Walk the alpha/beta alternating path from point c and swap the
            # two colors along it; this frees alpha at c without breaking
            # properness anywhere else.
            path = []
            cur = c
            while True:
                r1 = at_point[cur].get(alpha)
                if r1 is None:
                    break
                path.append((r1, cur, alpha))
                c1 = at_block[r1].get(beta)
                if c1 is None:
                    break
                path.append((r1, c1, beta))
                cur = c1
            for pr, pc, col in path:
                del at_block[pr][col]
                del at_point[pc][col]
            for pr, pc, col in path:
                flipped = beta if col == alpha else alpha
                color_of[(pr, pc)] = flipped
                at_block[pr][flipped] = pc
                at_point[pc][flipped] = pr
            assign(r, c, alpha)

    colors = tuple(sorted((r, c, col) for (r, c), col in color_of.items()))
    return BipartiteColoring(m, d, colors)


def construct_dgen(m: int, d: int, ingredient: HashFamily,
                   trusted: bool = False) -> HashFamily:
    """Compose one fractal base over all d-subsets of m points.

    The base, with C(m-1, d) rows, is placed once per point: distinct on the
    blocks containing the point, and routed onto its own rows elsewhere by a
    proper edge coloring, so each copy uses every base row exactly once.
    """
    if not 1 <= d < m:
        raise ValueError(f"requires 1 <= d < m, got d={d}, m={m}")
    need = math.comb(m - 1, d)
    if ingredient.rows != need:
        raise ValueError(
            f"ingredient must have {need} rows for m={m}, d={d}, "
            f"has {ingredient.rows}")
    cov = all_d_subsets_covering(m, d)
    coloring = konig_edge_color(m, d, cov)
    placed = []
    for c in range(m):
        placement = tuple(
            DISTINCT if c in cov.blocks[r] else coloring.color_of(r, c)
            for r in range(cov.n))
        placed.append(FractalIngredient(ingredient, placement))
    return blackburn_compose(cov, placed, trusted=trusted)


def construct_d1(ingredient: HashFamily, trusted: bool = False) -> HashFamily:
    """n copies of an (n-1)-row fractal base give n rows of strength n+1."""
    return construct_dgen(ingredient.rows + 1, 1, ingredient, trusted=trusted)


def construct_dn1(n: int, kappa: int) -> HashFamily:
    """Perfect family on n rows of strength 2n-1 from constant rows alone."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if kappa < 1:
        raise ValueError("kappa must be at least 1")
    return construct_dgen(n, n - 1, easy_product(kappa))


def _pair_substitution(ingredient: HashFamily, k: int | None,
                       budget: int) -> int:
    """Default k = budget + 1 - total width, erroring when that is not
    positive; an explicit k only needs to be positive."""
    if k is None:
        k = budget + 1 - sum(ingredient.row_widths)
        if k < 1:
            raise ValueError(
                f"default column count {k} is not positive; widths "
                f"{ingredient.row_widths} are too large for {budget} + 1")
        return k
    if k < 1:
        raise ValueError("k must be at least 1")
    return k


def _require_rows(ingredient: HashFamily, rows: int, name: str) -> None:
    if ingredient.rows != rows:
        raise ValueError(
            f"{name} needs a {rows}-row ingredient, got {ingredient.rows}")
    if ingredient.claimed_strength not in (None, rows):
        raise ValueError(
            f"ingredient claims strength {ingredient.claimed_strength}, "
            f"expected {rows}")


def construct_dn2(n: int, ingredient: HashFamily,
                  k: int | None = None) -> HashFamily:
    """n rows of strength 2n-2 from a two-row perfect ingredient.

    Builds the three-row composition first, then trades its strength margin
    for rows.  The default k is 2*kappa + 1 - (w1 + w2).
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    _require_rows(ingredient, 2, "construct_dn2")
    k = _pair_substitution(ingredient, k, 2 * ingredient.cols)
    base = construct_d1(ingredient)
    return varbb_extend(base, 1, n - 3, k)


# Placement table for the six-block pair covering behind construct_dn3:
# row r, point c; integers name base rows, DISTINCT marks covering blocks.
_DN3_PLACEMENT = (
    (0, 1, DISTINCT, DISTINCT, DISTINCT, DISTINCT),
    (DISTINCT, 0, 1, DISTINCT, DISTINCT, DISTINCT),
    (1, DISTINCT, 0, DISTINCT, DISTINCT, DISTINCT),
    (DISTINCT, DISTINCT, DISTINCT, 0, 1, DISTINCT),
    (DISTINCT, DISTINCT, DISTINCT, DISTINCT, 0, 1),
    (DISTINCT, DISTINCT, DISTINCT, 1, DISTINCT, 0),
)


def _table_compose(table, ingredients, parts=None, trusted=False):
    """Compose over a placement table laid out row-major."""
    n = len(table)
    m = len(table[0])
    blocks = tuple(tuple(c for c in range(m) if table[r][c] is None)
                   for r in range(n))
    # Coverage is downward monotone in d, so probing from the ceiling finds
    # the largest d the table supports, hence the strongest claim.
    d = min(m - 1, max(len(b) for b in blocks))
    cov = None
    while d >= 1:
        try:
            cov = Covering(blocks, m, d)
            break
        except UncoveredSubsetError:
            d -= 1
    if cov is None:
        raise ValueError("placement table does not cover anything")
    placed = [
        FractalIngredient(ingredients[c], tuple(table[r][c] for r in range(n)))
        for c in range(m)
    ]
    return blackburn_compose(cov, placed, parts=parts, trusted=trusted)


def construct_dn3(n: int, ingredient: HashFamily,
                  k: int | None = None) -> HashFamily:
    """n >= 6 rows of strength 2n-3 from a two-row perfect ingredient."""
    if n < 6:
        raise ValueError("n must be at least 6")
    _require_rows(ingredient, 2, "construct_dn3")
    k = _pair_substitution(ingredient, k, 2 * ingredient.cols)
    base = _table_compose(_DN3_PLACEMENT, [ingredient] * 6)
    return varbb_extend(base, 3, n - 6, k)


def _cyclic_compose(n: int, ingredient: HashFamily,
                    trusted: bool = False) -> HashFamily:
    """Compose one base over the cyclic pair covering on n points.

    Point c is distinct on row r when (c - r) mod n is 0, 1, or 3; the other
    differences replay base rows 0, 1, 2, ... in the order 2, 4, 5, 6.
    """
    cov = cyclic_covering(n)
    base_row_at = {diff: i for i, diff in enumerate((2, 4, 5, 6))}
    placed = []
    for c in range(n):
        placement = tuple(
            DISTINCT if (c - r) % n in (0, 1, 3)
            else base_row_at[(c - r) % n]
            for r in range(n))
        placed.append(FractalIngredient(ingredient, placement))
    return blackburn_compose(cov, placed, trusted=trusted)


def construct_dn4(n: int, ingredient: HashFamily,
                  k: int | None = None) -> HashFamily:
    """n >= 6 rows of strength 2n-4 from a three-row fractal ingredient.

    The default k is 3*kappa + 1 - (w1 + w2 + w3) and additionally requires
    w1 + w2 + w3 <= kappa.
    """
    if n < 6:
        raise ValueError("n must be at least 6")
    _require_rows(ingredient, 3, "construct_dn4")
    if k is None:
        if sum(ingredient.row_widths) > ingredient.cols:
            raise ValueError(
                f"default column count needs total width at most kappa = "
                f"{ingredient.cols}, got {sum(ingredient.row_widths)}")
        k = 3 * ingredient.cols + 1 - sum(ingredient.row_widths)
    elif k < 1:
        raise ValueError("k must be at least 1")
    base = _cyclic_compose(6, ingredient)
    return varbb_extend(base, 2, n - 6, k)


def construct_dn5(n: int, ingredient: HashFamily,
                  k: int | None = None) -> HashFamily:
    """n >= 7 rows of strength 2n-5 from a four-row fractal ingredient.

    Works heterogeneously: an ingredient with part budget p yields an output
    with the same budget.  The default k is 4*kappa + 1 - sum of widths.
    """
    if n < 7:
        raise ValueError("n must be at least 7")
    _require_rows(ingredient, 4, "construct_dn5")
    k = _pair_substitution(ingredient, k, 4 * ingredient.cols)
    base = _cyclic_compose(7, ingredient)
    return varbb_extend(base, 2, n - 7, k)


# Placement table for the five-row composition from one three-row and two
# two-row ingredients; points 0-1 use the first, 2-3 the second, 4 the third.
_L52_PLACEMENT = (
    (0, DISTINCT, DISTINCT, DISTINCT, 0),
    (DISTINCT, 0, DISTINCT, DISTINCT, 1),
    (DISTINCT, DISTINCT, 0, 1, DISTINCT),
    (1, 2, 1, DISTINCT, DISTINCT),
    (2, 1, DISTINCT, 0, DISTINCT),
)


def construct_52(ing3: HashFamily, ing2a: HashFamily, ing2b: HashFamily,
                 trusted: bool = False) -> HashFamily:
    """Five rows of strength 7 from a three-row fractal ingredient and two
    two-row perfect ingredients."""
    _require_rows(ing3, 3, "construct_52 (first ingredient)")
    _require_rows(ing2a, 2, "construct_52 (second ingredient)")
    _require_rows(ing2b, 2, "construct_52 (third ingredient)")
    fams = (ing3, ing3, ing2a, ing2a, ing2b)
    return _table_compose(_L52_PLACEMENT, fams, trusted=trusted)


def best_factor_pair(kappa: int) -> tuple[int, int]:
    """Factor kappa = a*b with a <= b minimizing a+b (widths of the cheapest
    two-row product ingredient on kappa columns)."""
    if kappa < 1:
        raise ValueError("kappa must be at least 1")
    for a in range(math.isqrt(kappa), 0, -1):
        if kappa % a == 0:
            return a, kappa // a
    raise AssertionError("unreachable")
