"""Randomized and exhaustive-small-case invariants.

Each test draws from a seeded generator or walks a bounded grid, so the
suite is deterministic end to end.
"""

import math
import random

from hashfam import (
    DHF_4_10,
    PHF_4_5,
    FractalIngredient,
    HashFamily,
    all_d_subsets_covering,
    blackburn_compose,
    construct_dgen,
    construct_dn1,
    cyclic_covering,
    dhhf3,
    easy_product,
    extend_strength,
    fractal_check_count,
    konig_edge_color,
    sample_verify,
    varbb_extend,
    verify_covering,
    verify_dhhf,
    verify_fractal,
    verify_phf,
)
from hashfam.construct import _DN3_PLACEMENT, _L52_PLACEMENT


def _random_family(rng, rows, cols, symbols):
    cells = tuple(tuple(rng.randrange(symbols) for _ in range(cols))
                  for _ in range(rows))
    return HashFamily(cells, (symbols,) * rows)


def test_part_budget_one_below_strength_is_equivalent_to_perfect():
    # With strength 4 and budget 3, any separated partition refines to a
    # perfect one, so the two verdicts must agree on every array.
    rng = random.Random(2024)
    positives = 0
    for cols in (5, 8):
        for _ in range(600 if cols == 5 else 400):
            fam = _random_family(rng, 4, cols, 4)
            loose = verify_dhhf(fam, 4, 3).passed
            strict = verify_phf(fam, 4).passed
            assert loose == strict
            positives += strict
    assert positives > 0                             # both verdicts exercised


def test_separation_is_monotone_in_the_part_budget():
    rng = random.Random(99)
    for _ in range(200):
        fam = _random_family(rng, 4, 5, 4)
        verdicts = [verify_dhhf(fam, 4, p).passed for p in (2, 3, 4)]
        # Passing a larger budget implies passing every smaller one.
        for smaller, larger in zip(verdicts, verdicts[1:]):
            assert smaller or not larger


def test_fractal_families_survive_any_single_row_deletion():
    corpus = [
        (easy_product(2, 2), 2, 2),
        (easy_product(3, 2), 2, 2),
        (dhhf3(2, 2), 3, 2),
        (dhhf3(3, 2), 3, 2),
        (dhhf3(3, 3), 3, 2),
        (extend_strength(easy_product(3, 3), 1), 3, 3),
        (PHF_4_5, 4, 4),
        (DHF_4_10, 4, 2),
    ]
    for fam, t, p in corpus:
        assert verify_fractal(fam, t, p).passed, (t, p)
        for r in range(fam.rows):
            cells = fam.cells[:r] + fam.cells[r + 1:]
            widths = fam.row_widths[:r] + fam.row_widths[r + 1:]
            smaller = HashFamily(cells, widths)
            assert verify_dhhf(smaller, t - 1, min(p, t - 1)).passed, (t, p, r)


def test_edge_coloring_grid():
    for m in range(2, 9):
        for d in range(1, m):
            coloring = konig_edge_color(m, d)
            blocks = all_d_subsets_covering(m, d).blocks
            assert coloring.n_colors == math.comb(m - 1, d)
            at_block = {}
            at_point = {}
            seen = set()
            for b, x, col in coloring.colors:
                assert 0 <= col < coloring.n_colors
                assert x not in blocks[b]
                assert col not in at_block.setdefault(b, set())
                assert col not in at_point.setdefault(x, set())
                at_block[b].add(col)
                at_point[x].add(col)
                seen.add((b, x))
            want = {(b, x) for b in range(len(blocks)) for x in range(m)
                    if x not in blocks[b]}
            assert seen == want                      # every edge colored once


def test_recipe_placement_tables_are_coverings():
    def blocks_of(table):
        m = len(table[0])
        return [tuple(r for r in range(len(table)) if table[r][c] is None)
                for c in range(m)]

    dn3 = blocks_of(_DN3_PLACEMENT)
    assert verify_covering(dn3, 6, 6, 3) == (4,) * 6
    l52 = blocks_of(_L52_PLACEMENT)
    assert verify_covering(l52, 5, 5, 2) == (3, 3, 3, 2, 2)
    assert verify_covering(cyclic_covering(6).blocks, 6, 6, 2) == (3,) * 6
    assert verify_covering(cyclic_covering(7).blocks, 7, 7, 2) == (3,) * 7


def test_composition_width_accounting():
    # Row widths add up group by group: kappa where the group sits distinct,
    # the placed base row's width elsewhere.
    base = dhhf3(2, 2)
    cov = cyclic_covering(6)
    ingredients = []
    for c in range(cov.m):
        placement = []
        nxt = 0
        for r in range(cov.n):
            if c in cov.blocks[r]:
                placement.append(None)
            else:
                placement.append(nxt)
                nxt += 1
        ingredients.append(FractalIngredient(base, tuple(placement)))
    out = blackburn_compose(cov, ingredients)
    assert (out.claimed_strength, out.claimed_parts) == (8, 2)
    for r in range(out.rows):
        want = 0
        for c, ing in enumerate(ingredients):
            if ing.placement[r] is None:
                want += ing.base.cols
            else:
                want += ing.base.row_widths[ing.placement[r]]
        assert out.row_widths[r] == want
    assert sample_verify(out, 8, 2, 20000, 17).passed


def test_all_small_symbol_products_are_fractal():
    # Every factor vector with at most 64 columns, both sorted and reversed,
    # within an exhaustive-check budget; larger cases are skipped.
    def multisets(limit):
        found = []

        def rec(prefix, lo, prod):
            if len(prefix) >= 2:
                found.append(tuple(prefix))
            for f in range(lo, limit // prod + 1):
                rec(prefix + [f], f, prod * f)

        rec([], 2, 1)
        return found

    ran = 0
    for factors in multisets(64):
        for vec in {factors, tuple(reversed(factors))}:
            fam = easy_product(*vec)
            t = fam.rows
            if fractal_check_count(fam.cols, t, t) > 300_000:
                continue
            assert verify_fractal(fam, t, t).passed, vec
            ran += 1
    assert ran > 200


def test_strength_extension_outputs_are_fractal():
    for factors in ((2, 2), (2, 3), (3, 3), (2, 4), (2, 2, 2)):
        base = easy_product(*factors)
        for ell in (1, 2):
            out = extend_strength(base, ell)
            t = out.rows
            if fractal_check_count(out.cols, t, t) > 300_000:
                continue
            assert verify_fractal(out, t, t).passed, (factors, ell)


def test_single_step_extension_reproduces_next_recipe():
    for n in (3, 4):
        for kappa in (1, 2, 3, 4):
            grown = varbb_extend(construct_dn1(n - 1, kappa),
                                 n - 2, 1, kappa)
            direct = construct_dn1(n, kappa)
            assert sorted(grown.cells) == sorted(direct.cells), (n, kappa)
            assert grown.row_widths == direct.row_widths
            assert grown.claimed_strength == direct.claimed_strength


def test_composed_widths_stay_under_the_additive_bound():
    one_row = HashFamily(((0, 1, 2, 3),), (4,))
    grid = [
        (3, 1, easy_product(2, 2)),
        (3, 2, one_row),
        (4, 1, dhhf3(2, 2)),
        (4, 2, dhhf3(2, 2)),
        (4, 3, one_row),
        (5, 4, one_row),
    ]
    for m, d, ing in grid:
        assert ing.rows == math.comb(m - 1, d)
        out = construct_dgen(m, d, ing)
        bound = d * ing.cols + sum(ing.row_widths)
        assert max(out.row_widths) <= bound, (m, d)
        t, p = out.claimed_strength, out.claimed_parts
        assert sample_verify(out, t, p, 20000, 23).passed, (m, d)
