"""Tests for covering arrays: verification, generation, and composition."""

import random

import pytest

from hashfam import (
    DHF_4_10,
    CoveringArray,
    HashFamily,
    compose_dhf,
    compose_hetgen,
    compose_phf,
    full_factorial_ca,
    greedy_ca,
    normalize_constant_rows,
    parse_ca,
    serialize_ca,
    verify_ca,
)


def test_covering_array_validation():
    with pytest.raises(ValueError, match="at least one row"):
        CoveringArray((), 2, 1)
    with pytest.raises(ValueError, match="equal length"):
        CoveringArray(((0, 1), (0,)), 2, 1)
    with pytest.raises(ValueError, match="alphabet"):
        CoveringArray(((0,),), 0, 1)
    with pytest.raises(ValueError):
        CoveringArray(((0, 2),), 2, 1)               # symbol out of range
    with pytest.raises(ValueError):
        CoveringArray(((0, 1),), 2, 3)               # strength > columns


def test_constant_row_accounting():
    arr = CoveringArray(((1, 1), (0, 1), (0, 0)), 2, 2)
    assert arr.constant_rows == 2
    assert arr.constant_symbols() == (1, 0)
    assert arr.describe() == "CA(3;2,2,2) constant_rows=2"


def test_full_factorial():
    arr = full_factorial_ca(2, 2)
    assert arr.cells == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert arr.constant_rows == 2
    assert verify_ca(arr, 2).passed
    assert full_factorial_ca(4, 2).rows == 16
    tall = full_factorial_ca(1, 3)
    assert tall.cells == ((0,), (1,), (2,))
    assert tall.constant_rows == 3


def test_verify_ca_reports_first_gap_in_lex_order():
    bad = CoveringArray(((0, 0), (0, 1), (1, 0)), 2, 2)
    report = verify_ca(bad, 2)
    assert not report.passed
    assert report.checks == 4
    assert report.witness.columns == (0, 1)
    assert report.witness.assignment == (1, 1)
    assert report.describe() == (
        "FAIL mode=exhaustive checks=4 witness: cols=[0,1] assignment=[1,1]")
    with pytest.raises(ValueError, match="strength 3 must be between"):
        verify_ca(bad, 3)


def test_verify_ca_threads_agree():
    arr = greedy_ca(3, 6, 2, 9)
    one = verify_ca(arr, 3, threads=1)
    four = verify_ca(arr, 3, threads=4)
    assert one.passed and four.passed
    assert one.checks == four.checks


def test_normalize_constant_rows():
    arr = CoveringArray(((1, 2), (2, 1), (1, 1), (2, 2), (0, 0)), 3, 2)
    norm = normalize_constant_rows(arr)
    assert norm.cells[0] == (0, 0)
    assert normalize_constant_rows(norm) == norm     # idempotent
    rng = random.Random(4)
    for _ in range(20):
        rows = tuple(tuple(rng.randrange(3) for _ in range(4))
                     for _ in range(rng.randrange(5, 12)))
        cand = CoveringArray(rows, 3, 2)
        post = normalize_constant_rows(cand)
        assert post.cells[0] == (0, 0, 0, 0)
        # Renaming symbols within columns never changes coverage.
        assert verify_ca(post, 2).passed == verify_ca(cand, 2).passed


def test_greedy_ca_is_deterministic_and_covers():
    a = greedy_ca(2, 4, 2, 7)
    b = greedy_ca(2, 4, 2, 7)
    assert a.cells == b.cells
    assert verify_ca(a, 2).passed
    big = greedy_ca(4, 10, 2, 7)
    assert verify_ca(big, 4).passed
    square = greedy_ca(3, 3, 2, 5)
    assert square.rows <= 8                          # never beats, never pads
    assert verify_ca(square, 3).passed
    with pytest.raises(ValueError, match="needs at least 3 columns"):
        greedy_ca(3, 2, 2, 1)


def test_compose_phf_counts_rows():
    fam = HashFamily(((0, 1, 2, 3),), (4,))
    ca = greedy_ca(2, 4, 2, 7)
    out = compose_phf(fam, ca)
    # One copy over the identity row is the input with constants pulled up.
    assert sorted(out.cells) == sorted(ca.cells)
    rho = ca.constant_rows
    fam3 = HashFamily(((0, 1, 2, 3), (0, 1, 3, 2), (1, 0, 2, 3)), (4, 4, 4))
    out3 = compose_phf(fam3, ca)
    assert out3.rows == rho + 3 * (ca.rows - rho)
    with pytest.raises(ValueError, match="does not match"):
        compose_phf(HashFamily(((0, 1, 2),), (3,)), ca)


def test_compose_phf_checks_claims():
    fam = HashFamily(((0, 1, 2, 3),), (4,), claimed_strength=1)
    with pytest.raises(ValueError, match="claims strength 1"):
        compose_phf(fam, greedy_ca(2, 4, 2, 7))


def test_compose_dhf_strength_four():
    out = compose_dhf(DHF_4_10, full_factorial_ca(4, 2), 2)
    assert (out.rows, out.cols) == (58, 10)
    assert out.alphabet == 2
    report = verify_ca(out, 4)
    assert report.passed
    assert report.checks == 3360


def test_compose_dhf_rejects_mismatches():
    ff = full_factorial_ca(4, 2)
    with pytest.raises(ValueError, match="does not match v=3"):
        compose_dhf(DHF_4_10, ff, 3)
    thin = HashFamily(((0, 0, 1, 3),), (4,), claimed_strength=4,
                      claimed_parts=1)
    with pytest.raises(ValueError, match="part budget 1"):
        compose_dhf(thin, ff, 2)
    with pytest.raises(ValueError, match="symbol count 2"):
        compose_dhf(HashFamily(((0, 0, 1, 1),), (2,)), ff, 2)


def test_compose_rejects_duplicate_constant_symbols():
    fam = HashFamily(((0, 1),), (2,))
    dup = CoveringArray(((0, 0), (0, 0), (0, 1), (1, 0), (1, 1)), 2, 2)
    with pytest.raises(ValueError, match="normalize the array first"):
        compose_phf(fam, dup)


def test_hetgen_matches_widths_to_arrays():
    desk = HashFamily(((0, 0, 0, 1, 1, 1), (0, 1, 2, 0, 1, 2)), (2, 3),
                      claimed_strength=2, claimed_parts=2)
    ff = full_factorial_ca(2, 2)
    tall = greedy_ca(2, 3, 2, 1)
    out = compose_hetgen(desk, [ff, tall])
    assert out.describe() == "CA(6;2,6,2) constant_rows=1"
    report = verify_ca(out, 2)
    assert report.passed
    assert report.checks == 60
    with pytest.raises(ValueError, match="do not match"):
        compose_hetgen(desk, [ff])
    with pytest.raises(ValueError, match="share alphabet and strength"):
        compose_hetgen(desk, [ff, greedy_ca(2, 3, 3, 1)])
    with pytest.raises(ValueError, match="have 3 columns"):
        compose_hetgen(desk, [ff, tall, greedy_ca(2, 3, 2, 5)])
    with pytest.raises(ValueError, match="at least one"):
        compose_hetgen(desk, [])


def test_hetgen_pads_missing_symbols_with_constant_rows():
    # Both copies relabel their constant rows away from the guaranteed
    # symbols; with only two guarantees over a 4-letter alphabet, two padding
    # rows restore the remaining symbols.
    fam = HashFamily(((0, 1, 2), (0, 1, 2)), (3, 3),
                     claimed_strength=2, claimed_parts=2)
    base = greedy_ca(2, 3, 4, 3)
    missing = sorted(set(range(4)) - set(base.constant_symbols()))
    arr = CoveringArray(base.cells + ((missing[0],) * 3,), 4, 2)
    assert arr.constant_rows == 3
    out = compose_hetgen(fam, [arr])
    assert out.rows == 2 + 2 * (arr.rows - 3)
    assert out.cells[0] == (out.cells[0][0],) * 3
    assert out.cells[1] == (out.cells[1][0],) * 3
    report = verify_ca(out, 2)
    assert report.passed
    assert report.checks == 48


def test_hetgen_no_padding_when_guarantees_suffice():
    fam = HashFamily(((0, 1, 2), (0, 1, 2)), (3, 3),
                     claimed_strength=2, claimed_parts=2)
    arr = greedy_ca(2, 3, 4, 3)                      # two constant rows
    out = compose_hetgen(fam, [arr])
    assert out.rows == 2 * (arr.rows - 2)
    assert verify_ca(out, 2).passed


def test_ca_round_trip_and_parse_errors():
    arr = greedy_ca(2, 4, 2, 7)
    text = serialize_ca(arr)
    assert text.splitlines()[0] == f"CA {arr.rows} 4 2 2"
    assert parse_ca(text) == arr
    with pytest.raises(ValueError, match="bad covering-array header"):
        parse_ca("XY 1 4 2 2\n0 0 0 0\n")
    with pytest.raises(ValueError, match="expected 2 rows"):
        parse_ca("CA 2 2 2 1\n0 1\n")
    with pytest.raises(ValueError, match="expected 2 symbols"):
        parse_ca("CA 1 2 2 1\n0 1 1\n")
    with pytest.raises(ValueError, match="empty"):
        parse_ca("")
