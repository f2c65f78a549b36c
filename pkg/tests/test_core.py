import pytest

from hashfam.core import (
    HashFamily,
    Partition,
    canonicalize,
    concat_disjoint,
    parse,
    serialize,
)


def test_family_shape_and_props():
    fam = HashFamily(((0, 0, 1), (0, 1, 0)), (2, 2))
    assert fam.rows == 2
    assert fam.cols == 3
    assert fam.row(1) == (0, 1, 0)
    assert fam.width_profile() == "2^2"


def test_family_rejects_bad_shapes():
    with pytest.raises(ValueError):
        HashFamily((), ())
    with pytest.raises(ValueError):
        HashFamily(((0, 1), (0,)), (2, 1))
    with pytest.raises(ValueError):
        HashFamily(((0, 2),), (2,))          # symbol outside width
    with pytest.raises(ValueError):
        HashFamily(((0, 1),), (2, 2))        # width count != rows


def test_family_rejects_bad_claims():
    with pytest.raises(ValueError):
        HashFamily(((0, 1),), (2,), claimed_strength=2, claimed_parts=3)
    with pytest.raises(ValueError):
        HashFamily(((0, 1),), (2,), claimed_parts=0)


def test_claims_do_not_affect_equality():
    plain = HashFamily(((0, 1),), (2,))
    claimed = plain.with_claims(2, 2)
    assert plain == claimed
    assert claimed.claimed_strength == 2


def test_distinct_counts_and_width_profile():
    fam = HashFamily(((0, 0, 1, 2), (0, 1, 2, 3)), (3, 4))
    assert fam.distinct_counts() == (3, 4)
    assert fam.width_profile() == "3^1 4^1"


def test_canonicalize_relabels_by_first_appearance():
    fam = canonicalize([[5, 5, 9], [1, 2, 1]])
    assert fam.cells == ((0, 0, 1), (0, 1, 0))
    assert fam.row_widths == (2, 2)


def test_canonicalize_keeps_explicit_widths():
    fam = canonicalize([[5, 5, 9]], widths=(4,))
    assert fam.cells == ((0, 0, 1),)
    assert fam.row_widths == (4,)


def test_canonicalize_preserves_claims():
    fam = HashFamily(((2, 1), (1, 1)), (3, 2), claimed_strength=2,
                     claimed_parts=2)
    out = canonicalize(fam)
    assert out.cells == ((0, 1), (0, 0))
    assert out.row_widths == (3, 2)
    assert out.claimed_strength == 2
    assert out.claimed_parts == 2


def test_concat_offsets_by_declared_widths():
    fam = HashFamily(((0, 1), (0, 0)), (2, 1))
    out = concat_disjoint([fam, fam])
    assert out.cells == ((0, 1, 2, 3), (0, 0, 1, 1))
    assert out.row_widths == (4, 2)
    assert out.claimed_strength is None


def test_concat_uses_declared_not_observed_widths():
    # A row that declares width 3 but only shows 2 symbols still shifts the
    # next block by 3.
    fam = HashFamily(((0, 2),), (3,))
    out = concat_disjoint([fam, fam])
    assert out.cells == ((0, 2, 3, 5),)
    assert out.row_widths == (6,)


def test_partition_requires_canonical_class_order():
    with pytest.raises(ValueError):
        Partition(((3, 5), (1,)), part_budget=2)
    part = Partition(((1,), (3, 5)), part_budget=2)
    assert part.support == (1, 3, 5)
    assert part.num_classes == 2
    assert part.label_of()[5] == 1


def test_partition_from_labels_and_rgs():
    part = Partition.from_labels((0, 1, 2, 3), (0, 0, 1, 2), part_budget=3)
    assert part.classes == ((0, 1), (2,), (3,))
    assert part.rgs() == (0, 0, 1, 2)
    assert part.describe() == "cols=[0,1,2,3] rgs=[0,0,1,2]"


def test_partition_rejects_bad_input():
    with pytest.raises(ValueError):
        Partition(((0,), (0,)), part_budget=2)       # repeated column
    with pytest.raises(ValueError):
        Partition(((1, 0),), part_budget=1)          # unsorted class
    with pytest.raises(ValueError):
        Partition((), part_budget=1)                 # no classes at all


def test_serialize_parse_round_trip():
    fam = HashFamily(((0, 0, 1, 2), (0, 1, 2, 3)), (3, 4),
                     claimed_strength=3, claimed_parts=2)
    text = serialize(fam)
    assert text.splitlines()[0] == "HF 2 4"
    assert text.splitlines()[1] == "W 3 4"
    again = parse(text)
    assert again == fam
    assert again.row_widths == (3, 4)


def test_parse_defaults_widths_to_distinct_counts():
    fam = parse("HF 2 3\n0 0 1\n0 1 2\n")
    assert fam.row_widths == (2, 3)


def test_parse_skips_comments_and_blanks():
    fam = parse("# header comment\n\nHF 1 2\n# mid comment\n0 1\n")
    assert fam.cells == ((0, 1),)


def test_parse_rejects_malformed_input():
    with pytest.raises(ValueError):
        parse("")
    with pytest.raises(ValueError):
        parse("HX 1 2\n0 1\n")
    with pytest.raises(ValueError):
        parse("HF 2 2\n0 1\n")                 # missing row
    with pytest.raises(ValueError):
        parse("HF 1 2\n0 1 2\n")               # row too long
    with pytest.raises(ValueError):
        parse("HF 1 2\nW 1\n0 1\n")            # symbol outside width
