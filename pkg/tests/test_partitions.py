import pytest
from hypothesis import given, strategies as st

from partstat.exactnum import bell, stirling2
from partstat.partitions import (
    InvalidRGF,
    LabeledPartition,
    OverlappingBlocks,
    SetPartition,
    circular_edges,
    enumerate_all,
    enumerate_k,
    enumerate_regular,
    from_blocks,
    induced_partition,
    linear_edges,
    parse_partition,
    rgf_words,
    standardize,
)

FIGURE = "1 10/2 3 7 9/4/5 6 12/8 11"


def test_rgf_and_blocks_round_trip():
    p = parse_partition(FIGURE)
    assert p.n == 12 and p.k == 5
    assert p.blocks == ((1, 10), (2, 3, 7, 9), (4,), (5, 6, 12), (8, 11))
    assert from_blocks(p.blocks) == p
    assert parse_partition(p.rgf_string()) == p


def test_parse_compact_forms():
    assert parse_partition("13/24").rgf == (1, 2, 1, 2)
    assert parse_partition("1213").rgf == (1, 2, 1, 3)
    assert parse_partition("").n == 0


@pytest.mark.parametrize("word", [(2, 1), (1, 3), (0,), (1, 2, 4)])
def test_invalid_rgf_rejected(word):
    with pytest.raises(InvalidRGF):
        SetPartition(word)


def test_overlapping_blocks_rejected():
    with pytest.raises(OverlappingBlocks):
        from_blocks([[1, 2], [2, 3]])


def test_enumeration_order_n3():
    words = [p.rgf for p in enumerate_all(3)]
    assert words == [(1, 1, 1), (1, 1, 2), (1, 2, 1), (1, 2, 2), (1, 2, 3)]


def test_exact_k_is_lex_filter_of_all():
    for n in range(8):
        for k in range(n + 1):
            expected = [w for w in rgf_words(n) if max(w, default=0) == k]
            assert list(rgf_words(n, k)) == expected, (n, k)


def test_counts():
    for n in range(10):
        assert sum(1 for _ in enumerate_all(n)) == bell(n)
    assert sum(1 for _ in enumerate_k(9, 4)) == stirling2(9, 4)
    assert list(enumerate_k(3, 0)) == []
    assert list(enumerate_k(3, 4)) == []


def test_regular_families():
    assert sum(1 for _ in enumerate_regular(2, 2)) == 3
    assert sum(1 for _ in enumerate_regular(3, 3)) == 280  # 9! / (3!^3 3!)
    for p in enumerate_regular(2, 3):
        assert all(len(b) == 2 for b in p.blocks)


def test_edges():
    p = parse_partition("1 3 5/2 4")
    assert linear_edges(p) == [(1, 3), (2, 4), (3, 5)]
    assert circular_edges(p) == [(1, 3), (1, 5), (2, 4), (3, 5)]
    # a two-element block contributes one chord, not two
    assert circular_edges(from_blocks([[1, 2]])) == [(1, 2)]


def test_standardize_and_induce():
    lp = LabeledPartition.of([[10, 4], [7]])
    assert standardize(lp).blocks == ((1, 3), (2,))
    p = parse_partition(FIGURE)
    assert induced_partition(p, [1, 4, 10]).blocks == ((1, 3), (2,))


@given(st.integers(0, 7).flatmap(lambda n: st.sampled_from(list(enumerate_all(n)))))
def test_blocks_standard_form_properties(p):
    mins = [b[0] for b in p.blocks]
    assert mins == sorted(mins)
    assert all(list(b) == sorted(b) for b in p.blocks)
    assert sorted(x for b in p.blocks for x in b) == list(range(1, p.n + 1))
    assert SetPartition(p.rgf) == p and hash(SetPartition(p.rgf)) == hash(p)
