import pytest
from hypothesis import given, settings, strategies as st

from partstat.partitions import enumerate_all, parse_partition
from partstat.statistics import (
    InvalidPattern,
    StatisticId,
    UnknownStatistic,
    blocks,
    croc,
    crol,
    emb,
    inv,
    klazar_occ,
    klazar_occ_naive,
    los,
    nest2,
    occ,
    occ_naive,
    ov,
    parse_statistic,
    strong_emb,
    two_patterns,
    verify_z_property,
    z_property_counterexample,
)

FIGURE = parse_partition("1 10/2 3 7 9/4/5 6 12/8 11")


def test_figure_values():
    # counted by hand on the arc diagram
    assert crol(FIGURE) == 4
    assert croc(FIGURE) == 9
    assert ov(FIGURE) == 4
    assert emb(FIGURE) == 4
    assert blocks(FIGURE) == 5


def test_los_is_sum_of_rgf_minus_one():
    p = parse_partition("1 4 7/2/3 9/5/6 8")
    assert los(p) == sum(p.rgf) - p.n


def test_small_values():
    assert inv(parse_partition("1 4/2 5/3")) == 3
    assert emb(parse_partition("1 4/2/3")) == 2
    assert strong_emb(parse_partition("1 4/2/3")) == 0
    assert crol(parse_partition("13/24")) == 1
    assert nest2(parse_partition("14/23")) == 1


def test_occ_examples():
    p = parse_partition("1 2 1 3 2")
    # letters (1,2): (1,2),(1,5),(3,5); letters (1,3): (1,4),(3,4); letters (2,3): (2,4)
    assert occ(p, (1, 2)) == 6
    assert occ(parse_partition("1 2 1"), (1, 2, 1)) == 1
    assert occ(parse_partition("1 2 2 1"), (1, 2, 2)) == 1


def test_klazar_examples():
    # pattern 1/2 counts pairs of positions in different blocks
    p = parse_partition("1 2 1 2")
    assert klazar_occ(p, parse_partition("1 2")) == 4
    assert klazar_occ(p, parse_partition("1 2 1")) == 2


@settings(max_examples=60)
@given(st.integers(0, 7).flatmap(lambda n: st.sampled_from(list(enumerate_all(n)))),
       st.sampled_from(two_patterns(2) + two_patterns(3) + two_patterns(4)))
def test_occ_dp_equals_tuple_scan(p, pattern):
    assert occ(p, pattern) == occ_naive(p, pattern)


@settings(max_examples=60)
@given(st.integers(0, 7).flatmap(lambda n: st.sampled_from(list(enumerate_all(n)))),
       st.sampled_from(["12", "112", "121", "1 2 3", "1 1 2 2", "1 2 3 1"]))
def test_klazar_fast_equals_subset_scan(p, tau):
    t = parse_partition(tau)
    assert klazar_occ(p, t) == klazar_occ_naive(p, t)


def test_parse_statistic_tokens():
    assert parse_statistic("crol").depth == 2
    assert parse_statistic("occ:122").pattern == (1, 2, 2)
    assert parse_statistic("strong_emb").name == "semb"
    assert parse_statistic("klazar:1 2 3").depth == 3
    assert parse_statistic("blocks").depth == 1
    with pytest.raises(UnknownStatistic):
        parse_statistic("crossings")
    with pytest.raises(InvalidPattern):
        parse_statistic("occ:111")
    with pytest.raises(InvalidPattern):
        parse_statistic("occ:13")
    with pytest.raises(UnknownStatistic):
        parse_statistic("los:3")


def test_two_patterns():
    assert two_patterns(2) == [(1, 2), (2, 1)]
    assert len(two_patterns(4)) == 14


@pytest.mark.parametrize("token", ["los", "inv", "crol", "croc", "nest2", "ov", "emb",
                                   "semb", "occ:12", "occ:212"])
def test_catalog_statistics_split_over_block_pairs(token):
    assert verify_z_property(parse_statistic(token), 6)


def test_block_count_does_not_split():
    stat = parse_statistic("blocks")
    assert not verify_z_property(stat, 3)
    assert z_property_counterexample(stat, 3) is not None
    # but it does split over single blocks
    assert verify_z_property(stat, 6, depth=1)


def test_klazar_splits_at_its_depth():
    stat = parse_statistic("klazar:1 2 3")
    assert verify_z_property(stat, 6, depth=3)


def test_statistic_is_callable():
    assert StatisticId("crol")(FIGURE) == 4
