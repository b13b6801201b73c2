import json
from fractions import Fraction

import pytest

from partstat.brute import brute_total
from partstat.exactnum import bell, stirling2
from partstat.statistics import parse_statistic
from partstat.verify import triangle_statistics
from partstat.zmean import (
    InsufficientSequence,
    VSequence,
    closed_vsequence,
    has_closed_v,
    mean_n_engine,
    mean_nk_engine,
    total_nk,
    v2_closed,
    v2_enumerated,
    vr_enumerated,
    vsequence,
)


def test_documented_v_sequences():
    assert v2_enumerated("los", 3).values == (0, 0, 1, 4)
    assert v2_enumerated("crol", 4).values == (0, 0, 0, 0, 1)
    assert v2_enumerated("ov", 3).values == (0, 0, 0, 0)


def test_documented_closed_entries():
    assert v2_closed("los", 2) == 1
    assert v2_closed("croc", 4) == 1
    assert v2_closed("emb", 3) == 1


@pytest.mark.parametrize("stat", triangle_statistics(4), ids=lambda s: s.token)
def test_closed_v_equals_enumerated(stat):
    assert has_closed_v(stat)
    assert closed_vsequence(stat, 12).values == vr_enumerated(stat, stat.depth, 12).values


def test_engine_equals_enumeration_every_k():
    for stat in triangle_statistics(3):
        v = v2_enumerated(stat, 9) if stat.depth == 2 else vr_enumerated(stat, 1, 9)
        for n in range(10):
            for k in range(n + 1):
                assert total_nk(v, n, k) == brute_total(stat, n, k), (stat.token, n, k)


def test_total_examples():
    los = vsequence("los", 6)
    assert total_nk(los, 3, 2) == 4
    assert total_nk(los, 5, 1) == 0
    assert total_nk(vsequence("croc", 6), 5, 3) == 5


def test_engine_means():
    assert mean_n_engine(vsequence("los", 3), 3).mean == Fraction(7, 5)
    assert mean_n_engine(vsequence("crol", 4), 4).mean == Fraction(1, 15)
    assert mean_n_engine(vsequence("ov", 1), 1).mean == 0


def test_klazar_depth_engine():
    assert mean_n_engine(vsequence("klazar:1/2 3", 4), 4).mean == Fraction(4, 5)
    assert mean_n_engine(vsequence("klazar:1/2", 4), 4).mean == 4
    three = parse_statistic("klazar:1/2/3")
    assert not has_closed_v(three)
    v = vr_enumerated(three, 3, 7)
    for n in range(8):
        for k in range(n + 1):
            assert total_nk(v, n, k) == brute_total(three, n, k)


def test_unrestricted_mean_is_weighted_block_means():
    v = vsequence("croc", 14)
    for n in range(1, 15):
        weighted = sum(stirling2(n, k) * mean_nk_engine(v, n, k).mean for k in range(1, n + 1))
        assert mean_n_engine(v, n).mean == weighted / bell(n)


def test_insufficient_sequence():
    with pytest.raises(InsufficientSequence):
        total_nk(v2_enumerated("los", 3), 5, 2)


def test_vsequence_validation():
    with pytest.raises(ValueError):
        VSequence(0, (0, 1))
    with pytest.raises(ValueError):
        VSequence(2, (0, -1))


def test_cache_extends():
    short = vsequence("emb", 5)
    longer = vsequence("emb", max(20, short.max_n + 1))
    assert longer.values[:short.max_n + 1] == short.values
    assert vsequence("emb", 10) is longer


def test_report_json():
    rep = mean_nk_engine(vsequence("los", 3), 3, 2)
    data = json.loads(json.dumps(rep.to_json()))
    assert data["mean"] == "4/3" and data["total"] == "4" and data["k"] == 2
    assert data["mean_float"] == 4 / 3
