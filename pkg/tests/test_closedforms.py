import json
from fractions import Fraction as F
from math import comb

import pytest

from partstat import closedforms as cf
from partstat.brute import brute_mean
from partstat.exactnum import bell, q_stirling_poly, stirling2
from partstat.partitions import enumerate_regular
from partstat.statistics import croc, crol, parse_statistic, two_patterns
from partstat.verify import triangle_statistics
from partstat.zmean import mean_n_engine, mean_nk_engine, vsequence


@pytest.mark.parametrize(
    "fn, args, expected",
    [
        (cf.mean_los, (1,), F(0)),
        (cf.mean_los, (3,), F(7, 5)),
        (cf.mean_los_k, (3, 2), F(4, 3)),
        (cf.mean_los_tilde_k, (3, 2), F(1, 3)),
        (cf.mean_los_tilde_k, (5, 1), F(0)),
        (cf.mean_crol, (4,), F(1, 15)),
        (cf.mean_crol_k, (4, 2), F(1, 7)),
        (cf.mean_croc, (4,), F(1, 15)),
        (cf.mean_croc_k, (5, 3), F(1, 5)),
        (cf.mean_croc, (1,), F(0)),
        (cf.mean_ov, (4,), F(1, 15)),
        (cf.mean_ov_k, (4, 2), F(1, 7)),
        (cf.mean_emb, (4,), F(7, 15)),
        (cf.mean_emb, (3,), F(1, 5)),
        (cf.mean_emb_k, (6, 1), F(0)),
        (cf.mean_inv, (3,), F(1, 5)),
        (cf.mean_inv, (1,), F(0)),
        (cf.mean_inv_k, (3, 2), F(1, 3)),
        (cf.mean_occ_first, (3, 2, 1), F(8, 5)),
        (cf.mean_occ_first, (3, 2, 2), F(1, 5)),
        (cf.mean_klazar, (4, 2), F(4)),
        (cf.mean_klazar, (4, 3), F(4, 5)),
        (cf.mean_blocks, (1,), F(1)),
        (cf.mean_blocks, (3,), F(2)),
        (cf.mean_blocks, (4,), F(37, 15)),
        (cf.regular_linear_mean, (2, 2), F(1, 3)),
        (cf.regular_linear_mean, (5, 1), F(0)),
        (cf.regular_circular_mean, (3, 2), F(3)),
    ],
)
def test_documented_values(fn, args, expected):
    assert fn(*args) == expected


def test_mean_los_tilde_by_definition():
    for n in range(1, 12):
        direct = sum((cf.mean_los_k(n, k) - comb(k, 2)) * stirling2(n, k)
                     for k in range(1, n + 1)) / bell(n)
        assert cf.mean_los_tilde(n) == direct
    assert cf.mean_los_tilde(3) == F(1, 5)


@pytest.mark.parametrize("stat", triangle_statistics(4), ids=lambda s: s.token)
def test_closed_equals_enumeration(stat):
    for n in range(1, 9):
        assert cf.closed_mean(stat, n) == brute_mean(stat, n)
        for k in range(1, n + 1):
            assert cf.closed_mean(stat, n, k) == brute_mean(stat, n, k), (n, k)


@pytest.mark.parametrize("stat", triangle_statistics(3), ids=lambda s: s.token)
def test_closed_equals_engine_to_60(stat):
    v = vsequence(stat, 60)
    for n in range(1, 61):
        assert cf.closed_mean(stat, n) == mean_n_engine(v, n).mean
    for n in (20, 45, 60):
        for k in range(1, n + 1, 7):
            assert cf.closed_mean(stat, n, k) == mean_nk_engine(v, n, k).mean


def test_inversions_are_pattern_21():
    for n in range(1, 61):
        assert cf.mean_inv(n) == cf.mean_occ_first(n, 2, 2) == cf.mean_occ_display(n, (2, 1))


def test_explicit_displays():
    for n in range(0, 41):
        for p in two_patterns(2) + two_patterns(3):
            assert cf.mean_occ_display(n, p) == cf.mean_occ_first(n, len(p), p[0])
    with pytest.raises(cf.OutOfRange):
        cf.mean_occ_display(5, (1, 2, 2, 2))


def test_connecting_relations():
    for r in range(2, 7):
        for n in range(0, 41):
            assert cf.mean_occ_first(n, r, 1) + cf.mean_occ_first(n, r, 2) == cf.occ_connecting(n, r)
            for k in range(1, n + 1, 3):
                total = cf.mean_occ_first_k(n, k, r, 1) + cf.mean_occ_first_k(n, k, r, 2)
                assert total == cf.occ_connecting_k(n, k, r)
    assert cf.occ_connecting(3, 2) == F(9, 5)


def test_q_derivative_gives_block_mean():
    for n in range(1, 11):
        for k in range(1, n + 1):
            poly = q_stirling_poly(n, k)
            assert F(poly.derivative()(1), poly(1)) == cf.mean_los_k(n, k)


def test_erratum_witnesses():
    assert cf.mean_croc(4, "theorem") == F(13, 15)
    assert cf.mean_croc_k(5, 3, "theorem") * stirling2(5, 3) == -75
    assert cf.mean_ov_k(4, 2, "theorem") == 0
    assert cf.mean_croc(4, "derivation") == cf.mean_croc(4) == F(1, 15)
    # the unrestricted overlapping mean has no competing variant
    assert cf.mean_ov(9, "theorem") == cf.mean_ov(9)


def test_derivation_variants_pass_everywhere():
    c, o = parse_statistic("croc"), parse_statistic("ov")
    for n in range(1, 10):
        assert cf.mean_croc(n, "derivation") == brute_mean(c, n)
        for k in range(1, n + 1):
            assert cf.mean_croc_k(n, k, "derivation") == brute_mean(c, n, k)
            assert cf.mean_ov_k(n, k, "derivation") == brute_mean(o, n, k)


def test_regular_means_against_enumeration():
    for m in range(1, 11):
        for k in range(0, 10 // m + 1):
            parts = list(enumerate_regular(m, k))
            assert cf.regular_linear_mean(m, k) == F(sum(map(crol, parts)), len(parts))
            if m >= 3:
                assert cf.regular_circular_mean(m, k) == F(sum(map(croc, parts)), len(parts))


def test_regular_circular_three_by_three():
    parts = list(enumerate_regular(3, 3))
    assert len(parts) == 280
    assert sum(map(croc, parts)) == 2520
    assert cf.regular_circular_mean(3, 3) == 9


@pytest.mark.parametrize(
    "call",
    [
        lambda: cf.mean_los(0),
        lambda: cf.mean_crol_k(3, 4),
        lambda: cf.mean_ov_k(3, 0),
        lambda: cf.regular_circular_mean(2, 3),
        lambda: cf.mean_occ_first(5, 1, 1),
        lambda: cf.mean_occ_first(5, 2, 3),
        lambda: cf.mean_klazar(5, 1),
    ],
)
def test_out_of_range(call):
    with pytest.raises(cf.OutOfRange):
        call()


def test_boundaries_agree_with_enumeration():
    # n below the pattern length gives zero, just as enumeration does
    assert cf.mean_occ_first(2, 3, 1) == 0 == brute_mean(parse_statistic("occ:122"), 2)
    assert cf.mean_klazar(2, 3) == 0
    assert cf.mean_crol(3) == 0 and cf.mean_ov(3) == 0


def test_unknown_variant():
    with pytest.raises(ValueError):
        cf.mean_croc(5, "guess")


def test_catalog_json():
    data = json.loads(json.dumps(cf.catalog_json()))
    croc_rows = [d for d in data if d["family"] == "croc"]
    assert {(d["form"], d["scope"], d["canonical"]) for d in croc_rows} == {
        ("derivation", "n", True), ("theorem", "n", False),
        ("derivation", "n,k", True), ("theorem", "n,k", False),
    }


def test_no_closed_form_for_three_block_klazar():
    assert not cf.has_closed_mean("klazar:1/2/3")
    with pytest.raises(Exception):
        cf.closed_mean("klazar:1/2/3", 5)
