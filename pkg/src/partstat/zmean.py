"""Mean engine for statistics that split over groups of blocks.

If a statistic equals the sum of its values on the standardized unions of
every ``depth`` distinct blocks, then its total over ``Pi_n^k`` is

    sum_m C(n, m) * S(n - m, k - depth) * v[m],

where ``v[m]`` is its total over ``Pi_m^depth``.  The engine needs only the
short sequence ``v`` instead of the whole of ``Pi_n``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional

from .brute import histograms
from .exactnum import bell, binomial, stirling2, tables
from .statistics import StatisticId, UnknownStatistic, parse_statistic

__all__ = [
    "InsufficientSequence",
    "VSequence",
    "MeanReport",
    "v2_enumerated",
    "vr_enumerated",
    "v2_closed",
    "has_closed_v",
    "closed_vsequence",
    "vsequence",
    "total_nk",
    "total_n",
    "mean_nk_engine",
    "mean_n_engine",
]


class InsufficientSequence(ValueError):
    pass


@dataclass(frozen=True)
class VSequence:
    depth: int
    values: tuple[int, ...]
    source: str = "enumerated"

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("depth must be >= 1")
        if any(v < 0 for v in self.values):
            raise ValueError("v-sequence entries must be nonnegative")

    @property
    def max_n(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, m: int) -> int:
        return self.values[m]


@dataclass(frozen=True)
class MeanReport:
    n: int
    k: Optional[int]
    total: int
    mean: Fraction
    method: str = "engine"
    asymptotic: Optional[float] = None
    oracle: Optional[str] = None

    @property
    def mean_float(self) -> float:
        return float(self.mean)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "method": self.method,
            "total": str(self.total),
            "mean": f"{self.mean.numerator}/{self.mean.denominator}",
            "mean_float": self.mean_float,
            "asymptotic": self.asymptotic,
            "oracle": self.oracle,
        }


def _as_stat(stat) -> StatisticId:
    return stat if isinstance(stat, StatisticId) else parse_statistic(stat)


def vr_enumerated(stat, r: int, M: int) -> VSequence:
    """``values[m]`` = total of ``stat`` over ``Pi_m^r`` by enumeration."""
    stat = _as_stat(stat)
    if r < 1:
        raise ValueError("depth must be >= 1")
    values = []
    for m in range(M + 1):
        counts = histograms(stat, m, r).get(r, {})
        values.append(sum(v * c for v, c in counts.items()))
    return VSequence(r, tuple(values), "enumerated")


def v2_enumerated(stat, M: int) -> VSequence:
    return vr_enumerated(stat, 2, M)


# -- closed-form v-sequences -----------------------------------------------


def _p2(e: int) -> int:
    return 1 << e


def _v_los(n):
    return (n - 1) * _p2(n - 2) if n >= 2 else 0


def _v_inv(n):
    return comb(n - 1, 2) * _p2(n - 3) if n >= 3 else 0


def _v_crol(n):
    return (n - 5) * _p2(n - 2) + n + 1 if n >= 4 else 0


def _v_croc(n):
    if n <= 3:
        return 0
    if n == 4:
        return 1
    return n * _p2(n - 2) + 4 * n - 2 * n * n


def _v_ov(n):
    return _p2(n - 2) - n + 1 if n >= 2 else 0


def _v_emb(n):
    return _p2(n - 2) - 1 if n >= 2 else 0


def _v_occ_first2(n, r):
    return comb(n - 1, r) * _p2(n - r - 1) if n >= r + 1 else 0


def _v_occ_first1(n, r):
    if n < r:
        return 0
    return comb(n - 1, r - 1) * _p2(n - r) + _v_occ_first2(n, r)


def _v_klazar2(n, r):
    return comb(n, r) * _p2(n - r) if n >= r else 0


_SIMPLE = {
    "los": _v_los,
    "inv": _v_inv,
    "crol": _v_crol,
    "nest2": _v_crol,  # same total as crol on every Pi_n^k
    "croc": _v_croc,
    "ov": _v_ov,
    "semb": _v_ov,  # same total as ov on every Pi_n^k
    "emb": _v_emb,
}


def has_closed_v(stat) -> bool:
    stat = _as_stat(stat)
    if stat.name == "klazar":
        return max(stat.pattern) == 2
    return stat.name in _SIMPLE or stat.name in ("occ", "blocks")


def v2_closed(stat, n: int) -> int:
    """Closed form of the v-sequence entry at ``n`` (depth 1 for ``blocks``)."""
    stat = _as_stat(stat)
    if n < 0:
        return 0
    if stat.name in _SIMPLE:
        return _SIMPLE[stat.name](n)
    if stat.name == "occ":
        r = len(stat.pattern)
        return _v_occ_first1(n, r) if stat.first_letter == 1 else _v_occ_first2(n, r)
    if stat.name == "blocks":
        return 1 if n >= 1 else 0
    if stat.name == "klazar" and max(stat.pattern) == 2:
        return _v_klazar2(n, len(stat.pattern))
    raise UnknownStatistic(f"no closed v-sequence for {stat.token}")


def closed_vsequence(stat, M: int) -> VSequence:
    stat = _as_stat(stat)
    return VSequence(stat.depth, tuple(v2_closed(stat, m) for m in range(M + 1)),
                     f"closed_form({stat.token})")


_cache: dict[StatisticId, VSequence] = {}
_cache_lock = threading.Lock()


def vsequence(stat, M: int) -> VSequence:
    """Cached v-sequence covering ``0..M``; closed forms preferred."""
    stat = _as_stat(stat)
    with _cache_lock:
        have = _cache.get(stat)
        if have is not None and have.max_n >= M:
            return have
    if has_closed_v(stat):
        seq = closed_vsequence(stat, M)
    else:
        seq = vr_enumerated(stat, stat.depth, M)
    with _cache_lock:
        _cache[stat] = seq
    return seq


# -- the convolution -------------------------------------------------------


def total_nk(v: VSequence, n: int, k: int) -> int:
    """Total of the statistic over ``Pi_n^k`` from its v-sequence."""
    if n > v.max_n:
        raise InsufficientSequence(f"v-sequence covers 0..{v.max_n}, need {n}")
    j = k - v.depth
    if j < 0:
        return 0
    t = tables(n)
    return sum(binomial(n, m) * t.S(n - m, j) * v.values[m] for m in range(n + 1))


def total_n(v: VSequence, n: int) -> int:
    """Total over all of ``Pi_n``, summing the per-``k`` totals."""
    return sum(total_nk(v, n, k) for k in range(n + 1))


def mean_nk_engine(v: VSequence, n: int, k: int) -> MeanReport:
    count = stirling2(n, k)
    if count == 0:
        raise ZeroDivisionError(f"no partitions of [{n}] into {k} blocks")
    total = total_nk(v, n, k)
    return MeanReport(n, k, total, Fraction(total, count))


def mean_n_engine(v: VSequence, n: int) -> MeanReport:
    count = bell(n)
    if count == 0:
        raise ZeroDivisionError("empty partition family")
    total = total_n(v, n)
    return MeanReport(n, None, total, Fraction(total, count))
