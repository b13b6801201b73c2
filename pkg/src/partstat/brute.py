"""Exhaustive totals, distributions and means over ``Pi_n`` / ``Pi_n^k``.

This is the oracle every formula and the mean engine are checked against.
Statistics the kernels know run through the active backend; the rest loop
over the Python enumerator.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import comb

from ._backend import kernels
from .exactnum import QPolynomial, bell, stirling2
from .partitions import rgf_words
from .statistics import StatisticId

__all__ = ["histograms", "totals_by_k", "brute_total", "brute_mean", "distribution_poly"]


def _value_bound(stat: StatisticId, n: int) -> int:
    return comb(n, 2) + comb(n, len(stat.pattern)) + n


def histograms(stat: StatisticId, n: int, k: int | None = None) -> dict[int, Counter]:
    """Map block count -> Counter of statistic values."""
    out: dict[int, Counter] = {}
    if stat.name in kernels.KERNEL_STATS:
        code = kernels.KERNEL_STATS.index(stat.name)
        pattern = stat.pattern if stat.name == "occ" else ()
        rows = kernels.histogram(n, -1 if k is None else k, code, pattern, _value_bound(stat, n))
        for b, row in enumerate(rows):
            counts = Counter({v: c for v, c in enumerate(row) if c})
            if counts:
                out[b] = counts
        return out
    fn = stat.word_evaluator()
    for w in rgf_words(n, k):
        b = max(w, default=0)
        out.setdefault(b, Counter())[fn(w, b)] += 1
    return out


def totals_by_k(stat: StatisticId, n: int) -> list[int]:
    """``totals[k]`` = sum of ``stat`` over ``Pi_n^k``, for ``k = 0..n``."""
    totals = [0] * (n + 1)
    for b, counts in histograms(stat, n).items():
        totals[b] = sum(v * c for v, c in counts.items())
    return totals


def brute_total(stat: StatisticId, n: int, k: int | None = None) -> int:
    if k is None:
        return sum(totals_by_k(stat, n))
    counts = histograms(stat, n, k).get(k, Counter())
    return sum(v * c for v, c in counts.items())


def brute_mean(stat: StatisticId, n: int, k: int | None = None) -> Fraction:
    count = bell(n) if k is None else stirling2(n, k)
    if count == 0:
        raise ZeroDivisionError(f"no partitions of [{n}] into {k} blocks")
    return Fraction(brute_total(stat, n, k), count)


def distribution_poly(stat: StatisticId, n: int, k: int) -> QPolynomial:
    """``sum over Pi_n^k of q**stat`` as a polynomial."""
    counts = histograms(stat, n, k).get(k, Counter())
    if not counts:
        return QPolynomial()
    coeffs = [0] * (max(counts) + 1)
    for v, c in counts.items():
        coeffs[v] = c
    return QPolynomial(coeffs)
