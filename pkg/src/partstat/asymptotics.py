"""Large-n approximations of the means, and how well they track exact values.

All logarithms are natural.  The unrestricted approximations are two-term
(leading factor times ``1 + correction``); pass ``bare=True`` to drop the
correction.  Block-level approximations are the polynomial part of the exact
formula, which differs from the exact mean by an exponentially small amount.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, TextIO

from .closedforms import OutOfRange, closed_mean, p_coefficient
from .statistics import StatisticId, UnknownStatistic, parse_statistic

__all__ = [
    "AsymptoticReport",
    "bell_quotient_leading",
    "stirling_quotient_leading",
    "asymptotic_mean",
    "asymptotic_mean_k",
    "polynomial_part_k",
    "convergence_report",
    "write_csv",
    "CSV_COLUMNS",
]


def _logs(n: int) -> tuple[float, float]:
    if n < 3:
        raise OutOfRange(f"asymptotic forms need n >= 3, got {n}")
    ln = math.log(n)
    return ln, math.log(ln)


def bell_quotient_leading(n: int, r: int, bare: bool = False) -> float:
    """Approximation of ``B_{n+r} / B_n``."""
    ln, lnln = _logs(n)
    base = (n / ln) ** r
    return base if bare else base * (1 + r * lnln / ln)


def stirling_quotient_leading(n: int, k: int, i: int, j: int) -> float:
    """Leading term of ``S_{n+i, k-j} / (n^? S_{n,k})``: ``k**i`` scaling when ``j == 0``.

    Returns ``1 / k**i`` for ``j == 0`` and ``0.0`` otherwise; the dropped
    part decays like ``(1 - j/k)**n``.
    """
    if i < 0 or j < 0 or k < 1:
        raise OutOfRange("need i >= 0, j >= 0, k >= 1")
    return 1.0 / k ** i if j == 0 else 0.0


def _stat(name) -> StatisticId:
    return name if isinstance(name, StatisticId) else parse_statistic(name)


def asymptotic_mean(name, n: int, bare: bool = False) -> float:
    stat = _stat(name)
    ln, lnln = _logs(n)
    fam = stat.name
    if fam in ("los", "crol", "nest2", "croc"):
        return n * n / (2 * ln) * (1 if bare else 1 + lnln / ln)
    if fam in ("ov", "emb", "semb"):
        return 0.25 * (n / ln) ** 2 * (1 if bare else 1 + 2 * lnln / ln)
    if fam == "blocks":
        return bell_quotient_leading(n, 1, bare) - (0 if bare else 1)
    if fam in ("occ", "inv"):
        r = 2 if fam == "inv" else len(stat.pattern)
        if r == 2:
            # the two first letters carry opposite 1/ln n corrections; they
            # cancel in the sum, which is n^2/2 (1 + O(log n / n))
            sign = 1 if fam == "occ" and stat.first_letter == 1 else -1
            return n * n / 4 * (1 if bare else 1 + sign * (1 / ln + lnln / ln ** 2))
        lead = n * n * ln ** (r - 2) / (2 * math.factorial(r))
        return lead if bare else lead * (1 - (r - 2) * lnln / ln)
    raise UnknownStatistic(f"no asymptotic form for {stat.token}")


def polynomial_part_k(name, n: int, k: int) -> Fraction:
    """Exact polynomial part of the block-level mean (the ``o(1)``-free piece)."""
    stat = _stat(name)
    if not 1 <= k <= n:
        raise OutOfRange(f"need 1 <= k <= n, got n={n}, k={k}")
    fam = stat.name
    half = Fraction(1, 2)
    c2 = math.comb(k, 2)
    if fam == "los":
        return half * n * (k - 1) - half * c2
    if fam in ("crol", "nest2"):
        return half * n * (k - 1) - Fraction(5, 2) * c2
    if fam == "croc":
        return half * n * (k - 1)
    if fam in ("ov", "emb", "semb"):
        return half * c2
    if fam == "blocks":
        return Fraction(k)
    if fam == "inv":
        return Fraction(n * (n - k - 1), 4) * (1 - Fraction(1, k)) + Fraction(k * (k - 1), 8)
    if fam == "occ":
        r = len(stat.pattern)
        acc = sum(p_coefficient(n, r, j) * Fraction(k) ** (2 - j) for j in range(r + 1))
        tail = half * math.comb(n, r) * Fraction(k) ** (1 - r)
        if stat.first_letter == 2:
            return acc - tail
        return -acc + math.comb(n, r) * Fraction(k) ** (2 - r) - tail
    raise UnknownStatistic(f"no block-level asymptotic form for {stat.token}")


def asymptotic_mean_k(name, n: int, k: int) -> float:
    return float(polynomial_part_k(name, n, k))


@dataclass(frozen=True)
class AsymptoticReport:
    """One grid point.

    ``leading`` is the bare first term and ``ratio = exact / leading``;
    ``correction_ratio`` divides by the two-term form instead.  At block level
    both use the polynomial part and ``abs_error`` is the interesting column.
    """

    n: int
    exact: Fraction
    leading: float
    ratio: float
    correction_ratio: float
    k: Optional[int] = None

    @property
    def abs_error(self) -> float:
        return abs(float(self.exact) - self.leading)

    def row(self) -> list:
        return [self.n, "" if self.k is None else self.k, float(self.exact),
                self.leading, self.ratio, self.correction_ratio]


CSV_COLUMNS = ("n", "k", "exact", "leading", "ratio", "correction_ratio")


def _report(stat: StatisticId, n: int, k: Optional[int]) -> AsymptoticReport:
    exact = closed_mean(stat, n, k)
    if k is None:
        lead = asymptotic_mean(stat, n, bare=True)
        two = asymptotic_mean(stat, n)
    else:
        lead = two = asymptotic_mean_k(stat, n, k)
    ex = float(exact)
    return AsymptoticReport(n, exact, lead, ex / lead if lead else math.inf,
                            ex / two if two else math.inf, k)


def convergence_report(name, grid: Iterable[int], k: Optional[int] = None) -> list[AsymptoticReport]:
    stat = _stat(name)
    grid = list(grid)
    if grid != sorted(grid) or (grid and grid[0] < 3):
        raise OutOfRange("grid must be ascending with every n >= 3")
    return [_report(stat, n, k) for n in grid]


def write_csv(reports: Iterable[AsymptoticReport], out: TextIO) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rep in reports:
        w.writerow(rep.row())
