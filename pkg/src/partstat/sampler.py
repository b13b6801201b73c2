"""Exactly uniform random set partitions.

Both samplers draw a single integer uniformly from ``[0, count)`` and unrank
it, so every partition has probability exactly ``1 / count``.  The generator
is :class:`random.Random` (Mersenne Twister, seeded by an integer), whose
``randrange`` draws big integers by rejection over fixed-width bit chunks and
is stable across platforms and Python versions.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Union

from ._backend import kernels
from .exactnum import binomial, tables
from .partitions import SetPartition
from .statistics import StatisticId

__all__ = [
    "SamplerConfig",
    "EmpiricalEstimate",
    "branch_probabilities",
    "branch_probabilities_k",
    "unrank_partition",
    "rank_partition",
    "unrank_partition_k",
    "rank_partition_k",
    "sample_partition",
    "sample_partition_k",
    "sample_stream",
    "empirical_mean",
    "chi_square_uniformity",
]

RngLike = Union[int, random.Random]


def _rng(seed: RngLike) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


@dataclass(frozen=True)
class SamplerConfig:
    n: int
    k: Optional[int] = None
    seed: int = 0
    trials: int = 1000

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be >= 0")
        if self.k is not None and not 1 <= self.k <= self.n:
            raise ValueError("need 1 <= k <= n")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


@dataclass(frozen=True)
class EmpiricalEstimate:
    mean: float
    stderr: float
    trials: int

    def to_json(self) -> dict:
        return {"mean": self.mean, "stderr": self.stderr, "trials": self.trials}


# -- all partitions of [n] ---------------------------------------------------


def branch_probabilities(n: int) -> list[Fraction]:
    """``P(block of the smallest element has size j)`` for ``j = 1..n``."""
    t = tables(n)
    return [Fraction(binomial(n - 1, j - 1) * t.B(n - j), t.B(n)) for j in range(1, n + 1)]


def _unrank_subset(items: list[int], size: int, idx: int) -> list[int]:
    """The ``idx``-th ``size``-subset of ``items`` in lexicographic order."""
    out = []
    start = 0
    for remaining in range(size, 0, -1):
        for pos in range(start, len(items)):
            c = binomial(len(items) - pos - 1, remaining - 1)
            if idx < c:
                out.append(items[pos])
                start = pos + 1
                break
            idx -= c
    return out


def _rank_subset(items: list[int], chosen: list[int]) -> int:
    idx = 0
    start = 0
    where = {x: i for i, x in enumerate(items)}
    for remaining, x in zip(range(len(chosen), 0, -1), chosen):
        pos = where[x]
        for skip in range(start, pos):
            idx += binomial(len(items) - skip - 1, remaining - 1)
        start = pos + 1
    return idx


def unrank_partition(n: int, u: int) -> SetPartition:
    """Bijection ``[0, B_n) -> Pi_n`` walking the block of the smallest element."""
    t = tables(n)
    if not 0 <= u < t.B(n):
        raise ValueError(f"rank {u} outside [0, B_{n})")
    rest = list(range(1, n + 1))
    word = [0] * n
    label = 0
    while rest:
        m = len(rest)
        first, others = rest[0], rest[1:]
        for j in range(1, m + 1):
            sub = t.B(m - j)
            weight = binomial(m - 1, j - 1) * sub
            if u < weight:
                break
            u -= weight
        idx, u = divmod(u, sub)
        chosen = _unrank_subset(others, j - 1, idx)
        label += 1
        for x in [first] + chosen:
            word[x - 1] = label
        taken = set(chosen)
        rest = [x for x in others if x not in taken]
    return SetPartition._trusted(tuple(word), label)


def rank_partition(p: SetPartition) -> int:
    t = tables(p.n)
    rest = list(range(1, p.n + 1))
    u = 0
    for block in p.blocks:
        m = len(rest)
        j = len(block)
        others = rest[1:]
        u += sum(binomial(m - 1, i - 1) * t.B(m - i) for i in range(1, j))
        # the remainder is ranked inside a window of width B_{m-j}
        u += _rank_subset(others, list(block[1:])) * t.B(m - j)
        taken = set(block)
        rest = [x for x in rest if x not in taken]
    return u


def sample_partition(n: int, seed: RngLike = 0) -> SetPartition:
    rng = _rng(seed)
    return unrank_partition(n, rng.randrange(tables(n).B(n)))


# -- partitions of [n] into k blocks -----------------------------------------


def branch_probabilities_k(n: int, k: int) -> list[Fraction]:
    """First entry: element ``n`` is a singleton; then one entry per block it can join."""
    t = tables(n)
    s = t.S(n, k)
    return [Fraction(t.S(n - 1, k - 1), s)] + [Fraction(t.S(n - 1, k), s)] * k


def unrank_partition_k(n: int, k: int, u: int) -> SetPartition:
    t = tables(n)
    if not 0 <= u < t.S(n, k):
        raise ValueError(f"rank {u} outside [0, S({n},{k}))")
    # decide the fate of elements n, n-1, ..., 1, then rebuild forward
    moves = []
    while n > 0:
        single = t.S(n - 1, k - 1)
        if u < single:
            moves.append(None)
            k -= 1
        else:
            b, u = divmod(u - single, t.S(n - 1, k))
            moves.append(b)
        n -= 1
    word = []
    top = 0
    for b in reversed(moves):
        if b is None:
            top += 1
            word.append(top)
        else:
            word.append(b + 1)
    return SetPartition._trusted(tuple(word), top)


def rank_partition_k(p: SetPartition) -> int:
    t = tables(p.n)
    w = p.rgf
    u = 0
    k = p.k
    for n in range(p.n, 0, -1):
        prefix = w[:n - 1]
        x = w[n - 1]
        if x not in prefix:
            k -= 1
            continue
        # blocks of the restriction to [n-1] keep their RGF labels
        u += t.S(n - 1, k - 1) + (x - 1) * t.S(n - 1, k)
    return u


def sample_partition_k(n: int, k: int, seed: RngLike = 0) -> SetPartition:
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    rng = _rng(seed)
    return unrank_partition_k(n, k, rng.randrange(tables(n).S(n, k)))


def sample_stream(cfg: SamplerConfig) -> Iterator[SetPartition]:
    rng = random.Random(cfg.seed)
    for _ in range(cfg.trials):
        if cfg.k is None:
            yield sample_partition(cfg.n, rng)
        else:
            yield sample_partition_k(cfg.n, cfg.k, rng)


# -- Monte Carlo -------------------------------------------------------------


def empirical_mean(stat: StatisticId, cfg: SamplerConfig) -> EmpiricalEstimate:
    if stat.name in kernels.KERNEL_STATS:
        code = kernels.KERNEL_STATS.index(stat.name)
        pattern = stat.pattern if stat.name == "occ" else ()
        values = [kernels.evaluate(code, p.rgf, pattern) for p in sample_stream(cfg)]
    else:
        values = [stat(p) for p in sample_stream(cfg)]
    mean = math.fsum(values) / len(values)
    if len(values) < 2:
        return EmpiricalEstimate(mean, math.nan, len(values))
    var = math.fsum((v - mean) ** 2 for v in values) / (len(values) - 1)
    return EmpiricalEstimate(mean, math.sqrt(var / len(values)), len(values))


def chi_square_uniformity(counts: list[int]) -> tuple[float, float]:
    """Pearson statistic and p-value for ``counts`` against the uniform law."""
    from scipy.stats import chi2

    total = sum(counts)
    expected = total / len(counts)
    stat = sum((c - expected) ** 2 for c in counts) / expected
    return stat, float(chi2.sf(stat, len(counts) - 1))
