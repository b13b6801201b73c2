"""Statistics on set partitions.

Every statistic has a word-level evaluator (``*_w``) working directly on an
RGF tuple; the public functions take a :class:`SetPartition`.  The word-level
forms are what the pure-Python kernel backend loops over.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Callable, Iterable, Sequence

from .partitions import (
    SetPartition,
    circular_edges,
    enumerate_all,
    induced_partition,
    parse_partition,
    standardize,
    standardize_word,
)

__all__ = [
    "InvalidPattern",
    "UnknownStatistic",
    "StatisticId",
    "parse_statistic",
    "CATALOG",
    "los",
    "inv",
    "crol",
    "croc",
    "nest2",
    "ov",
    "emb",
    "strong_emb",
    "occ",
    "occ_naive",
    "klazar_occ",
    "klazar_occ_naive",
    "blocks",
    "verify_z_property",
    "z_property_counterexample",
    "two_patterns",
]


class InvalidPattern(ValueError):
    pass


class UnknownStatistic(ValueError):
    pass


# -- word-level evaluators -------------------------------------------------


def _blocks_of(w: Sequence[int], k: int) -> list[list[int]]:
    out: list[list[int]] = [[] for _ in range(k)]
    for i, x in enumerate(w, 1):
        out[x - 1].append(i)
    return out


def _linear_edges_w(bl: list[list[int]]) -> list[tuple[int, int]]:
    edges = [(a, b) for block in bl for a, b in zip(block, block[1:])]
    edges.sort()
    return edges


def _circular_edges_w(bl: list[list[int]]) -> list[tuple[int, int]]:
    edges = [(a, b) for block in bl for a, b in zip(block, block[1:])]
    for block in bl:
        if len(block) >= 3:
            edges.append((block[0], block[-1]))
    edges.sort()
    return edges


def _crossings(edges: list[tuple[int, int]]) -> int:
    count = 0
    for idx, (i1, j1) in enumerate(edges):
        for i2, j2 in edges[idx + 1:]:
            if i2 >= j1:
                break
            if i1 < i2 < j1 < j2:
                count += 1
    return count


def _nestings(edges: list[tuple[int, int]]) -> int:
    count = 0
    for idx, (i1, j1) in enumerate(edges):
        for i2, j2 in edges[idx + 1:]:
            if i2 >= j1:
                break
            if i1 < i2 and j2 < j1:
                count += 1
    return count


def los_w(w: Sequence[int], k: int) -> int:
    # |B_2| + 2|B_3| + ... == sum of (w_i - 1)
    return sum(w) - len(w)


def inv_w(w: Sequence[int], k: int) -> int:
    seen = [0] * (k + 2)  # seen[x]: letters equal to x so far
    count = 0
    total = 0
    for x in w:
        # letters strictly greater than x seen before
        count += total - sum(seen[1:x + 1])
        seen[x] += 1
        total += 1
    return count


def crol_w(w: Sequence[int], k: int) -> int:
    return _crossings(_linear_edges_w(_blocks_of(w, k)))


def croc_w(w: Sequence[int], k: int) -> int:
    return _crossings(_circular_edges_w(_blocks_of(w, k)))


def nest2_w(w: Sequence[int], k: int) -> int:
    return _nestings(_linear_edges_w(_blocks_of(w, k)))


def _extents(w: Sequence[int], k: int) -> list[tuple[int, int]]:
    lo = [0] * k
    hi = [0] * k
    for i, x in enumerate(w, 1):
        if lo[x - 1] == 0:
            lo[x - 1] = i
        hi[x - 1] = i
    return list(zip(lo, hi))


def ov_w(w: Sequence[int], k: int) -> int:
    ext = _extents(w, k)
    # blocks come ordered by minimum, so only b < c with lo[b] < lo[c] matter
    return sum(
        1
        for b in range(k)
        for c in range(b + 1, k)
        if ext[c][0] < ext[b][1] < ext[c][1]
    )


def emb_w(w: Sequence[int], k: int) -> int:
    ext = _extents(w, k)
    return sum(1 for b in range(k) for c in range(b + 1, k) if ext[c][1] < ext[b][1])


def semb_w(w: Sequence[int], k: int) -> int:
    ext = _extents(w, k)
    return sum(
        1
        for b in range(k)
        for c in range(b + 1, k)
        if ext[c][0] < ext[c][1] < ext[b][1]
    )


def blocks_w(w: Sequence[int], k: int) -> int:
    return k


def occ_w(w: Sequence[int], k: int, pattern: Sequence[int]) -> int:
    """Occurrences of a 2-pattern: subsequence DP for every letter pair a < b."""
    r = len(pattern)
    total = 0
    for a in range(1, k + 1):
        for b in range(a + 1, k + 1):
            dp = [1] + [0] * r
            for x in w:
                if x == a:
                    c = 1
                elif x == b:
                    c = 2
                else:
                    continue
                for j in range(r, 0, -1):
                    if pattern[j - 1] == c:
                        dp[j] += dp[j - 1]
            total += dp[r]
    return total


def _subsequence_count(w: Sequence[int], target: Sequence[int]) -> int:
    r = len(target)
    dp = [1] + [0] * r
    for x in w:
        for j in range(r, 0, -1):
            if target[j - 1] == x:
                dp[j] += dp[j - 1]
    return dp[r]


def klazar_w(w: Sequence[int], k: int, pattern: Sequence[int]) -> int:
    """Klazar occurrences of the partition whose RGF is ``pattern``.

    An r-subset induces the pattern iff its subword equals ``phi(pattern)``
    for the unique injective relabelling ``phi`` read off first occurrences,
    so the count is a sum over injective letter maps of subsequence counts.
    """
    t = max(pattern, default=0)
    if t == 0:
        return 1
    total = 0
    for image in permutations(range(1, k + 1), t):
        sub = [x for x in w if x in image]
        total += _subsequence_count(sub, [image[c - 1] for c in pattern])
    return total


# -- statistic identifiers -------------------------------------------------


@dataclass(frozen=True)
class StatisticId:
    """A named statistic, optionally parametrised by a pattern word."""

    name: str
    pattern: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.name not in _EVAL:
            raise UnknownStatistic(
                f"unknown statistic {self.name!r}; known: {', '.join(CATALOG)}"
            )
        if self.name == "occ":
            check_two_pattern(self.pattern)
        elif self.name == "klazar":
            SetPartition(self.pattern)
            if not self.pattern:
                raise InvalidPattern("klazar pattern must be nonempty")

    @property
    def token(self) -> str:
        if self.name == "occ":
            return "occ:" + "".join(map(str, self.pattern))
        if self.name == "klazar":
            return "klazar:" + "".join(map(str, self.pattern))
        return self.name

    @property
    def depth(self) -> int:
        """Number of blocks each summand of the decomposition looks at."""
        if self.name == "blocks":
            return 1
        if self.name == "klazar":
            return max(self.pattern)
        return 2

    @property
    def first_letter(self) -> int:
        return self.pattern[0]

    def word_evaluator(self) -> Callable[[Sequence[int], int], int]:
        fn = _EVAL[self.name]
        if self.name in ("occ", "klazar"):
            pat = self.pattern
            return lambda w, k: fn(w, k, pat)
        return fn

    def __call__(self, p: SetPartition) -> int:
        return self.word_evaluator()(p.rgf, p.k)

    def __str__(self) -> str:
        return self.token


_EVAL: dict[str, Callable] = {
    "los": los_w,
    "inv": inv_w,
    "crol": crol_w,
    "croc": croc_w,
    "nest2": nest2_w,
    "ov": ov_w,
    "emb": emb_w,
    "semb": semb_w,
    "occ": occ_w,
    "klazar": klazar_w,
    "blocks": blocks_w,
}

CATALOG = ("los", "inv", "crol", "croc", "nest2", "ov", "emb", "semb",
           "occ:<pattern>", "klazar:<rgf>", "blocks")

_ALIASES = {"strong_emb": "semb"}


def check_two_pattern(pattern: Sequence[int]) -> None:
    if not pattern or set(pattern) != {1, 2}:
        raise InvalidPattern(
            f"2-pattern must be a word over {{1,2}} containing both letters, got {pattern!r}"
        )


def parse_statistic(token: str) -> StatisticId:
    """Parse a CLI token such as ``crol``, ``occ:122`` or ``klazar:1 2 2``."""
    token = token.strip()
    name, _, arg = token.partition(":")
    name = _ALIASES.get(name, name)
    if name == "occ":
        digits = [c for c in arg if not c.isspace()]
        if not all(c in "12" for c in digits):
            raise InvalidPattern(f"bad 2-pattern {arg!r}")
        return StatisticId("occ", tuple(int(c) for c in digits))
    if name == "klazar":
        return StatisticId("klazar", parse_partition(arg).rgf)
    if arg:
        raise UnknownStatistic(f"statistic {name!r} takes no parameter")
    return StatisticId(name)


def two_patterns(r: int) -> list[tuple[int, ...]]:
    """All 2-patterns of length ``r`` (words over {1,2} using both letters)."""
    out = []
    for mask in range(2 ** r):
        word = tuple(1 + ((mask >> (r - 1 - i)) & 1) for i in range(r))
        if 1 in word and 2 in word:
            out.append(word)
    return out


# -- public per-partition functions ----------------------------------------


def los(p: SetPartition) -> int:
    return los_w(p.rgf, p.k)


def inv(p: SetPartition) -> int:
    return inv_w(p.rgf, p.k)


def crol(p: SetPartition) -> int:
    return crol_w(p.rgf, p.k)


def croc(p: SetPartition) -> int:
    return _crossings(list(circular_edges(p)))


def nest2(p: SetPartition) -> int:
    return nest2_w(p.rgf, p.k)


def ov(p: SetPartition) -> int:
    return ov_w(p.rgf, p.k)


def emb(p: SetPartition) -> int:
    return emb_w(p.rgf, p.k)


def strong_emb(p: SetPartition) -> int:
    return semb_w(p.rgf, p.k)


def blocks(p: SetPartition) -> int:
    return p.k


def occ(p: SetPartition, pattern: Sequence[int]) -> int:
    pattern = tuple(pattern)
    check_two_pattern(pattern)
    return occ_w(p.rgf, p.k, pattern)


def occ_naive(p: SetPartition, pattern: Sequence[int]) -> int:
    """Tuple scan over all index r-subsets; reference for :func:`occ`."""
    pattern = tuple(pattern)
    check_two_pattern(pattern)
    w = p.rgf
    return sum(
        1
        for idx in combinations(range(len(w)), len(pattern))
        if _standardize_values([w[i] for i in idx]) == pattern
    )


def _standardize_values(word: Sequence[int]) -> tuple[int, ...]:
    rank = {v: i for i, v in enumerate(sorted(set(word)), 1)}
    return tuple(rank[x] for x in word)


def klazar_occ(p: SetPartition, tau: SetPartition) -> int:
    return klazar_w(p.rgf, p.k, tau.rgf)


def klazar_occ_naive(p: SetPartition, tau: SetPartition) -> int:
    """Count r-subsets ``T`` with ``induced_partition(p, T) == tau``."""
    return sum(
        1
        for t in combinations(range(1, p.n + 1), tau.n)
        if induced_partition(p, t) == tau
    )


# -- Z-property ------------------------------------------------------------


def z_decomposition(stat: StatisticId, p: SetPartition, depth: int = 2) -> int:
    """Sum of ``stat`` over standardized unions of ``depth`` distinct blocks."""
    return sum(stat(standardize(group)) for group in combinations(p.blocks, depth))


def z_property_counterexample(
    stat: StatisticId, n: int, depth: int = 2
) -> SetPartition | None:
    for p in enumerate_all(n):
        if stat(p) != z_decomposition(stat, p, depth):
            return p
    return None


def verify_z_property(stat: StatisticId, n: int, depth: int = 2) -> bool:
    """True iff ``stat`` splits over block groups on every partition of ``[n]``."""
    return z_property_counterexample(stat, n, depth) is None


def evaluate_all(stat: StatisticId, parts: Iterable[SetPartition]) -> list[int]:
    fn = stat.word_evaluator()
    return [fn(p.rgf, p.k) for p in parts]
