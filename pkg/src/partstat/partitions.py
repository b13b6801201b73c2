"""Set partitions stored as restricted growth functions (RGFs).

A partition of ``[n]`` is kept as its RGF word ``w_1 ... w_n`` where
``w_i = j`` iff ``i`` lies in the ``j``-th block of the standard form
(blocks ordered by their minima).  Block lists, edges and induced
sub-partitions are derived views.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Sequence

__all__ = [
    "InvalidRGF",
    "OverlappingBlocks",
    "SetPartition",
    "LabeledPartition",
    "Edge",
    "from_rgf",
    "from_blocks",
    "parse_partition",
    "blocks_standard_form",
    "standardize",
    "standardize_word",
    "enumerate_all",
    "enumerate_k",
    "enumerate_regular",
    "rgf_words",
    "linear_edges",
    "circular_edges",
    "induced_partition",
]


class InvalidRGF(ValueError):
    pass


class OverlappingBlocks(ValueError):
    pass


class Edge(NamedTuple):
    i: int
    j: int


class SetPartition:
    """Immutable partition of ``[n]``; compare and hash by RGF word."""

    __slots__ = ("rgf", "k", "_blocks")

    def __init__(self, rgf: Sequence[int]):
        word = tuple(int(x) for x in rgf)
        _check_rgf(word)
        self._set(word, max(word, default=0))

    @classmethod
    def _trusted(cls, word: tuple[int, ...], k: int) -> "SetPartition":
        p = object.__new__(cls)
        p._set(word, k)
        return p

    def _set(self, word, k):
        object.__setattr__(self, "rgf", word)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "_blocks", None)

    def __setattr__(self, name, value):
        raise AttributeError("SetPartition is immutable")

    @property
    def n(self) -> int:
        return len(self.rgf)

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        """Blocks in standard form (sorted by minima, each ascending)."""
        if self._blocks is None:
            out: list[list[int]] = [[] for _ in range(self.k)]
            for i, x in enumerate(self.rgf, 1):
                out[x - 1].append(i)
            object.__setattr__(self, "_blocks", tuple(tuple(b) for b in out))
        return self._blocks

    def __eq__(self, other) -> bool:
        if isinstance(other, SetPartition):
            return self.rgf == other.rgf
        return NotImplemented

    def __lt__(self, other: "SetPartition") -> bool:
        return (self.n, self.rgf) < (other.n, other.rgf)

    def __hash__(self) -> int:
        return hash(self.rgf)

    def __len__(self) -> int:
        return len(self.rgf)

    def __repr__(self) -> str:
        return f"SetPartition({self.block_string()!r})"

    def block_string(self) -> str:
        return "/".join(" ".join(map(str, b)) for b in self.blocks)

    def rgf_string(self) -> str:
        return " ".join(map(str, self.rgf))


@dataclass(frozen=True)
class LabeledPartition:
    """Disjoint nonempty blocks of arbitrary positive labels."""

    blocks: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int]]) -> "LabeledPartition":
        return cls(tuple(frozenset(b) for b in blocks))


def _check_rgf(word: Sequence[int]) -> None:
    top = 0
    for pos, x in enumerate(word, 1):
        if x < 1:
            raise InvalidRGF(f"letter {x} at position {pos} is < 1")
        if x > top + 1:
            if pos == 1:
                raise InvalidRGF(f"first letter must be 1, got {x}")
            raise InvalidRGF(f"letter {x} at position {pos} exceeds running max {top} + 1")
        if x > top:
            top = x


def from_rgf(word: Sequence[int]) -> SetPartition:
    return SetPartition(word)


def from_blocks(blocks: Iterable[Iterable[int]]) -> SetPartition:
    """Partition of ``[n]`` from blocks whose union must be exactly ``[n]``."""
    blocks = [sorted(b) for b in blocks if b]
    labels = [x for b in blocks for x in b]
    n = len(labels)
    if len(set(labels)) != n:
        raise OverlappingBlocks("blocks share an element")
    if sorted(labels) != list(range(1, n + 1)):
        raise ValueError("blocks must partition {1..n}")
    return standardize(LabeledPartition.of(blocks))


def standardize_word(word: Sequence[int]) -> tuple[int, ...]:
    """Relabel letters by order of first occurrence (RGF normal form)."""
    seen: dict[int, int] = {}
    out = []
    for x in word:
        if x not in seen:
            seen[x] = len(seen) + 1
        out.append(seen[x])
    return tuple(out)


def standardize(lp: LabeledPartition | Iterable[Iterable[int]]) -> SetPartition:
    """Order-preserving relabelling of the blocks' union onto ``[n]``."""
    if not isinstance(lp, LabeledPartition):
        lp = LabeledPartition.of(lp)
    owner: dict[int, int] = {}
    for idx, block in enumerate(lp.blocks):
        if not block:
            raise ValueError("blocks must be nonempty")
        for x in block:
            if x in owner:
                raise OverlappingBlocks(f"label {x} appears in two blocks")
            owner[x] = idx
    word = standardize_word(owner[x] for x in sorted(owner))
    return SetPartition._trusted(word, max(word, default=0))


_SEP = re.compile(r"[\s,]+")


def parse_partition(text: str) -> SetPartition:
    """Parse ``"1 2 3 1"`` (RGF) or ``"1 4 7/2/3 9/5/6 8"`` (blocks).

    A block form without separators inside blocks (``"13/24"``) is read one
    digit per element.
    """
    text = text.strip()
    if not text:
        return SetPartition(())
    if "/" not in text:
        tokens = [t for t in _SEP.split(text) if t]
        if len(tokens) == 1 and len(tokens[0]) > 1:
            tokens = list(tokens[0])
        return SetPartition(int(t) for t in tokens)
    parts = [p.strip() for p in text.split("/")]
    if any(_SEP.search(p) for p in parts):
        blocks = [[int(t) for t in _SEP.split(p) if t] for p in parts]
    else:
        blocks = [[int(c) for c in p] for p in parts]
    return from_blocks(blocks)


def blocks_standard_form(p: SetPartition) -> tuple[tuple[int, ...], ...]:
    return p.blocks


def rgf_words(n: int, k: int | None = None) -> Iterator[tuple[int, ...]]:
    """RGF words of length ``n`` in lexicographic order.

    With ``k`` given only words of maximum exactly ``k`` are produced.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n == 0:
        if not k:
            yield ()
        return
    if k is not None and not 1 <= k <= n:
        return
    if k is None:
        w = [1] * n
    else:
        w = [1] * (n - k + 1) + list(range(2, k + 1))
    mx = []
    top = 0
    for x in w:
        top = max(top, x)
        mx.append(top)
    cap = n if k is None else k
    while True:
        yield tuple(w)
        i = n - 1
        while i >= 1:
            limit = min(mx[i - 1] + 1, cap)
            x = w[i] + 1
            while x <= limit:
                top = max(mx[i - 1], x)
                rest = n - 1 - i
                if k is None or k - top <= rest:
                    break
                x += 1
            if x <= limit:
                w[i] = x
                mx[i] = top
                rest = n - 1 - i
                need = 0 if k is None else k - top
                for t in range(i + 1, n):
                    slot = t - i  # 1..rest
                    if slot > rest - need:
                        w[t] = top + slot - (rest - need)
                    else:
                        w[t] = 1
                    mx[t] = max(mx[t - 1], w[t])
                break
            i -= 1
        if i < 1:
            return


def enumerate_all(n: int) -> Iterator[SetPartition]:
    """Every partition of ``[n]`` once, lexicographic on the RGF."""
    for w in rgf_words(n):
        yield SetPartition._trusted(w, max(w, default=0))


def enumerate_k(n: int, k: int) -> Iterator[SetPartition]:
    """Every ``k``-block partition of ``[n]`` once, lexicographic on the RGF."""
    if k < 0:
        return
    for w in rgf_words(n, k):
        yield SetPartition._trusted(w, k)


def enumerate_regular(m: int, k: int) -> Iterator[SetPartition]:
    """Partitions of ``[m*k]`` into ``k`` blocks of size ``m`` (RGF lex order)."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    n = m * k
    w = [0] * n
    sizes = [0] * (k + 1)

    def rec(i: int, top: int) -> Iterator[SetPartition]:
        if i == n:
            yield SetPartition._trusted(tuple(w), k)
            return
        for x in range(1, min(top + 1, k) + 1):
            if sizes[x] < m:
                sizes[x] += 1
                w[i] = x
                yield from rec(i + 1, max(top, x))
                sizes[x] -= 1

    yield from rec(0, 0)


def linear_edges(p: SetPartition) -> list[Edge]:
    """Pairs of consecutive elements within each block, sorted."""
    edges = [Edge(a, b) for block in p.blocks for a, b in zip(block, block[1:])]
    edges.sort()
    return edges


def circular_edges(p: SetPartition) -> list[Edge]:
    """Linear edges plus each block's (min, max) chord, as a set.

    A 2-element block yields a single chord; singletons yield nothing.
    """
    edges = set(linear_edges(p))
    for block in p.blocks:
        if len(block) >= 2:
            edges.add(Edge(block[0], block[-1]))
    return sorted(edges)


def induced_partition(p: SetPartition, t: Iterable[int]) -> SetPartition:
    """Restrict ``p`` to the positions ``t`` (1-based) and standardize."""
    positions = sorted(set(t))
    if positions and (positions[0] < 1 or positions[-1] > p.n):
        raise ValueError(f"positions must lie in 1..{p.n}")
    word = standardize_word(p.rgf[i - 1] for i in positions)
    return SetPartition._trusted(word, max(word, default=0))


def position_subsets(n: int, r: int) -> Iterator[tuple[int, ...]]:
    return combinations(range(1, n + 1), r)
