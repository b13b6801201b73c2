"""Pure-Python kernels; same surface as the compiled ``_kernels`` extension."""

from __future__ import annotations

from typing import Sequence

from .partitions import rgf_words
from .statistics import (
    blocks_w,
    croc_w,
    crol_w,
    emb_w,
    inv_w,
    los_w,
    nest2_w,
    occ_w,
    ov_w,
    semb_w,
)

BACKEND = "python"

# index == kernel code; keep in sync with _kernels.pyx
KERNEL_STATS = ("los", "inv", "crol", "croc", "nest2", "ov", "emb", "semb", "occ", "blocks")

_FUNCS = (los_w, inv_w, crol_w, croc_w, nest2_w, ov_w, emb_w, semb_w, None, blocks_w)


def _evaluator(code: int, pattern: Sequence[int]):
    if not 0 <= code < len(_FUNCS):
        raise ValueError(f"bad kernel code {code}")
    if code == 8:
        pat = tuple(pattern)
        return lambda w, k: occ_w(w, k, pat)
    return _FUNCS[code]


def evaluate(code: int, word: Sequence[int], pattern: Sequence[int] = ()) -> int:
    word = tuple(word)
    return _evaluator(code, pattern)(word, max(word, default=0))


def histogram(n: int, k: int, code: int, pattern: Sequence[int], maxval: int) -> list[list[int]]:
    """``hist[b][v]`` = number of RGFs of length ``n`` with ``b`` blocks and value ``v``.

    ``k < 0`` scans every partition of ``[n]``; otherwise only ``k``-block ones.
    """
    fn = _evaluator(code, pattern)
    hist = [[0] * (maxval + 1) for _ in range(n + 1)]
    for w in rgf_words(n, None if k < 0 else k):
        b = max(w, default=0)
        v = fn(w, b)
        if v > maxval or v < 0:
            raise ValueError(f"statistic value {v} outside histogram bound {maxval}")
        hist[b][v] += 1
    return hist


def count_by_blocks(n: int) -> list[int]:
    counts = [0] * (n + 1)
    for w in rgf_words(n):
        counts[max(w, default=0)] += 1
    return counts
