"""Exact Bell numbers, Stirling numbers of the second kind and friends.

Everything here is integer arithmetic.  Python ``int`` plays the role of the
arbitrary-precision integer and :class:`fractions.Fraction` the role of the
reduced rational; no function in this module returns a float.

Indices outside the combinatorial range (negative ``n`` or ``k``) evaluate
to zero.  The closed-form mean formulas multiply such terms by coefficients
that vanish anyway, and the zero convention keeps them branch-free.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

__all__ = [
    "Fraction",
    "CountTables",
    "QPolynomial",
    "tables",
    "stirling2",
    "stirling2_summation",
    "bell",
    "binomial",
    "falling_factorial",
    "q_integer",
    "q_stirling_poly",
]


@dataclass(frozen=True)
class CountTables:
    """Immutable Bell sequence ``B_0..B_N`` and Stirling triangle ``S(n, k)``."""

    size: int
    bell: tuple[int, ...]
    stirling: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, size: int) -> "CountTables":
        if size < 0:
            raise ValueError(f"table size must be >= 0, got {size}")
        return cls._grow((), size)

    def extend(self, size: int) -> "CountTables":
        """Return a table covering ``0..size``; ``self`` is left untouched."""
        if size <= self.size:
            return self
        return self._grow(self.stirling, size)

    @classmethod
    def _grow(cls, rows: Sequence[tuple[int, ...]], size: int) -> "CountTables":
        rows = list(rows)
        if not rows:
            rows.append((1,))
        for n in range(len(rows), size + 1):
            prev = rows[n - 1]
            row = [0] * (n + 1)
            for k in range(1, n + 1):
                left = prev[k - 1]
                right = prev[k] if k < n else 0
                row[k] = left + k * right
            rows.append(tuple(row))
        stirling = tuple(rows)
        bell = tuple(sum(row) for row in stirling)
        return cls(size=size, bell=bell, stirling=stirling)

    def S(self, n: int, k: int) -> int:
        if n < 0 or k < 0 or k > n:
            return 0
        return self.stirling[n][k]

    def B(self, n: int) -> int:
        if n < 0:
            return 0
        return self.bell[n]


_tables = CountTables.build(64)
_tables_lock = threading.Lock()


def tables(size: int = 0) -> CountTables:
    """Shared table covering at least ``0..size``.

    Growing swaps in a new immutable table; readers holding the old one are
    unaffected.
    """
    global _tables
    current = _tables
    if size <= current.size:
        return current
    with _tables_lock:
        if size > _tables.size:
            _tables = _tables.extend(max(size, 2 * _tables.size))
        return _tables


def stirling2(n: int, k: int) -> int:
    """Number of partitions of an ``n``-set into ``k`` nonempty blocks."""
    if n < 0 or k < 0 or k > n:
        return 0
    return tables(n).stirling[n][k]


def stirling2_summation(n: int, k: int) -> int:
    """Stirling number via the alternating sum ``(1/k!) sum (-1)^j C(k,j) (k-j)^n``.

    Independent of the recurrence used by :func:`stirling2`; kept as a
    cross-check.
    """
    if n < 0 or k < 0 or k > n:
        return 0
    total = sum((-1) ** j * comb(k, j) * (k - j) ** n for j in range(k + 1))
    q, r = divmod(total, factorial(k))
    assert r == 0
    return q


def bell(n: int) -> int:
    """Number of partitions of an ``n``-set; ``bell(0) == 1``."""
    if n < 0:
        return 0
    return tables(n).bell[n]


def binomial(n: int, k: int) -> int:
    """Binomial coefficient for ``n >= 0``; zero when ``k < 0`` or ``k > n``.

    Negative ``n`` is not needed by any formula in the package and yields 0.
    """
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def falling_factorial(x: int, k: int) -> int:
    """``x (x-1) ... (x-k+1)``; the empty product for ``k == 0``."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    out = 1
    for i in range(k):
        out *= x - i
        if out == 0:
            break
    return out


class QPolynomial:
    """Dense integer polynomial in ``q``; ``coeffs[i]`` multiplies ``q**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int] = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def monomial(cls, power: int, coeff: int = 1) -> "QPolynomial":
        return cls([0] * power + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, q):
        out = 0
        for c in reversed(self.coeffs):
            out = out * q + c
        return out

    def derivative(self) -> "QPolynomial":
        return QPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPolynomial(out)

    def __mul__(self, other: "QPolynomial") -> "QPolynomial":
        if not self.coeffs or not other.coeffs:
            return QPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPolynomial(out)

    def __eq__(self, other) -> bool:
        if isinstance(other, QPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "q" if i == 1 else f"q^{i}"
                terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(terms)


@lru_cache(maxsize=None)
def q_integer(k: int) -> QPolynomial:
    """``[k]_q = 1 + q + ... + q^(k-1)``."""
    return QPolynomial([1] * k)


@lru_cache(maxsize=None)
def q_stirling_poly(n: int, k: int) -> QPolynomial:
    """Carlitz q-Stirling polynomial ``S_{n,k}(q)``.

    ``S_{n,k}(q) = q^(k-1) S_{n-1,k-1}(q) + [k]_q S_{n-1,k}(q)`` with
    ``S_{n,k}(q) = delta_{n,k}`` when ``n == 0`` or ``k == 0``.
    """
    if n < 0 or k < 0:
        return QPolynomial()
    if n == 0 or k == 0:
        return QPolynomial([1] if n == k else [])
    if k > n:
        return QPolynomial()
    # iterate over n to keep recursion depth flat
    rows: list[QPolynomial] = [QPolynomial([1] if j == 0 else []) for j in range(k + 1)]
    for m in range(1, n + 1):
        new = [QPolynomial()]
        for j in range(1, k + 1):
            new.append(QPolynomial.monomial(j - 1) * rows[j - 1] + q_integer(j) * rows[j])
        rows = new
    return rows[k]
