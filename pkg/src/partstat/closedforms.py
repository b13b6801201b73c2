"""Closed-form exact means.

Every function returns a :class:`fractions.Fraction` built from exact Bell and
Stirling numbers.  ``B(i)`` and ``S(i, j)`` with a negative index are taken as
0; each such term carries a coefficient that already vanishes there.

Circular crossings and overlappings come in two variants.  ``"derivation"``
uses the coefficients obtained when the generating function product is
expanded; ``"theorem"`` uses the coefficients as usually quoted in the
summary statement of the result.  They differ, and only the derivation
variant agrees with exhaustive enumeration (see ``verify_erratum``), so it is
the canonical one.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Optional

from .exactnum import falling_factorial, tables
from .statistics import StatisticId, UnknownStatistic, parse_statistic

__all__ = [
    "OutOfRange",
    "FormulaVariant",
    "FORMULAS",
    "catalog_json",
    "mean_los",
    "mean_los_k",
    "mean_los_tilde",
    "mean_los_tilde_k",
    "mean_crol",
    "mean_crol_k",
    "mean_croc",
    "mean_croc_k",
    "mean_ov",
    "mean_ov_k",
    "mean_emb",
    "mean_emb_k",
    "mean_inv",
    "mean_inv_k",
    "p_coefficient",
    "mean_occ_first",
    "mean_occ_first_k",
    "occ_connecting",
    "occ_connecting_k",
    "mean_occ_display",
    "mean_klazar",
    "mean_klazar_k",
    "mean_blocks",
    "mean_blocks_k",
    "regular_linear_mean",
    "regular_circular_mean",
    "has_closed_mean",
    "closed_mean",
]

F = Fraction
VARIANTS = ("canonical", "derivation", "theorem")


class OutOfRange(ValueError):
    pass


def _B(i: int) -> int:
    return tables(max(i, 0)).B(i) if i >= 0 else 0


def _S(i: int, j: int) -> int:
    if i < 0 or j < 0:
        return 0
    return tables(i).S(i, j)


def _C(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def _check_n(n: int, low: int = 1) -> None:
    if n < low:
        raise OutOfRange(f"n must be >= {low}, got {n}")


def _check_nk(n: int, k: int) -> int:
    if not 1 <= k <= n:
        raise OutOfRange(f"need 1 <= k <= n, got n={n}, k={k}")
    return _S(n, k)


def _variant(variant: str) -> str:
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    return "derivation" if variant == "canonical" else variant


# -- level statistic ---------------------------------------------------------


def mean_los(n: int) -> Fraction:
    _check_n(n)
    b = _B(n)
    return (F(-1, 4) * F(_B(n + 2), b) + (F(n, 2) + F(1, 4)) * F(_B(n + 1), b)
            + F(-n, 2) + F(1, 4))


def mean_los_k(n: int, k: int) -> Fraction:
    s = _check_nk(n, k)
    return F(n * (k - 1), 2) - F(comb(k, 2), 2) + F((n + 1 - k) * _S(n, k - 1), 2 * s)


def mean_los_tilde_k(n: int, k: int) -> Fraction:
    """Mean of ``los - C(k, 2)`` over ``Pi_n^k``."""
    return mean_los_k(n, k) - comb(k, 2)


def mean_los_tilde(n: int) -> Fraction:
    """Mean of ``los - C(blocks, 2)`` over ``Pi_n``."""
    _check_n(n)
    b = _B(n)
    return (F(-3, 4) * F(_B(n + 2), b) + (F(n, 2) + F(7, 4)) * F(_B(n + 1), b)
            - F(n, 2) - F(1, 4))


# -- crossings ---------------------------------------------------------------


def mean_crol(n: int) -> Fraction:
    _check_n(n)
    b = _B(n)
    return (F(-5, 4) * F(_B(n + 2), b) + (F(n, 2) + F(9, 4)) * F(_B(n + 1), b)
            + F(n, 2) + F(1, 4))


def mean_crol_k(n: int, k: int) -> Fraction:
    s = _check_nk(n, k)
    return (F(n * (k - 1), 2) - F(5 * comb(k, 2), 2)
            + F(3 * (n + 1 - k) * _S(n, k - 1), 2 * s))


def mean_croc(n: int, variant: str = "canonical") -> Fraction:
    _check_n(n)
    v = _variant(variant)
    # the two variants differ only in the B_{n-2} coefficient
    c2 = falling_factorial(n, 2) if v == "derivation" else _C(n, 2)
    total = (F(n, 2) * _B(n + 1) + F(3 * n, 2) * _B(n) - F(n * (4 * n + 1), 2) * _B(n - 1)
             - c2 * _B(n - 2) + _C(n, 4) * _B(n - 4))
    return total / _B(n)


def mean_croc_k(n: int, k: int, variant: str = "canonical") -> Fraction:
    s = _check_nk(n, k)
    v = _variant(variant)
    c2 = falling_factorial(n, 2) if v == "derivation" else 10 * _C(n, 2)
    total = (F(n * (k - 1), 2) * s - F(n * (4 * n - 5 * k + 1), 2) * _S(n - 1, k - 1)
             - c2 * _S(n - 2, k - 2) + _C(n, 4) * _S(n - 4, k - 2))
    return total / s


# -- overlappings and embracings ---------------------------------------------


def mean_ov(n: int, variant: str = "canonical") -> Fraction:
    # both variants of the unrestricted mean coincide
    _check_n(n)
    _variant(variant)
    b = _B(n)
    return (F(_B(n + 2), 4 * b) + F(3 * _B(n + 1), 4 * b) - (n + F(5, 4))
            - F(n * _B(n - 1), 2 * b))


def mean_ov_k(n: int, k: int, variant: str = "canonical") -> Fraction:
    s = _check_nk(n, k)
    if _variant(variant) == "derivation":
        total = (F(comb(k, 2), 2) * s - F(3 * (n + 1 - k), 2) * _S(n, k - 1)
                 + F(n * (k - 1), 2) * _S(n - 1, k - 1))
    else:
        total = (F(comb(k, 2), 2) * s + n * (k - 1) * _S(n - 1, k - 1)
                 - F(3 * (n + k - 1), 2) * _S(n, k - 1))
    return total / s


def mean_emb(n: int) -> Fraction:
    _check_n(n)
    b = _B(n)
    return (F(_B(n + 2), 4 * b) - F(5 * _B(n + 1), 4 * b) + F(3, 4)
            + F(n * _B(n - 1), 2 * b))


def mean_emb_k(n: int, k: int) -> Fraction:
    s = _check_nk(n, k)
    return (F(comb(k, 2), 2) - F((k - 1) * _S(n, k - 1), 2 * s)
            + F(n * _S(n - 1, k - 2), 2 * s))


# -- inversions --------------------------------------------------------------


def mean_inv(n: int) -> Fraction:
    _check_n(n)
    b = _B(n)
    return (F(_B(n + 2), 8 * b) - (F(n, 4) + F(1, 8)) * F(_B(n + 1), b)
            + F(n * n, 4) - F(1, 8) - F(falling_factorial(n, 2) * _B(n - 1), 4 * b))


def mean_inv_k(n: int, k: int) -> Fraction:
    s = _check_nk(n, k)
    return (F(n * (n - k - 1), 4) * (1 - F(1, k)) + F(k * (k - 1), 8)
            - F((n + 1 - k) * _S(n, k - 1), 4 * s)
            + F(n * (n - 1) * _S(n - 1, k - 1), 4 * k * s))


# -- 2-pattern occurrences ---------------------------------------------------


def p_coefficient(n: int, r: int, j: int) -> Fraction:
    """``(-1)^(r-j) / 2^(r-j+1) * (C(n, j) + C(n, j-1) / 2)`` with ``C(n, -1) = 0``."""
    sign = -1 if (r - j) % 2 else 1
    return F(sign, 2 ** (r - j + 1)) * (_C(n, j) + F(_C(n, j - 1), 2))


def _check_pattern_args(n: int, r: int, first_letter: int) -> None:
    if r < 2:
        raise OutOfRange("pattern length must be >= 2")
    if first_letter not in (1, 2):
        raise OutOfRange("first letter must be 1 or 2")
    if n < 0:
        raise OutOfRange("n must be >= 0")


def _occ_total(n: int, r: int, first_letter: int, count: Callable[[int], int],
               tail: int) -> Fraction:
    """Shared numerator; ``count(i)`` is B_i or S_{i,k} and ``tail`` the constant multiplier."""
    sign_tail = F((-1) ** (r + 1), 2 ** (r + 1))
    half_top = F(_C(n, r), 2) * count(n + 1 - r)
    if first_letter == 2:
        acc = sum(p_coefficient(n, r, j) * count(n + 2 - j) for j in range(r + 1))
        return acc - half_top + sign_tail * tail
    acc = -sum(p_coefficient(n, r, j) * count(n + 2 - j) for j in range(r))
    acc += F(1, 2) * (_C(n, r) - F(_C(n, r - 1), 2)) * count(n + 2 - r)
    return acc - half_top - sign_tail * tail


def mean_occ_first(n: int, r: int, first_letter: int) -> Fraction:
    """Mean occurrences of any length-``r`` 2-pattern starting with ``first_letter``."""
    _check_pattern_args(n, r, first_letter)
    b = _B(n)
    return _occ_total(n, r, first_letter, _B, b) / b


def mean_occ_first_k(n: int, k: int, r: int, first_letter: int) -> Fraction:
    _check_pattern_args(n, r, first_letter)
    s = _check_nk(n, k)
    return _occ_total(n, r, first_letter, lambda i: _S(i, k), _S(n, k - 2)) / s


def occ_connecting(n: int, r: int) -> Fraction:
    """Right side of the first-letter-1 plus first-letter-2 sum rule."""
    return F(_C(n, r) * (_B(n + 2 - r) - _B(n + 1 - r)), _B(n))


def occ_connecting_k(n: int, k: int, r: int) -> Fraction:
    s = _check_nk(n, k)
    return F(_C(n, r) * (_S(n + 2 - r, k) - _S(n + 1 - r, k)), s)


def _display_r2(n: int, first_letter: int) -> Fraction:
    b = _B(n)
    q2 = F(_B(n + 2), b)
    q1 = F(_B(n + 1), b)
    qm = F(_B(n - 1), b)
    if first_letter == 2:
        return (F(1, 8) * q2 - (F(n, 4) + F(1, 8)) * q1 + F(n * n, 4) - F(1, 8)
                - F(_C(n, 2), 2) * qm)
    return (-F(1, 8) * q2 + (F(n, 4) + F(1, 8)) * q1 + F(n * n, 4) - F(n, 2) + F(1, 8)
            - F(_C(n, 2), 2) * qm)


def _display_r3(n: int, first_letter: int) -> Fraction:
    b = _B(n)
    q2 = F(_B(n + 2), b)
    q1 = F(_B(n + 1), b)
    qm = F(_B(n - 1), b)
    qmm = F(_B(n - 2), b)
    half = F(1, 2)
    if first_letter == 2:
        return (-F(1, 16) * q2 + F(1, 8) * (n + half) * q1 - F(1, 8) * (n * n - half)
                + F(1, 12) * n * (n - half) * (n - 1) * qm - F(_C(n, 3), 2) * qmm)
    return (F(1, 16) * q2 - F(1, 8) * (n + half) * q1 + F(1, 8) * (n * n - half)
            + F(1, 12) * n * (n - 1) * (n - F(7, 2)) * qm - F(_C(n, 3), 2) * qmm)


def mean_occ_display(n: int, pattern) -> Fraction:
    """Explicit per-pattern display for patterns of length 2 or 3."""
    pattern = tuple(pattern)
    _check_n(n, 0)
    if len(pattern) == 2:
        return _display_r2(n, pattern[0])
    if len(pattern) == 3:
        return _display_r3(n, pattern[0])
    raise OutOfRange("explicit displays exist only for lengths 2 and 3")


# -- Klazar occurrences, block count -----------------------------------------


def mean_klazar(n: int, r: int) -> Fraction:
    """Mean Klazar occurrences of any 2-block partition of ``[r]``; 0 when ``n < r``."""
    if r < 2:
        raise OutOfRange("pattern size must be >= 2")
    _check_n(n, 0)
    return occ_connecting(n, r)


def mean_klazar_k(n: int, k: int, r: int) -> Fraction:
    if r < 2:
        raise OutOfRange("pattern size must be >= 2")
    return occ_connecting_k(n, k, r)


def mean_blocks(n: int) -> Fraction:
    _check_n(n)
    return F(_B(n + 1), _B(n)) - 1


def mean_blocks_k(n: int, k: int) -> Fraction:
    _check_nk(n, k)
    return F(k)


# -- regular partitions ------------------------------------------------------


def regular_linear_mean(m: int, k: int) -> Fraction:
    """Mean linear crossings over partitions of ``[mk]`` into ``k`` blocks of size ``m``."""
    if m < 1 or k < 0:
        raise OutOfRange("need m >= 1 and k >= 0")
    return comb(k, 2) * (m - 2 + F(2, comb(2 * m, m)))


def regular_circular_mean(m: int, k: int) -> Fraction:
    """Mean circular crossings over the same family; valid for ``m >= 3``."""
    if m < 3 or k < 0:
        raise OutOfRange("circular formula needs m >= 3 and k >= 0")
    return comb(k, 2) * (m + F(1, 2) + F(1, 2 * (2 * m - 1)) - F(4 * m, comb(2 * m, m)))


# -- catalog and dispatch ----------------------------------------------------


@dataclass(frozen=True)
class FormulaVariant:
    family: str
    form: str  # "derivation" or "theorem"
    scope: str  # "n" or "n,k"
    domain: str
    canonical: bool


FORMULAS: tuple[FormulaVariant, ...] = (
    FormulaVariant("los", "derivation", "n", "n >= 1", True),
    FormulaVariant("los", "derivation", "n,k", "1 <= k <= n", True),
    FormulaVariant("los_tilde", "derivation", "n", "n >= 1", True),
    FormulaVariant("los_tilde", "derivation", "n,k", "1 <= k <= n", True),
    FormulaVariant("inv", "derivation", "n", "n >= 1", True),
    FormulaVariant("inv", "derivation", "n,k", "1 <= k <= n", True),
    FormulaVariant("crol", "derivation", "n", "n >= 1", True),
    FormulaVariant("crol", "derivation", "n,k", "1 <= k <= n", True),
    FormulaVariant("croc", "derivation", "n", "n >= 1", True),
    FormulaVariant("croc", "theorem", "n", "n >= 1", False),
    FormulaVariant("croc", "derivation", "n,k", "1 <= k <= n", True),
    FormulaVariant("croc", "theorem", "n,k", "1 <= k <= n", False),
    FormulaVariant("ov", "derivation", "n", "n >= 1", True),
    FormulaVariant("ov", "theorem", "n", "n >= 1", True),
    FormulaVariant("ov", "derivation", "n,k", "1 <= k <= n", True),
    FormulaVariant("ov", "theorem", "n,k", "1 <= k <= n", False),
    FormulaVariant("emb", "derivation", "n", "n >= 1", True),
    FormulaVariant("emb", "derivation", "n,k", "1 <= k <= n", True),
    FormulaVariant("occ", "derivation", "n", "n >= 0, r >= 2", True),
    FormulaVariant("occ", "derivation", "n,k", "1 <= k <= n, r >= 2", True),
    FormulaVariant("klazar", "derivation", "n", "n >= 0, 2-block pattern", True),
    FormulaVariant("klazar", "derivation", "n,k", "1 <= k <= n, 2-block pattern", True),
    FormulaVariant("blocks", "derivation", "n", "n >= 1", True),
    FormulaVariant("regular_linear", "derivation", "m,k", "m >= 1, k >= 0", True),
    FormulaVariant("regular_circular", "derivation", "m,k", "m >= 3, k >= 0", True),
)


def catalog_json() -> list[dict]:
    return [asdict(f) for f in FORMULAS]


# nest2 and semb have the same totals as crol and ov on every Pi_n^k
_N = {
    "los": mean_los, "inv": mean_inv, "crol": mean_crol, "nest2": mean_crol,
    "emb": mean_emb, "blocks": mean_blocks,
}
_NK = {
    "los": mean_los_k, "inv": mean_inv_k, "crol": mean_crol_k, "nest2": mean_crol_k,
    "emb": mean_emb_k, "blocks": mean_blocks_k,
}
_N_VAR = {"croc": mean_croc, "ov": mean_ov, "semb": mean_ov}
_NK_VAR = {"croc": mean_croc_k, "ov": mean_ov_k, "semb": mean_ov_k}


def has_closed_mean(stat) -> bool:
    stat = stat if isinstance(stat, StatisticId) else parse_statistic(stat)
    if stat.name == "klazar":
        return max(stat.pattern) == 2
    return stat.name in _N or stat.name in _N_VAR or stat.name == "occ"


def closed_mean(stat, n: int, k: Optional[int] = None, variant: str = "canonical") -> Fraction:
    """Closed-form mean of ``stat`` over ``Pi_n`` (or ``Pi_n^k`` when ``k`` is given)."""
    stat = stat if isinstance(stat, StatisticId) else parse_statistic(stat)
    name = stat.name
    if name in _N_VAR:
        return _N_VAR[name](n, variant) if k is None else _NK_VAR[name](n, k, variant)
    _variant(variant)
    if name in _N:
        return _N[name](n) if k is None else _NK[name](n, k)
    if name == "occ":
        r = len(stat.pattern)
        if k is None:
            return mean_occ_first(n, r, stat.first_letter)
        return mean_occ_first_k(n, k, r, stat.first_letter)
    if name == "klazar" and max(stat.pattern) == 2:
        r = len(stat.pattern)
        return mean_klazar(n, r) if k is None else mean_klazar_k(n, k, r)
    raise UnknownStatistic(f"no closed-form mean for {stat.token}")
