"""Exact statistics, means and asymptotics over set partitions."""

from ._backend import BACKEND
from .exactnum import QPolynomial, bell, binomial, q_stirling_poly, stirling2
from .partitions import (
    SetPartition,
    enumerate_all,
    enumerate_k,
    enumerate_regular,
    parse_partition,
)
from .statistics import StatisticId, parse_statistic

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "QPolynomial",
    "SetPartition",
    "StatisticId",
    "bell",
    "binomial",
    "enumerate_all",
    "enumerate_k",
    "enumerate_regular",
    "parse_partition",
    "parse_statistic",
    "q_stirling_poly",
    "stirling2",
]
