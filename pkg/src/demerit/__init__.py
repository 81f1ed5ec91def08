"""Exact moments of the aperiodic demerit factor of random binary sequences."""

from __future__ import annotations

from .classify import bruteforce_con, enumerate_absolute, enumerate_signings, isom_representatives
from .latcount import distinct_count, sols_quasipoly, weak_count
from .moments import (
    MomentReport,
    adf_central_moment,
    adf_mean,
    positivity_report,
    ssac_central_moment,
    standardized_moment,
)
from .partitions import Partition, Symbol, display_matrix, induced_partition, is_gelo, is_satisfiable
from .qpoly import QuasiPolynomial
from .seqstat import adf, autocorrelation, exhaustive_central_moment, ssac
from .wreath import GroupElement, IsoClass, canonical_form, orbit_size, stabilizer_order

__version__ = "0.1.0"

__all__ = [
    "GroupElement",
    "IsoClass",
    "MomentReport",
    "Partition",
    "QuasiPolynomial",
    "Symbol",
    "adf",
    "adf_central_moment",
    "adf_mean",
    "autocorrelation",
    "bruteforce_con",
    "canonical_form",
    "display_matrix",
    "distinct_count",
    "enumerate_absolute",
    "enumerate_signings",
    "exhaustive_central_moment",
    "induced_partition",
    "is_gelo",
    "is_satisfiable",
    "isom_representatives",
    "orbit_size",
    "positivity_report",
    "sols_quasipoly",
    "ssac",
    "ssac_central_moment",
    "stabilizer_order",
    "standardized_moment",
    "weak_count",
]
