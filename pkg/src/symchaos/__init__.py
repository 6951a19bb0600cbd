"""Chaos decisions and certified witnesses for one-sided shifts of finite type."""

__version__ = "0.1.0"

from .catalog import cycle_shift, cyclic_blocks, full_shift, golden_mean, vertex_shift
from .classify import ChaosReport, classify, decompose_periodic, implication_audit
from .construct import TimeSet, build_stages, leaf_points, verify_stage
from .criterion import criterion_check, enumerate_subsystems, product, prox_density_check
from .decide import (dense_periodic_points, filter_law_check, fixed_points, hitting_set,
                     is_totally_transitive, is_transitive, is_weakly_mixing, period,
                     periodic_points)
from .ellis import FiniteDynSys, enveloping, ideal_structure, proximal_pairs
from .errors import SymchaosError
from .shift import PointRep, SftPresentation, build_from_forbidden, dist, language
from .witness import kronecker_times, make_scrambled_pair, strong_liyorke_check

__all__ = [
    "ChaosReport", "FiniteDynSys", "PointRep", "SftPresentation", "SymchaosError",
    "TimeSet", "build_from_forbidden", "build_stages", "classify", "criterion_check",
    "cycle_shift", "cyclic_blocks", "decompose_periodic", "dense_periodic_points",
    "dist", "enumerate_subsystems", "enveloping", "filter_law_check", "fixed_points",
    "full_shift", "golden_mean", "hitting_set", "ideal_structure", "implication_audit",
    "is_totally_transitive", "is_transitive", "is_weakly_mixing", "kronecker_times",
    "language", "leaf_points", "make_scrambled_pair", "period", "periodic_points",
    "product", "prox_density_check", "proximal_pairs", "strong_liyorke_check",
    "vertex_shift", "verify_stage",
]
