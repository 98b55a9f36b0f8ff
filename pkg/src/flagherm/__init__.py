"""Exact invariant almost Hermitian geometry on flag manifolds of classical type."""

from .ahstruct import AHStructure, IACS, InvariantMetric, build_iacs, build_metric, build_structure
from .classify import ClassReport, classify, verify_ask_universal
from .flag import FlagManifold, algebra, build_flag, flag_from_config, real_basis
from .rootsys import AlgebraVector, RootSystem, WeylBasis, build_root_system, build_weyl_basis
from .scalars import ExactScalar, sqrt_rational
from .submanifold import SubmanifoldData, build_from_subalgebra, build_subflag, certify

__all__ = [
    "AHStructure",
    "IACS",
    "InvariantMetric",
    "build_iacs",
    "build_metric",
    "build_structure",
    "ClassReport",
    "classify",
    "verify_ask_universal",
    "FlagManifold",
    "algebra",
    "build_flag",
    "flag_from_config",
    "real_basis",
    "AlgebraVector",
    "RootSystem",
    "WeylBasis",
    "build_root_system",
    "build_weyl_basis",
    "ExactScalar",
    "sqrt_rational",
    "SubmanifoldData",
    "build_from_subalgebra",
    "build_subflag",
    "certify",
]
