"""Inexact excessive-gap dual decomposition solvers for separable convex
programs with coupling linear constraints."""

from ._core import (
    Problem,
    constants,
    generate_basis_pursuit,
    generate_nonlinear,
    generate_nonsmooth,
    generate_qp,
    l1_scalar_solve,
    load_problem,
    performance_profile,
    save_problem,
    soft_threshold,
    solve,
    spectral_norm,
    update_tau_dual,
    update_tau_primal,
)

__all__ = [
    "Problem",
    "constants",
    "generate_basis_pursuit",
    "generate_nonlinear",
    "generate_nonsmooth",
    "generate_qp",
    "l1_scalar_solve",
    "load_problem",
    "performance_profile",
    "save_problem",
    "soft_threshold",
    "solve",
    "spectral_norm",
    "update_tau_dual",
    "update_tau_primal",
]

__version__ = "0.1.0"
