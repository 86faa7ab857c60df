#pragma once

#include "egdd/excessive_gap.hpp"

namespace egdd {

/// Parallel consensus ADMM on the coupling constraint, written in exchange
/// form: each block solves
///   min phi_i(x) + (rho/2) || (A_i x - b_i) - t_i ||^2  over X_i
/// in parallel, followed by an averaging step on the residual and a
/// multiplier update. Residual balancing doubles/halves rho when the primal
/// and dual residuals drift apart by more than `balance_ratio`.
struct AdmmConfig {
  double rho0 = 1.0;
  bool residual_balancing = true;
  double balance_ratio = 10.0;
  double balance_scale = 2.0;
  double inner_tol = 1e-8;
  int inner_budget = 500;
};

AdmmConfig admm_v1();  // rho0 = 1, residual balancing
AdmmConfig admm_v2();  // rho0 = 1000, residual balancing
AdmmConfig admm_v3();  // rho = 1000 fixed

SolveReport run_admm(const Problem& p, const AdmmConfig& cfg, const SolveOptions& opt);

/// Proximal-center decomposition: monotone accelerated gradient ascent on the
/// smoothed dual with the smoothing parameter fixed at
///   beta1 = eps_p * max(1, |phi(center)|) / D_X
/// and step 1/L^g(beta1); the reported primal point is the running average of
/// the subproblem minimizers.
struct PcbdmConfig {
  double eps_p = 1e-3;
  double inner_eps = 1e-8;
  int inner_budget = 2000;
};

double pcbdm_beta1(const Problem& p, const ProblemConstants& k, double eps_p);

SolveReport run_pcbdm(const Problem& p, const PcbdmConfig& cfg, const SolveOptions& opt);

}  // namespace egdd
