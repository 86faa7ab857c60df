#pragma once

#include "egdd/subproblem.hpp"

namespace egdd {

/// Smoothed dual evaluation at y: all per-component subproblems are solved
/// (in parallel, reduced pairwise by component index so any thread count is
/// bit-identical), then aggregated.
///
/// `value` is sum_i h_i at the returned (possibly inexact) minimizers, an
/// upper bound on the exact smoothed dual; the overshoot is at most
/// (beta1/2) * sigma_eps_sq. `gradient` is A x~ - b, within
/// ||A|| * ||accuracy|| of the exact gradient.
struct SmoothedDualEval {
  double value = 0.0;
  VectorXd gradient;
  std::vector<VectorXd> points;
  VectorXd accuracy;        // certified eps per component
  double prox_sum = 0.0;    // p_X at the returned points
  double sigma_eps_sq = 0;  // sum_i sigma_i eps_i^2
  bool certified = true;
};

SmoothedDualEval smoothed_dual(const Problem& p, const VectorXd& y, double beta1,
                               double per_component_eps, int threads = 1,
                               std::vector<VectorXd>* warm = nullptr,
                               int budget = 2000);

/// Gradient Lipschitz constant of the smoothed dual: (1/beta1) sum ||A_i||^2/sigma_i.
double dual_lipschitz(double beta1, const ProblemConstants& k);

/// Quadratic-penalty surrogate psi(x;beta2) = ||Ax-b||^2/(2 beta2) and its
/// maximizer y*(x;beta2) = (Ax-b)/beta2; f = phi + psi.
struct PenaltyEval {
  double psi;
  VectorXd y_star;
  double f;
};

PenaltyEval penalty(const Problem& p, const std::vector<VectorXd>& x, double beta2,
                    int threads = 1);
PenaltyEval penalty_from_residual(const VectorXd& residual, double beta2, double phi);

/// One dual gradient-mapping step: y_hat + gradient / L^g(beta1).
VectorXd gradient_map(const VectorXd& y_hat, double beta1,
                      const SmoothedDualEval& eval, const ProblemConstants& k);

/// Bounds implied by the delta-excessive-gap condition, with ||y*|| taken as
/// the reference value R_ref.
struct GapBounds {
  double feas_bound;      // on ||A x - b||
  double dual_gap_upper;  // on phi(x) - g(y)
  double dual_gap_lower;  // -R_ref * ||A x - b||
};

GapBounds gap_bounds(double beta1, double beta2, double delta, double R_ref,
                     double prox_bound_sum, double feas_norm);

}  // namespace egdd
