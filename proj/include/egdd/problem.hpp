#pragma once

#include <vector>

#include "egdd/feasible_set.hpp"
#include "egdd/objective.hpp"

namespace egdd {

/// One block of the separable problem
///   min sum_i phi_i(x_i)  s.t.  x_i in X_i,  sum_i (A_i x_i - b_i) = 0,
/// together with its quadratic prox data
///   p_i(x) = (sigma/2) ||x - center||^2 + shift.
struct ComponentSpec {
  ObjectivePtr objective;
  FeasibleSet set;
  LinearMap A;       // m x n_i
  VectorXd b;        // m
  VectorXd center;   // prox center, must lie in the set
  double sigma = 1.0;
  double shift = 0.0;            // prox minimum; must be positive
  double bounding_radius = 0.0;  // required for unbounded sets
  bool force_iterative = false;  // bypass closed forms (testing / inexact runs)

  int n() const { return A.cols(); }
};

struct Problem {
  std::vector<ComponentSpec> components;
  int m = 0;
  VectorXd b_total;  // cached sum of b_i, filled by validate()

  int size() const { return static_cast<int>(components.size()); }
  int n() const;
};

/// Structural checks: consistent dimensions, sigma > 0, shift > 0, prox center
/// membership, bounding radius present on unbounded sets. Errors name the
/// offending component. Returns the problem with b_total cached.
Problem validate(Problem p);

/// sup of the prox term over the declared region: max_sq_distance for bounded
/// sets, bounding_radius^2 otherwise.
double prox_radius_sq(const ComponentSpec& c);
/// D_i = (sigma/2) * radius^2 + shift.
double prox_bound(const ComponentSpec& c);
double prox_value(const ComponentSpec& c, const VectorXd& x);
/// Shift with prescribed ratio shift / D_i, e.g. 0.75 (the fixed point of
/// shift = ratio * ((sigma/2) radius^2 + shift)).
double shift_for_ratio(double sigma, double radius_sq, double ratio);
double default_bounding_radius(const VectorXd& center);

/// Derived constants shared by all schemes.
struct ProblemConstants {
  double coupling_lipschitz = 0;  // M * max_i ||A_i||^2 / sigma_i
  double prox_bound_sum = 0;      // sum_i D_i
  double prox_min_sum = 0;        // sum_i shift_i
  double center_spread = 0;       // sqrt(2 sum_i D_i / sigma_i)
  double dual_curvature = 0;      // ||A||^2 * center_spread + ||A'(A c - b)||
  double coupling_norm = 0;       // ||A||
  double alpha_star = 0;          // prox_min_sum / prox_bound_sum
  double sigma_sum = 0;
  double ratio_sum = 0;           // sum_i ||A_i||^2 / sigma_i
  double norm_sq_sum = 0;         // sum_i ||A_i||^2
  std::vector<double> component_norm;
  std::vector<double> component_prox_bound;
};

/// Requires a validated problem. Spectral norms via power iteration
/// (tol 1e-10); deterministic, so repeated calls are bit-identical.
ProblemConstants compute_constants(const Problem& p);

/// Residual sum_i A_i x_i - b over blocks, reduced pairwise by index.
VectorXd coupling_residual(const Problem& p, const std::vector<VectorXd>& x,
                           int threads = 1);
/// Total objective sum_i phi_i(x_i).
double objective_value(const Problem& p, const std::vector<VectorXd>& x,
                       int threads = 1);
/// p_X(x) = sum_i prox_value_i(x_i).
double prox_sum(const Problem& p, const std::vector<VectorXd>& x);
/// ||A|| of the stacked coupling map, via power iteration over blocks.
double coupling_norm(const Problem& p, double tol = 1e-10);

}  // namespace egdd
