#pragma once

#include "egdd/problem.hpp"

namespace egdd {

/// One strongly convex primal subproblem
///   h_i(x) = phi_i(x) + y'(A_i x - b_i) + beta1 * p_i(x)
/// with strong convexity modulus beta1 * sigma_i.
struct Subproblem {
  const Problem* problem;
  int index;
  VectorXd y;
  double beta1;

  const ComponentSpec& component() const { return problem->components[index]; }
};

double subproblem_value(const Subproblem& sub, const VectorXd& x);

struct SubproblemSolution {
  enum class Certificate { closed_form, suboptimality_bound };

  VectorXd point;
  double accuracy = 0.0;  // certified eps: h(point) - h* <= (mu/2) eps^2
  bool certified = true;
  Certificate kind = Certificate::closed_form;
  double value = 0.0;  // h at point
  int inner_iterations = 0;
};

/// Three-case soft-thresholding minimizer of
///   gamma |x - x_a| + y x + (beta1/2)(x - x_c)^2.
/// The anchor case is evaluated first so the kink is resolved exactly.
double soft_threshold_V(double x_a, double x_c, double y, double beta1, double gamma);

/// Closed form of min |x| + aTy * x + (beta1/2)(x - x_c)^2 over the line.
double l1_component_solve(double aTy, double x_c, double beta1);

/// eps = sqrt(2 max(0, h(candidate) - lower_bound) / (beta1 sigma_i)).
/// Throws if the candidate is infeasible.
double certify_accuracy(const Subproblem& sub, const VectorXd& candidate,
                        double lower_bound);

/// True when the component's subproblems admit an exact analytic solution
/// (zero smooth part, and a coordinatewise set when an l1 term is present).
bool has_closed_form(const ComponentSpec& c);

/// Throws when no registered solve path covers the component.
void ensure_solvable(const ComponentSpec& c, int index);

/// Solves the subproblem to certified accuracy target_eps. Dispatches to the
/// closed form when available, otherwise to projected_gradient_solve.
/// target_eps == 0 requires a closed form.
SubproblemSolution solve_component(const Subproblem& sub, double target_eps,
                                   int budget = 2000, VectorXd* warm = nullptr);

/// Accelerated projected (proximal) gradient on h_i with the strong-convexity
/// certificate: after a prox step x+ from z, the subgradient residual
///   v = grad_s(x+) - grad_s(z) + L (z - x+)
/// lies in the subdifferential at x+, so h(x+) - h* <= ||v||^2 / (2 mu).
/// On budget exhaustion returns the best point seen, flagged uncertified.
SubproblemSolution projected_gradient_solve(const Subproblem& sub, double target_eps,
                                            int budget, VectorXd* warm = nullptr);

/// Internal model shared by the dual subproblems, the primal upper models of
/// the two-primal-step scheme, and the baselines:
///   minimize  phi(x) + lin'x + (quad/2)||x - center||^2 + constant  over set,
/// where phi is `objective` (null means zero).
struct ProxModel {
  const Objective* objective = nullptr;
  const FeasibleSet* set = nullptr;
  VectorXd lin;
  double quad = 0.0;
  VectorXd center;
  double constant = 0.0;
};

double model_value(const ProxModel& m, const VectorXd& x);
ProxModel dual_subproblem_model(const Subproblem& sub);

/// Certified solve of a ProxModel with modulus mu = m.quad > 0.
SubproblemSolution solve_prox_model(const ProxModel& m, double target_eps,
                                    int budget, const VectorXd* warm,
                                    bool allow_closed_form, bool separable_set_ok);

/// Residual-mode variant for merely convex models (quad may be 0): stops when
/// the subgradient residual norm drops below grad_tol.
SubproblemSolution prox_gradient_residual_solve(const ProxModel& m, double grad_tol,
                                                int budget, const VectorXd* warm);

}  // namespace egdd
