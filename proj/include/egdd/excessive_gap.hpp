#pragma once

#include "egdd/smoothing.hpp"
#include "egdd/stopping.hpp"
#include "egdd/trace.hpp"

namespace egdd {

struct SolveOptions {
  double beta0 = 1.0;       // initial beta1; beta2 starts at L_A / beta0
  double eps_tilde = 1e-3;  // initial inexactness budget (0 = exact mode,
                            // allowed only with closed-form components)
  StoppingRule stop;
  long max_iterations = 5000;
  int threads = 1;              // 0 = hardware concurrency
  double accuracy_floor = 1e-10;  // floor on requested subproblem accuracy
  int inner_budget = 2000;
  bool disable_stopping = false;  // reference runs
  bool trace_dual = true;         // evaluate the smoothed dual every row
};

/// Per-iteration scheduler state.
/// Invariants maintained by the drivers (checked at every step):
///   dual steps:   beta1 * beta2 >= tau^2/(1-tau) * L_A
///   primal steps: beta1 * beta2 >= (tau/(1-tau))^2 * L_A
struct SchedulerState {
  long k = 0;
  double tau = 0, beta1 = 0, beta2 = 0, delta = 0, epsbar = 0, alpha_tilde = 0;
};

/// Next dual-scheme step size: the positive root of
///   tau'^2 / (1 - tau') = (1 - alpha_tilde * tau) * tau^2,
/// evaluated as 0.5*tau*[sqrt((1-a t)^2 t^2 + 4(1-a t)) - (1-a t) t] < tau.
double update_tau_dual(double tau, double alpha_tilde);

/// Next primal-scheme step size tau / (1 + tau).
double update_tau_primal(double tau);

/// Accuracy scale for dual steps; the per-iteration subproblem accuracy
/// tau*delta / scale keeps delta nonincreasing.
double accuracy_scale_dual(const SchedulerState& s, double y_norm,
                           const ProblemConstants& k);
/// Accuracy scale for primal steps.
double accuracy_scale_primal(const SchedulerState& s, const ProblemConstants& k);
/// Scale mapping the target budget to the starting-point accuracy request.
double initial_accuracy_scale(double beta1_0, const ProblemConstants& k);

struct Iterate {
  std::vector<VectorXd> x;
  VectorXd y;
  VectorXd residual;  // cached A x - b
};

/// Starting point: x0 solves the smoothed dual subproblems at y = 0 to
/// accuracy eps0, y0 is one dual gradient step from 0. With beta2 = L_A/beta1
/// the pair satisfies the delta0-excessive-gap condition, where
/// delta0 = beta1 * (C_d/L_A * ||eps|| + sigma_eps_sq / 2) from the certified
/// accuracies (0 when solved exactly).
std::pair<Iterate, double> init_point(const Problem& p, const ProblemConstants& k,
                                      double beta1, double eps0, int threads = 1,
                                      std::vector<VectorXd>* warm = nullptr,
                                      int budget = 2000);

/// One dual-scheme step (one parallel subproblem solve, two multiplier
/// updates). Returns the new iterate; alpha_tilde_out receives
/// p_X(x~) / D_X clamped to [alpha_star, 1].
Iterate scheme_Sd(const Problem& p, const ProblemConstants& k, const Iterate& it,
                  const SchedulerState& s, double* alpha_tilde_out,
                  int threads = 1, std::vector<VectorXd>* warm = nullptr,
                  int budget = 2000, bool* certified = nullptr);

/// One primal-scheme step. Expects s.beta2 to already hold the updated value
/// (the driver shrinks beta2 before calling). Smooth components with a known
/// gradient Lipschitz constant use the exact linearized projection step; the
/// others solve the quadratic upper model to accuracy s.epsbar.
Iterate scheme_Sp(const Problem& p, const ProblemConstants& k, const Iterate& it,
                  const SchedulerState& s, int threads = 1,
                  std::vector<VectorXd>* warm_dual = nullptr,
                  std::vector<VectorXd>* warm_map = nullptr, int budget = 2000,
                  bool* certified = nullptr);

/// Decomposition driver with one primal and two dual steps per iteration;
/// all parameters update automatically from tau0 = 0.5*(sqrt(5)-1).
SolveReport run_algorithm1(const Problem& p, const SolveOptions& opt);

/// Switching driver: primal scheme on even iterations, dual scheme on odd,
/// from tau0 = 0.5; both smoothness parameters shrink every iteration.
SolveReport run_algorithm2(const Problem& p, const SolveOptions& opt);

/// Fixed-smoothing variant: beta1 = sqrt(L_A) * eps_f throughout, runs
/// floor(2/eps_f)+1 iterations unless the stopping rule fires earlier.
SolveReport run_fixed_beta1(const Problem& p, double eps_f, const SolveOptions& opt);

}  // namespace egdd
