#include "egdd/excessive_gap.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "egdd/parallel.hpp"

namespace egdd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTauFloor = 1e-12;
constexpr double kBeta2Floor = 1e-14;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void check_step_condition(double lhs, double rhs, const char* which) {
  if (lhs * (1.0 + 1e-9) + 1e-300 < rhs) {
    std::ostringstream msg;
    msg << which << " step condition violated: beta1*beta2 = " << lhs
        << " < " << rhs;
    throw std::logic_error(msg.str());
  }
}

}  // namespace

double update_tau_dual(double tau, double alpha_tilde) {
  const double a = 1.0 - alpha_tilde * tau;
  return 0.5 * tau * (std::sqrt(a * a * tau * tau + 4.0 * a) - a * tau);
}

double update_tau_primal(double tau) { return tau / (1.0 + tau); }

double accuracy_scale_dual(const SchedulerState& s, double y_norm,
                           const ProblemConstants& k) {
  return 0.5 * s.tau * s.beta1 * k.sigma_sum +
         std::sqrt(static_cast<double>(k.component_norm.size())) *
             (s.beta1 * k.dual_curvature / k.coupling_lipschitz +
              (1.0 - s.tau) * s.tau *
                  (k.dual_curvature / s.beta2 + k.coupling_norm * y_norm));
}

double accuracy_scale_primal(const SchedulerState& s, const ProblemConstants& k) {
  const double M = static_cast<double>(k.component_norm.size());
  return 2.0 * (1.0 - s.tau) * s.beta1 * k.center_spread * std::sqrt(k.sigma_sum) +
         M * k.norm_sq_sum / (2.0 * (1.0 - s.tau) * s.beta2);
}

double initial_accuracy_scale(double beta1_0, const ProblemConstants& k) {
  const double M = static_cast<double>(k.component_norm.size());
  return beta1_0 * (std::sqrt(M) * k.dual_curvature / k.coupling_lipschitz +
                    0.5 * k.sigma_sum);
}

std::pair<Iterate, double> init_point(const Problem& p, const ProblemConstants& k,
                                      double beta1, double eps0, int threads,
                                      std::vector<VectorXd>* warm, int budget) {
  if (!(beta1 > 0)) throw std::invalid_argument("init_point: beta1 must be positive");
  SmoothedDualEval eval =
      smoothed_dual(p, VectorXd::Zero(p.m), beta1, eps0, threads, warm, budget);
  if (!eval.certified)
    throw std::runtime_error("init_point: subproblem accuracy not certified");
  Iterate it;
  it.x = std::move(eval.points);
  it.residual = eval.gradient;
  it.y = it.residual / dual_lipschitz(beta1, k);
  const double delta0 =
      beta1 * (k.dual_curvature / k.coupling_lipschitz * eval.accuracy.norm() +
               0.5 * eval.sigma_eps_sq);
  return {std::move(it), delta0};
}

Iterate scheme_Sd(const Problem& p, const ProblemConstants& k, const Iterate& it,
                  const SchedulerState& s, double* alpha_tilde_out, int threads,
                  std::vector<VectorXd>* warm, int budget, bool* certified) {
  check_step_condition(s.beta1 * s.beta2,
                       s.tau * s.tau / (1.0 - s.tau) * k.coupling_lipschitz, "dual");

  const VectorXd y_hat = (1.0 - s.tau) * it.y + (s.tau / s.beta2) * it.residual;
  SmoothedDualEval eval =
      smoothed_dual(p, y_hat, s.beta1, s.epsbar, threads, warm, budget);
  if (certified) *certified = eval.certified;

  Iterate next;
  next.x.resize(p.size());
  for (int i = 0; i < p.size(); ++i)
    next.x[i] = (1.0 - s.tau) * it.x[i] + s.tau * eval.points[i];
  next.residual = (1.0 - s.tau) * it.residual + s.tau * eval.gradient;
  next.y = gradient_map(y_hat, s.beta1, eval, k);

  if (alpha_tilde_out) {
    const double ratio = eval.prox_sum / k.prox_bound_sum;
    *alpha_tilde_out = std::min(1.0, std::max(k.alpha_star, ratio));
  }
  return next;
}

Iterate scheme_Sp(const Problem& p, const ProblemConstants& k, const Iterate& it,
                  const SchedulerState& s, int threads,
                  std::vector<VectorXd>* warm_dual, std::vector<VectorXd>* warm_map,
                  int budget, bool* certified) {
  // s.beta2 already holds the shrunk value; the condition refers to the
  // pre-update pair, i.e. beta1 * beta2_old = beta1 * beta2 / (1 - tau).
  check_step_condition(
      s.beta1 * s.beta2 / (1.0 - s.tau),
      s.tau * s.tau / ((1.0 - s.tau) * (1.0 - s.tau)) * k.coupling_lipschitz,
      "primal");

  SmoothedDualEval eval =
      smoothed_dual(p, it.y, s.beta1, s.epsbar, threads, warm_dual, budget);
  bool ok = eval.certified;

  const int M = p.size();
  std::vector<VectorXd> x_hat(M);
  for (int i = 0; i < M; ++i)
    x_hat[i] = (1.0 - s.tau) * it.x[i] + s.tau * eval.points[i];
  const VectorXd res_hat = (1.0 - s.tau) * it.residual + s.tau * eval.gradient;

  Iterate next;
  next.y = (1.0 - s.tau) * it.y + (s.tau / s.beta2) * res_hat;
  const VectorXd u = res_hat / s.beta2;  // multiplier of the penalty model
  const double psi_hat = res_hat.squaredNorm() / (2.0 * s.beta2);

  struct MapPartial {
    VectorXd res;
    bool certified = true;
  };
  next.x.resize(M);
  MapPartial total = tree_reduce<MapPartial>(
      M, threads,
      [&](int i) -> MapPartial {
        const ComponentSpec& c = p.components[i];
        const double Lpsi =
            M * k.component_norm[i] * k.component_norm[i] / s.beta2;
        VectorXd lin = c.A.apply_transpose(u);
        MapPartial part;
        if (c.objective->is_smooth() && !c.force_iterative) {
          // Linearized objective model: exact projected step.
          c.objective->add_smooth_gradient(x_hat[i], lin);
          const double L_hat = c.objective->smooth_lipschitz() + Lpsi;
          next.x[i] = project(c.set, x_hat[i] - lin / L_hat);
        } else {
          ProxModel q;
          q.objective = c.objective.get();
          q.set = &c.set;
          q.lin = std::move(lin);
          q.quad = Lpsi;
          q.center = x_hat[i];
          q.constant = psi_hat / M - q.lin.dot(x_hat[i]);
          VectorXd* w = warm_map ? &(*warm_map)[i] : nullptr;
          SubproblemSolution sol = solve_prox_model(q, s.epsbar, budget, w, true,
                                                    is_separable(c.set));
          if (w) *w = sol.point;
          part.certified = sol.certified;
          next.x[i] = std::move(sol.point);
        }
        part.res = -c.b;
        c.A.apply_add(next.x[i], part.res);
        return part;
      },
      [](MapPartial& into, MapPartial&& from) {
        into.res += from.res;
        into.certified = into.certified && from.certified;
      });
  next.residual = std::move(total.res);
  ok = ok && total.certified;
  if (certified) *certified = ok;
  return next;
}

namespace {

/// Shared driver for the two-dual-step iterations (algorithm 1 and the
/// fixed-smoothing variant) and the switching algorithm.
struct Driver {
  const Problem& p;
  const ProblemConstants& k;
  SolveOptions opt;
  bool exact = false;

  std::vector<VectorXd> warm_scheme, warm_trace, warm_map;
  Iterate it;
  SchedulerState s;
  SolveReport rep;
  Clock::time_point t0 = Clock::now();
  bool floored = false;

  Driver(const Problem& problem, const ProblemConstants& constants,
         const SolveOptions& options, const char* solver)
      : p(problem), k(constants), opt(options) {
    rep.solver = solver;
    exact = opt.eps_tilde == 0.0;
    if (opt.eps_tilde < 0)
      throw std::invalid_argument("eps_tilde must be nonnegative");
    for (int i = 0; i < p.size(); ++i) ensure_solvable(p.components[i], i);
    if (exact) {
      for (int i = 0; i < p.size(); ++i)
        if (!has_closed_form(p.components[i])) {
          std::ostringstream msg;
          msg << "exact mode (eps_tilde = 0) requires closed-form subproblem "
                 "solvers, but component "
              << i << " has none";
          throw std::invalid_argument(msg.str());
        }
    }
    warm_scheme.resize(p.size());
    warm_trace.resize(p.size());
    warm_map.resize(p.size());
  }

  double request(double epsbar) const {
    return exact ? 0.0 : std::max(epsbar, opt.accuracy_floor);
  }

  void initialize(double beta1, double tau0) {
    s.tau = tau0;
    s.beta1 = beta1;
    s.beta2 = k.coupling_lipschitz / beta1;
    s.delta = opt.eps_tilde;
    const double c0 = initial_accuracy_scale(beta1, k);
    s.epsbar = exact ? 0.0 : opt.eps_tilde / c0;
    auto [start, delta0] =
        init_point(p, k, beta1, request(s.epsbar), opt.threads, &warm_scheme,
                   opt.inner_budget);
    (void)delta0;  // the tracked budget starts at eps_tilde, an upper bound
    it = std::move(start);
  }

  void record_row(char scheme) {
    rep.max_y_norm = std::max(rep.max_y_norm, it.y.norm());
    TraceRow r;
    r.k = static_cast<int>(s.k);
    r.tau = s.tau;
    r.beta1 = s.beta1;
    r.beta2 = s.beta2;
    r.delta = s.delta;
    r.epsbar = s.epsbar;
    r.feas = it.residual.norm();
    r.rpfgap = r.feas / std::max(p.b_total.norm(), 1.0);
    r.phi = objective_value(p, it.x, opt.threads);
    if (opt.trace_dual) {
      SmoothedDualEval eval = smoothed_dual(p, it.y, s.beta1, request(s.epsbar),
                                            opt.threads, &warm_trace,
                                            opt.inner_budget);
      const double f = r.phi + r.feas * r.feas / (2.0 * s.beta2);
      r.sgap = f - eval.value;
    } else {
      r.sgap = kNaN;
    }
    r.ms = elapsed_ms(t0);
    r.scheme = scheme;
    r.floored = floored;
    floored = false;
    rep.trace.push_back(r);
  }

  /// true when the driver should stop (status already set).
  bool stop_or_cap(long maxiter) {
    if (!opt.disable_stopping && stopping_check(rep.trace, opt.stop)) {
      rep.status = Status::converged;
      return true;
    }
    if (s.k >= maxiter) {
      rep.status = Status::maxiter;
      return true;
    }
    return false;
  }

  /// delta' = (1-tau) delta + scale * epsbar with epsbar = tau*delta/scale;
  /// clamped against round-up so the tracked budget never increases.
  void shrink_delta(double scale) {
    if (exact) return;
    s.delta = std::min((1.0 - s.tau) * s.delta + scale * s.epsbar, s.delta);
  }

  void apply_beta2_shrink() {
    double b2 = (1.0 - s.tau) * s.beta2;
    if (b2 < kBeta2Floor) {
      b2 = kBeta2Floor;
      floored = true;
    }
    s.beta2 = b2;
  }

  void set_tau(double tau) {
    if (tau < kTauFloor) {
      tau = kTauFloor;
      floored = true;
    }
    s.tau = tau;
  }

  struct SubproblemFailure {};

  SolveReport finish() {
    rep.iterations = s.k;
    rep.x = std::move(it.x);
    rep.y = std::move(it.y);
    rep.total_ms = elapsed_ms(t0);
    return std::move(rep);
  }
};

constexpr double kTau0Dual = 0.61803398874989484820;  // 0.5*(sqrt(5)-1)

template <class Body>
SolveReport run_driver(Driver& d, const Body& body) {
  try {
    while (body()) {
    }
  } catch (const Driver::SubproblemFailure&) {
    d.rep.status = Status::subproblem_failure;
    d.rep.note = "subproblem solver exhausted its budget before certification";
  }
  return d.finish();
}

}  // namespace

SolveReport run_algorithm1(const Problem& problem, const SolveOptions& opt) {
  Problem p = validate(problem);
  ProblemConstants k = compute_constants(p);
  Driver d(p, k, opt, "idda1");
  d.initialize(opt.beta0, kTau0Dual);
  return run_driver(d, [&]() {
    const double q = accuracy_scale_dual(d.s, d.it.y.norm(), k);
    d.s.epsbar = d.exact ? 0.0 : d.s.tau * d.s.delta / q;
    d.record_row('d');
    if (d.stop_or_cap(opt.max_iterations)) return false;
    d.shrink_delta(q);
    bool certified = true;
    double alpha = k.alpha_star;
    d.it = scheme_Sd(p, k, d.it, d.s, &alpha, d.opt.threads, &d.warm_scheme,
                     d.opt.inner_budget, &certified);
    if (!certified) throw Driver::SubproblemFailure{};
    d.s.alpha_tilde = alpha;
    d.s.beta1 *= 1.0 - alpha * d.s.tau;
    d.apply_beta2_shrink();
    d.set_tau(update_tau_dual(d.s.tau, alpha));
    ++d.s.k;
    return true;
  });
}

SolveReport run_algorithm2(const Problem& problem, const SolveOptions& opt) {
  Problem p = validate(problem);
  ProblemConstants k = compute_constants(p);
  Driver d(p, k, opt, "idda2");
  d.initialize(opt.beta0, 0.5);
  return run_driver(d, [&]() {
    const bool primal = d.s.k % 2 == 0;
    const double scale = primal ? accuracy_scale_primal(d.s, k)
                                : accuracy_scale_dual(d.s, d.it.y.norm(), k);
    d.s.epsbar = d.exact ? 0.0 : d.s.tau * d.s.delta / scale;
    d.record_row(primal ? 'p' : 'd');
    if (d.stop_or_cap(opt.max_iterations)) return false;
    d.shrink_delta(scale);
    bool certified = true;
    if (primal) {
      d.apply_beta2_shrink();
      d.it = scheme_Sp(p, k, d.it, d.s, d.opt.threads, &d.warm_scheme, &d.warm_map,
                       d.opt.inner_budget, &certified);
      if (!certified) throw Driver::SubproblemFailure{};
      d.s.beta1 *= 1.0 - d.s.tau;
      d.set_tau(update_tau_primal(d.s.tau));
    } else {
      double alpha = k.alpha_star;
      d.it = scheme_Sd(p, k, d.it, d.s, &alpha, d.opt.threads, &d.warm_scheme,
                       d.opt.inner_budget, &certified);
      if (!certified) throw Driver::SubproblemFailure{};
      d.s.alpha_tilde = alpha;
      d.s.beta1 *= 1.0 - alpha * d.s.tau;
      d.apply_beta2_shrink();
      d.set_tau(update_tau_dual(d.s.tau, alpha));
    }
    ++d.s.k;
    return true;
  });
}

SolveReport run_fixed_beta1(const Problem& problem, double eps_f,
                            const SolveOptions& opt) {
  if (!(eps_f > 0)) throw std::invalid_argument("run_fixed_beta1: eps_f must be positive");
  Problem p = validate(problem);
  ProblemConstants k = compute_constants(p);
  Driver d(p, k, opt, "fixed-beta1");
  const double beta1 = std::sqrt(k.coupling_lipschitz) * eps_f;
  d.initialize(beta1, kTau0Dual);
  const long kbar = static_cast<long>(std::floor(2.0 / eps_f)) + 1;
  const long cap = std::min<long>(kbar, opt.max_iterations);
  SolveReport rep = run_driver(d, [&]() {
    const double q = accuracy_scale_dual(d.s, d.it.y.norm(), k);
    d.s.epsbar = d.exact ? 0.0 : d.s.tau * d.s.delta / q;
    d.record_row('d');
    if (!d.opt.disable_stopping && stopping_check(d.rep.trace, d.opt.stop)) {
      d.rep.status = Status::converged;
      return false;
    }
    if (d.s.k >= cap) {
      // the designed iteration budget floor(2/eps_f)+1 is the normal exit
      d.rep.status = d.s.k >= kbar ? Status::converged : Status::maxiter;
      return false;
    }
    d.shrink_delta(q);
    bool certified = true;
    d.it = scheme_Sd(p, k, d.it, d.s, nullptr, d.opt.threads, &d.warm_scheme,
                     d.opt.inner_budget, &certified);
    if (!certified) throw Driver::SubproblemFailure{};
    d.apply_beta2_shrink();
    d.set_tau(update_tau_dual(d.s.tau, 0.0));
    ++d.s.k;
    return true;
  });
  return rep;
}

}  // namespace egdd
