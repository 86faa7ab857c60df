#include "egdd/baselines.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "egdd/parallel.hpp"

namespace egdd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

/// base objective plus the augmented coupling term (rho/2) ||A x - c||^2.
class AugmentedObjective final : public Objective {
 public:
  AugmentedObjective(const Objective* base, const LinearMap* A, VectorXd c,
                     double rho, double norm_A)
      : base_(base), A_(A), c_(std::move(c)), rho_(rho),
        lipschitz_(base->smooth_lipschitz() + rho * norm_A * norm_A) {}

  double value(const VectorXd& x) const override {
    return base_->value(x) + 0.5 * rho_ * (A_->apply(x) - c_).squaredNorm();
  }
  double smooth_value(const VectorXd& x) const override {
    return base_->smooth_value(x) + 0.5 * rho_ * (A_->apply(x) - c_).squaredNorm();
  }
  void add_smooth_gradient(const VectorXd& x, VectorXd& g) const override {
    base_->add_smooth_gradient(x, g);
    g += rho_ * A_->apply_transpose(A_->apply(x) - c_);
  }
  double smooth_lipschitz() const override { return lipschitz_; }
  bool has_smooth_part() const override { return true; }
  const L1Term* l1_term() const override { return base_->l1_term(); }
  std::string kind() const override { return "augmented"; }

 private:
  const Objective* base_;
  const LinearMap* A_;
  VectorXd c_;
  double rho_;
  double lipschitz_;
};

/// Exact minimizer of w|x-a| + (rho/2)(s x - c)^2 over a 1-D separable set,
/// s = the single coupling column. Zero columns reduce to the plain l1 prox.
double admm_scalar_update(const ComponentSpec& comp, const VectorXd& col_target,
                          double rho) {
  const VectorXd col = comp.A.to_dense().col(0);
  const double s2 = col.squaredNorm();
  const L1Term* l1 = comp.objective->l1_term();
  const double w = l1 ? l1->weight[0] : 0.0;
  const double a = l1 ? l1->anchor[0] : 0.0;
  double v;
  if (s2 > 0) {
    const double center = col.dot(col_target) / s2;
    v = w > 0 ? soft_threshold_V(a, center, 0.0, rho * s2, w) : center;
  } else {
    v = w > 0 ? a : comp.center[0];
  }
  return clamp_coordinate(comp.set, 0, v);
}

}  // namespace

AdmmConfig admm_v1() { return AdmmConfig{}; }

AdmmConfig admm_v2() {
  AdmmConfig c;
  c.rho0 = 1000.0;
  return c;
}

AdmmConfig admm_v3() {
  AdmmConfig c;
  c.rho0 = 1000.0;
  c.residual_balancing = false;
  return c;
}

SolveReport run_admm(const Problem& problem, const AdmmConfig& cfg,
                     const SolveOptions& opt) {
  Problem p = validate(problem);
  const int M = p.size();
  for (int i = 0; i < M; ++i) ensure_solvable(p.components[i], i);

  std::vector<double> norm_Ai(M);
  for (int i = 0; i < M; ++i) norm_Ai[i] = spectral_norm(p.components[i].A);

  SolveReport rep;
  rep.solver = cfg.residual_balancing ? (cfg.rho0 == 1.0 ? "admm-v1" : "admm-v2")
                                      : "admm-v3";
  Clock::time_point t0 = Clock::now();

  double rho = cfg.rho0;
  VectorXd w = VectorXd::Zero(p.m);  // scaled multiplier, y = rho * w
  std::vector<VectorXd> x(M), u(M);  // u_i = A_i x_i - b_i
  VectorXd residual = VectorXd::Zero(p.m);
  for (int i = 0; i < M; ++i) {
    x[i] = project(p.components[i].set, p.components[i].center);
    u[i] = p.components[i].A.apply(x[i]) - p.components[i].b;
    residual += u[i];
  }
  double dual_res = kNaN;

  for (long k = 0;; ++k) {
    TraceRow r;
    r.k = static_cast<int>(k);
    r.tau = r.beta1 = r.beta2 = r.delta = kNaN;
    r.epsbar = cfg.inner_tol;
    r.feas = residual.norm();
    r.rpfgap = r.feas / std::max(p.b_total.norm(), 1.0);
    r.phi = objective_value(p, x, opt.threads);
    r.sgap = kNaN;
    r.ms = elapsed_ms(t0);
    r.scheme = 'a';
    r.rho = rho;
    r.aux = dual_res;
    rep.trace.push_back(r);

    if (!opt.disable_stopping && stopping_check(rep.trace, opt.stop)) {
      rep.status = Status::converged;
      rep.iterations = k;
      break;
    }
    if (k >= opt.max_iterations) {
      rep.status = Status::maxiter;
      rep.iterations = k;
      break;
    }

    const VectorXd ubar = residual / M;
    const VectorXd shift = ubar + w;
    VectorXd new_residual = tree_reduce<VectorXd>(
        M, opt.threads,
        [&](int i) -> VectorXd {
          const ComponentSpec& c = p.components[i];
          const VectorXd target = p.components[i].b + u[i] - shift;
          if (c.n() == 1 && !c.objective->has_smooth_part() &&
              !c.force_iterative) {
            x[i] = VectorXd::Constant(1, admm_scalar_update(c, target, rho));
          } else {
            AugmentedObjective aug(c.objective.get(), &c.A, target, rho,
                                   norm_Ai[i]);
            ProxModel m;
            m.objective = &aug;
            m.set = &c.set;
            m.lin = VectorXd::Zero(c.n());
            m.quad = 0.0;
            m.center = x[i];
            SubproblemSolution s = prox_gradient_residual_solve(
                m, cfg.inner_tol * std::max(1.0, rho), cfg.inner_budget, &x[i]);
            x[i] = std::move(s.point);
          }
          u[i] = p.components[i].A.apply(x[i]) - p.components[i].b;
          return u[i];
        },
        [](VectorXd& into, VectorXd&& from) { into += from; });

    dual_res = rho * (new_residual - residual).norm();
    residual = std::move(new_residual);
    w += residual / M;

    if (cfg.residual_balancing) {
      const double prim = residual.norm();
      double next_rho = rho;
      if (prim > cfg.balance_ratio * dual_res)
        next_rho = rho * cfg.balance_scale;
      else if (dual_res > cfg.balance_ratio * prim)
        next_rho = rho / cfg.balance_scale;
      if (next_rho != rho) {
        w *= rho / next_rho;
        rho = next_rho;
      }
    }
  }

  rep.x = std::move(x);
  rep.y = rho * w;
  rep.total_ms = elapsed_ms(t0);
  return rep;
}

double pcbdm_beta1(const Problem& p, const ProblemConstants& k, double eps_p) {
  std::vector<VectorXd> centers(p.size());
  for (int i = 0; i < p.size(); ++i) centers[i] = p.components[i].center;
  const double phi0 = objective_value(p, centers);
  return eps_p * std::max(1.0, std::abs(phi0)) / k.prox_bound_sum;
}

SolveReport run_pcbdm(const Problem& problem, const PcbdmConfig& cfg,
                      const SolveOptions& opt) {
  Problem p = validate(problem);
  ProblemConstants k = compute_constants(p);
  for (int i = 0; i < p.size(); ++i) ensure_solvable(p.components[i], i);

  SolveReport rep;
  rep.solver = "pcbdm";
  Clock::time_point t0 = Clock::now();

  const double beta1 = pcbdm_beta1(p, k, cfg.eps_p);
  const double L = dual_lipschitz(beta1, k);
  std::vector<VectorXd> warm(p.size());

  VectorXd y = VectorXd::Zero(p.m);  // monotone iterate
  VectorXd z = y;                    // extrapolated point
  double t = 1.0;

  SmoothedDualEval at_y =
      smoothed_dual(p, y, beta1, cfg.inner_eps, opt.threads, &warm, cfg.inner_budget);

  std::vector<VectorXd> x_avg = at_y.points;  // running primal average
  VectorXd res_avg = at_y.gradient;
  long samples = 1;

  for (long kk = 0;; ++kk) {
    TraceRow r;
    r.k = static_cast<int>(kk);
    r.tau = r.beta2 = r.delta = kNaN;
    r.beta1 = beta1;
    r.epsbar = cfg.inner_eps;
    r.feas = res_avg.norm();
    r.rpfgap = r.feas / std::max(p.b_total.norm(), 1.0);
    r.phi = objective_value(p, x_avg, opt.threads);
    r.sgap = kNaN;
    r.aux = at_y.value;  // smoothed dual value at the monotone iterate
    r.ms = elapsed_ms(t0);
    r.scheme = 'g';
    rep.trace.push_back(r);

    if (!opt.disable_stopping && stopping_check(rep.trace, opt.stop)) {
      rep.status = Status::converged;
      rep.iterations = kk;
      break;
    }
    if (kk >= opt.max_iterations) {
      rep.status = Status::maxiter;
      rep.iterations = kk;
      break;
    }

    SmoothedDualEval at_z =
        smoothed_dual(p, z, beta1, cfg.inner_eps, opt.threads, &warm, cfg.inner_budget);
    const VectorXd candidate = z + at_z.gradient / L;
    SmoothedDualEval at_c = smoothed_dual(p, candidate, beta1, cfg.inner_eps,
                                          opt.threads, &warm, cfg.inner_budget);

    // primal average over the gradient-step evaluations
    for (int i = 0; i < p.size(); ++i)
      x_avg[i] = (double(samples) * x_avg[i] + at_z.points[i]) / double(samples + 1);
    res_avg = (double(samples) * res_avg + at_z.gradient) / double(samples + 1);
    ++samples;

    // monotone acceleration: keep the better of candidate and y
    const VectorXd y_prev = y;
    const bool improved = at_c.value >= at_y.value;
    if (improved) {
      y = candidate;
      at_y = std::move(at_c);
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    z = y + (t / t_next) * (candidate - y) + ((t - 1.0) / t_next) * (y - y_prev);
    t = t_next;
  }

  rep.x = std::move(x_avg);
  rep.y = std::move(y);
  rep.total_ms = elapsed_ms(t0);
  return rep;
}

}  // namespace egdd
