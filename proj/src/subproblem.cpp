#include "egdd/subproblem.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace egdd {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double soft_threshold_V(double x_a, double x_c, double y, double beta1, double gamma) {
  const double at_anchor = y + beta1 * (x_a - x_c);
  if (at_anchor >= -gamma && at_anchor <= gamma) return x_a;
  if (at_anchor < -gamma) return x_c - (gamma + y) / beta1;
  return x_c + (gamma - y) / beta1;
}

double l1_component_solve(double aTy, double x_c, double beta1) {
  return soft_threshold_V(0.0, x_c, aTy, beta1, 1.0);
}

double subproblem_value(const Subproblem& sub, const VectorXd& x) {
  const ComponentSpec& c = sub.component();
  return c.objective->value(x) + sub.y.dot(c.A.apply(x) - c.b) +
         sub.beta1 * prox_value(c, x);
}

double certify_accuracy(const Subproblem& sub, const VectorXd& candidate,
                        double lower_bound) {
  const ComponentSpec& c = sub.component();
  if (!contains(c.set, candidate, 1e-9))
    throw std::invalid_argument("certify_accuracy: infeasible candidate");
  const double mu = sub.beta1 * c.sigma;
  const double gap = std::max(0.0, subproblem_value(sub, candidate) - lower_bound);
  return std::sqrt(2.0 * gap / mu);
}

bool has_closed_form(const ComponentSpec& c) {
  if (c.force_iterative) return false;
  if (c.objective->has_smooth_part()) return false;
  if (c.objective->l1_term() != nullptr) return is_separable(c.set);
  return true;  // pure prox: projection of an affine point
}

void ensure_solvable(const ComponentSpec& c, int index) {
  if (has_closed_form(c)) return;
  const bool l1 = c.objective->l1_term() != nullptr;
  if (l1 && !is_separable(c.set)) {
    std::ostringstream msg;
    msg << "component " << index
        << ": l1 objective requires a coordinatewise feasible set";
    throw std::invalid_argument(msg.str());
  }
  if (!l1 && !(c.objective->smooth_lipschitz() >= 0)) {
    std::ostringstream msg;
    msg << "component " << index << ": smooth objective without a Lipschitz constant";
    throw std::invalid_argument(msg.str());
  }
}

double model_value(const ProxModel& m, const VectorXd& x) {
  double v = m.constant + m.lin.dot(x);
  if (m.quad != 0.0) v += 0.5 * m.quad * (x - m.center).squaredNorm();
  if (m.objective) v += m.objective->value(x);
  return v;
}

ProxModel dual_subproblem_model(const Subproblem& sub) {
  const ComponentSpec& c = sub.component();
  ProxModel m;
  m.objective = c.objective.get();
  m.set = &c.set;
  m.lin = c.A.apply_transpose(sub.y);
  m.quad = sub.beta1 * c.sigma;
  m.center = c.center;
  m.constant = -sub.y.dot(c.b) + sub.beta1 * c.shift;
  return m;
}

namespace {

const L1Term* model_l1(const ProxModel& m) {
  return m.objective ? m.objective->l1_term() : nullptr;
}

double model_smooth_lipschitz(const ProxModel& m) {
  return (m.objective ? m.objective->smooth_lipschitz() : 0.0) + m.quad;
}

VectorXd model_smooth_gradient(const ProxModel& m, const VectorXd& x) {
  VectorXd g = m.lin;
  if (m.quad != 0.0) g += m.quad * (x - m.center);
  if (m.objective) m.objective->add_smooth_gradient(x, g);
  return g;
}

/// argmin over the set of  sum_j w_j|x_j-a_j| + g'x + (L/2)||x-u||^2,
/// exact for coordinatewise sets (clamping preserves the 1-D minimizer).
VectorXd prox_step(const ProxModel& m, const VectorXd& u, double L) {
  const L1Term* l1 = model_l1(m);
  if (!l1) return project(*m.set, u);
  VectorXd x(u.size());
  for (int j = 0; j < u.size(); ++j) {
    const double v = l1->weight[j] > 0
                         ? soft_threshold_V(l1->anchor[j], u[j], 0.0, L, l1->weight[j])
                         : u[j];
    x[j] = clamp_coordinate(*m.set, j, v);
  }
  return x;
}

VectorXd closed_form_minimizer(const ProxModel& m) {
  const L1Term* l1 = model_l1(m);
  if (!l1) {
    // pure prox: projection of the unconstrained minimizer
    return project(*m.set, m.center - m.lin / m.quad);
  }
  VectorXd x(m.center.size());
  for (int j = 0; j < x.size(); ++j) {
    const double v = l1->weight[j] > 0
                         ? soft_threshold_V(l1->anchor[j], m.center[j], m.lin[j],
                                            m.quad, l1->weight[j])
                         : m.center[j] - m.lin[j] / m.quad;
    x[j] = clamp_coordinate(*m.set, j, v);
  }
  return x;
}

struct StepResult {
  VectorXd point;        // prox step from z
  double value;          // model value at point
  double residual_norm;  // ||grad_s(point) - grad_s(z) + L (z - point)||
};

StepResult prox_gradient_step(const ProxModel& m, const VectorXd& z,
                              const VectorXd& grad_z, double L) {
  StepResult r;
  r.point = prox_step(m, z - grad_z / L, L);
  const VectorXd grad_p = model_smooth_gradient(m, r.point);
  r.residual_norm = (grad_p - grad_z + L * (z - r.point)).norm();
  r.value = model_value(m, r.point);
  return r;
}

}  // namespace

SubproblemSolution solve_prox_model(const ProxModel& m, double target_eps,
                                    int budget, const VectorXd* warm,
                                    bool allow_closed_form, bool separable_set_ok) {
  const L1Term* l1 = model_l1(m);
  const bool smoothless = !m.objective || !m.objective->has_smooth_part();
  if (allow_closed_form && smoothless && (!l1 || separable_set_ok)) {
    SubproblemSolution s;
    s.point = closed_form_minimizer(m);
    s.accuracy = 0.0;
    s.certified = true;
    s.kind = SubproblemSolution::Certificate::closed_form;
    s.value = model_value(m, s.point);
    return s;
  }

  const double mu = m.quad;
  if (!(mu > 0)) throw std::logic_error("solve_prox_model: model is not strongly convex");
  const double L = model_smooth_lipschitz(m);

  SubproblemSolution best;
  best.kind = SubproblemSolution::Certificate::suboptimality_bound;
  best.certified = false;
  best.accuracy = kInf;

  VectorXd x0 = (warm && warm->size() == m.center.size()) ? *warm : m.center;
  x0 = project(*m.set, x0);
  const double f0 = model_value(m, x0);
  best.point = x0;
  best.value = f0;

  if (budget < 1) {
    best.inner_iterations = 0;
    return best;  // cannot certify anything without a prox step
  }

  // First step doubles as the certificate for the starting point:
  // h* >= value(x1) - residual^2/(2 mu).
  StepResult s1 = prox_gradient_step(m, x0, model_smooth_gradient(m, x0), L);
  const double lb = s1.value - s1.residual_norm * s1.residual_norm / (2.0 * mu);
  const double eps_x0 = std::sqrt(2.0 * std::max(0.0, f0 - lb) / mu);
  if (eps_x0 <= target_eps) {
    best.accuracy = eps_x0;
    best.certified = true;
    best.inner_iterations = 0;
    return best;
  }

  const double q = mu / L;
  const double theta = (1.0 - std::sqrt(q)) / (1.0 + std::sqrt(q));

  VectorXd x_prev = x0;
  VectorXd x = s1.point;
  double eps = s1.residual_norm / mu;
  best.point = x;
  best.value = s1.value;
  best.accuracy = eps;
  best.inner_iterations = 1;
  if (eps <= target_eps) {
    best.certified = true;
    return best;
  }

  VectorXd z = x + theta * (x - x_prev);
  for (int it = 2; it <= budget; ++it) {
    StepResult s = prox_gradient_step(m, z, model_smooth_gradient(m, z), L);
    eps = s.residual_norm / mu;
    if (eps < best.accuracy) {
      best.point = s.point;
      best.value = s.value;
      best.accuracy = eps;
      best.inner_iterations = it;
    }
    if (eps <= target_eps) {
      best.point = s.point;
      best.value = s.value;
      best.accuracy = eps;
      best.inner_iterations = it;
      best.certified = true;
      return best;
    }
    z = s.point + theta * (s.point - x);
    x_prev = x;
    x = s.point;
  }
  best.inner_iterations = budget;
  return best;
}

SubproblemSolution prox_gradient_residual_solve(const ProxModel& m, double grad_tol,
                                                int budget, const VectorXd* warm) {
  const double L = model_smooth_lipschitz(m);
  if (!(L > 0)) throw std::logic_error("prox_gradient_residual_solve: zero curvature");

  VectorXd x = (warm && warm->size() == m.center.size()) ? *warm : m.center;
  x = project(*m.set, x);

  SubproblemSolution out;
  out.kind = SubproblemSolution::Certificate::suboptimality_bound;
  out.certified = false;
  out.point = x;
  out.value = model_value(m, x);
  out.accuracy = kInf;

  VectorXd z = x;
  double t = 1.0;
  for (int it = 1; it <= budget; ++it) {
    StepResult s = prox_gradient_step(m, z, model_smooth_gradient(m, z), L);
    out.point = s.point;
    out.value = s.value;
    out.accuracy = s.residual_norm;
    out.inner_iterations = it;
    if (s.residual_norm <= grad_tol) {
      out.certified = true;
      return out;
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    z = s.point + ((t - 1.0) / t_next) * (s.point - x);
    t = t_next;
    x = s.point;
  }
  return out;
}

SubproblemSolution solve_component(const Subproblem& sub, double target_eps,
                                   int budget, VectorXd* warm) {
  if (target_eps < 0) throw std::invalid_argument("solve_component: negative accuracy");
  const ComponentSpec& c = sub.component();
  if (target_eps == 0 && !has_closed_form(c))
    throw std::invalid_argument(
        "solve_component: exact accuracy requested but no closed form is registered");
  ProxModel m = dual_subproblem_model(sub);
  SubproblemSolution s = solve_prox_model(m, target_eps, budget, warm,
                                          has_closed_form(c), is_separable(c.set));
  if (warm) *warm = s.point;
  return s;
}

SubproblemSolution projected_gradient_solve(const Subproblem& sub, double target_eps,
                                            int budget, VectorXd* warm) {
  if (!(target_eps > 0))
    throw std::invalid_argument("projected_gradient_solve: accuracy must be positive");
  ProxModel m = dual_subproblem_model(sub);
  SubproblemSolution s = solve_prox_model(m, target_eps, budget, warm, false,
                                          is_separable(sub.component().set));
  if (warm) *warm = s.point;
  return s;
}

}  // namespace egdd
