#include "egdd/smoothing.hpp"

#include <cmath>
#include <stdexcept>

#include "egdd/parallel.hpp"

namespace egdd {

namespace {

struct DualPartial {
  double value = 0.0;
  VectorXd grad;  // sum of A_i x_i - b_i over the subtree
  double prox = 0.0;
  double sigma_eps_sq = 0.0;
  bool certified = true;
};

}  // namespace

SmoothedDualEval smoothed_dual(const Problem& p, const VectorXd& y, double beta1,
                               double per_component_eps, int threads,
                               std::vector<VectorXd>* warm, int budget) {
  if (!(beta1 > 0)) throw std::invalid_argument("smoothed_dual: beta1 must be positive");
  if (per_component_eps < 0)
    throw std::invalid_argument("smoothed_dual: negative accuracy");

  const int M = p.size();
  SmoothedDualEval out;
  out.points.resize(M);
  out.accuracy.resize(M);

  DualPartial total = tree_reduce<DualPartial>(
      M, threads,
      [&](int i) -> DualPartial {
        Subproblem sub{&p, i, y, beta1};
        VectorXd* w = warm ? &(*warm)[i] : nullptr;
        SubproblemSolution s = solve_component(sub, per_component_eps, budget, w);
        DualPartial part;
        part.value = s.value;
        part.grad = -p.components[i].b;
        p.components[i].A.apply_add(s.point, part.grad);
        part.prox = prox_value(p.components[i], s.point);
        part.sigma_eps_sq = p.components[i].sigma * s.accuracy * s.accuracy;
        part.certified = s.certified;
        out.points[i] = std::move(s.point);
        out.accuracy[i] = s.accuracy;
        return part;
      },
      [](DualPartial& into, DualPartial&& from) {
        into.value += from.value;
        into.grad += from.grad;
        into.prox += from.prox;
        into.sigma_eps_sq += from.sigma_eps_sq;
        into.certified = into.certified && from.certified;
      });

  out.value = total.value;
  out.gradient = std::move(total.grad);
  out.prox_sum = total.prox;
  out.sigma_eps_sq = total.sigma_eps_sq;
  out.certified = total.certified;
  return out;
}

double dual_lipschitz(double beta1, const ProblemConstants& k) {
  if (!(beta1 > 0)) throw std::invalid_argument("dual_lipschitz: beta1 must be positive");
  return k.ratio_sum / beta1;
}

PenaltyEval penalty_from_residual(const VectorXd& residual, double beta2, double phi) {
  if (!(beta2 > 0)) throw std::invalid_argument("penalty: beta2 must be positive");
  PenaltyEval e;
  e.psi = residual.squaredNorm() / (2.0 * beta2);
  e.y_star = residual / beta2;
  e.f = phi + e.psi;
  return e;
}

PenaltyEval penalty(const Problem& p, const std::vector<VectorXd>& x, double beta2,
                    int threads) {
  const VectorXd r = coupling_residual(p, x, threads);
  return penalty_from_residual(r, beta2, objective_value(p, x, threads));
}

VectorXd gradient_map(const VectorXd& y_hat, double beta1,
                      const SmoothedDualEval& eval, const ProblemConstants& k) {
  return y_hat + eval.gradient / dual_lipschitz(beta1, k);
}

GapBounds gap_bounds(double beta1, double beta2, double delta, double R_ref,
                     double prox_bound_sum, double feas_norm) {
  if (!(beta1 > 0) || !(beta2 > 0))
    throw std::invalid_argument("gap_bounds: smoothness parameters must be positive");
  if (delta < 0 || R_ref < 0) throw std::invalid_argument("gap_bounds: negative input");
  GapBounds g;
  g.feas_bound =
      beta2 * (R_ref + std::sqrt(R_ref * R_ref + 2.0 * beta1 * prox_bound_sum / beta2 +
                                 2.0 * delta / beta2));
  g.dual_gap_upper = delta + beta1 * prox_bound_sum;
  g.dual_gap_lower = -R_ref * feas_norm;
  return g;
}

}  // namespace egdd
