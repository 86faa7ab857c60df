#include "egdd/problem.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "egdd/parallel.hpp"
#include "egdd/rng.hpp"

namespace egdd {

namespace {

[[noreturn]] void fail(int i, const std::string& what) {
  std::ostringstream msg;
  msg << "component " << i << ": " << what;
  throw std::invalid_argument(msg.str());
}

}  // namespace

int Problem::n() const {
  int total = 0;
  for (const auto& c : components) total += c.n();
  return total;
}

Problem validate(Problem p) {
  if (p.components.empty()) throw std::invalid_argument("problem has no components");
  if (p.m < 1) throw std::invalid_argument("coupling row count m must be >= 1");

  VectorXd b_total = VectorXd::Zero(p.m);
  for (int i = 0; i < p.size(); ++i) {
    const auto& c = p.components[i];
    if (!c.objective) fail(i, "missing objective");
    if (c.A.rows() != p.m) {
      std::ostringstream what;
      what << "A has " << c.A.rows() << " rows, expected m = " << p.m;
      fail(i, what.str());
    }
    if (c.A.cols() < 1) fail(i, "A has no columns");
    if (c.b.size() != p.m) fail(i, "b has wrong length");
    if (c.center.size() != c.n()) fail(i, "prox center has wrong length");
    if (!(c.sigma > 0)) fail(i, "prox convexity parameter sigma must be positive");
    if (!(c.shift > 0)) fail(i, "prox shift must be positive");
    if (!is_bounded(c.set) && !(c.bounding_radius > 0))
      fail(i, "unbounded feasible set needs a declared bounding radius");
    if (!contains(c.set, c.center, 1e-9)) fail(i, "prox center is infeasible");
    if (const auto* l1 = c.objective->l1_term()) {
      if (l1->weight.size() != c.n() || l1->anchor.size() != c.n())
        fail(i, "l1 term has wrong length");
      if ((l1->weight.array() < 0).any()) fail(i, "l1 weights must be nonnegative");
    }
    b_total += c.b;
  }
  p.b_total = std::move(b_total);
  return p;
}

double prox_radius_sq(const ComponentSpec& c) {
  if (is_bounded(c.set)) return max_sq_distance(c.set, c.center);
  return c.bounding_radius * c.bounding_radius;
}

double prox_bound(const ComponentSpec& c) {
  return 0.5 * c.sigma * prox_radius_sq(c) + c.shift;
}

double prox_value(const ComponentSpec& c, const VectorXd& x) {
  return 0.5 * c.sigma * (x - c.center).squaredNorm() + c.shift;
}

double shift_for_ratio(double sigma, double radius_sq, double ratio) {
  if (!(ratio > 0 && ratio < 1))
    throw std::invalid_argument("shift_for_ratio: ratio must be in (0,1)");
  return ratio / (1.0 - ratio) * 0.5 * sigma * radius_sq;
}

double default_bounding_radius(const VectorXd& center) {
  return 10.0 * (1.0 + center.norm());
}

double coupling_norm(const Problem& p, double tol) {
  const int m = p.m;
  Xoshiro256pp gen(0x5eed5eedULL);

  std::vector<VectorXd> v(p.size());
  double nv2 = 0;
  for (int i = 0; i < p.size(); ++i) {
    v[i].resize(p.components[i].n());
    for (int j = 0; j < v[i].size(); ++j) v[i][j] = gen.normal();
    nv2 += v[i].squaredNorm();
  }
  double nv = std::sqrt(nv2);
  if (nv == 0) return 0;
  for (auto& b : v) b /= nv;

  int total_n = 0;
  for (const auto& c : p.components) total_n += c.n();
  const int cap = 10 * (m + total_n);
  double est = 0, change = 0;
  for (int it = 0; it < cap; ++it) {
    VectorXd u = VectorXd::Zero(m);
    for (int i = 0; i < p.size(); ++i) p.components[i].A.apply_add(v[i], u);
    const double s = u.norm();
    if (s == 0) return 0;
    double nw2 = 0;
    for (int i = 0; i < p.size(); ++i) {
      v[i] = p.components[i].A.apply_transpose(u);
      nw2 += v[i].squaredNorm();
    }
    const double nw = std::sqrt(nw2);
    if (nw == 0) return 0;
    for (auto& b : v) b /= nw;
    change = std::abs(s - est);
    est = s;
    if (change <= tol * std::max(est, 1e-300)) return est;
  }
  std::ostringstream msg;
  msg << "coupling_norm: power iteration did not converge (residual " << change << ")";
  throw std::runtime_error(msg.str());
}

ProblemConstants compute_constants(const Problem& p) {
  ProblemConstants k;
  const int M = p.size();
  k.component_norm.resize(M);
  k.component_prox_bound.resize(M);

  double max_ratio = 0;
  double spread_sq = 0;
  for (int i = 0; i < M; ++i) {
    const auto& c = p.components[i];
    k.component_norm[i] = spectral_norm(c.A);
    const double d = prox_bound(c);
    k.component_prox_bound[i] = d;
    k.prox_bound_sum += d;
    k.prox_min_sum += c.shift;
    k.sigma_sum += c.sigma;
    const double ratio = k.component_norm[i] * k.component_norm[i] / c.sigma;
    k.ratio_sum += ratio;
    k.norm_sq_sum += k.component_norm[i] * k.component_norm[i];
    max_ratio = std::max(max_ratio, ratio);
    spread_sq += 2.0 * d / c.sigma;
  }
  k.coupling_lipschitz = M * max_ratio;
  k.center_spread = std::sqrt(spread_sq);
  k.coupling_norm = coupling_norm(p);
  k.alpha_star = k.prox_min_sum / k.prox_bound_sum;

  // ||A'(A c - b)|| over the stacked prox centers.
  VectorXd rc = -p.b_total;
  for (int i = 0; i < M; ++i) p.components[i].A.apply_add(p.components[i].center, rc);
  double atn2 = 0;
  for (int i = 0; i < M; ++i) atn2 += p.components[i].A.apply_transpose(rc).squaredNorm();
  k.dual_curvature = k.coupling_norm * k.coupling_norm * k.center_spread + std::sqrt(atn2);
  return k;
}

VectorXd coupling_residual(const Problem& p, const std::vector<VectorXd>& x,
                           int threads) {
  VectorXd r = tree_reduce<VectorXd>(
      p.size(), threads,
      [&](int i) -> VectorXd {
        VectorXd u = -p.components[i].b;
        p.components[i].A.apply_add(x[i], u);
        return u;
      },
      [](VectorXd& into, VectorXd&& from) { into += from; });
  return r;
}

double objective_value(const Problem& p, const std::vector<VectorXd>& x,
                       int threads) {
  return tree_reduce<double>(
      p.size(), threads,
      [&](int i) { return p.components[i].objective->value(x[i]); },
      [](double& into, double&& from) { into += from; });
}

double prox_sum(const Problem& p, const std::vector<VectorXd>& x) {
  double acc = 0;
  for (int i = 0; i < p.size(); ++i) acc += prox_value(p.components[i], x[i]);
  return acc;
}

}  // namespace egdd
