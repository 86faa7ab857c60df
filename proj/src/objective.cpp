#include "egdd/objective.hpp"

#include <cmath>
#include <stdexcept>

namespace egdd {

QuadraticObjective::QuadraticObjective(LinearMap Q, VectorXd q)
    : Q_(std::move(Q)), q_(std::move(q)) {
  if (Q_.rows() != Q_.cols() || Q_.rows() != q_.size())
    throw std::invalid_argument("QuadraticObjective: inconsistent dimensions");
  lipschitz_ = Q_.rows() == 0 ? 0.0 : spectral_norm(Q_);
}

QuadraticLogObjective::QuadraticLogObjective(VectorXd diag, VectorXd anchor,
                                             VectorXd log_coef, double log_weight)
    : diag_(std::move(diag)),
      anchor_(std::move(anchor)),
      log_coef_(std::move(log_coef)),
      log_weight_(log_weight) {
  if (diag_.size() != anchor_.size() || diag_.size() != log_coef_.size())
    throw std::invalid_argument("QuadraticLogObjective: inconsistent dimensions");
  if ((diag_.array() < 0).any() || (log_coef_.array() < 0).any() || log_weight_ < 0)
    throw std::invalid_argument(
        "QuadraticLogObjective: requires nonnegative curvature, log coefficients "
        "and weight for convexity on the orthant");
  lipschitz_ = (diag_.size() ? diag_.maxCoeff() : 0.0) +
               log_weight_ * log_coef_.squaredNorm();
}

double QuadraticLogObjective::smooth_value(const VectorXd& x) const {
  const VectorXd d = x - anchor_;
  const double quad = 0.5 * (diag_.array() * d.array().square()).sum();
  const double t = log_coef_.dot(x);
  if (t <= -1.0) throw std::domain_error("QuadraticLogObjective: log argument <= 0");
  return quad - log_weight_ * std::log1p(t);
}

void QuadraticLogObjective::add_smooth_gradient(const VectorXd& x, VectorXd& g) const {
  g.array() += diag_.array() * (x - anchor_).array();
  const double t = log_coef_.dot(x);
  if (t <= -1.0) throw std::domain_error("QuadraticLogObjective: log argument <= 0");
  g -= (log_weight_ / (1.0 + t)) * log_coef_;
}

}  // namespace egdd
