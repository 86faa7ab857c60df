#pragma once

#include <memory>
#include <string>

#include "egdd/linear_map.hpp"

namespace egdd {

/// Separable nonsmooth part sum_j weight_j * |x_j - anchor_j|.
struct L1Term {
  VectorXd weight, anchor;
  double value(const VectorXd& x) const {
    return (weight.array() * (x - anchor).array().abs()).sum();
  }
};

/// Per-component objective oracle: a smooth part (value/gradient/Lipschitz
/// constant) plus an optional separable l1 part. value() is the total.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual double value(const VectorXd& x) const = 0;
  virtual double smooth_value(const VectorXd&) const { return 0.0; }
  virtual void add_smooth_gradient(const VectorXd&, VectorXd&) const {}
  virtual double smooth_lipschitz() const { return 0.0; }
  virtual bool has_smooth_part() const { return true; }
  virtual const L1Term* l1_term() const { return nullptr; }
  bool is_smooth() const { return l1_term() == nullptr; }

  virtual std::string kind() const = 0;
};

using ObjectivePtr = std::shared_ptr<const Objective>;

class ZeroObjective final : public Objective {
 public:
  double value(const VectorXd&) const override { return 0.0; }
  bool has_smooth_part() const override { return false; }
  std::string kind() const override { return "zero"; }
};

class WeightedL1Objective final : public Objective {
 public:
  WeightedL1Objective(VectorXd weight, VectorXd anchor)
      : term_{std::move(weight), std::move(anchor)} {}

  double value(const VectorXd& x) const override { return term_.value(x); }
  bool has_smooth_part() const override { return false; }
  const L1Term* l1_term() const override { return &term_; }
  std::string kind() const override { return "weighted_l1"; }

  const L1Term& term() const { return term_; }

 private:
  L1Term term_;
};

/// 0.5 x'Qx + q'x with Q symmetric positive semidefinite.
class QuadraticObjective final : public Objective {
 public:
  QuadraticObjective(LinearMap Q, VectorXd q);

  double value(const VectorXd& x) const override { return smooth_value(x); }
  double smooth_value(const VectorXd& x) const override {
    return 0.5 * x.dot(Q_.apply(x)) + q_.dot(x);
  }
  void add_smooth_gradient(const VectorXd& x, VectorXd& g) const override {
    Q_.apply_add(x, g);
    g += q_;
  }
  double smooth_lipschitz() const override { return lipschitz_; }
  std::string kind() const override { return "quadratic"; }

  const LinearMap& Q() const { return Q_; }
  const VectorXd& q() const { return q_; }

 private:
  LinearMap Q_;
  VectorXd q_;
  double lipschitz_;
};

/// 0.5 (x-a)'diag(d)(x-a) - w*log(1 + c'x), convex on x >= 0 when d, c >= 0.
/// The Lipschitz constant max(d) + w*||c||^2 is valid there since 1+c'x >= 1.
class QuadraticLogObjective final : public Objective {
 public:
  QuadraticLogObjective(VectorXd diag, VectorXd anchor, VectorXd log_coef,
                        double log_weight);

  double value(const VectorXd& x) const override { return smooth_value(x); }
  double smooth_value(const VectorXd& x) const override;
  void add_smooth_gradient(const VectorXd& x, VectorXd& g) const override;
  double smooth_lipschitz() const override { return lipschitz_; }
  std::string kind() const override { return "quadratic_log"; }

  const VectorXd& diag() const { return diag_; }
  const VectorXd& anchor() const { return anchor_; }
  const VectorXd& log_coef() const { return log_coef_; }
  double log_weight() const { return log_weight_; }

 private:
  VectorXd diag_, anchor_, log_coef_;
  double log_weight_;
  double lipschitz_;
};

}  // namespace egdd
