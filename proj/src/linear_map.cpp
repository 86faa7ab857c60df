#include "egdd/linear_map.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "egdd/rng.hpp"

namespace egdd {

namespace {
constexpr long kDenseFallback = 64L * 64L;
}

LinearMap LinearMap::dense(MatrixXd a) {
  LinearMap m;
  m.rows_ = static_cast<int>(a.rows());
  m.cols_ = static_cast<int>(a.cols());
  m.dense_storage_ = true;
  m.dense_ = std::move(a);
  return m;
}

LinearMap LinearMap::sparse(int rows, int cols,
                            const std::vector<Eigen::Triplet<double>>& entries) {
  LinearMap m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.dense_storage_ = false;
  m.sparse_.resize(rows, cols);
  m.sparse_.setFromTriplets(entries.begin(), entries.end());
  m.sparse_.makeCompressed();
  return m;
}

LinearMap LinearMap::from_triplets(int rows, int cols,
                                   const std::vector<Eigen::Triplet<double>>& entries) {
  if (static_cast<long>(rows) * cols < kDenseFallback) {
    MatrixXd d = MatrixXd::Zero(rows, cols);
    for (const auto& t : entries) d(t.row(), t.col()) += t.value();
    return dense(std::move(d));
  }
  return sparse(rows, cols, entries);
}

VectorXd LinearMap::apply(const VectorXd& x) const {
  return dense_storage_ ? VectorXd(dense_ * x) : VectorXd(sparse_ * x);
}

VectorXd LinearMap::apply_transpose(const VectorXd& y) const {
  return dense_storage_ ? VectorXd(dense_.transpose() * y)
                        : VectorXd(sparse_.transpose() * y);
}

void LinearMap::apply_add(const VectorXd& x, VectorXd& y, double scale) const {
  if (dense_storage_)
    y.noalias() += scale * (dense_ * x);
  else
    y += scale * (sparse_ * x);
}

MatrixXd LinearMap::to_dense() const {
  return dense_storage_ ? dense_ : MatrixXd(sparse_);
}

long LinearMap::nonzeros() const {
  if (!dense_storage_) return sparse_.nonZeros();
  long nnz = 0;
  for (int j = 0; j < cols_; ++j)
    for (int i = 0; i < rows_; ++i)
      if (dense_(i, j) != 0.0) ++nnz;
  return nnz;
}

bool LinearMap::equals(const LinearMap& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  return to_dense() == other.to_dense();
}

namespace {

double power_iteration(int rows, int cols,
                       const std::function<VectorXd(const VectorXd&)>& apply,
                       const std::function<VectorXd(const VectorXd&)>& apply_t,
                       double tol) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("spectral_norm: empty matrix");
  if (tol <= 0) throw std::invalid_argument("spectral_norm: tol must be positive");

  Xoshiro256pp gen(0x5eed5eedULL);
  VectorXd v(cols);
  for (int i = 0; i < cols; ++i) v[i] = gen.normal();
  double nv = v.norm();
  if (nv == 0) v.setOnes(), nv = v.norm();
  v /= nv;

  const int cap = 10 * (rows + cols);
  double est = 0.0;
  double change = 0.0;
  for (int it = 0; it < cap; ++it) {
    VectorXd u = apply(v);
    const double s = u.norm();
    if (s == 0.0) return 0.0;  // v in the null space; zero matrix in practice
    VectorXd w = apply_t(u);
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    v = w / nw;
    change = std::abs(s - est);
    est = s;
    if (change <= tol * std::max(est, 1e-300)) return est;
  }
  std::ostringstream msg;
  msg << "spectral_norm: power iteration did not converge after " << cap
      << " iterations (residual " << change << ", estimate " << est << ")";
  throw std::runtime_error(msg.str());
}

}  // namespace

double spectral_norm(const LinearMap& a, double tol) {
  return power_iteration(
      a.rows(), a.cols(), [&](const VectorXd& x) { return a.apply(x); },
      [&](const VectorXd& y) { return a.apply_transpose(y); }, tol);
}

double spectral_norm(const MatrixXd& a, double tol) {
  return spectral_norm(LinearMap::dense(a), tol);
}

}  // namespace egdd
