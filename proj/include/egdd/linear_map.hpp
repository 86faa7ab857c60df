#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

namespace egdd {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using SparseMat = Eigen::SparseMatrix<double>;  // compressed-column storage

/// Real m x n coupling matrix, stored dense or sparse. Small matrices
/// (fewer than 64*64 entries) fall back to dense storage.
class LinearMap {
 public:
  LinearMap() = default;

  static LinearMap dense(MatrixXd a);
  static LinearMap sparse(int rows, int cols,
                          const std::vector<Eigen::Triplet<double>>& entries);
  /// Picks dense or sparse storage based on the dense-fallback threshold.
  static LinearMap from_triplets(int rows, int cols,
                                 const std::vector<Eigen::Triplet<double>>& entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_dense() const { return dense_storage_; }

  VectorXd apply(const VectorXd& x) const;            // A x
  VectorXd apply_transpose(const VectorXd& y) const;  // A' y
  void apply_add(const VectorXd& x, VectorXd& y, double scale = 1.0) const;

  const MatrixXd& dense_matrix() const { return dense_; }
  const SparseMat& sparse_matrix() const { return sparse_; }
  MatrixXd to_dense() const;
  long nonzeros() const;

  bool equals(const LinearMap& other) const;  // exact entrywise comparison

 private:
  int rows_ = 0, cols_ = 0;
  bool dense_storage_ = true;
  MatrixXd dense_;
  SparseMat sparse_;
};

/// Largest singular value via power iteration on A'A with a fixed seed.
/// Returns 0 for the all-zero matrix. Throws std::runtime_error when the
/// relative change has not dropped below `tol` within 10*(rows+cols)
/// iterations (the achieved residual is reported in the message).
double spectral_norm(const LinearMap& a, double tol = 1e-10);
double spectral_norm(const MatrixXd& a, double tol = 1e-10);

}  // namespace egdd
