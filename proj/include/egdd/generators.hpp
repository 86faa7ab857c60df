#pragma once

#include <cstdint>
#include <string>

#include "egdd/problem.hpp"

namespace egdd {

/// Generator surface mirrored by the CLI. Families:
///   basis_pursuit  — min ||x||_1 s.t. Ax = b with orthonormal rows;
///   nonsmooth_l1   — min sum i|x_i - a_i| with a single budget row;
///   separable_qp   — block quadratic objectives over the orthant;
///   nonlinear_log  — quadratic-minus-log objectives over the orthant.
struct GeneratorSpec {
  std::string family = "basis_pursuit";
  int cls = 1;
  char scenario = 'I';
  std::uint64_t seed = 0;
  int m = 50;
  int n = 128;
  double alpha_star = 0.75;  // prox shift ratio (basis pursuit)
};

/// A has orthonormal rows (QR of a seeded Gaussian matrix), b = A x0 for a
/// floor(0.05 n)-sparse planted x0; one scalar |x_i| component per column.
Problem generate_basis_pursuit(int m, int n, std::uint64_t seed,
                               double alpha_star = 0.75,
                               std::vector<VectorXd>* planted = nullptr);

/// n scalar components with weights i and anchors i - n/2, coupled by
/// sum x_i = 2n; boxes wide enough to stay inactive.
Problem generate_nonsmooth(int n, std::uint64_t seed,
                           std::vector<VectorXd>* planted = nullptr);

struct QpClassRanges {
  int m_lo, m_hi, M_lo, M_hi, n_lo, n_hi;
  double density;
};

QpClassRanges qp_class_ranges(int cls);
QpClassRanges nonlinear_class_ranges(int cls);

Problem generate_qp(int cls, char scenario, std::uint64_t seed,
                    std::vector<VectorXd>* planted = nullptr);

/// Fully parameterized variant used for small reproducible instances.
Problem generate_qp_sized(int M, int m, int n_lo, int n_hi, double density,
                          double q_lo, double q_hi, double a_lo, double a_hi,
                          double r_x0, std::uint64_t seed,
                          std::vector<VectorXd>* planted = nullptr);

Problem generate_nonlinear(int cls, char scenario, std::uint64_t seed,
                           std::vector<VectorXd>* planted = nullptr);

Problem generate(const GeneratorSpec& spec);

}  // namespace egdd
