#include "egdd/generators.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "egdd/rng.hpp"

namespace egdd {

namespace {

std::vector<Eigen::Triplet<double>> random_triplets(int rows, int cols,
                                                    double density, double lo,
                                                    double hi, Xoshiro256pp& gen) {
  std::vector<Eigen::Triplet<double>> tri;
  tri.reserve(static_cast<std::size_t>(rows * cols * density) + 8);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double coin = gen.uniform();
      if (coin <= density) tri.emplace_back(i, j, gen.uniform(lo, hi));
    }
  return tri;
}

}  // namespace

Problem generate_basis_pursuit(int m, int n, std::uint64_t seed, double alpha_star,
                               std::vector<VectorXd>* planted) {
  if (m >= n) throw std::invalid_argument("generate_basis_pursuit: requires m < n");

  Xoshiro256pp gen = Xoshiro256pp::component_stream(seed, 0);
  MatrixXd g(m, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) g(i, j) = gen.normal();

  // orthonormal rows from the thin QR of g'
  Eigen::HouseholderQR<MatrixXd> qr(g.transpose());
  MatrixXd thin_q = qr.householderQ() * MatrixXd::Identity(n, m);
  MatrixXd a = thin_q.transpose();

  // planted sparse point: floor(0.05 n) seeded positions and values
  const int spars = static_cast<int>(std::floor(0.05 * n));
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (int j = 0; j < spars; ++j) {
    const int pick = static_cast<int>(gen.uniform_int(j, n - 1));
    std::swap(idx[j], idx[pick]);
  }
  VectorXd x0 = VectorXd::Zero(n);
  for (int j = 0; j < spars; ++j) x0[idx[j]] = 10.0 * gen.normal();
  const VectorXd b = a * x0;

  Problem p;
  p.m = m;
  p.components.resize(n);
  const double radius = 10.0;  // default bound for the free scalar blocks
  const double shift = shift_for_ratio(1.0, radius * radius, alpha_star);
  for (int i = 0; i < n; ++i) {
    ComponentSpec& c = p.components[i];
    c.objective = std::make_shared<WeightedL1Objective>(VectorXd::Ones(1),
                                                        VectorXd::Zero(1));
    c.set = FreeSet{};
    c.A = LinearMap::dense(a.col(i));
    c.b = b / double(n);
    c.center = VectorXd::Zero(1);
    c.sigma = 1.0;
    c.shift = shift;
    c.bounding_radius = radius;
  }
  if (planted) {
    planted->assign(n, VectorXd(1));
    for (int i = 0; i < n; ++i) (*planted)[i][0] = x0[i];
  }
  return validate(std::move(p));
}

Problem generate_nonsmooth(int n, std::uint64_t seed,
                           std::vector<VectorXd>* planted) {
  if (n < 1) throw std::invalid_argument("generate_nonsmooth: n must be >= 1");
  (void)seed;  // the family is fully determined by n

  Problem p;
  p.m = 1;
  p.components.resize(n);
  const double budget = 2.0 * n;
  const double half_width = 10.0 * n;
  for (int i = 0; i < n; ++i) {
    ComponentSpec& c = p.components[i];
    const double anchor = double(i + 1) - 0.5 * n;
    c.objective = std::make_shared<WeightedL1Objective>(
        VectorXd::Constant(1, double(i + 1)), VectorXd::Constant(1, anchor));
    c.set = BoxSet{VectorXd::Constant(1, anchor - half_width),
                   VectorXd::Constant(1, anchor + half_width)};
    c.A = LinearMap::dense(MatrixXd::Ones(1, 1));
    c.b = VectorXd::Constant(1, budget / n);
    c.center = VectorXd::Constant(1, anchor);
    c.sigma = 1.0;
    c.shift = shift_for_ratio(1.0, half_width * half_width, 0.75);
  }
  if (planted) planted->assign(n, VectorXd::Constant(1, 2.0));
  return validate(std::move(p));
}

QpClassRanges qp_class_ranges(int cls) {
  switch (cls) {
    case 1: return {51, 499, 21, 99, 6, 99, 0.5};
    case 2: return {101, 599, 101, 999, 11, 49, 0.1};
    case 3: return {501, 999, 1001, 1999, 101, 199, 0.05};
    default: throw std::invalid_argument("generate_qp: class must be 1, 2 or 3");
  }
}

QpClassRanges nonlinear_class_ranges(int cls) {
  switch (cls) {
    case 1: return {51, 99, 21, 49, 11, 49, 1.0};
    case 2: return {101, 199, 51, 249, 21, 49, 0.5};
    case 3: return {101, 499, 251, 999, 51, 99, 0.1};
    case 4: return {501, 999, 1001, 4999, 51, 99, 0.05};
    case 5: return {501, 999, 5001, 9999, 51, 99, 0.01};
    default: throw std::invalid_argument("generate_nonlinear: class must be 1..5");
  }
}

Problem generate_qp_sized(int M, int m, int n_lo, int n_hi, double density,
                          double q_lo, double q_hi, double a_lo, double a_hi,
                          double r_x0, std::uint64_t seed,
                          std::vector<VectorXd>* planted) {
  Problem p;
  p.m = m;
  p.components.resize(M);
  if (planted) planted->resize(M);

  Xoshiro256pp master = Xoshiro256pp::component_stream(seed, 0);
  std::vector<int> sizes(M);
  for (int i = 0; i < M; ++i) sizes[i] = static_cast<int>(master.uniform_int(n_lo, n_hi));

  for (int i = 0; i < M; ++i) {
    Xoshiro256pp gen = Xoshiro256pp::component_stream(seed, i + 1);
    const int ni = sizes[i];
    const int ri = std::max(1, ni / 2);

    auto rt = random_triplets(ni, ri, density, q_lo, q_hi, gen);
    SparseMat r(ni, ri);
    r.setFromTriplets(rt.begin(), rt.end());
    SparseMat q_sp = SparseMat((r * SparseMat(r.transpose())).pruned());
    LinearMap q = static_cast<long>(ni) * ni < 64L * 64L
                      ? LinearMap::dense(MatrixXd(q_sp))
                      : LinearMap::sparse(ni, ni, [&] {
                          std::vector<Eigen::Triplet<double>> tri;
                          tri.reserve(q_sp.nonZeros());
                          for (int jj = 0; jj < q_sp.outerSize(); ++jj)
                            for (SparseMat::InnerIterator itr(q_sp, jj); itr; ++itr)
                              tri.emplace_back(itr.row(), itr.col(), itr.value());
                          return tri;
                        }());

    LinearMap a = LinearMap::from_triplets(
        m, ni, random_triplets(m, ni, density, a_lo, a_hi, gen));

    VectorXd x0(ni);
    for (int jj = 0; jj < ni; ++jj) x0[jj] = gen.uniform(0.0, r_x0);

    ComponentSpec& c = p.components[i];
    c.objective = std::make_shared<QuadraticObjective>(q, VectorXd(-q.apply(x0)));
    c.set = OrthantSet{};
    c.A = std::move(a);
    c.b = c.A.apply(x0);
    c.center = VectorXd::Zero(ni);
    c.sigma = 1.0;
    c.bounding_radius = 10.0 * (1.0 + r_x0 * std::sqrt(double(ni)));
    c.shift = shift_for_ratio(1.0, c.bounding_radius * c.bounding_radius, 0.75);
    if (planted) (*planted)[i] = std::move(x0);
  }
  return validate(std::move(p));
}

Problem generate_qp(int cls, char scenario, std::uint64_t seed,
                    std::vector<VectorXd>* planted) {
  const QpClassRanges rg = qp_class_ranges(cls);
  double q_lo, q_hi, a_lo, a_hi, r_x0;
  if (scenario == 'I' || scenario == 'i') {
    q_lo = -0.1, q_hi = 0.1, a_lo = -1.0, a_hi = 1.0, r_x0 = 2.0;
  } else if (scenario == 'Z' || scenario == 'z' || scenario == '2') {
    q_lo = -1.0, q_hi = 1.0, a_lo = -5.0, a_hi = 5.0, r_x0 = 5.0;
  } else {
    throw std::invalid_argument("generate_qp: scenario must be I or II");
  }
  Xoshiro256pp sizing = Xoshiro256pp::component_stream(seed ^ 0xabcdULL, 0);
  const int M = static_cast<int>(sizing.uniform_int(rg.M_lo, rg.M_hi));
  const int m = static_cast<int>(sizing.uniform_int(rg.m_lo, rg.m_hi));
  return generate_qp_sized(M, m, rg.n_lo, rg.n_hi, rg.density, q_lo, q_hi, a_lo,
                           a_hi, r_x0, seed, planted);
}

Problem generate_nonlinear(int cls, char scenario, std::uint64_t seed,
                           std::vector<VectorXd>* planted) {
  const QpClassRanges rg = nonlinear_class_ranges(cls);
  double q_lo, q_hi, r_x0;
  if (scenario == 'I' || scenario == 'i') {
    q_lo = -0.01, q_hi = 0.01, r_x0 = 1.0;
  } else if (scenario == 'Z' || scenario == 'z' || scenario == '2') {
    q_lo = 0.0, q_hi = 0.0, r_x0 = 10.0;  // no quadratic term
  } else {
    throw std::invalid_argument("generate_nonlinear: scenario must be I or II");
  }
  const double b_lo = 0.0, b_hi = 100.0, a_lo = -1.0, a_hi = 1.0;

  Xoshiro256pp sizing = Xoshiro256pp::component_stream(seed ^ 0xabcdULL, 0);
  const int M = static_cast<int>(sizing.uniform_int(rg.M_lo, rg.M_hi));
  const int m = static_cast<int>(sizing.uniform_int(rg.m_lo, rg.m_hi));

  Problem p;
  p.m = m;
  p.components.resize(M);
  if (planted) planted->resize(M);

  std::vector<int> sizes(M);
  std::vector<double> w_raw(M);
  Xoshiro256pp master = Xoshiro256pp::component_stream(seed, 0);
  for (int i = 0; i < M; ++i) sizes[i] = static_cast<int>(master.uniform_int(rg.n_lo, rg.n_hi));
  double w_sum = 0;
  for (int i = 0; i < M; ++i) {
    w_raw[i] = master.uniform();
    w_sum += w_raw[i];
  }

  for (int i = 0; i < M; ++i) {
    Xoshiro256pp gen = Xoshiro256pp::component_stream(seed, i + 1);
    const int ni = sizes[i];

    VectorXd qdiag(ni), blin(ni), x0(ni);
    for (int jj = 0; jj < ni; ++jj) qdiag[jj] = std::max(0.0, gen.uniform(q_lo, q_hi));
    for (int jj = 0; jj < ni; ++jj) blin[jj] = gen.uniform(b_lo, b_hi);
    for (int jj = 0; jj < ni; ++jj) x0[jj] = gen.uniform(0.0, r_x0);

    LinearMap a = LinearMap::from_triplets(
        m, ni, random_triplets(m, ni, rg.density, a_lo, a_hi, gen));

    ComponentSpec& c = p.components[i];
    c.objective = std::make_shared<QuadraticLogObjective>(qdiag, x0, blin,
                                                          w_raw[i] / w_sum);
    c.set = OrthantSet{};
    c.A = std::move(a);
    c.b = c.A.apply(x0);
    c.center = VectorXd::Zero(ni);
    c.sigma = 1.0;
    c.bounding_radius = 10.0 * (1.0 + r_x0 * std::sqrt(double(ni)));
    c.shift = shift_for_ratio(1.0, c.bounding_radius * c.bounding_radius, 0.75);
    if (planted) (*planted)[i] = std::move(x0);
  }
  return validate(std::move(p));
}

Problem generate(const GeneratorSpec& s) {
  if (s.family == "basis_pursuit")
    return generate_basis_pursuit(s.m, s.n, s.seed, s.alpha_star);
  if (s.family == "nonsmooth_l1") return generate_nonsmooth(s.n, s.seed);
  if (s.family == "separable_qp") return generate_qp(s.cls, s.scenario, s.seed);
  if (s.family == "nonlinear_log") return generate_nonlinear(s.cls, s.scenario, s.seed);
  throw std::invalid_argument("generate: unknown family " + s.family);
}

}  // namespace egdd
