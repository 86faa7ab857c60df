#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "egdd/generators.hpp"
#include "egdd/problem.hpp"
#include "egdd/rng.hpp"

using namespace egdd;

TEST_CASE("basis pursuit generator") {
  std::vector<VectorXd> planted;
  Problem p = generate_basis_pursuit(20, 128, 5, 0.75, &planted);
  CHECK(p.size() == 128);
  CHECK(p.m == 20);

  SUBCASE("planted point is floor(0.05 n)-sparse") {
    int nnz = 0;
    for (const auto& x : planted) nnz += x[0] != 0.0;
    CHECK(nnz == 6);
  }

  SUBCASE("rows are orthonormal") {
    MatrixXd a(p.m, p.size());
    for (int i = 0; i < p.size(); ++i) a.col(i) = p.components[i].A.dense_matrix();
    MatrixXd gram = a * a.transpose();
    CHECK((gram - MatrixXd::Identity(p.m, p.m)).cwiseAbs().maxCoeff() <= 1e-12);
  }

  SUBCASE("planted point is feasible") {
    CHECK(coupling_residual(p, planted).norm() <= 1e-12);
  }

  SUBCASE("seeds are reproducible") {
    Problem q = generate_basis_pursuit(20, 128, 5, 0.75);
    for (int i = 0; i < p.size(); ++i) {
      CHECK(p.components[i].A.equals(q.components[i].A));
      CHECK(p.components[i].b == q.components[i].b);
      CHECK(p.components[i].shift == q.components[i].shift);
    }
  }

  SUBCASE("shift ratio drives alpha_star") {
    ProblemConstants k = compute_constants(p);
    CHECK(k.alpha_star == doctest::Approx(0.75).epsilon(1e-13));
    Problem q = generate_basis_pursuit(20, 128, 5, 0.25);
    CHECK(compute_constants(q).alpha_star == doctest::Approx(0.25).epsilon(1e-13));
  }

  CHECK_THROWS_AS(generate_basis_pursuit(64, 64, 1), std::invalid_argument);
}

TEST_CASE("nonsmooth family") {
  Problem p = generate_nonsmooth(4, 0);
  CHECK(p.size() == 4);
  CHECK(p.m == 1);
  CHECK(p.b_total[0] == doctest::Approx(8.0));

  const double expected_anchor[] = {-1.0, 0.0, 1.0, 2.0};
  for (int i = 0; i < 4; ++i) {
    const auto* l1 = p.components[i].objective->l1_term();
    REQUIRE(l1 != nullptr);
    CHECK(l1->anchor[0] == doctest::Approx(expected_anchor[i]));
    CHECK(l1->weight[0] == doctest::Approx(double(i + 1)));
    CHECK(p.components[i].A.dense_matrix()(0, 0) == 1.0);
  }

  std::vector<VectorXd> x(4, VectorXd::Constant(1, 2.0));
  CHECK(coupling_residual(p, x).norm() <= 1e-14);
}

TEST_CASE("qp generator") {
  std::vector<VectorXd> planted;
  Problem p = generate_qp_sized(6, 8, 3, 7, 0.6, -0.1, 0.1, -1.0, 1.0, 2.0, 77,
                                &planted);
  CHECK(p.size() == 6);
  CHECK(p.m == 8);

  SUBCASE("objective matrices are symmetric positive semidefinite") {
    for (const auto& c : p.components) {
      const auto& q = static_cast<const QuadraticObjective&>(*c.objective);
      MatrixXd qd = q.Q().to_dense();
      CHECK((qd - qd.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(qd);
      CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    }
  }

  SUBCASE("planted point is strictly positive and feasible") {
    for (const auto& x : planted) CHECK((x.array() > 0).all());
    CHECK(coupling_residual(p, planted).norm() <= 1e-12);
  }

  SUBCASE("class-3 size ranges") {
    QpClassRanges rg = qp_class_ranges(3);
    CHECK(rg.M_lo > 1000);
    CHECK(rg.M_hi < 2000);
    CHECK(rg.density == 0.05);
    Xoshiro256pp sizing = Xoshiro256pp::component_stream(9 ^ 0xabcdULL, 0);
    for (int rep = 0; rep < 50; ++rep) {
      const long M = sizing.uniform_int(rg.M_lo, rg.M_hi);
      CHECK(M > 1000);
      CHECK(M < 2000);
    }
  }
}

TEST_CASE("nonlinear family") {
  std::vector<VectorXd> planted;
  Problem p = generate_nonlinear(1, 'I', 123, &planted);
  double wsum = 0;
  for (const auto& c : p.components) {
    const auto& obj = static_cast<const QuadraticLogObjective&>(*c.objective);
    wsum += obj.log_weight();
    CHECK((obj.diag().array() >= 0).all());
    CHECK((obj.log_coef().array() >= 0).all());
  }
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(coupling_residual(p, planted).norm() / p.b_total.norm() <= 1e-12);

  SUBCASE("scenario II drops the quadratic term") {
    Problem q = generate_nonlinear(1, '2', 123);
    for (const auto& c : q.components) {
      const auto& obj = static_cast<const QuadraticLogObjective&>(*c.objective);
      CHECK(obj.diag().maxCoeff() == 0.0);
    }
  }

  SUBCASE("objectives are convex on the orthant: sampled Hessians are psd") {
    Xoshiro256pp gen(1);
    const auto& c = p.components[0];
    const auto& obj = static_cast<const QuadraticLogObjective&>(*c.objective);
    for (int rep = 0; rep < 5; ++rep) {
      VectorXd x(c.n());
      for (int j = 0; j < c.n(); ++j) x[j] = gen.uniform(0.0, 2.0);
      const double t = 1.0 + obj.log_coef().dot(x);
      MatrixXd hess = MatrixXd(obj.diag().asDiagonal()) +
                      (obj.log_weight() / (t * t)) * obj.log_coef() *
                          obj.log_coef().transpose();
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(hess);
      CHECK(es.eigenvalues().minCoeff() >= -1e-12);
    }
  }

  CHECK_THROWS_AS(generate_nonlinear(9, 'I', 0), std::invalid_argument);
}

TEST_CASE("generated problems validate and are reproducible") {
  GeneratorSpec spec;
  spec.family = "nonsmooth_l1";
  spec.n = 25;
  Problem a = generate(spec);
  Problem b = generate(spec);
  CHECK(a.size() == b.size());
  for (int i = 0; i < a.size(); ++i) CHECK(a.components[i].b == b.components[i].b);

  spec.family = "unknown";
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);
}
