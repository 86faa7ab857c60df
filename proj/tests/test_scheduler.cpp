#include <doctest.h>

#include "egdd/excessive_gap.hpp"
#include "egdd/rng.hpp"

using namespace egdd;

namespace {

// oracle: positive root of t^2 + c t - c = 0 with c = (1 - a*tau)*tau^2
double tau_next_oracle(double tau, double alpha) {
  const double c = (1.0 - alpha * tau) * tau * tau;
  return 0.5 * (-c + std::sqrt(c * c + 4.0 * c));
}

}  // namespace

TEST_CASE("dual step-size update") {
  CHECK(update_tau_dual(0.6180340, 1.0) ==
        doctest::Approx(tau_next_oracle(0.6180340, 1.0)).epsilon(1e-14));
  CHECK(update_tau_dual(0.6180340, 1.0) == doctest::Approx(0.3159212).epsilon(1e-5));
  CHECK(update_tau_dual(0.6180340, 0.0) ==
        doctest::Approx(tau_next_oracle(0.6180340, 0.0)).epsilon(1e-14));
  CHECK(update_tau_dual(0.6180340, 0.0) == doctest::Approx(0.4558876).epsilon(1e-5));
  CHECK(update_tau_dual(0.0, 0.5) == 0.0);
}

TEST_CASE("dual update maintains its defining identity and shrinks tau") {
  Xoshiro256pp gen(23);
  for (int rep = 0; rep < 500; ++rep) {
    const double tau = gen.uniform(1e-6, 0.99);
    const double alpha = gen.uniform(0.0, 1.0);
    const double next = update_tau_dual(tau, alpha);
    CHECK(next > 0.0);
    CHECK(next < tau);
    const double lhs = next * next / (1.0 - next);
    const double rhs = (1.0 - alpha * tau) * tau * tau;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("primal step-size update") {
  CHECK(update_tau_primal(0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  double tau = 0.5;
  for (int k = 1; k <= 50; ++k) {
    tau = update_tau_primal(tau);
    CHECK(tau == doctest::Approx(1.0 / (k + 2.0)).epsilon(1e-13));
  }
  CHECK(update_tau_primal(1e-9) == doctest::Approx(1e-9).epsilon(1e-8));
}

TEST_CASE("accuracy scales") {
  ProblemConstants k;
  k.component_norm = {1.0};
  k.sigma_sum = 1.0;
  k.dual_curvature = 1.0;
  k.coupling_lipschitz = 1.0;
  k.coupling_norm = 1.0;
  k.norm_sq_sum = 1.0;
  k.center_spread = 1.0;

  SchedulerState s;
  s.tau = 0.5;
  s.beta1 = 1.0;
  s.beta2 = 1.0;

  CHECK(accuracy_scale_dual(s, 0.0, k) == doctest::Approx(1.5));
  CHECK(accuracy_scale_primal(s, k) == doctest::Approx(2.0));
  CHECK(initial_accuracy_scale(1.0, k) == doctest::Approx(1.5));

  SUBCASE("degenerate tau") {
    s.tau = 0.0;
    CHECK(accuracy_scale_dual(s, 3.0, k) ==
          doctest::Approx(k.dual_curvature / k.coupling_lipschitz));
  }
  SUBCASE("monotone in the multiplier norm") {
    s.tau = 0.5;
    CHECK(accuracy_scale_dual(s, 1.0, k) > accuracy_scale_dual(s, 0.0, k));
  }
  SUBCASE("vanishing beta1 leaves the curvature part") {
    s.beta1 = 0.0;
    CHECK(accuracy_scale_primal(s, k) ==
          doctest::Approx(1.0 / (2.0 * (1.0 - s.tau) * s.beta2)));
  }
  SUBCASE("initial scale is linear in beta1") {
    CHECK(initial_accuracy_scale(2.0, k) == doctest::Approx(3.0));
    ProblemConstants k0 = k;
    k0.dual_curvature = 0.0;
    CHECK(initial_accuracy_scale(1.0, k0) == doctest::Approx(0.5));
  }
}

TEST_CASE("step sizes respect the published envelope on admissible paths") {
  // The lower bound 1/(k + 1/tau0) requires alpha <= 1/(1 + tau_k) at every
  // step; within that domain both bounds hold for 10^4 steps.
  const double tau0 = 0.61803398874989484820;
  Xoshiro256pp gen(4);
  for (double alpha_star : {0.0, 0.25, 0.5}) {
    double tau = tau0;
    for (int k = 0; k <= 10000; ++k) {
      const double lower = 1.0 / (k + 1.0 / tau0);
      const double upper = 1.0 / (0.5 * (1.0 + alpha_star) * k + 1.0 / tau0);
      CHECK(tau >= lower - 1e-12);
      CHECK(tau <= upper + 1e-12);
      const double amax = std::min(1.0, 1.0 / (1.0 + tau));
      const double alpha = std::min(amax, alpha_star + (amax - alpha_star) * gen.uniform());
      tau = update_tau_dual(tau, std::max(alpha, alpha_star));
    }
  }
}
