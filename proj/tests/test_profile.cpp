#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "egdd/profile.hpp"
#include "egdd/rng.hpp"
#include "egdd/stopping.hpp"

using namespace egdd;
namespace fs = std::filesystem;

namespace {

RunRecord rec(const std::string& solver, const std::string& problem, Status st,
              long iters, double ms) {
  RunRecord r;
  r.solver = solver;
  r.problem = problem;
  r.status = st;
  r.iterations = iters;
  r.ms = ms;
  return r;
}

double rho_at(const ProfileCurve& c, double tau) {
  double rho = 0;
  for (const auto& [t, v] : c.points)
    if (t <= tau) rho = v;
  return rho;
}

}  // namespace

TEST_CASE("profile of a single problem") {
  std::vector<RunRecord> records{
      rec("s1", "p", Status::converged, 10, 1.0),
      rec("s2", "p", Status::converged, 20, 2.0),
  };
  auto curves = performance_profile(records, Metric::time);
  REQUIRE(curves.size() == 2);
  CHECK(rho_at(curves[0], 0.0) == 1.0);
  CHECK(rho_at(curves[1], 0.0) == 0.0);
  CHECK(rho_at(curves[1], 1.0) == 1.0);  // log2(2) = 1
}

TEST_CASE("single solver profile is flat at one") {
  std::vector<RunRecord> records{
      rec("s", "p1", Status::converged, 5, 1.0),
      rec("s", "p2", Status::converged, 7, 2.0),
  };
  auto curves = performance_profile(records, Metric::iterations);
  CHECK(rho_at(curves[0], 0.0) == 1.0);
}

TEST_CASE("failed runs never contribute") {
  std::vector<RunRecord> records{
      rec("good", "p1", Status::converged, 5, 1.0),
      rec("bad", "p1", Status::maxiter, 5000, 50.0),
      rec("good", "p2", Status::converged, 9, 2.0),
      rec("bad", "p2", Status::converged, 9, 2.0),
  };
  auto curves = performance_profile(records, Metric::iterations);
  const auto& bad = curves[1];
  for (const auto& [t, v] : bad.points) CHECK(v <= 0.5 + 1e-15);
}

TEST_CASE("profile input validation") {
  CHECK_THROWS_AS(performance_profile({}, Metric::time), std::invalid_argument);

  std::vector<RunRecord> dup{rec("s", "p", Status::converged, 1, 1),
                             rec("s", "p", Status::converged, 2, 2)};
  CHECK_THROWS_AS(performance_profile(dup, Metric::time), std::invalid_argument);

  std::vector<RunRecord> unsolved{rec("s", "p", Status::maxiter, 1, 1)};
  CHECK_THROWS_AS(performance_profile(unsolved, Metric::time), std::invalid_argument);
}

TEST_CASE("curves are monotone step functions in [0,1]") {
  std::vector<RunRecord> records;
  Xoshiro256pp gen(3);
  for (int p = 0; p < 9; ++p)
    for (int s = 0; s < 4; ++s) {
      const bool ok = gen.uniform() < 0.8 || s == 0;
      records.push_back(rec("s" + std::to_string(s), "p" + std::to_string(p),
                            ok ? Status::converged : Status::maxiter,
                            long(gen.uniform_int(1, 500)), gen.uniform(0.1, 50)));
    }
  for (Metric m : {Metric::iterations, Metric::time}) {
    auto curves = performance_profile(records, m);
    for (const auto& c : curves) {
      double prev = -1;
      for (const auto& [t, v] : c.points) {
        CHECK(v >= prev);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        prev = v;
      }
    }
  }
}

TEST_CASE("records and profile files") {
  fs::path dir = fs::temp_directory_path() / "egdd_test_profile";
  fs::remove_all(dir);
  fs::create_directories(dir);

  std::vector<RunRecord> records{
      rec("s1", "p1", Status::converged, 10, 1.5),
      rec("s2", "p1", Status::maxiter, 99, 9.5),
  };
  records[0].rpfgap = 1e-4;
  records[0].objective = -2.5;
  write_records_csv(dir / "records.csv", records);
  auto back = read_records(dir);
  REQUIRE(back.size() == 2);
  CHECK(back[0].solver == "s1");
  CHECK(back[0].status == Status::converged);
  CHECK(back[0].iterations == 10);
  CHECK(back[0].rpfgap == 1e-4);
  CHECK(back[0].objective == -2.5);
  CHECK(back[1].status == Status::maxiter);

  auto curves = performance_profile({records[0]}, Metric::time);
  write_profile_csv(dir / "profile.csv", curves);
  write_profile_svg(dir / "profile.svg", curves);
  CHECK(fs::file_size(dir / "profile.csv") > 0);
  std::ifstream svg(dir / "profile.svg");
  std::string text((std::istreambuf_iterator<char>(svg)),
                   std::istreambuf_iterator<char>());
  CHECK(text.find("<svg") != std::string::npos);
  CHECK(text.find("polyline") != std::string::npos);
}

TEST_CASE("stopping rule arithmetic") {
  StoppingRule rule;

  SUBCASE("feasibility ratio uses max(||b||, 1)") {
    TraceRow r;
    r.feas = 5e-4;
    r.rpfgap = 5e-4 / 2.0;  // ||b|| = 2
    r.phi = 1.0;
    r.beta2 = 1.0;
    r.sgap = 1e-9;
    std::vector<TraceRow> trace{r};
    CHECK(stopping_check(trace, rule));  // gap clause fires immediately
  }

  SUBCASE("short traces cannot stagnate") {
    std::vector<TraceRow> trace(5);
    for (int k = 0; k < 5; ++k) {
      trace[k].phi = 1.0;
      trace[k].rpfgap = 1e-9;
      trace[k].beta2 = 1.0;
      trace[k].sgap = 1.0;  // gap clause stays false
    }
    CHECK_FALSE(stopping_check(trace, rule));
    trace.push_back(trace.back());
    CHECK(stopping_check(trace, rule));
  }
}
