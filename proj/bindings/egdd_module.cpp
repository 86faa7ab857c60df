#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "egdd/baselines.hpp"
#include "egdd/excessive_gap.hpp"
#include "egdd/generators.hpp"
#include "egdd/manifest.hpp"
#include "egdd/profile.hpp"

namespace py = pybind11;
using namespace egdd;

namespace {

SolveOptions options_from_kwargs(const py::kwargs& kw) {
  SolveOptions opt;
  if (kw.contains("beta0")) opt.beta0 = kw["beta0"].cast<double>();
  if (kw.contains("eps_tilde")) opt.eps_tilde = kw["eps_tilde"].cast<double>();
  if (kw.contains("tol_feas")) opt.stop.tol_feas = kw["tol_feas"].cast<double>();
  if (kw.contains("tol_gap")) opt.stop.tol_gap = kw["tol_gap"].cast<double>();
  if (kw.contains("max_iterations"))
    opt.max_iterations = kw["max_iterations"].cast<long>();
  if (kw.contains("threads")) opt.threads = kw["threads"].cast<int>();
  if (kw.contains("disable_stopping"))
    opt.disable_stopping = kw["disable_stopping"].cast<bool>();
  return opt;
}

py::dict report_to_dict(const SolveReport& rep) {
  py::dict out;
  out["solver"] = rep.solver;
  out["status"] = status_name(rep.status);
  out["iterations"] = rep.iterations;
  out["total_ms"] = rep.total_ms;
  py::list x;
  for (const auto& b : rep.x) x.append(b);
  out["x"] = x;
  out["y"] = rep.y;

  py::dict trace;
  auto column = [&](const char* name, auto getter) {
    py::list col;
    for (const auto& r : rep.trace) col.append(getter(r));
    trace[name] = col;
  };
  column("k", [](const TraceRow& r) { return r.k; });
  column("tau", [](const TraceRow& r) { return r.tau; });
  column("beta1", [](const TraceRow& r) { return r.beta1; });
  column("beta2", [](const TraceRow& r) { return r.beta2; });
  column("delta", [](const TraceRow& r) { return r.delta; });
  column("epsbar", [](const TraceRow& r) { return r.epsbar; });
  column("feas", [](const TraceRow& r) { return r.feas; });
  column("rpfgap", [](const TraceRow& r) { return r.rpfgap; });
  column("phi", [](const TraceRow& r) { return r.phi; });
  column("sgap", [](const TraceRow& r) { return r.sgap; });
  column("ms", [](const TraceRow& r) { return r.ms; });
  out["trace"] = trace;
  return out;
}

SolveReport solve_dispatch(const Problem& p, const std::string& algorithm,
                           const py::kwargs& kw) {
  SolveOptions opt = options_from_kwargs(kw);
  if (algorithm == "idda1") return run_algorithm1(p, opt);
  if (algorithm == "idda2") return run_algorithm2(p, opt);
  if (algorithm == "fixed-beta1") {
    const double eps_f = kw.contains("eps_f") ? kw["eps_f"].cast<double>() : 0.05;
    return run_fixed_beta1(p, eps_f, opt);
  }
  if (algorithm == "admm-v1") return run_admm(p, admm_v1(), opt);
  if (algorithm == "admm-v2") return run_admm(p, admm_v2(), opt);
  if (algorithm == "admm-v3") return run_admm(p, admm_v3(), opt);
  if (algorithm == "pcbdm") return run_pcbdm(p, PcbdmConfig{opt.stop.tol_gap}, opt);
  throw std::invalid_argument("unknown algorithm " + algorithm);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "inexact excessive-gap dual decomposition solvers";

  py::class_<Problem>(m, "Problem")
      .def_property_readonly("m", [](const Problem& p) { return p.m; })
      .def_property_readonly("size", [](const Problem& p) { return p.size(); })
      .def_property_readonly("n", [](const Problem& p) { return p.n(); });

  m.def(
      "generate_basis_pursuit",
      [](int m, int n, std::uint64_t seed, double alpha_star) {
        return generate_basis_pursuit(m, n, seed, alpha_star);
      },
      py::arg("m"), py::arg("n"), py::arg("seed") = 0, py::arg("alpha_star") = 0.75);
  m.def(
      "generate_nonsmooth",
      [](int n, std::uint64_t seed) { return generate_nonsmooth(n, seed); },
      py::arg("n"), py::arg("seed") = 0);
  m.def(
      "generate_qp",
      [](int cls, const std::string& scenario, std::uint64_t seed) {
        return generate_qp(cls, scenario == "II" ? '2' : 'I', seed);
      },
      py::arg("cls") = 1, py::arg("scenario") = "I", py::arg("seed") = 0);
  m.def(
      "generate_nonlinear",
      [](int cls, const std::string& scenario, std::uint64_t seed) {
        return generate_nonlinear(cls, scenario == "II" ? '2' : 'I', seed);
      },
      py::arg("cls") = 1, py::arg("scenario") = "I", py::arg("seed") = 0);

  m.def("save_problem", &save_problem, py::arg("problem"), py::arg("directory"));
  m.def("load_problem", &load_problem, py::arg("directory"));

  m.def(
      "solve",
      [](const Problem& p, const std::string& algorithm, const py::kwargs& kw) {
        return report_to_dict(solve_dispatch(p, algorithm, kw));
      },
      py::arg("problem"), py::arg("algorithm") = "idda1",
      "Solve a problem; algorithms: idda1, idda2, fixed-beta1, admm-v1/v2/v3, "
      "pcbdm. Keyword options: beta0, eps_tilde, tol_feas, tol_gap, "
      "max_iterations, threads, disable_stopping, eps_f.");

  m.def("soft_threshold", &soft_threshold_V, py::arg("anchor"), py::arg("center"),
        py::arg("linear"), py::arg("beta1"), py::arg("weight"));
  m.def("l1_scalar_solve", &l1_component_solve, py::arg("aTy"), py::arg("center"),
        py::arg("beta1"));
  m.def("update_tau_dual", &update_tau_dual, py::arg("tau"), py::arg("alpha_tilde"));
  m.def("update_tau_primal", &update_tau_primal, py::arg("tau"));

  m.def(
      "spectral_norm",
      [](const MatrixXd& a, double tol) { return spectral_norm(a, tol); },
      py::arg("matrix"), py::arg("tol") = 1e-10);

  m.def(
      "constants",
      [](const Problem& p) {
        ProblemConstants k = compute_constants(p);
        py::dict out;
        out["coupling_lipschitz"] = k.coupling_lipschitz;
        out["prox_bound_sum"] = k.prox_bound_sum;
        out["prox_min_sum"] = k.prox_min_sum;
        out["center_spread"] = k.center_spread;
        out["dual_curvature"] = k.dual_curvature;
        out["coupling_norm"] = k.coupling_norm;
        out["alpha_star"] = k.alpha_star;
        return out;
      },
      py::arg("problem"));

  m.def(
      "performance_profile",
      [](const std::vector<py::dict>& records, const std::string& metric) {
        std::vector<RunRecord> rs;
        for (const auto& d : records) {
          RunRecord r;
          r.solver = d["solver"].cast<std::string>();
          r.problem = d["problem"].cast<std::string>();
          const std::string st = d["status"].cast<std::string>();
          r.status = st == "converged" ? Status::converged : Status::maxiter;
          r.iterations = d["iters"].cast<long>();
          if (d.contains("ms")) r.ms = d["ms"].cast<double>();
          rs.push_back(std::move(r));
        }
        auto curves = performance_profile(
            rs, metric == "time" ? Metric::time : Metric::iterations);
        py::list out;
        for (const auto& c : curves) {
          py::dict d;
          d["solver"] = c.solver;
          py::list pts;
          for (auto [t, v] : c.points) pts.append(py::make_tuple(t, v));
          d["points"] = pts;
          out.append(d);
        }
        return out;
      },
      py::arg("records"), py::arg("metric") = "iters");
}
