#include "egdd/trace.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace egdd {

const char* status_name(Status s) {
  switch (s) {
    case Status::converged: return "converged";
    case Status::maxiter: return "maxiter";
    default: return "subproblem_failure";
  }
}

int status_exit_code(Status s) {
  switch (s) {
    case Status::converged: return 0;
    case Status::maxiter: return 2;
    default: return 4;
  }
}

namespace {

void append_double(std::string& line, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  line += buf;
}

}  // namespace

void write_trace_csv(const std::filesystem::path& path, const SolveReport& report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open trace file " + path.string());
  out << "k,tau,beta1,beta2,delta,epsbar,feas,rpfgap,phi,sgap,ms\n";
  for (const auto& r : report.trace) {
    std::string line = std::to_string(r.k);
    for (double v : {r.tau, r.beta1, r.beta2, r.delta, r.epsbar, r.feas, r.rpfgap,
                     r.phi, r.sgap}) {
      line += ',';
      append_double(line, v);
    }
    char ms[32];
    std::snprintf(ms, sizeof ms, ",%.3f", r.ms);
    line += ms;
    out << line << '\n';
  }
}

}  // namespace egdd
