#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "egdd/linear_map.hpp"

namespace egdd {

enum class Status { converged, maxiter, subproblem_failure };

const char* status_name(Status s);
/// Process exit codes: 0 converged, 2 maxiter, 4 numerical failure.
int status_exit_code(Status s);

/// One per-iteration trace row. The first eleven fields are serialized to CSV
/// in this exact column order; the remaining fields are in-memory annotations.
struct TraceRow {
  int k = 0;
  double tau = 0, beta1 = 0, beta2 = 0, delta = 0, epsbar = 0;
  double feas = 0, rpfgap = 0, phi = 0, sgap = 0, ms = 0;

  char scheme = ' ';     // 'd' dual step, 'p' primal step, 'a' admm, 'g' pcbdm
  bool floored = false;  // a parameter floor activated before this row
  double rho = 0;        // admm penalty
  double aux = 0;        // solver-specific (admm dual residual, pcbdm dual value)
};

struct SolveReport {
  Status status = Status::maxiter;
  std::vector<TraceRow> trace;
  std::vector<VectorXd> x;  // final primal blocks
  VectorXd y;               // final multiplier
  long iterations = 0;
  double total_ms = 0;
  double max_y_norm = 0;  // sup of ||y|| along the run
  std::string solver;
  std::string note;

  const TraceRow& last() const { return trace.back(); }
};

/// Header (bit-exact): k,tau,beta1,beta2,delta,epsbar,feas,rpfgap,phi,sgap,ms
void write_trace_csv(const std::filesystem::path& path, const SolveReport& report);

}  // namespace egdd
