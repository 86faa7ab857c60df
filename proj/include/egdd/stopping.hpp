#pragma once

#include "egdd/trace.hpp"

namespace egdd {

struct StoppingRule {
  double tol_feas = 1e-3;
  double tol_gap = 1e-3;
  int window = 5;  // stagnation lookback
};

/// Termination test shared by all solvers. Stops when
///   rpfgap <= tol_feas
/// and either the surrogate primal-dual gap is small relative to the current
/// f, g values, or the objective stagnated over the last `window` iterations.
/// Rows with NaN gap data (baselines) fall through to the stagnation clause.
bool stopping_check(const std::vector<TraceRow>& trace, const StoppingRule& rule);

}  // namespace egdd
