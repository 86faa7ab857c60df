#include "egdd/stopping.hpp"

#include <cmath>
#include <stdexcept>

namespace egdd {

bool stopping_check(const std::vector<TraceRow>& trace, const StoppingRule& rule) {
  if (trace.empty()) throw std::invalid_argument("stopping_check: empty trace");
  const TraceRow& last = trace.back();

  if (!(last.rpfgap <= rule.tol_feas)) return false;

  const double f = last.phi + last.feas * last.feas / (2.0 * last.beta2);
  const double g = f - last.sgap;
  const bool gap_ok =
      std::isfinite(last.sgap) &&
      std::abs(last.sgap) <=
          rule.tol_gap * std::max({1.0, std::abs(g), std::abs(f)});
  if (gap_ok) return true;

  if (static_cast<int>(trace.size()) < rule.window + 1) return false;
  const double scale = std::max(1.0, std::abs(last.phi));
  for (int j = 1; j <= rule.window; ++j) {
    const double prev = trace[trace.size() - 1 - j].phi;
    if (!(std::abs(last.phi - prev) <= rule.tol_gap * scale)) return false;
  }
  return true;
}

}  // namespace egdd
