#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "egdd/trace.hpp"

namespace egdd {

struct RunRecord {
  std::string solver;
  std::string problem;
  Status status = Status::maxiter;
  long iterations = 0;
  double ms = 0;
  double rpfgap = 0;
  double objective = 0;
};

enum class Metric { iterations, time };

/// Performance-profile curve for one solver: points (tau, rho(tau)) with tau
/// the log2 performance-ratio threshold.
struct ProfileCurve {
  std::string solver;
  std::vector<std::pair<double, double>> points;
};

/// Dolan-More profiles in log2 scale. Per problem, the best converged run
/// defines the ratio denominator; failed runs get an infinite ratio and
/// therefore never contribute. Requires at least one converged run per
/// problem and at most one record per (problem, solver) pair.
std::vector<ProfileCurve> performance_profile(const std::vector<RunRecord>& records,
                                              Metric metric);

void write_records_csv(const std::filesystem::path& path,
                       const std::vector<RunRecord>& records);
std::vector<RunRecord> read_records_csv(const std::filesystem::path& path);
/// Reads one records file, or every *.csv below a directory.
std::vector<RunRecord> read_records(const std::filesystem::path& path);

void write_profile_csv(const std::filesystem::path& path,
                       const std::vector<ProfileCurve>& curves);
/// Standalone step plot of the curves.
void write_profile_svg(const std::filesystem::path& path,
                       const std::vector<ProfileCurve>& curves);

}  // namespace egdd
