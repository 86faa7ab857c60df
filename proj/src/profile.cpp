#include "egdd/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace egdd {

namespace fs = std::filesystem;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double metric_of(const RunRecord& r, Metric m) {
  return m == Metric::iterations ? static_cast<double>(r.iterations) : r.ms;
}

Status status_from_name(const std::string& s) {
  if (s == "converged") return Status::converged;
  if (s == "maxiter") return Status::maxiter;
  if (s == "subproblem_failure") return Status::subproblem_failure;
  throw std::invalid_argument("unknown status " + s);
}

}  // namespace

std::vector<ProfileCurve> performance_profile(const std::vector<RunRecord>& records,
                                              Metric metric) {
  if (records.empty())
    throw std::invalid_argument("performance_profile: empty record set");

  std::vector<std::string> problems, solvers;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& r : records) {
    if (!seen.insert({r.problem, r.solver}).second)
      throw std::invalid_argument("performance_profile: duplicate record for (" +
                                  r.problem + ", " + r.solver + ")");
    if (std::find(problems.begin(), problems.end(), r.problem) == problems.end())
      problems.push_back(r.problem);
    if (std::find(solvers.begin(), solvers.end(), r.solver) == solvers.end())
      solvers.push_back(r.solver);
  }

  std::map<std::string, double> best;
  for (const auto& p : problems) best[p] = kInf;
  for (const auto& r : records)
    if (r.status == Status::converged)
      best[r.problem] = std::min(best[r.problem], metric_of(r, metric));
  for (const auto& p : problems)
    if (!std::isfinite(best[p]))
      throw std::invalid_argument("performance_profile: no successful run for " + p);

  // log2 ratios; failures stay at +inf and never enter the curve
  std::map<std::pair<std::string, std::string>, double> log_ratio;
  std::vector<double> taus{0.0};
  for (const auto& r : records) {
    double lr = kInf;
    if (r.status == Status::converged) {
      const double t = metric_of(r, metric);
      lr = t == best[r.problem] ? 0.0 : std::log2(t / best[r.problem]);
      taus.push_back(lr);
    }
    log_ratio[{r.problem, r.solver}] = lr;
  }
  std::sort(taus.begin(), taus.end());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());

  const double np = static_cast<double>(problems.size());
  std::vector<ProfileCurve> curves;
  for (const auto& s : solvers) {
    ProfileCurve c;
    c.solver = s;
    for (double tau : taus) {
      int count = 0;
      for (const auto& p : problems) {
        auto it = log_ratio.find({p, s});
        if (it != log_ratio.end() && it->second <= tau) ++count;
      }
      c.points.emplace_back(tau, count / np);
    }
    curves.push_back(std::move(c));
  }
  return curves;
}

void write_records_csv(const fs::path& path, const std::vector<RunRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << "solver,problem,status,iters,ms,rpfgap,phi\n";
  for (const auto& r : records) {
    char buf[160];
    std::snprintf(buf, sizeof buf, ",%ld,%.3f,%.17g,%.17g", r.iterations, r.ms,
                  r.rpfgap, r.objective);
    out << r.solver << ',' << r.problem << ',' << status_name(r.status) << buf
        << '\n';
  }
}

std::vector<RunRecord> read_records_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument(path.string() + ": empty records file");
  std::vector<RunRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    RunRecord r;
    std::string status, field;
    if (!std::getline(row, r.solver, ',') || !std::getline(row, r.problem, ',') ||
        !std::getline(row, status, ','))
      throw std::invalid_argument(path.string() + ": malformed row: " + line);
    r.status = status_from_name(status);
    std::getline(row, field, ',');
    r.iterations = std::stol(field);
    std::getline(row, field, ',');
    r.ms = std::stod(field);
    std::getline(row, field, ',');
    r.rpfgap = std::stod(field);
    std::getline(row, field, ',');
    r.objective = std::stod(field);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RunRecord> read_records(const fs::path& path) {
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(path))
      if (e.path().extension() == ".csv") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<RunRecord> all;
    for (const auto& f : files) {
      auto part = read_records_csv(f);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  return read_records_csv(path);
}

void write_profile_csv(const fs::path& path, const std::vector<ProfileCurve>& curves) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << "solver,tau,rho\n";
  for (const auto& c : curves)
    for (const auto& [tau, rho] : c.points) {
      char buf[80];
      std::snprintf(buf, sizeof buf, ",%.17g,%.17g", tau, rho);
      out << c.solver << buf << '\n';
    }
}

void write_profile_svg(const fs::path& path, const std::vector<ProfileCurve>& curves) {
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  const double w = 640, h = 420, ml = 56, mr = 150, mt = 24, mb = 44;
  double tau_max = 1.0;
  for (const auto& c : curves)
    for (const auto& [tau, rho] : c.points) tau_max = std::max(tau_max, tau);
  tau_max *= 1.05;

  auto sx = [&](double tau) { return ml + (w - ml - mr) * tau / tau_max; };
  auto sy = [&](double rho) { return h - mb - (h - mt - mb) * rho; };

  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='"
      << h << "' viewBox='0 0 " << w << ' ' << h << "'>\n"
      << "<rect width='100%' height='100%' fill='white'/>\n";
  // axes and grid
  for (int i = 0; i <= 5; ++i) {
    const double rho = i / 5.0;
    svg << "<line x1='" << sx(0) << "' y1='" << sy(rho) << "' x2='" << sx(tau_max)
        << "' y2='" << sy(rho) << "' stroke='#dddddd'/>\n"
        << "<text x='" << ml - 8 << "' y='" << sy(rho) + 4
        << "' font-size='11' text-anchor='end'>" << rho << "</text>\n";
  }
  svg << "<line x1='" << sx(0) << "' y1='" << sy(0) << "' x2='" << sx(tau_max)
      << "' y2='" << sy(0) << "' stroke='black'/>\n"
      << "<line x1='" << sx(0) << "' y1='" << sy(0) << "' x2='" << sx(0)
      << "' y2='" << sy(1) << "' stroke='black'/>\n"
      << "<text x='" << (ml + w - mr) / 2 << "' y='" << h - 10
      << "' font-size='12' text-anchor='middle'>log2 performance ratio</text>\n";

  int ci = 0;
  for (const auto& c : curves) {
    const char* color = kColors[ci % 8];
    std::ostringstream pts;
    double prev_rho = 0.0;
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      const auto [tau, rho] = c.points[i];
      if (i == 0) {
        pts << sx(tau) << ',' << sy(rho) << ' ';
      } else {
        pts << sx(tau) << ',' << sy(prev_rho) << ' ' << sx(tau) << ',' << sy(rho)
            << ' ';
      }
      prev_rho = rho;
    }
    pts << sx(tau_max) << ',' << sy(prev_rho);
    svg << "<polyline fill='none' stroke='" << color
        << "' stroke-width='1.8' points='" << pts.str() << "'/>\n"
        << "<text x='" << w - mr + 14 << "' y='" << mt + 16 * ci + 10
        << "' font-size='12' fill='" << color << "'>" << c.solver << "</text>\n";
    ++ci;
  }
  svg << "</svg>\n";

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << svg.str();
}

}  // namespace egdd
