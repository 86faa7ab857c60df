#include "egdd/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace egdd {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void bad_input(const fs::path& path, const std::string& what) {
  throw std::invalid_argument(path.string() + ": " + what);
}

}  // namespace

void write_matrix_market(const fs::path& path, const LinearMap& a) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  if (a.is_dense()) {
    out << "%%MatrixMarket matrix array real general\n";
    out << a.rows() << ' ' << a.cols() << '\n';
    const MatrixXd& d = a.dense_matrix();
    for (int j = 0; j < a.cols(); ++j)
      for (int i = 0; i < a.rows(); ++i) out << fmt(d(i, j)) << '\n';
  } else {
    out << "%%MatrixMarket matrix coordinate real general\n";
    const SparseMat& s = a.sparse_matrix();
    out << a.rows() << ' ' << a.cols() << ' ' << s.nonZeros() << '\n';
    for (int j = 0; j < s.outerSize(); ++j)
      for (SparseMat::InnerIterator it(s, j); it; ++it)
        out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << fmt(it.value()) << '\n';
  }
}

LinearMap read_matrix_market(const fs::path& path) {
  std::ifstream in(path);
  if (!in) bad_input(path, "cannot open file");
  std::string line;
  if (!std::getline(in, line)) bad_input(path, "empty file");
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || object != "matrix")
    bad_input(path, "not a Matrix Market matrix file");
  if (field != "real" || symmetry != "general")
    bad_input(path, "only real general matrices are supported");
  while (in.peek() == '%') std::getline(in, line);

  if (format == "coordinate") {
    int rows, cols;
    long nnz;
    if (!(in >> rows >> cols >> nnz)) bad_input(path, "bad size line");
    std::vector<Eigen::Triplet<double>> tri;
    tri.reserve(nnz);
    for (long k = 0; k < nnz; ++k) {
      int i, j;
      double v;
      if (!(in >> i >> j >> v)) bad_input(path, "truncated coordinate data");
      if (i < 1 || i > rows || j < 1 || j > cols) bad_input(path, "index out of range");
      tri.emplace_back(i - 1, j - 1, v);
    }
    return LinearMap::sparse(rows, cols, tri);
  }
  if (format == "array") {
    int rows, cols;
    if (!(in >> rows >> cols)) bad_input(path, "bad size line");
    MatrixXd d(rows, cols);
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < rows; ++i)
        if (!(in >> d(i, j))) bad_input(path, "truncated array data");
    return LinearMap::dense(std::move(d));
  }
  bad_input(path, "unknown format " + format);
}

void write_vector_file(const fs::path& path, const VectorXd& v) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  for (int i = 0; i < v.size(); ++i) out << fmt(v[i]) << '\n';
}

VectorXd read_vector_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) bad_input(path, "cannot open file");
  std::vector<double> vals;
  double v;
  while (in >> v) vals.push_back(v);
  VectorXd out(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) out[i] = vals[i];
  return out;
}

namespace {

std::string comp_file(int i, const std::string& tag, const std::string& ext) {
  return "c" + std::to_string(i) + "_" + tag + ext;
}

json save_set(const ComponentSpec& c, int i, const fs::path& dir) {
  json j;
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, BoxSet>) {
          j["kind"] = "box";
          j["lower"] = comp_file(i, "lower", ".txt");
          j["upper"] = comp_file(i, "upper", ".txt");
          write_vector_file(dir / j["lower"].get<std::string>(), s.lower);
          write_vector_file(dir / j["upper"].get<std::string>(), s.upper);
        } else if constexpr (std::is_same_v<S, OrthantSet>) {
          j["kind"] = "orthant";
        } else if constexpr (std::is_same_v<S, BallSet>) {
          j["kind"] = "ball";
          j["center"] = comp_file(i, "ball_center", ".txt");
          j["radius"] = s.radius;
          write_vector_file(dir / j["center"].get<std::string>(), s.center);
        } else if constexpr (std::is_same_v<S, FreeSet>) {
          j["kind"] = "free";
        } else {
          throw std::invalid_argument(
              "save_problem: custom projector sets are not serializable");
        }
      },
      c.set);
  return j;
}

FeasibleSet load_set(const json& j, const fs::path& dir) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "box")
    return BoxSet{read_vector_file(dir / j.at("lower").get<std::string>()),
                  read_vector_file(dir / j.at("upper").get<std::string>())};
  if (kind == "orthant") return OrthantSet{};
  if (kind == "ball")
    return BallSet{read_vector_file(dir / j.at("center").get<std::string>()),
                   j.at("radius").get<double>()};
  if (kind == "free") return FreeSet{};
  throw std::invalid_argument("load_problem: unknown feasible set kind " + kind);
}

json save_objective(const ComponentSpec& c, int i, const fs::path& dir) {
  json j;
  const std::string kind = c.objective->kind();
  j["kind"] = kind;
  if (kind == "zero") return j;
  if (kind == "weighted_l1") {
    const auto& t = *c.objective->l1_term();
    j["weight"] = comp_file(i, "obj_weight", ".txt");
    j["anchor"] = comp_file(i, "obj_anchor", ".txt");
    write_vector_file(dir / j["weight"].get<std::string>(), t.weight);
    write_vector_file(dir / j["anchor"].get<std::string>(), t.anchor);
    return j;
  }
  if (kind == "quadratic") {
    const auto& q = static_cast<const QuadraticObjective&>(*c.objective);
    j["matrix"] = comp_file(i, "obj_Q", ".mtx");
    j["linear"] = comp_file(i, "obj_q", ".txt");
    write_matrix_market(dir / j["matrix"].get<std::string>(), q.Q());
    write_vector_file(dir / j["linear"].get<std::string>(), q.q());
    return j;
  }
  if (kind == "quadratic_log") {
    const auto& q = static_cast<const QuadraticLogObjective&>(*c.objective);
    j["diag"] = comp_file(i, "obj_diag", ".txt");
    j["anchor"] = comp_file(i, "obj_anchor", ".txt");
    j["log_coef"] = comp_file(i, "obj_logcoef", ".txt");
    j["log_weight"] = q.log_weight();
    write_vector_file(dir / j["diag"].get<std::string>(), q.diag());
    write_vector_file(dir / j["anchor"].get<std::string>(), q.anchor());
    write_vector_file(dir / j["log_coef"].get<std::string>(), q.log_coef());
    return j;
  }
  throw std::invalid_argument("save_problem: objective kind " + kind +
                              " is not serializable");
}

ObjectivePtr load_objective(const json& j, const fs::path& dir) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "zero") return std::make_shared<ZeroObjective>();
  if (kind == "weighted_l1")
    return std::make_shared<WeightedL1Objective>(
        read_vector_file(dir / j.at("weight").get<std::string>()),
        read_vector_file(dir / j.at("anchor").get<std::string>()));
  if (kind == "quadratic")
    return std::make_shared<QuadraticObjective>(
        read_matrix_market(dir / j.at("matrix").get<std::string>()),
        read_vector_file(dir / j.at("linear").get<std::string>()));
  if (kind == "quadratic_log")
    return std::make_shared<QuadraticLogObjective>(
        read_vector_file(dir / j.at("diag").get<std::string>()),
        read_vector_file(dir / j.at("anchor").get<std::string>()),
        read_vector_file(dir / j.at("log_coef").get<std::string>()),
        j.at("log_weight").get<double>());
  throw std::invalid_argument("load_problem: unknown objective kind " + kind);
}

}  // namespace

void save_problem(const Problem& p, const fs::path& dir) {
  fs::create_directories(dir);
  json root;
  root["format"] = "egdd-problem";
  root["version"] = 1;
  root["m"] = p.m;
  root["M"] = p.size();
  json comps = json::array();
  for (int i = 0; i < p.size(); ++i) {
    const ComponentSpec& c = p.components[i];
    json j;
    j["n"] = c.n();
    j["sigma"] = c.sigma;
    j["shift"] = c.shift;
    j["bounding_radius"] = c.bounding_radius;
    j["force_iterative"] = c.force_iterative;
    j["feasible_set"] = save_set(c, i, dir);
    j["objective"] = save_objective(c, i, dir);
    j["prox_center"] = comp_file(i, "center", ".txt");
    j["A"] = comp_file(i, "A", ".mtx");
    j["b"] = comp_file(i, "rhs", ".txt");
    write_vector_file(dir / j["prox_center"].get<std::string>(), c.center);
    write_matrix_market(dir / j["A"].get<std::string>(), c.A);
    write_vector_file(dir / j["b"].get<std::string>(), c.b);
    comps.push_back(std::move(j));
  }
  root["components"] = std::move(comps);
  std::ofstream out(dir / "manifest.json");
  if (!out) throw std::runtime_error("cannot write manifest in " + dir.string());
  out << root.dump(2) << '\n';
}

Problem load_problem(const fs::path& dir) {
  const fs::path mf = dir / "manifest.json";
  std::ifstream in(mf);
  if (!in) bad_input(mf, "cannot open manifest");
  json root;
  try {
    in >> root;
  } catch (const json::exception& e) {
    bad_input(mf, e.what());
  }
  if (root.value("format", "") != "egdd-problem") bad_input(mf, "unknown format");

  Problem p;
  p.m = root.at("m").get<int>();
  for (const auto& j : root.at("components")) {
    ComponentSpec c;
    c.sigma = j.at("sigma").get<double>();
    c.bounding_radius = j.value("bounding_radius", 0.0);
    c.force_iterative = j.value("force_iterative", false);
    c.set = load_set(j.at("feasible_set"), dir);
    c.objective = load_objective(j.at("objective"), dir);
    c.center = read_vector_file(dir / j.at("prox_center").get<std::string>());
    c.A = read_matrix_market(dir / j.at("A").get<std::string>());
    c.b = read_vector_file(dir / j.at("b").get<std::string>());
    const auto& shift = j.at("shift");
    if (shift.is_string()) {
      if (shift.get<std::string>() != "auto") bad_input(mf, "bad shift value");
      c.shift = shift_for_ratio(c.sigma, prox_radius_sq(c), 0.75);
    } else {
      c.shift = shift.get<double>();
    }
    p.components.push_back(std::move(c));
  }
  if (root.contains("M") && root.at("M").get<int>() != p.size())
    bad_input(mf, "component count does not match M");
  return validate(std::move(p));
}

}  // namespace egdd
