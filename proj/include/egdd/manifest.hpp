#pragma once

#include <filesystem>

#include "egdd/problem.hpp"

namespace egdd {

/// Matrix Market exchange format. Sparse maps use the coordinate layout,
/// dense maps the array layout; values round-trip exactly (17 significant
/// digits). Only `matrix ... real general` headers are accepted.
void write_matrix_market(const std::filesystem::path& path, const LinearMap& a);
LinearMap read_matrix_market(const std::filesystem::path& path);

/// Plain text vectors, one value per line.
void write_vector_file(const std::filesystem::path& path, const VectorXd& v);
VectorXd read_vector_file(const std::filesystem::path& path);

/// Problem directory layout: manifest.json plus per-component matrix and
/// vector files. The manifest stores {m, M} globally and per component the
/// block size, feasible set, prox data (shift may be the string "auto",
/// meaning the 0.75-ratio default), objective kind with parameter paths, and
/// the paths to A_i and b_i. Custom projector sets are not serializable.
void save_problem(const Problem& p, const std::filesystem::path& dir);
Problem load_problem(const std::filesystem::path& dir);

}  // namespace egdd
