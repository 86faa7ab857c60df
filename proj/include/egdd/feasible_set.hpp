#pragma once

#include <functional>
#include <variant>

#include "egdd/linear_map.hpp"

namespace egdd {

struct BoxSet {
  VectorXd lower, upper;
};

struct OrthantSet {};  // x >= 0

struct BallSet {
  VectorXd center;
  double radius;
};

struct FreeSet {};  // whole space; needs a declared bounding radius

struct CustomSet {
  std::function<VectorXd(const VectorXd&)> project;
};

using FeasibleSet = std::variant<BoxSet, OrthantSet, BallSet, FreeSet, CustomSet>;

VectorXd project(const FeasibleSet& set, const VectorXd& x);
bool contains(const FeasibleSet& set, const VectorXd& x, double tol = 1e-9);
bool is_bounded(const FeasibleSet& set);
/// Coordinatewise sets admit exact per-coordinate proximal steps.
bool is_separable(const FeasibleSet& set);
/// Clamp one coordinate onto the set (separable sets only).
double clamp_coordinate(const FeasibleSet& set, int j, double v);
/// sup_{x in set} ||x - center||^2 for bounded sets.
double max_sq_distance(const FeasibleSet& set, const VectorXd& center);
const char* set_kind(const FeasibleSet& set);

}  // namespace egdd
