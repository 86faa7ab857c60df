#include "egdd/feasible_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace egdd {

VectorXd project(const FeasibleSet& set, const VectorXd& x) {
  return std::visit(
      [&](const auto& s) -> VectorXd {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, BoxSet>) {
          return x.cwiseMax(s.lower).cwiseMin(s.upper);
        } else if constexpr (std::is_same_v<S, OrthantSet>) {
          return x.cwiseMax(0.0);
        } else if constexpr (std::is_same_v<S, BallSet>) {
          VectorXd d = x - s.center;
          const double n = d.norm();
          if (n <= s.radius) return x;
          return s.center + (s.radius / n) * d;
        } else if constexpr (std::is_same_v<S, FreeSet>) {
          return x;
        } else {
          return s.project(x);
        }
      },
      set);
}

bool contains(const FeasibleSet& set, const VectorXd& x, double tol) {
  return std::visit(
      [&](const auto& s) -> bool {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, BoxSet>) {
          return (x.array() >= s.lower.array() - tol).all() &&
                 (x.array() <= s.upper.array() + tol).all();
        } else if constexpr (std::is_same_v<S, OrthantSet>) {
          return (x.array() >= -tol).all();
        } else if constexpr (std::is_same_v<S, BallSet>) {
          return (x - s.center).norm() <= s.radius + tol;
        } else if constexpr (std::is_same_v<S, FreeSet>) {
          return true;
        } else {
          return (x - s.project(x)).norm() <= tol;
        }
      },
      set);
}

bool is_bounded(const FeasibleSet& set) {
  return std::visit(
      [](const auto& s) -> bool {
        using S = std::decay_t<decltype(s)>;
        return std::is_same_v<S, BoxSet> || std::is_same_v<S, BallSet>;
      },
      set);
}

bool is_separable(const FeasibleSet& set) {
  return std::visit(
      [](const auto& s) -> bool {
        using S = std::decay_t<decltype(s)>;
        return std::is_same_v<S, BoxSet> || std::is_same_v<S, OrthantSet> ||
               std::is_same_v<S, FreeSet>;
      },
      set);
}

double clamp_coordinate(const FeasibleSet& set, int j, double v) {
  return std::visit(
      [&](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, BoxSet>) {
          return std::min(std::max(v, s.lower[j]), s.upper[j]);
        } else if constexpr (std::is_same_v<S, OrthantSet>) {
          return std::max(v, 0.0);
        } else if constexpr (std::is_same_v<S, FreeSet>) {
          return v;
        } else {
          throw std::logic_error("clamp_coordinate: set is not separable");
        }
      },
      set);
}

double max_sq_distance(const FeasibleSet& set, const VectorXd& center) {
  return std::visit(
      [&](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, BoxSet>) {
          double acc = 0.0;
          for (int j = 0; j < center.size(); ++j) {
            const double lo = s.lower[j] - center[j];
            const double hi = s.upper[j] - center[j];
            acc += std::max(lo * lo, hi * hi);
          }
          return acc;
        } else if constexpr (std::is_same_v<S, BallSet>) {
          const double d = (s.center - center).norm() + s.radius;
          return d * d;
        } else {
          throw std::logic_error("max_sq_distance: set is unbounded");
        }
      },
      set);
}

const char* set_kind(const FeasibleSet& set) {
  switch (set.index()) {
    case 0: return "box";
    case 1: return "orthant";
    case 2: return "ball";
    case 3: return "free";
    default: return "custom";
  }
}

}  // namespace egdd
