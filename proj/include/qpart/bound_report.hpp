#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qpart/density_matrix.hpp"
#include "qpart/errors.hpp"

namespace qpart {

enum class Route { full, partition };

inline const char* route_name(Route r) { return r == Route::full ? "full" : "partition"; }

struct PairConcurrence {
  BlockPair pair;
  double concurrence;
};

/// Per-pair concurrences C_ij (lexicographic pair order), their
/// root-sum-square aggregate C_db (a lower bound on the concurrence of the
/// qubit-qudit state), and the matching EOF lower bound.
struct BoundReport {
  std::vector<PairConcurrence> per_pair;
  double c_db = 0.0;
  double eof = 0.0;
  Route route = Route::full;
};

/// EOF of a two-qubit-style concurrence value:
///   E(c) = h((1 + sqrt(1 - c^2)) / 2),  h(x) = -x log2 x - (1-x) log2(1-x),
/// with h(0) = h(1) = 0 by continuity. Monotone increasing, E(0) = 0,
/// E(1) = 1. Inputs within 1e-9 outside [0,1] are clamped; anything beyond
/// that throws OutOfRange.
inline double eof_from_concurrence(double c) {
  constexpr double kSlack = 1e-9;
  if (c < -kSlack || c > 1.0 + kSlack)
    throw OutOfRange("concurrence " + std::to_string(c) + " outside [0,1]");
  c = std::min(1.0, std::max(0.0, c));
  const double x = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c)));
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

/// Aggregate per-pair concurrences into a report: C_db = sqrt(sum C_ij^2).
inline BoundReport make_bound_report(std::vector<PairConcurrence> per_pair, Route route) {
  double sum_sq = 0.0;
  for (const auto& pc : per_pair) sum_sq += pc.concurrence * pc.concurrence;
  BoundReport report;
  report.per_pair = std::move(per_pair);
  report.c_db = std::sqrt(sum_sq);
  report.eof = eof_from_concurrence(report.c_db);
  report.route = route;
  return report;
}

}  // namespace qpart
