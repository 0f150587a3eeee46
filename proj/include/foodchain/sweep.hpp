#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "foodchain/fode.hpp"
#include "foodchain/model.hpp"

namespace foodchain {

struct SweepSpec {
  std::string parameter = "a0";  // one of the twelve original parameters
  double lo = 1.6;
  double hi = 2.1;
  std::size_t count = 101;
  double m = 1.0;
  SolverOptions sim{0.05, 500.0, std::nullopt, 1};
  double transient = 300.0;
  StateVector initial{1.2, 1.2, 1.2, Frame::original};
  /// Maxima closer than this fraction of the post-transient peak-to-peak
  /// range of X fall into one cluster.
  double cluster_tolerance = 1e-2;
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;

  void validate() const;
  [[nodiscard]] std::vector<double> grid() const;
};

struct SweepPoint {
  double value = 0;
  std::vector<double> maxima;  // sorted ascending
  int cluster_count = 0;       // 0: no oscillation left after the transient
  bool failed = false;
  std::string error;
};

struct SweepResult {
  std::string parameter;
  std::vector<SweepPoint> points;  // grid order
};

/// Strict interior local maxima u[i-1] < u[i] > u[i+1].
std::vector<double> local_maxima(std::span<const double> series);

/// Number of groups after splitting sorted values at gaps wider than `gap`.
int count_clusters(std::span<const double> sorted, double gap);

/// Local maxima of X after `transient` and their cluster count. A window
/// whose X range is below 1e-9 of its magnitude counts as converged and
/// yields no maxima.
SweepPoint attractor_summary(const Trajectory& traj, double transient, double cluster_tolerance);

SweepResult run_sweep(const SweepSpec& spec, const OriginalParams& base);

/// Midpoint between the last grid value with at most one cluster and the
/// first value after it with two or more. Failed points are skipped.
std::optional<double> detect_first_doubling(const SweepResult& result);

}  // namespace foodchain
