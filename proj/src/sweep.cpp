#include "foodchain/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

namespace foodchain {

void SweepSpec::validate() const {
  bool known = false;
  for (auto k : kOriginalKeys) known = known || k == parameter;
  if (!known) throw std::invalid_argument(fmt::format("unknown sweep parameter '{}'", parameter));
  if (!(lo < hi)) throw std::invalid_argument("sweep range needs lo < hi");
  if (count < 2) throw std::invalid_argument("sweep count must be >= 2");
  (void)FractionalOrder{m};
  sim.validate();
  if (!(transient >= 0.0 && transient < sim.t_end)) {
    throw std::invalid_argument("transient must lie in [0, t_end)");
  }
  require_frame(initial, Frame::original, "SweepSpec");
  if (!(cluster_tolerance > 0.0)) throw std::invalid_argument("cluster_tolerance must be positive");
}

std::vector<double> SweepSpec::grid() const {
  std::vector<double> g(count);
  const double span = hi - lo;
  for (std::size_t i = 0; i < count; ++i) {
    g[i] = lo + span * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  g.back() = hi;
  return g;
}

std::vector<double> local_maxima(std::span<const double> series) {
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < series.size(); ++i) {
    if (series[i - 1] < series[i] && series[i] > series[i + 1]) out.push_back(series[i]);
  }
  return out;
}

int count_clusters(std::span<const double> sorted, double gap) {
  if (sorted.empty()) return 0;
  int clusters = 1;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] - sorted[i - 1] > gap) ++clusters;
  }
  return clusters;
}

SweepPoint attractor_summary(const Trajectory& traj, double transient, double cluster_tolerance) {
  std::vector<double> xs;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (traj.times[i] >= transient) xs.push_back(traj.states[i][0]);
  }
  SweepPoint pt;
  if (xs.size() < 3) return pt;
  const auto [lo_it, hi_it] = std::minmax_element(xs.begin(), xs.end());
  const double range = *hi_it - *lo_it;
  const double magnitude = std::max({1.0, std::abs(*lo_it), std::abs(*hi_it)});
  if (range <= 1e-9 * magnitude) return pt;

  pt.maxima = local_maxima(xs);
  std::sort(pt.maxima.begin(), pt.maxima.end());
  pt.cluster_count = count_clusters(pt.maxima, cluster_tolerance * range);
  return pt;
}

SweepResult run_sweep(const SweepSpec& spec, const OriginalParams& base) {
  spec.validate();
  base.validate();
  const std::vector<double> grid = spec.grid();

  SweepResult result;
  result.parameter = spec.parameter;
  result.points.resize(grid.size());

  const FractionalOrder order{spec.m};
  auto evaluate_point = [&](std::size_t i) {
    SweepPoint& pt = result.points[i];
    try {
      OriginalParams params = base;
      params.set(spec.parameter, grid[i]);
      params.validate();
      const Trajectory traj =
          solve_caputo_pece(original_field(params), order, spec.initial, spec.sim);
      pt = attractor_summary(traj, spec.transient, spec.cluster_tolerance);
    } catch (const std::exception& e) {
      pt = SweepPoint{};
      pt.failed = true;
      pt.error = e.what();
    }
    pt.value = grid[i];
  };

  unsigned workers = spec.threads ? spec.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(grid.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) evaluate_point(i);
    return result;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < grid.size(); i = next++) evaluate_point(i);
    });
  }
  pool.clear();
  return result;
}

std::optional<double> detect_first_doubling(const SweepResult& result) {
  const SweepPoint* prev = nullptr;
  for (const auto& pt : result.points) {
    if (pt.failed) continue;
    if (prev && prev->cluster_count <= 1 && pt.cluster_count >= 2) {
      return 0.5 * (prev->value + pt.value);
    }
    prev = &pt;
  }
  return std::nullopt;
}

}  // namespace foodchain
