#include "foodchain/fode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace foodchain {

std::string_view to_string(Frame frame) {
  return frame == Frame::original ? "original" : "rescaled";
}

void require_frame(const StateVector& s, Frame expected, std::string_view where) {
  if (s.frame != expected) {
    throw std::invalid_argument(fmt::format("{}: expected {} frame state, got {}",
                                            where, to_string(expected),
                                            to_string(s.frame)));
  }
}

FractionalOrder::FractionalOrder(double m) : m_(m) {
  if (!(m > 0.0 && m <= 1.0)) {
    throw std::invalid_argument(fmt::format("fractional order {} outside (0, 1]", m));
  }
}

std::size_t SolverOptions::steps() const {
  return static_cast<std::size_t>(std::llround(t_end / step));
}

void SolverOptions::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw std::invalid_argument(fmt::format("step must be positive, got {}", step));
  }
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw std::invalid_argument(fmt::format("t_end must be positive, got {}", t_end));
  }
  if (steps() < 1) {
    throw std::invalid_argument("t_end/step must give at least two grid points");
  }
  if (corrector_iterations < 1) {
    throw std::invalid_argument("corrector_iterations must be >= 1");
  }
  if (memory_truncation && *memory_truncation < 1) {
    throw std::invalid_argument("memory_truncation must be >= 1 when set");
  }
}

double gamma(double x) {
  if (!(x > 0.0) || !(x < 170.0)) {
    throw std::domain_error(fmt::format("gamma: argument {} outside (0, 170)", x));
  }
  return std::tgamma(x);
}

namespace {

constexpr double kUndershootTolerance = 1e-9;

// (k+1)^p - k^p without cancellation for large k.
double forward_difference(double p, std::size_t k) {
  if (k == 0) return 1.0;
  const auto kd = static_cast<double>(k);
  return std::pow(kd, p) * std::expm1(p * std::log1p(1.0 / kd));
}

// n^{m+1} - (n-m)(n+1)^m, the weight of the initial history term.
double corrector_first_weight(double m, std::size_t n) {
  const auto nd = static_cast<double>(n);
  return std::pow(nd + 1.0, m) * (m + nd * std::expm1(m * std::log1p(-1.0 / (nd + 1.0))));
}

struct KernelTables {
  // Indexed by k = n - j.
  std::vector<double> rect;   // (k+1)^m - k^m
  std::vector<double> trap;   // (k+2)^{m+1} - 2(k+1)^{m+1} + k^{m+1}
};

KernelTables make_tables(double m, std::size_t count) {
  KernelTables t;
  t.rect.resize(count);
  t.trap.resize(count);
  double prev = forward_difference(m + 1.0, 0);
  for (std::size_t k = 0; k < count; ++k) {
    t.rect[k] = forward_difference(m, k);
    const double next = forward_difference(m + 1.0, k + 1);
    t.trap[k] = next - prev;
    prev = next;
  }
  return t;
}

// Validates a freshly computed state in place. Throws on failure.
void admit(Vec3& u, double t) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (!std::isfinite(u[i])) {
      throw SolverError(fmt::format("non-finite state component {} at t = {}", i, t), t);
    }
    if (u[i] < 0.0) {
      if (u[i] < -kUndershootTolerance) {
        throw SolverError(
            fmt::format("state component {} = {} below zero at t = {}", i, u[i], t), t);
      }
      u[i] = 0.0;
    }
  }
}

Vec3 evaluate(const VectorField& rhs, const Vec3& u, double t) {
  Vec3 f = rhs(u);
  for (std::size_t i = 0; i < 3; ++i) {
    if (!std::isfinite(f[i])) {
      throw SolverError(fmt::format("non-finite vector field at t = {}", t), t);
    }
  }
  return f;
}

Trajectory make_grid(const StateVector& initial, const SolverOptions& opts, double order) {
  const std::size_t n = opts.steps();
  Trajectory traj;
  traj.order = order;
  traj.frame = initial.frame;
  traj.times.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) traj.times[k] = static_cast<double>(k) * opts.step;
  traj.states.reserve(n + 1);
  return traj;
}

void require_nonnegative(const StateVector& initial) {
  const Vec3 u = initial.values();
  for (double c : u) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw std::invalid_argument("initial state must be finite and nonnegative");
    }
  }
}

}  // namespace

std::vector<double> predictor_weights(double m, double h, std::size_t n) {
  const double scale = std::pow(h, m) / m;
  std::vector<double> b(n + 1);
  for (std::size_t j = 0; j <= n; ++j) b[j] = scale * forward_difference(m, n - j);
  return b;
}

std::vector<double> corrector_weights(double m, std::size_t n) {
  std::vector<double> a(n + 2);
  a[0] = corrector_first_weight(m, n);
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t k = n - j;
    a[j] = forward_difference(m + 1.0, k + 1) - forward_difference(m + 1.0, k);
  }
  a[n + 1] = 1.0;
  return a;
}

Trajectory solve_caputo_pece(const VectorField& rhs, FractionalOrder order,
                             const StateVector& initial, const SolverOptions& opts) {
  opts.validate();
  require_nonnegative(initial);

  const double m = order.value();
  const double h = opts.step;
  const std::size_t steps = opts.steps();
  const std::size_t window = opts.memory_truncation.value_or(steps + 1);

  Trajectory traj = make_grid(initial, opts, m);
  const Vec3 u0 = initial.values();
  traj.states.push_back(u0);

  const double pred_scale = std::pow(h, m) / gamma(m + 1.0);
  const double corr_scale = std::pow(h, m) / gamma(m + 2.0);

  // Kernel tables stored reversed so both sums walk memory forward:
  // weight for history index j at step n lives at [steps - 1 - n + j].
  const KernelTables tables = make_tables(m, steps);
  std::vector<double> rect_rev(tables.rect.rbegin(), tables.rect.rend());
  std::vector<double> trap_rev(tables.trap.rbegin(), tables.trap.rend());

  // History of vector-field values, one array per component.
  std::array<std::vector<double>, 3> hist;
  for (auto& v : hist) v.reserve(steps + 1);
  {
    const Vec3 f0 = evaluate(rhs, u0, 0.0);
    for (std::size_t i = 0; i < 3; ++i) hist[i].push_back(f0[i]);
  }

  for (std::size_t n = 0; n < steps; ++n) {
    const double t_next = traj.times[n + 1];
    const std::size_t lo = (n + 1 > window) ? n + 1 - window : 0;
    const std::size_t base = steps - 1 - n;
    const double first = (lo == 0) ? corrector_first_weight(m, n) : 0.0;

    Vec3 pred_sum{};
    Vec3 corr_sum{};
    {
      const double* fx = hist[0].data();
      const double* fy = hist[1].data();
      const double* fz = hist[2].data();
      const double* br = rect_rev.data() + base;
      const double* ar = trap_rev.data() + base;
      double px = 0.0, py = 0.0, pz = 0.0, cx = 0.0, cy = 0.0, cz = 0.0;
      std::size_t j = lo;
      if (lo == 0) {
        // The initial history term carries its own corrector weight.
        px = br[0] * fx[0];
        py = br[0] * fy[0];
        pz = br[0] * fz[0];
        cx = first * fx[0];
        cy = first * fy[0];
        cz = first * fz[0];
        j = 1;
      }
      for (; j <= n; ++j) {
        px += br[j] * fx[j];
        py += br[j] * fy[j];
        pz += br[j] * fz[j];
        cx += ar[j] * fx[j];
        cy += ar[j] * fy[j];
        cz += ar[j] * fz[j];
      }
      pred_sum = {px, py, pz};
      corr_sum = {cx, cy, cz};
    }

    Vec3 u;
    for (std::size_t i = 0; i < 3; ++i) u[i] = u0[i] + pred_scale * pred_sum[i];
    for (double c : u) {
      if (!std::isfinite(c)) {
        throw SolverError(fmt::format("non-finite predictor at t = {}", t_next), t_next);
      }
    }

    Vec3 f_next = evaluate(rhs, u, t_next);
    for (int it = 0; it < opts.corrector_iterations; ++it) {
      for (std::size_t i = 0; i < 3; ++i) u[i] = u0[i] + corr_scale * (f_next[i] + corr_sum[i]);
      admit(u, t_next);
      f_next = evaluate(rhs, u, t_next);
    }

    traj.states.push_back(u);
    for (std::size_t i = 0; i < 3; ++i) hist[i].push_back(f_next[i]);
  }
  return traj;
}

Trajectory reference_rk4(const VectorField& rhs, const StateVector& initial,
                         const SolverOptions& opts) {
  opts.validate();
  require_nonnegative(initial);

  const double h = opts.step;
  const std::size_t steps = opts.steps();
  Trajectory traj = make_grid(initial, opts, 1.0);
  Vec3 u = initial.values();
  traj.states.push_back(u);

  auto axpy = [](const Vec3& a, double s, const Vec3& b) {
    return Vec3{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
  };

  for (std::size_t n = 0; n < steps; ++n) {
    const double t = traj.times[n];
    const Vec3 k1 = evaluate(rhs, u, t);
    const Vec3 k2 = evaluate(rhs, axpy(u, 0.5 * h, k1), t);
    const Vec3 k3 = evaluate(rhs, axpy(u, 0.5 * h, k2), t);
    const Vec3 k4 = evaluate(rhs, axpy(u, h, k3), t);
    for (std::size_t i = 0; i < 3; ++i) {
      u[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      if (!std::isfinite(u[i])) {
        throw SolverError(fmt::format("non-finite state at t = {}", traj.times[n + 1]),
                          traj.times[n + 1]);
      }
    }
    traj.states.push_back(u);
  }
  return traj;
}

}  // namespace foodchain
