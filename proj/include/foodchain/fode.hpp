#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "foodchain/types.hpp"

namespace foodchain {

/// Order m of the Caputo derivative, 0 < m <= 1.
class FractionalOrder {
 public:
  explicit FractionalOrder(double m);
  [[nodiscard]] double value() const { return m_; }

 private:
  double m_;
};

struct SolverOptions {
  double step = 0.05;
  double t_end = 500.0;
  /// Number of most recent history terms kept in the convolution sums.
  /// Unset means full memory.
  std::optional<std::size_t> memory_truncation;
  int corrector_iterations = 1;

  /// Number of steps on the uniform grid (grid has steps() + 1 points).
  [[nodiscard]] std::size_t steps() const;
  void validate() const;
};

/// Raised when an integration leaves the admissible region. `time()` is the
/// grid time at which the failure was detected.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  [[nodiscard]] double time() const { return time_; }

 private:
  double time_;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vec3> states;
  double order = 1.0;
  Frame frame = Frame::original;

  [[nodiscard]] std::size_t size() const { return times.size(); }
  [[nodiscard]] StateVector state(std::size_t i) const {
    return StateVector::from(states[i], frame);
  }
  [[nodiscard]] StateVector back() const { return state(states.size() - 1); }
};

using VectorField = std::function<Vec3(const Vec3&)>;

/// Euler Gamma function on (0, 170). Throws std::domain_error outside.
double gamma(double x);

/// Predictor (product rectangle) weights b_{j,n+1}, j = 0..n, including
/// the h^m/m factor but not 1/Gamma(m).
std::vector<double> predictor_weights(double m, double h, std::size_t n);

/// Corrector (product trapezoid) weights a_{j,n+1}, j = 0..n+1, without
/// the h^m/Gamma(m+2) factor.
std::vector<double> corrector_weights(double m, std::size_t n);

/// Adams-Bashforth-Moulton predictor-corrector for the Caputo system
/// D^m u = rhs(u) on the grid t_k = k*h, k = 0..t_end/h.
///
/// Components that undershoot zero by less than 1e-9 are clamped to zero;
/// larger undershoots and non-finite values throw SolverError.
Trajectory solve_caputo_pece(const VectorField& rhs, FractionalOrder m,
                             const StateVector& initial,
                             const SolverOptions& opts);

/// Classical fourth-order Runge-Kutta on the same grid (m = 1 reference).
Trajectory reference_rk4(const VectorField& rhs, const StateVector& initial,
                         const SolverOptions& opts);

}  // namespace foodchain
