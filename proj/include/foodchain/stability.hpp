#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string_view>

#include "foodchain/fode.hpp"
#include "foodchain/model.hpp"

namespace foodchain {

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// F(xi) = xi^3 + A1 xi^2 + A2 xi + A3 and its discriminant.
struct CharPoly {
  double A1 = 0;
  double A2 = 0;
  double A3 = 0;
  double discriminant = 0;

  [[nodiscard]] std::complex<double> operator()(std::complex<double> xi) const {
    return ((xi + A1) * xi + A2) * xi + A3;
  }
};

/// Which sufficient condition on (D, A1, A2, A3) applies.
///   I   D > 0, A1 > 0, A3 > 0, A1 A2 - A3 > 0: stable for all m in (0, 1]
///   II  D < 0, A1 >= 0, A2 >= 0, A3 > 0: stable for m < 2/3
///   III D < 0, A1 < 0, A2 < 0: unstable for m > 2/3
///   IV  D < 0, A1 > 0, A2 > 0, A1 A2 = A3: stable for m in (0, 1)
enum class Clause { I, II, III, IV, Indeterminate };

std::string_view to_string(Clause clause);

/// Absolute tolerance for the A1 A2 = A3 equality of clause IV.
inline constexpr double kClauseFourTolerance = 1e-9;

struct LocalClassification {
  Clause clause = Clause::Indeterminate;
  /// Set when the matched clause decides stability at the queried order;
  /// empty means the eigenvalue test has to decide.
  std::optional<bool> stable;
};

enum class Verdict { stable, unstable, marginal };

std::string_view to_string(Verdict verdict);

struct StabilityReport {
  CharPoly charpoly;
  std::array<std::complex<double>, 3> eigenvalues;
  Clause clause = Clause::Indeterminate;
  double m = 1.0;
  Verdict verdict = Verdict::marginal;
  /// (2/pi) min |arg(xi_i)| clamped to [0, 1].
  double critical_order = 0;
};

/// Analytic Jacobian of the rescaled vector field at a strictly positive s.
Matrix3 jacobian_at(const RescaledParams& rp, const StateVector& s);

CharPoly charpoly_coeffs(const Matrix3& J);

LocalClassification classify_local(const CharPoly& cp, FractionalOrder m);

/// Sector test |arg(xi_i)| > m pi / 2 on the roots of the characteristic
/// polynomial, which is necessary and sufficient for local asymptotic
/// stability of the Caputo linearisation.
StabilityReport eigen_arg_check(const Matrix3& J, FractionalOrder m);

/// Left-hand sides of the three global-stability inequalities evaluated
/// with one choice of alpha.
struct GlobalVariant {
  double alpha = 0;
  double c2 = 0;
  double c3 = 0;
  bool verdict = false;
};

struct GlobalReport {
  double c1 = 0;
  /// alpha = 1/(b^2 (c + c/4b + r)) as in the invariant-region bound.
  GlobalVariant invariant_alpha;
  /// alpha = 1/(b^2 (c + c/4b + d)); reproduces the alpha quoted with the
  /// worked global-stability example.
  GlobalVariant example_alpha;
};

/// Throws std::invalid_argument if `e` is not an interior equilibrium of rp
/// (residual above 1e-8 or a non-positive component).
GlobalReport global_stability_check(const RescaledParams& rp, const StateVector& e);

/// Volterra-type Lyapunov function centred at the interior equilibrium e.
/// Throws std::domain_error if a component of s is not strictly positive.
double lyapunov_value(const RescaledParams& rp, const StateVector& e, const StateVector& s);

}  // namespace foodchain
