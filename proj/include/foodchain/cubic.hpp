#pragma once

#include <array>
#include <complex>

namespace foodchain {

/// Discriminant of xi^3 + a1 xi^2 + a2 xi + a3.
double cubic_discriminant(double a1, double a2, double a3);

/// All three roots of the monic cubic xi^3 + a1 xi^2 + a2 xi + a3.
///
/// Closed form: three real roots via the trigonometric formula, otherwise a
/// Cardano real root followed by deflation to a quadratic. Real roots are
/// polished with Newton steps. Real roots come first, sorted ascending.
std::array<std::complex<double>, 3> cubic_roots(double a1, double a2, double a3);

}  // namespace foodchain
