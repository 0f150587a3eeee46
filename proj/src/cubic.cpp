#include "foodchain/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace foodchain {

namespace {

double polish(double x, double a1, double a2, double a3) {
  for (int i = 0; i < 3; ++i) {
    const double f = ((x + a1) * x + a2) * x + a3;
    const double df = (3.0 * x + 2.0 * a1) * x + a2;
    if (df == 0.0) break;
    const double next = x - f / df;
    const double f_next = ((next + a1) * next + a2) * next + a3;
    if (!(std::abs(f_next) < std::abs(f))) break;
    x = next;
  }
  return x;
}

// Roots of xi^2 + b1 xi + b0 without cancellation.
std::array<std::complex<double>, 2> quadratic_roots(double b1, double b0) {
  const double disc = b1 * b1 - 4.0 * b0;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    const double q = -0.5 * (b1 + std::copysign(s, b1));
    if (q == 0.0) return {std::complex<double>{0.0}, std::complex<double>{0.0}};
    double r1 = q;
    double r2 = b0 / q;
    if (r1 > r2) std::swap(r1, r2);
    return {std::complex<double>{r1}, std::complex<double>{r2}};
  }
  const double re = -0.5 * b1;
  const double im = 0.5 * std::sqrt(-disc);
  return {std::complex<double>{re, im}, std::complex<double>{re, -im}};
}

}  // namespace

double cubic_discriminant(double a1, double a2, double a3) {
  return 18.0 * a1 * a2 * a3 + (a1 * a2) * (a1 * a2) - 4.0 * a3 * a1 * a1 * a1 -
         4.0 * a2 * a2 * a2 - 27.0 * a3 * a3;
}

std::array<std::complex<double>, 3> cubic_roots(double a1, double a2, double a3) {
  // Depressed cubic t^3 + p t + q with xi = t - a1/3.
  const double shift = a1 / 3.0;
  const double p = a2 - a1 * a1 / 3.0;
  const double q = 2.0 * a1 * a1 * a1 / 27.0 - a1 * a2 / 3.0 + a3;
  const double h = q * q / 4.0 + p * p * p / 27.0;

  if (h < 0.0) {
    // Three distinct real roots; p < 0 here.
    const double rho = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * rho), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    std::array<double, 3> r{};
    for (int k = 0; k < 3; ++k) {
      r[k] = polish(rho * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) - shift, a1, a2, a3);
    }
    std::sort(r.begin(), r.end());
    return {std::complex<double>{r[0]}, std::complex<double>{r[1]}, std::complex<double>{r[2]}};
  }

  const double s = std::sqrt(h);
  const double u = std::cbrt(-q / 2.0 + s);
  const double v = std::cbrt(-q / 2.0 - s);
  const double real_root = polish(u + v - shift, a1, a2, a3);

  // xi^3 + a1 xi^2 + a2 xi + a3 = (xi - r)(xi^2 + b1 xi + b0)
  const double b1 = a1 + real_root;
  const double b0 = a2 + real_root * b1;
  auto pair = quadratic_roots(b1, b0);
  if (pair[0].imag() == 0.0) {
    std::array<double, 3> r{real_root, polish(pair[0].real(), a1, a2, a3),
                            polish(pair[1].real(), a1, a2, a3)};
    std::sort(r.begin(), r.end());
    return {std::complex<double>{r[0]}, std::complex<double>{r[1]}, std::complex<double>{r[2]}};
  }
  return {std::complex<double>{real_root}, pair[0], pair[1]};
}

}  // namespace foodchain
