#include "foodchain/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "foodchain/cubic.hpp"
#include "foodchain/equilibria.hpp"

namespace foodchain {

std::string_view to_string(Clause clause) {
  switch (clause) {
    case Clause::I: return "I";
    case Clause::II: return "II";
    case Clause::III: return "III";
    case Clause::IV: return "IV";
    case Clause::Indeterminate: break;
  }
  return "indeterminate";
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::stable: return "stable";
    case Verdict::unstable: return "unstable";
    case Verdict::marginal: break;
  }
  return "marginal";
}

Matrix3 jacobian_at(const RescaledParams& rp, const StateVector& s) {
  require_frame(s, Frame::rescaled, "jacobian_at");
  if (!(s.x > 0.0 && s.y > 0.0 && s.z > 0.0)) {
    throw std::invalid_argument("jacobian_at: state must be strictly positive");
  }
  const double x = s.x, y = s.y, z = s.z;
  const double xa = x + rp.a, yd = y + rp.d, yr = y + rp.r;
  Matrix3 J{};
  J[0][0] = 1.0 - 2.0 * x - rp.a * y / (xa * xa);
  J[0][1] = -x / xa;
  J[0][2] = 0.0;
  J[1][0] = rp.a * rp.c * y / (xa * xa);
  J[1][1] = rp.c * x / xa - rp.b - rp.d * z / (yd * yd);
  J[1][2] = -y / yd;
  J[2][0] = 0.0;
  J[2][1] = rp.q * z * z / (yr * yr);
  J[2][2] = 2.0 * z * (rp.p - rp.q / yr);
  return J;
}

CharPoly charpoly_coeffs(const Matrix3& J) {
  CharPoly cp;
  cp.A1 = -(J[0][0] + J[1][1] + J[2][2]);
  cp.A2 = (J[0][0] * J[1][1] - J[0][1] * J[1][0]) + (J[0][0] * J[2][2] - J[0][2] * J[2][0]) +
          (J[1][1] * J[2][2] - J[1][2] * J[2][1]);
  const double det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
                     J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
                     J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
  cp.A3 = -det;
  cp.discriminant = cubic_discriminant(cp.A1, cp.A2, cp.A3);
  return cp;
}

LocalClassification classify_local(const CharPoly& cp, FractionalOrder order) {
  const double m = order.value();
  const double D = cp.discriminant;
  const double A1 = cp.A1, A2 = cp.A2, A3 = cp.A3;
  constexpr double two_thirds = 2.0 / 3.0;

  LocalClassification out;
  if (D > 0.0 && A1 > 0.0 && A3 > 0.0 && A1 * A2 - A3 > 0.0) {
    out.clause = Clause::I;
    out.stable = true;
  } else if (D < 0.0) {
    // IV is a special case of II's sign pattern, so test it first.
    if (A1 > 0.0 && A2 > 0.0 && std::abs(A1 * A2 - A3) <= kClauseFourTolerance) {
      out.clause = Clause::IV;
      if (m < 1.0) out.stable = true;
    } else if (A1 >= 0.0 && A2 >= 0.0 && A3 > 0.0) {
      out.clause = Clause::II;
      if (m < two_thirds) out.stable = true;
    } else if (A1 < 0.0 && A2 < 0.0) {
      out.clause = Clause::III;
      if (m > two_thirds) out.stable = false;
    }
  }
  return out;
}

StabilityReport eigen_arg_check(const Matrix3& J, FractionalOrder order) {
  StabilityReport rep;
  rep.charpoly = charpoly_coeffs(J);
  rep.m = order.value();
  rep.clause = classify_local(rep.charpoly, order).clause;
  const auto& cp = rep.charpoly;
  rep.eigenvalues = cubic_roots(cp.A1, cp.A2, cp.A3);

  const double scale = std::max({1.0, std::abs(cp.A1), std::abs(cp.A2), std::abs(cp.A3)});
  bool zero_root = false;
  double min_arg = std::numbers::pi;
  for (const auto& xi : rep.eigenvalues) {
    if (std::abs(xi) <= 1e-14 * scale) {
      zero_root = true;
      continue;
    }
    min_arg = std::min(min_arg, std::abs(std::arg(xi)));
  }
  const double raw = 2.0 / std::numbers::pi * min_arg;
  rep.critical_order = std::clamp(raw, 0.0, 1.0);
  if (zero_root) {
    rep.verdict = Verdict::marginal;
    rep.critical_order = 0.0;
  } else if (rep.m < raw) {
    rep.verdict = Verdict::stable;
  } else if (rep.m > raw) {
    rep.verdict = Verdict::unstable;
  } else {
    rep.verdict = Verdict::marginal;
  }
  return rep;
}

namespace {

GlobalVariant global_variant(const RescaledParams& rp, const StateVector& e, double alpha) {
  const double a = rp.a, b = rp.b, c = rp.c, d = rp.d, q = rp.q, r = rp.r;
  const double sum_d = c + c / (4.0 * b) + d;
  const double weight = (a + e.x) / (a * c);
  GlobalVariant v;
  v.alpha = alpha;
  v.c2 = weight * (e.z / (d * (d + e.y)) - 1.0 / (2.0 * sum_d)) + q / (2.0 * b * r * alpha);
  v.c3 = q / (b * r * alpha) - weight / sum_d;
  return v;
}

}  // namespace

GlobalReport global_stability_check(const RescaledParams& rp, const StateVector& e) {
  require_frame(e, Frame::rescaled, "global_stability_check");
  if (!(e.x > 0.0 && e.y > 0.0 && e.z > 0.0)) {
    throw std::invalid_argument("global_stability_check: equilibrium must be interior");
  }
  if (const double res = residual(rp, e); !(res < 1e-8)) {
    throw std::invalid_argument(
        fmt::format("global_stability_check: state is not an equilibrium (residual {})", res));
  }
  const InvarianceReport inv = invariance_check(rp);

  GlobalReport rep;
  rep.c1 = e.y / (rp.a * (rp.a + e.x)) - 1.0;
  rep.invariant_alpha = global_variant(rp, e, inv.alpha);
  rep.example_alpha = global_variant(rp, e, inv.alpha_with_d);
  for (GlobalVariant* v : {&rep.invariant_alpha, &rep.example_alpha}) {
    v->verdict = rep.c1 < 0.0 && v->c2 < 0.0 && v->c3 < 0.0;
  }
  return rep;
}

namespace {

// u - u* - u* ln(u/u*) written to stay accurate near u = u*.
double volterra_term(double u, double u_star) {
  const double w = u / u_star - 1.0;
  return u_star * (w - std::log1p(w));
}

}  // namespace

double lyapunov_value(const RescaledParams& rp, const StateVector& e, const StateVector& s) {
  require_frame(e, Frame::rescaled, "lyapunov_value");
  require_frame(s, Frame::rescaled, "lyapunov_value");
  if (!(s.x > 0.0 && s.y > 0.0 && s.z > 0.0)) {
    throw std::domain_error("lyapunov_value: state must be strictly positive");
  }
  if (!(e.x > 0.0 && e.y > 0.0 && e.z > 0.0)) {
    throw std::domain_error("lyapunov_value: equilibrium must be strictly positive");
  }
  return volterra_term(s.x, e.x) + (rp.a + e.x) / (rp.a * rp.c) * volterra_term(s.y, e.y) +
         (e.y + rp.r) * volterra_term(s.z, e.z);
}

}  // namespace foodchain
