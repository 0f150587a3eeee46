#include "foodchain/equilibria.hpp"

#include <algorithm>
#include <cmath>

namespace foodchain {

EquilibriumSet boundary_equilibria(const RescaledParams& rp) {
  rp.validate();
  EquilibriumSet set;
  set.E0 = {0.0, 0.0, 0.0, Frame::rescaled};
  set.E1 = {1.0, 0.0, 0.0, Frame::rescaled};
  if (rp.c > rp.b) {
    const double theta = rp.a * rp.b / (rp.c - rp.b);
    set.theta = theta;
    if (theta > kPositivityThreshold && theta < 1.0) {
      set.E2 = StateVector{theta, (1.0 - theta) * (rp.a + theta), 0.0, Frame::rescaled};
    }
  }
  return set;
}

std::optional<InteriorEquilibrium> interior_equilibrium(const RescaledParams& rp) {
  rp.validate();
  const double y = rp.q / rp.p - rp.r;
  const double half_sum = 0.5 * (1.0 + rp.a);
  const double radicand = half_sum * half_sum - y;
  if (y <= kPositivityThreshold || radicand < 0.0) return std::nullopt;

  const double root = std::sqrt(radicand);
  auto z_of = [&](double x) { return (-rp.b + rp.c * x / (rp.a + x)) * (y + rp.d); };

  const double x = 0.5 * (1.0 - rp.a) + root;
  const double z = z_of(x);
  if (x <= kPositivityThreshold || z <= kPositivityThreshold) return std::nullopt;

  InteriorEquilibrium eq;
  eq.state = {x, y, z, Frame::rescaled};
  const double x_minus = 0.5 * (1.0 - rp.a) - root;
  eq.other_branch_positive =
      root > 0.0 && x_minus > kPositivityThreshold && z_of(x_minus) > kPositivityThreshold;
  return eq;
}

EquilibriumSet all_equilibria(const RescaledParams& rp) {
  EquilibriumSet set = boundary_equilibria(rp);
  set.E_star = interior_equilibrium(rp);
  return set;
}

ExistenceThresholds interior_existence_thresholds(const OriginalParams& op) {
  op.validate();
  ExistenceThresholds th;
  const double bd = op.b0 * op.d0;
  const double top = op.v3 / op.c3 - op.d3;
  th.t1 = bd;
  th.prey_premise = op.v3 > op.d3 * op.c3;
  th.predator_premise = op.v1 > op.a1;
  if (top >= 0.0) th.t2 = 2.0 * std::sqrt(op.b0 * op.v0 * top) - bd;
  if (op.v1 != op.a1) {
    th.t3 = bd * op.a1 / (op.v1 - op.a1) + op.v0 / (op.d0 * op.v1) * top * (op.v1 - op.a1);
  }
  if (th.prey_premise && th.predator_premise && th.t2 && th.t3) {
    th.verdict = op.a0 > std::max({th.t1, *th.t2, *th.t3});
  }
  return th;
}

double residual(const RescaledParams& rp, const StateVector& s) {
  const Vec3 f = rhs_rescaled(rp, s);
  return std::hypot(f[0], f[1], f[2]);
}

}  // namespace foodchain
