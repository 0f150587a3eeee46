#pragma once

#include <optional>

#include "foodchain/model.hpp"

namespace foodchain {

/// Populations at or below this are treated as absent.
inline constexpr double kPositivityThreshold = 1e-12;

struct InteriorEquilibrium {
  StateVector state;
  /// True when the minus root of the x* quadratic also gives a strictly
  /// positive triple, i.e. the interior equilibrium is not unique.
  bool other_branch_positive = false;
};

struct EquilibriumSet {
  StateVector E0;
  StateVector E1;
  std::optional<double> theta;  // ab/(c-b), set whenever c > b
  std::optional<StateVector> E2;
  std::optional<InteriorEquilibrium> E_star;
};

struct ExistenceThresholds {
  double t1 = 0;
  std::optional<double> t2;  // undefined when v3/c3 - d3 < 0
  std::optional<double> t3;  // undefined when v1 == a1
  bool prey_premise = false;      // v3 > d3 c3
  bool predator_premise = false;  // v1 > a1
  bool verdict = false;           // a0 > max{t1, t2, t3} with both premises
};

/// E0, E1 and (when 0 < theta < 1) the planar equilibrium E2.
EquilibriumSet boundary_equilibria(const RescaledParams& rp);

std::optional<InteriorEquilibrium> interior_equilibrium(const RescaledParams& rp);

/// Boundary and interior equilibria together.
EquilibriumSet all_equilibria(const RescaledParams& rp);

ExistenceThresholds interior_existence_thresholds(const OriginalParams& op);

/// Euclidean norm of the rescaled vector field at s.
double residual(const RescaledParams& rp, const StateVector& s);

}  // namespace foodchain
