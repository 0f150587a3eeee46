#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "foodchain/equilibria.hpp"
#include "foodchain/fode.hpp"
#include "foodchain/stability.hpp"
#include "foodchain/sweep.hpp"

namespace foodchain {

/// Nine significant digits, shortest of fixed/scientific (printf %.9g).
std::string format_number(double v);

/// CSV with header `t,x,y,z`.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
/// Reads back what write_trajectory_csv produced (order and frame are not
/// stored in the file and are left at their defaults).
Trajectory read_trajectory_csv(std::istream& in);

/// CSV with header `param,value,x_max`, one row per maximum.
void write_sweep_csv(std::ostream& out, const SweepResult& result);
/// Single line `first_doubling=<value|none>` plus point counts.
void write_doubling_report(std::ostream& out, const SweepResult& result,
                           std::optional<double> doubling);

void write_equilibria_report(std::ostream& out, const EquilibriumSet& set,
                             const RescaledParams& rp, const OriginalParams* op);
void write_stability_report(std::ostream& out, const StabilityReport& rep);
void write_global_report(std::ostream& out, const GlobalReport& rep);
void write_invariance_report(std::ostream& out, const InvarianceReport& rep);

}  // namespace foodchain
