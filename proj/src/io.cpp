#include "foodchain/io.hpp"

#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace foodchain {

std::string format_number(double v) { return fmt::format("{:.9g}", v); }

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,x,y,z\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const Vec3& u = traj.states[i];
    out << format_number(traj.times[i]) << ',' << format_number(u[0]) << ','
        << format_number(u[1]) << ',' << format_number(u[2]) << '\n';
  }
}

Trajectory read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "t,x,y,z") {
    throw std::runtime_error("trajectory CSV: missing header 't,x,y,z'");
  }
  Trajectory traj;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::array<double, 4> fields{};
    std::istringstream ss(line);
    std::string cell;
    std::size_t k = 0;
    while (std::getline(ss, cell, ',')) {
      if (k >= fields.size()) break;
      char* end = nullptr;
      fields[k] = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') {
        throw std::runtime_error(fmt::format("trajectory CSV: bad number on row {}", row));
      }
      ++k;
    }
    if (k != fields.size()) {
      throw std::runtime_error(fmt::format("trajectory CSV: row {} needs 4 columns", row));
    }
    traj.times.push_back(fields[0]);
    traj.states.push_back({fields[1], fields[2], fields[3]});
  }
  return traj;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "param,value,x_max\n";
  for (const auto& pt : result.points) {
    for (double xm : pt.maxima) {
      out << result.parameter << ',' << format_number(pt.value) << ',' << format_number(xm)
          << '\n';
    }
  }
}

void write_doubling_report(std::ostream& out, const SweepResult& result,
                           std::optional<double> doubling) {
  std::size_t failed = 0;
  for (const auto& pt : result.points) failed += pt.failed ? 1 : 0;
  out << "first_doubling=" << (doubling ? format_number(*doubling) : std::string("none"))
      << " param=" << result.parameter << " points=" << result.points.size()
      << " failed=" << failed << '\n';
}

namespace {

void write_state(std::ostream& out, std::string_view name, const StateVector& s) {
  out << name << '=' << format_number(s.x) << ',' << format_number(s.y) << ','
      << format_number(s.z) << '\n';
}

}  // namespace

void write_equilibria_report(std::ostream& out, const EquilibriumSet& set,
                             const RescaledParams& rp, const OriginalParams* op) {
  auto emit = [&](std::string_view name, const StateVector& s) {
    write_state(out, name, s);
    out << name << "_residual=" << format_number(residual(rp, s)) << '\n';
    if (op) write_state(out, fmt::format("{}_original", name), unscale_state(*op, s));
  };
  emit("E0", set.E0);
  emit("E1", set.E1);
  out << "theta=" << (set.theta ? format_number(*set.theta) : std::string("undefined")) << '\n';
  if (set.E2) {
    emit("E2", *set.E2);
  } else {
    out << "E2=absent\n";
  }
  if (set.E_star) {
    emit("E_star", set.E_star->state);
    out << "E_star_other_branch_positive=" << (set.E_star->other_branch_positive ? "true" : "false")
        << '\n';
  } else {
    out << "E_star=absent\n";
  }
  if (op) {
    const ExistenceThresholds th = interior_existence_thresholds(*op);
    auto opt = [](const std::optional<double>& v) {
      return v ? format_number(*v) : std::string("undefined");
    };
    out << "threshold_t1=" << format_number(th.t1) << '\n'
        << "threshold_t2=" << opt(th.t2) << '\n'
        << "threshold_t3=" << opt(th.t3) << '\n'
        << "premise_v3_gt_d3c3=" << (th.prey_premise ? "true" : "false") << '\n'
        << "premise_v1_gt_a1=" << (th.predator_premise ? "true" : "false") << '\n'
        << "threshold_verdict=" << (th.verdict ? "true" : "false") << '\n';
  }
}

void write_stability_report(std::ostream& out, const StabilityReport& rep) {
  const CharPoly& cp = rep.charpoly;
  out << "A1=" << format_number(cp.A1) << '\n'
      << "A2=" << format_number(cp.A2) << '\n'
      << "A3=" << format_number(cp.A3) << '\n'
      << "A1A2_minus_A3=" << format_number(cp.A1 * cp.A2 - cp.A3) << '\n'
      << "D=" << format_number(cp.discriminant) << '\n';
  for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i) {
    out << "eig" << i + 1 << '=' << format_number(rep.eigenvalues[i].real()) << ','
        << format_number(rep.eigenvalues[i].imag()) << '\n';
  }
  out << "clause=" << to_string(rep.clause) << '\n'
      << "m=" << format_number(rep.m) << '\n'
      << "m_star=" << format_number(rep.critical_order) << '\n'
      << "verdict=" << to_string(rep.verdict) << '\n';
}

void write_global_report(std::ostream& out, const GlobalReport& rep) {
  auto variant = [&](std::string_view tag, const GlobalVariant& v) {
    out << tag << "_alpha=" << format_number(v.alpha) << '\n'
        << tag << "_c2=" << format_number(v.c2) << '\n'
        << tag << "_c3=" << format_number(v.c3) << '\n'
        << tag << "_verdict=" << (v.verdict ? "true" : "false") << '\n';
  };
  out << "c1=" << format_number(rep.c1) << '\n';
  variant("alpha_r", rep.invariant_alpha);
  variant("alpha_d", rep.example_alpha);
}

void write_invariance_report(std::ostream& out, const InvarianceReport& rep) {
  out << "condition_holds=" << (rep.condition_holds ? "true" : "false") << '\n'
      << "lhs=" << format_number(rep.lhs) << '\n'
      << "q_over_p=" << format_number(rep.rhs) << '\n'
      << "alpha=" << format_number(rep.alpha) << '\n'
      << "alpha_with_d=" << format_number(rep.alpha_with_d) << '\n'
      << "M=" << (rep.M ? format_number(*rep.M) : std::string("undefined")) << '\n';
  if (rep.region) {
    out << "bound_x=" << format_number(rep.region->prey_bound) << '\n'
        << "bound_x_plus_y_over_c=" << format_number(rep.region->prey_pred_bound) << '\n'
        << "bound_total=" << format_number(rep.region->total_bound) << '\n';
  }
}

}  // namespace foodchain
