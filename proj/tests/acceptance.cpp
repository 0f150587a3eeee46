// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "foodchain/cubic.hpp"
#include "foodchain/equilibria.hpp"
#include "foodchain/fode.hpp"
#include "foodchain/stability.hpp"
#include "foodchain/sweep.hpp"
#include "oracles.hpp"

using namespace foodchain;

namespace {

struct Criterion {
  int id;
  std::string title;
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool cond, std::string what) {
    if (!cond) ok = false;
    notes.push_back(fmt::format("{}{}", cond ? "" : "MISS ", what));
  }
};

int failures = 0;

void report(const Criterion& c, double seconds) {
  std::printf("%s criterion %d: %s (%.1fs)\n", c.ok ? "PASS" : "FAIL", c.id, c.title.c_str(),
              seconds);
  for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
  std::fflush(stdout);
  if (!c.ok) ++failures;
}

template <class F>
void run(int id, std::string title, F body) {
  Criterion c{id, std::move(title)};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, fmt::format("exception: {}", e.what()));
  }
  report(c, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

bool near(double got, double want, double tol) { return std::abs(got - want) <= tol; }

std::string cmp(std::string_view name, double got, double want, double tol) {
  return fmt::format("{} = {:.6g} (want {} +- {:g})", name, got, want, tol);
}

void check_abs(Criterion& c, std::string_view name, double got, double want, double tol) {
  c.expect(near(got, want, tol), cmp(name, got, want, tol));
}

StateVector interior(const OriginalParams& op) {
  const auto eq = interior_equilibrium(rescale_params(op));
  if (!eq) throw std::runtime_error("no interior equilibrium");
  return eq->state;
}

StabilityReport stability(const OriginalParams& op, double m) {
  return eigen_arg_check(jacobian_at(rescale_params(op), interior(op)), FractionalOrder{m});
}

// a0 at which the critical order of E* crosses m, by bisection on [lo, hi].
std::optional<double> stability_loss(OriginalParams op, double m, double lo, double hi) {
  auto unstable = [&](double a0) {
    op.a0 = a0;
    const auto eq = interior_equilibrium(rescale_params(op));
    return eq && eigen_arg_check(jacobian_at(rescale_params(op), eq->state), FractionalOrder{m})
                         .verdict == Verdict::unstable;
  };
  if (unstable(lo) || !unstable(hi)) return std::nullopt;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (unstable(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

int main() {
  run(1, "equilibrium reproduction, example 1", [](Criterion& c) {
    const auto op = oracle::example1();
    const auto E = unscale_state(op, interior(op));
    check_abs(c, "X*", E.x, 12.2081, 1e-3);
    check_abs(c, "Y*", E.y, 6.3158, 1e-3);
    check_abs(c, "Z*", E.z, 4.0056, 1e-3);
    const auto th = interior_existence_thresholds(op);
    check_abs(c, "t1", th.t1, 0.7500, 1e-4);
    c.expect(th.t2 && near(*th.t2, 0.6265, 1e-4), cmp("t2", th.t2.value_or(NAN), 0.6265, 1e-4));
    c.expect(th.t3 && near(*th.t3, 1.0658, 1e-4), cmp("t3", th.t3.value_or(NAN), 1.0658, 1e-4));
  });

  run(2, "local stability clause I, example 1", [](Criterion& c) {
    const auto rep = stability(oracle::example1(), 1.0);
    const auto& cp = rep.charpoly;
    check_abs(c, "A1", cp.A1, 0.6007, 1e-3);
    check_abs(c, "A3", cp.A3, 0.0016, 2e-4);
    check_abs(c, "A1A2-A3", cp.A1 * cp.A2 - cp.A3, 0.0465, 1e-3);
    check_abs(c, "D", cp.discriminant, 1.8925e-4, 0.05 * 1.8925e-4);
    c.expect(rep.clause == Clause::I, fmt::format("clause = {}", to_string(rep.clause)));
  });

  run(3, "local stability clause II, example 2", [](Criterion& c) {
    const auto op = oracle::example2();
    const auto J = jacobian_at(rescale_params(op), interior(op));
    const auto cp = charpoly_coeffs(J);
    check_abs(c, "D", cp.discriminant, -0.0100, 5e-4);
    check_abs(c, "A1", cp.A1, 0.4988, 1e-3);
    check_abs(c, "A2", cp.A2, 0.1611, 1e-3);
    check_abs(c, "A3", cp.A3, 2.8e-4, 3e-5);
    const auto low = classify_local(cp, FractionalOrder{0.5});
    c.expect(low.clause == Clause::II && low.stable == std::optional<bool>(true),
             fmt::format("m = 0.5: clause {}, stable by clause", to_string(low.clause)));
    const auto direct_low = eigen_arg_check(J, FractionalOrder{0.5});
    c.expect(direct_low.verdict == Verdict::stable,
             fmt::format("m = 0.5: direct test {}", to_string(direct_low.verdict)));
    const auto high = classify_local(cp, FractionalOrder{0.9});
    const auto direct = eigen_arg_check(J, FractionalOrder{0.9});
    c.expect(high.clause == Clause::II && !high.stable.has_value(),
             "m = 0.9: clause II defers to the direct test");
    c.expect(direct.verdict == Verdict::stable,
             fmt::format("m = 0.9: direct test {} (m* = {:.4f})", to_string(direct.verdict),
                         direct.critical_order));
  });

  run(4, "local instability clause III, example 3", [](Criterion& c) {
    const auto op = oracle::example3();
    const auto rep = stability(op, 0.75);
    check_abs(c, "D", rep.charpoly.discriminant, -7.4129, 1e-2);
    check_abs(c, "A1", rep.charpoly.A1, -0.6171, 1e-3);
    check_abs(c, "A2", rep.charpoly.A2, -0.0335, 1e-3);
    c.expect(rep.clause == Clause::III, fmt::format("clause = {}", to_string(rep.clause)));
    c.expect(rep.verdict == Verdict::unstable,
             fmt::format("m = 0.75: {} (m* = {:.4f})", to_string(rep.verdict), rep.critical_order));
    const auto traj = solve_caputo_pece(original_field(op), FractionalOrder{0.75},
                                        {1.2, 1.2, 1.2, Frame::original}, {0.05, 500.0});
    const auto pt = attractor_summary(traj, 300.0, 1e-2);
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < traj.size(); ++i) {
      if (traj.times[i] < 300.0) continue;
      lo = std::min(lo, traj.states[i][0]);
      hi = std::max(hi, traj.states[i][0]);
    }
    c.expect(hi - lo > 1.0, fmt::format("post-transient X range [{:.4g}, {:.4g}]", lo, hi));
    c.expect(pt.cluster_count >= 2,
             fmt::format("post-transient cluster_count = {} over {} maxima in [{:.5g}, {:.5g}]",
                         pt.cluster_count, pt.maxima.size(),
                         pt.maxima.empty() ? NAN : pt.maxima.front(),
                         pt.maxima.empty() ? NAN : pt.maxima.back()));
  });

  run(5, "global stability, example 4", [](Criterion& c) {
    const auto op = oracle::example4();
    const auto rp = rescale_params(op);
    const auto e = interior(op);
    const auto rep = global_stability_check(rp, e);
    const auto& v = rep.example_alpha;
    check_abs(c, "alpha (reproducing variant)", v.alpha, 2.1333, 1e-3);
    check_abs(c, "c1", rep.c1, -0.8029, 1e-3);
    check_abs(c, "c2", v.c2, -0.2804, 1e-3);
    check_abs(c, "c3", v.c3, -0.9242, 1e-3);
    c.expect(v.verdict, "all three values negative");
    c.expect(true, fmt::format("strict variant: alpha = {:.5f}, c2 = {:.5f}, c3 = {:.5f}, {}",
                               rep.invariant_alpha.alpha, rep.invariant_alpha.c2,
                               rep.invariant_alpha.c3,
                               rep.invariant_alpha.verdict ? "all negative" : "not all negative"));

    const auto E = unscale_state(op, e);
    const std::vector<Vec3> starts{{1.2, 1.2, 1.2}, {10.1, 30.1, 3}, {30, 10, 5}, {25, 5, 1},
                                   {22, 5, 4},      {18, 15, 8},     {12, 20, 2}, {5, 30, 6}};
    for (double m : {0.65, 0.75, 0.85, 1.0}) {
      double worst = 0;
      std::string worst_start;
      int aborted = 0;
      for (const auto& s : starts) {
        try {
          const auto traj = solve_caputo_pece(original_field(op), FractionalOrder{m},
                                              StateVector::from(s, Frame::original), {0.05, 500.0});
          const auto end = traj.back().values();
          for (std::size_t k = 0; k < 3; ++k) {
            const double dist = std::abs(end[k] - E.values()[k]) / E.values()[k];
            if (dist > worst) {
              worst = dist;
              worst_start = fmt::format("({}, {}, {})", s[0], s[1], s[2]);
            }
          }
        } catch (const SolverError& e) {
          ++aborted;
          c.notes.push_back(fmt::format("m = {}: start ({}, {}, {}) aborted: {}", m, s[0], s[1],
                                        s[2], e.what()));
        }
      }
      c.expect(aborted == 0 && worst < 1e-2,
               fmt::format("m = {}: {} of 8 runs completed, worst relative distance to E* at "
                           "t = 500 is {:.3e} from {}",
                           m, 8 - aborted, worst, worst_start));
    }
  });

  run(6, "bifurcation onsets", [](Criterion& c) {
    SweepSpec spec;
    spec.count = 101;
    for (double m : {1.0, 0.97}) {
      spec.m = m;
      const double want = m == 1.0 ? 1.66 : 1.69;
      const auto res = run_sweep(spec, oracle::example2());
      const auto onset = detect_first_doubling(res);
      int first_clusters = 0;
      for (const auto& p : res.points) {
        if (!p.failed) {
          first_clusters = p.cluster_count;
          break;
        }
      }
      c.expect(onset && near(*onset, want, 0.03),
               fmt::format("example 2, m = {}: first doubling {} (want {} +- 0.03); "
                           "cluster_count at a0 = 1.6 is {}",
                           m, onset ? fmt::format("{:.4f}", *onset) : std::string("none"), want,
                           first_clusters));
      auto op = oracle::example2();
      op.c3 = 0.03;
      const auto loss = stability_loss(op, m, 1.0, 2.1);
      c.notes.push_back(fmt::format(
          "info: with c3 = 0.03, E* loses stability at a0 = {} for m = {}",
          loss ? fmt::format("{:.4f}", *loss) : std::string("n/a"), m));
    }
    for (double m : {1.0, 0.97}) {
      spec.m = m;
      const auto res = run_sweep(spec, oracle::example4());
      const auto onset = detect_first_doubling(res);
      int max_clusters = 0;
      for (const auto& p : res.points) max_clusters = std::max(max_clusters, p.cluster_count);
      c.expect(!onset, fmt::format("example 4, m = {}: {} (max cluster_count {})", m,
                                   onset ? fmt::format("doubling at {:.4f}", *onset)
                                         : std::string("no doubling"),
                                   max_clusters));
    }
  });

  run(7, "solver oracle equivalence", [](Criterion& c) {
    const auto field = original_field(oracle::example1());
    const StateVector x0{1.2, 1.2, 1.2, Frame::original};
    const SolverOptions opts{0.05, 50.0};
    const auto pece = solve_caputo_pece(field, FractionalOrder{1.0}, x0, opts);
    const auto rk4 = reference_rk4(field, x0, opts);
    double worst = 0;
    for (std::size_t i = 0; i < pece.size(); ++i) {
      for (std::size_t k = 0; k < 3; ++k) {
        const double ref = rk4.states[i][k];
        worst = std::max(worst, std::abs(pece.states[i][k] - ref) / std::abs(ref));
      }
    }
    c.expect(worst < 1e-3, fmt::format("max relative PECE/RK4 deviation on [0, 50] = {:.3e}", worst));

    const VectorField logistic = [](const Vec3& u) {
      return Vec3{u[0] * (1 - u[0]), 0.0, 0.0};
    };
    const auto lt = solve_caputo_pece(logistic, FractionalOrder{1.0},
                                      {0.5, 0.0, 0.0, Frame::rescaled}, {0.01, 10.0});
    const double end_err = std::abs(lt.back().x - oracle::logistic(0.5, 10.0));
    double window_err = 0;
    for (std::size_t i = 0; i < lt.size(); ++i) {
      window_err = std::max(window_err, std::abs(lt.states[i][0] - oracle::logistic(0.5, lt.times[i])));
    }
    c.expect(end_err < 1e-6, fmt::format("logistic error at t = 10, h = 0.01: {:.3e}", end_err));
    c.notes.push_back(fmt::format("info: logistic max error over [0, 10]: {:.3e}", window_err));
  });

  run(8, "property suites", [](Criterion& c) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> factor(0.5, 2.0);

    double worst_res = 0, worst_y = 0;
    int with_interior = 0;
    for (int i = 0; i < 500; ++i) {
      auto op = oracle::example1();
      for (auto k : kOriginalKeys) op.set(k, op.get(k) * factor(rng));
      op.d1 = op.d0;
      const auto rp = rescale_params(op);
      const auto set = all_equilibria(rp);
      std::vector<StateVector> eqs{set.E0, set.E1};
      if (set.E2) eqs.push_back(*set.E2);
      if (set.E_star) {
        eqs.push_back(set.E_star->state);
        ++with_interior;
        const double Y = unscale_state(op, set.E_star->state).y;
        const double want = op.v3 / op.c3 - op.d3;
        worst_y = std::max(worst_y, std::abs(Y - want) / std::max(1.0, std::abs(want)));
      }
      for (const auto& s : eqs) worst_res = std::max(worst_res, residual(rp, s));
    }
    c.expect(worst_res < 1e-10, fmt::format("max equilibrium residual {:.2e}", worst_res));
    c.expect(with_interior > 0 && worst_y < 1e-9,
             fmt::format("Y* identity over {} interior cases, max deviation {:.2e}", with_interior,
                         worst_y));

    double worst_j = 0;
    std::uniform_real_distribution<double> pop(0.05, 2.0);
    for (int i = 0; i < 200; ++i) {
      const auto rp = rescale_params(oracle::example1());
      const StateVector s{pop(rng), pop(rng), pop(rng), Frame::rescaled};
      const auto J = jacobian_at(rp, s);
      const auto F = oracle::fd_jacobian(rp, s);
      for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t k = 0; k < 3; ++k) {
          worst_j = std::max(worst_j, std::abs(J[r][k] - F[r][k]) / std::max(1.0, std::abs(J[r][k])));
        }
      }
    }
    c.expect(worst_j < 1e-5, fmt::format("max Jacobian deviation from finite differences {:.2e}", worst_j));

    int mismatches = 0;
    std::uniform_real_distribution<double> u(-2.0, 2.0), w(0.05, 2.0);
    for (int i = 0; i < 1000; ++i) {
      const bool real = i % 2 == 0;
      std::complex<double> r1 = u(rng), r2, r3;
      if (real) {
        r2 = u(rng);
        r3 = u(rng);
        if (std::abs(r1 - r2) < 1e-2 || std::abs(r2 - r3) < 1e-2 || std::abs(r1 - r3) < 1e-2) {
          r2 += 0.5;
          r3 -= 0.5;
        }
      } else {
        const double re = u(rng), im = w(rng);
        r2 = {re, im};
        r3 = {re, -im};
      }
      const double a1 = -(r1 + r2 + r3).real();
      const double a2 = (r1 * r2 + r1 * r3 + r2 * r3).real();
      const double a3 = -(r1 * r2 * r3).real();
      if ((cubic_discriminant(a1, a2, a3) > 0.0) != real) ++mismatches;
    }
    c.expect(mismatches == 0, fmt::format("discriminant sign mismatches on 1000 cubics: {}", mismatches));

    {
      const auto op = oracle::example4();
      const auto rp = rescale_params(op);
      const auto e = interior(op);
      double worst_rise = 0;
      for (const Vec3 S : {Vec3{1.2, 1.2, 1.2}, Vec3{30, 10, 5}, Vec3{5, 30, 6}}) {
        for (double m : {0.75, 1.0}) {
          const auto s0 = rescale_state(op, StateVector::from(S, Frame::original));
          Trajectory traj;
          try {
            traj = solve_caputo_pece(rescaled_field(rp), FractionalOrder{m}, s0, {0.05, 100.0});
          } catch (const SolverError& e) {
            // Check the stretch before the abort.
            c.notes.push_back(fmt::format("Lyapunov run m = {} from ({}, {}, {}) aborted at t = {:.2f}",
                                          m, S[0], S[1], S[2], e.time()));
            traj = solve_caputo_pece(rescaled_field(rp), FractionalOrder{m}, s0,
                                     {0.05, std::floor(e.time()) - 1.0});
          }
          const double v0 = lyapunov_value(rp, e, traj.state(0));
          double prev = v0;
          for (std::size_t i = 1; i < traj.size(); ++i) {
            const double v = lyapunov_value(rp, e, traj.state(i));
            worst_rise = std::max(worst_rise, (v - prev) / v0);
            prev = v;
          }
        }
      }
      c.expect(worst_rise <= 1e-4,
               fmt::format("largest Lyapunov step increase relative to V(0): {:.2e}", worst_rise));
    }

    {
      const auto traj = solve_caputo_pece(original_field(oracle::example1()), FractionalOrder{0.8},
                                          {1.2, 1.2, 0.0, Frame::original}, {0.05, 100.0});
      double zmax = 0;
      for (const auto& s : traj.states) zmax = std::max(zmax, std::abs(s[2]));
      c.expect(zmax == 0.0, fmt::format("z0 = 0 gives max |z| = {:g}", zmax));
    }

    {
      const RescaledParams rp{0.3, 0.5, 0.8, 1, 0.1, 1, 0.1};
      const auto inv = invariance_check(rp);
      bool inside = inv.region.has_value();
      int runs = 0;
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      while (inside && runs < 10) {
        const StateVector s{unit(rng), 1.5 * unit(rng), 2.0 * unit(rng), Frame::rescaled};
        if (!inv.region->contains(s)) continue;
        ++runs;
        const auto traj = solve_caputo_pece(rescaled_field(rp), FractionalOrder{0.8}, s, {0.05, 100.0});
        for (std::size_t i = 0; i < traj.size() && inside; ++i) {
          inside = inv.region->contains(traj.state(i), 1e-6);
        }
      }
      c.expect(inv.condition_holds && inside,
               fmt::format("set A containment over {} trajectories: {}", runs, inside ? "held" : "violated"));
    }
  });

  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
