#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "foodchain/fode.hpp"
#include "foodchain/types.hpp"

namespace foodchain {

/// Biological parameters of the prey / intermediate predator / top predator
/// chain in original units.
struct OriginalParams {
  double a0 = 0, b0 = 0, v0 = 0, d0 = 0;
  double a1 = 0, v1 = 0, d1 = 0;
  double v2 = 0, d2 = 0;
  double c3 = 0, v3 = 0, d3 = 0;

  void validate() const;
  /// Named access for sweeps and parameter files. Throws std::invalid_argument
  /// on an unknown key.
  [[nodiscard]] double get(std::string_view key) const;
  void set(std::string_view key, double value);
};

/// Nondimensional parameters of the rescaled system.
struct RescaledParams {
  double a = 0, b = 0, c = 0, d = 0, p = 0, q = 0, r = 0;

  void validate() const;
  [[nodiscard]] double get(std::string_view key) const;
  void set(std::string_view key, double value);
};

inline constexpr std::string_view kOriginalKeys[] = {"a0", "b0", "v0", "d0", "a1", "v1",
                                                     "d1", "v2", "d2", "c3", "v3", "d3"};
inline constexpr std::string_view kRescaledKeys[] = {"a", "b", "c", "d", "p", "q", "r"};

Vec3 rhs_original(const OriginalParams& p, const StateVector& s);
Vec3 rhs_rescaled(const RescaledParams& rp, const StateVector& s);

/// Vector fields in the form the solvers take (frame fixed by the closure).
VectorField original_field(const OriginalParams& p);
VectorField rescaled_field(const RescaledParams& rp);

RescaledParams rescale_params(const OriginalParams& op);

/// X = (a0/b0) x, Y = (a0^2/(b0 v0)) y, Z = (a0^3/(b0 v0 v2)) z.
StateVector rescale_state(const OriginalParams& op, const StateVector& s);
StateVector unscale_state(const OriginalParams& op, const StateVector& s);

/// Region A = {0 <= x <= 1, 0 <= x + y/c <= prey_pred_bound,
///             0 <= x + y/c + alpha z <= total_bound}.
struct InvariantRegion {
  double c = 0;
  double alpha = 0;
  double prey_bound = 1.0;
  double prey_pred_bound = 0;
  double total_bound = 0;

  [[nodiscard]] bool contains(const StateVector& s, double tol = 0.0) const;
};

struct InvarianceReport {
  bool condition_holds = false;
  double lhs = 0;   // c + c/(4b) + r
  double rhs = 0;   // q/p
  double alpha = 0; // 1/(b^2 (c + c/(4b) + r))
  /// Same expression with d in place of r; this is the value that reproduces
  /// the alpha quoted alongside the global-stability example.
  double alpha_with_d = 0;
  std::optional<double> M;
  std::optional<InvariantRegion> region;
};

InvarianceReport invariance_check(const RescaledParams& rp);

/// Parameter file: flat `key = value` lines, `#` starts a comment. Unknown
/// keys, duplicates, malformed numbers and missing keys throw
/// ParamFileError naming the key.
class ParamFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::map<std::string, double> read_key_values(std::istream& in);
OriginalParams parse_original_params(std::istream& in);
RescaledParams parse_rescaled_params(std::istream& in);
OriginalParams load_original_params(const std::string& path);
RescaledParams load_rescaled_params(const std::string& path);

}  // namespace foodchain
