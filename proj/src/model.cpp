#include "foodchain/model.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

namespace foodchain {

namespace {

template <class Params>
using Member = double Params::*;

constexpr std::pair<std::string_view, Member<OriginalParams>> kOriginalMembers[] = {
    {"a0", &OriginalParams::a0}, {"b0", &OriginalParams::b0}, {"v0", &OriginalParams::v0},
    {"d0", &OriginalParams::d0}, {"a1", &OriginalParams::a1}, {"v1", &OriginalParams::v1},
    {"d1", &OriginalParams::d1}, {"v2", &OriginalParams::v2}, {"d2", &OriginalParams::d2},
    {"c3", &OriginalParams::c3}, {"v3", &OriginalParams::v3}, {"d3", &OriginalParams::d3}};

constexpr std::pair<std::string_view, Member<RescaledParams>> kRescaledMembers[] = {
    {"a", &RescaledParams::a}, {"b", &RescaledParams::b}, {"c", &RescaledParams::c},
    {"d", &RescaledParams::d}, {"p", &RescaledParams::p}, {"q", &RescaledParams::q},
    {"r", &RescaledParams::r}};

template <class Params, class Table>
auto& member(Params& params, const Table& table, std::string_view key) {
  for (const auto& [name, ptr] : table) {
    if (name == key) return params.*ptr;
  }
  throw std::invalid_argument(fmt::format("unknown parameter '{}'", key));
}

template <class Params, class Table>
void validate_all(const Params& params, const Table& table) {
  for (const auto& [name, ptr] : table) {
    const double v = params.*ptr;
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(
          fmt::format("parameter '{}' must be finite and positive, got {}", name, v));
    }
  }
}

}  // namespace

void OriginalParams::validate() const { validate_all(*this, kOriginalMembers); }
double OriginalParams::get(std::string_view key) const {
  return member(*this, kOriginalMembers, key);
}
void OriginalParams::set(std::string_view key, double value) {
  member(*this, kOriginalMembers, key) = value;
}

void RescaledParams::validate() const { validate_all(*this, kRescaledMembers); }
double RescaledParams::get(std::string_view key) const {
  return member(*this, kRescaledMembers, key);
}
void RescaledParams::set(std::string_view key, double value) {
  member(*this, kRescaledMembers, key) = value;
}

Vec3 rhs_original(const OriginalParams& p, const StateVector& s) {
  require_frame(s, Frame::original, "rhs_original");
  const double X = s.x, Y = s.y, Z = s.z;
  return {p.a0 * X - p.b0 * X * X - p.v0 * X * Y / (p.d0 + X),
          -p.a1 * Y + p.v1 * X * Y / (p.d1 + X) - p.v2 * Y * Z / (p.d2 + Y),
          p.c3 * Z * Z - p.v3 * Z * Z / (p.d3 + Y)};
}

Vec3 rhs_rescaled(const RescaledParams& rp, const StateVector& s) {
  require_frame(s, Frame::rescaled, "rhs_rescaled");
  const double x = s.x, y = s.y, z = s.z;
  return {x * (1.0 - x) - x * y / (x + rp.a),
          rp.c * x * y / (x + rp.a) - rp.b * y - y * z / (y + rp.d),
          rp.p * z * z - rp.q * z * z / (y + rp.r)};
}

VectorField original_field(const OriginalParams& p) {
  return [p](const Vec3& u) { return rhs_original(p, StateVector::from(u, Frame::original)); };
}

VectorField rescaled_field(const RescaledParams& rp) {
  return [rp](const Vec3& u) { return rhs_rescaled(rp, StateVector::from(u, Frame::rescaled)); };
}

RescaledParams rescale_params(const OriginalParams& op) {
  op.validate();
  const double a0 = op.a0, b0 = op.b0, v0 = op.v0;
  RescaledParams rp;
  rp.a = b0 * op.d0 / a0;
  rp.b = op.a1 / a0;
  rp.c = op.v1 / a0;
  rp.d = op.d2 * v0 * b0 / (a0 * a0);
  rp.p = op.c3 * a0 * a0 / (b0 * v0 * op.v2);
  rp.q = op.v3 / op.v2;
  rp.r = op.d3 * v0 * b0 / (a0 * a0);
  return rp;
}

namespace {

Vec3 state_scales(const OriginalParams& op) {
  const double a0 = op.a0;
  return {a0 / op.b0, a0 * a0 / (op.b0 * op.v0), a0 * a0 * a0 / (op.b0 * op.v0 * op.v2)};
}

}  // namespace

StateVector rescale_state(const OriginalParams& op, const StateVector& s) {
  require_frame(s, Frame::original, "rescale_state");
  const Vec3 k = state_scales(op);
  return {s.x / k[0], s.y / k[1], s.z / k[2], Frame::rescaled};
}

StateVector unscale_state(const OriginalParams& op, const StateVector& s) {
  require_frame(s, Frame::rescaled, "unscale_state");
  const Vec3 k = state_scales(op);
  return {s.x * k[0], s.y * k[1], s.z * k[2], Frame::original};
}

bool InvariantRegion::contains(const StateVector& s, double tol) const {
  require_frame(s, Frame::rescaled, "InvariantRegion::contains");
  const double w1 = s.x;
  const double w2 = s.x + s.y / c;
  const double w3 = w2 + alpha * s.z;
  if (s.y < -tol || s.z < -tol) return false;
  return w1 >= -tol && w1 <= prey_bound + tol && w2 >= -tol && w2 <= prey_pred_bound + tol &&
         w3 >= -tol && w3 <= total_bound + tol;
}

InvarianceReport invariance_check(const RescaledParams& rp) {
  rp.validate();
  const double b = rp.b, c = rp.c;
  InvarianceReport rep;
  rep.lhs = c + c / (4.0 * b) + rp.r;
  rep.rhs = rp.q / rp.p;
  rep.condition_holds = rep.lhs < rep.rhs;
  rep.alpha = 1.0 / (b * b * rep.lhs);
  rep.alpha_with_d = 1.0 / (b * b * (c + c / (4.0 * b) + rp.d));
  if (rep.condition_holds) {
    const double M = 1.0 / (4.0 * (rp.q - rep.lhs * rp.p));
    rep.M = M;
    InvariantRegion region;
    region.c = c;
    region.alpha = rep.alpha;
    region.prey_pred_bound = 1.0 + 1.0 / (4.0 * b);
    region.total_bound = region.prey_pred_bound + M / b;
    rep.region = region;
  }
  return rep;
}

std::map<std::string, double> read_key_values(std::istream& in) {
  std::map<std::string, double> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return std::string_view{};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) {
      body = body.substr(0, hash);
    }
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ParamFileError(fmt::format("line {}: expected key=value", lineno));
    }
    const std::string key{trim(body.substr(0, eq))};
    const std::string text{trim(body.substr(eq + 1))};
    if (key.empty()) throw ParamFileError(fmt::format("line {}: empty key", lineno));
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE ||
        !std::isfinite(value)) {
      throw ParamFileError(fmt::format("malformed number for key '{}': '{}'", key, text));
    }
    if (!out.emplace(key, value).second) {
      throw ParamFileError(fmt::format("duplicate key '{}'", key));
    }
  }
  return out;
}

namespace {

template <class Params, class Keys>
Params params_from(const std::map<std::string, double>& kv, const Keys& keys) {
  Params params;
  for (const auto& [key, value] : kv) {
    bool known = false;
    for (auto k : keys) known = known || k == key;
    if (!known) throw ParamFileError(fmt::format("unknown key '{}'", key));
    params.set(key, value);
  }
  for (auto k : keys) {
    if (!kv.count(std::string(k))) {
      throw ParamFileError(fmt::format("missing key '{}'", k));
    }
  }
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw ParamFileError(e.what());
  }
  return params;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParamFileError(fmt::format("cannot open parameter file '{}'", path));
  return in;
}

}  // namespace

OriginalParams parse_original_params(std::istream& in) {
  return params_from<OriginalParams>(read_key_values(in), kOriginalKeys);
}

RescaledParams parse_rescaled_params(std::istream& in) {
  return params_from<RescaledParams>(read_key_values(in), kRescaledKeys);
}

OriginalParams load_original_params(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_original_params(in);
}

RescaledParams load_rescaled_params(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_rescaled_params(in);
}

}  // namespace foodchain
