#pragma once

#include <array>
#include <string_view>

namespace foodchain {

using Vec3 = std::array<double, 3>;

/// Coordinate system a state or parameter set is expressed in. The
/// original frame carries biological units (X, Y, Z, T); the rescaled
/// frame is the nondimensional (x, y, z, t) system.
enum class Frame { original, rescaled };

std::string_view to_string(Frame frame);

/// Population triple (prey, intermediate predator, top predator).
struct StateVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  Frame frame = Frame::original;

  [[nodiscard]] Vec3 values() const { return {x, y, z}; }
  [[nodiscard]] static StateVector from(const Vec3& v, Frame frame) {
    return {v[0], v[1], v[2], frame};
  }
};

/// Throws std::invalid_argument naming `where` if `s` is not in `expected`.
void require_frame(const StateVector& s, Frame expected, std::string_view where);

}  // namespace foodchain
