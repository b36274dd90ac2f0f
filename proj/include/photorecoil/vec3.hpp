#pragma once

#include <array>
#include <cmath>

namespace photorecoil {

using Vec3 = std::array<double, 3>;

inline constexpr Vec3 kXHat{1.0, 0.0, 0.0};

inline constexpr Vec3 scaled(const Vec3& v, double s) {
  return {v[0] * s, v[1] * s, v[2] * s};
}

inline constexpr Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline constexpr Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline constexpr double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

}  // namespace photorecoil
