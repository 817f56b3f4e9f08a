#pragma once

#include <Eigen/Core>
#include <cmath>
#include <numbers>

namespace groovegait {

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

using Vec2d = Vec2<double>;

template <typename Scalar>
constexpr Scalar kPi = std::numbers::pi_v<Scalar>;

template <typename Scalar>
inline Scalar deg_to_rad(Scalar deg) {
  return deg * (kPi<Scalar> / Scalar(180));
}

template <typename Scalar>
inline Scalar rad_to_deg(Scalar rad) {
  return rad * (Scalar(180) / kPi<Scalar>);
}

/// Wraps an angle in degrees to (-180, 180].
template <typename Scalar>
inline Scalar wrap_deg(Scalar deg) {
  using std::remainder;
  Scalar r = remainder(deg, Scalar(360));
  if (r <= Scalar(-180)) r += Scalar(360);
  return r;
}

/// Unit vector at `deg` degrees counter-clockwise from +x.
template <typename Scalar>
inline Vec2<Scalar> unit_deg(Scalar deg) {
  using std::cos;
  using std::sin;
  const Scalar rad = deg_to_rad(deg);
  return Vec2<Scalar>(cos(rad), sin(rad));
}

/// Direction of `v` in degrees, counter-clockwise from +x, in (-180, 180].
template <typename Scalar>
inline Scalar direction_deg(const Vec2<Scalar>& v) {
  using std::atan2;
  Scalar a = rad_to_deg(atan2(v.y(), v.x()));
  if (a <= Scalar(-180)) a = Scalar(180);
  return a;
}

/// External (right-turn positive) angles are the negation of internal
/// counter-clockwise angles.
template <typename Scalar>
inline Scalar paper_angle_to_internal(Scalar paper_deg) {
  return -paper_deg;
}

template <typename Scalar>
inline Scalar internal_angle_to_paper(Scalar internal_deg) {
  // + 0 turns a negated zero into +0 so text output never shows "-0".
  return -internal_deg + Scalar(0);
}

}  // namespace groovegait
