#pragma once

#include <cmath>
#include <stdexcept>

namespace biarc {

/// Plane vector. Also used for points; the distinction is contextual.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }

  Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }

  double norm2() const { return x * x + y * y; }
  double norm() const { return std::hypot(x, y); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }

/// Quarter turn counterclockwise. tilde(tilde(v)) == -v.
constexpr Vec2 tilde(Vec2 v) { return {-v.y, v.x}; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

/// Signed area of the parallelogram spanned by a and b; equals
/// dot(tilde(a), b). Antisymmetric.
constexpr double skew(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

/// Counterclockwise rotation by angle radians.
inline Vec2 rotate(Vec2 v, double angle) {
  return std::cos(angle) * v + std::sin(angle) * tilde(v);
}

/// Mirror v across the line spanned by m. Throws on a zero mirror vector.
inline Vec2 reflect(Vec2 v, Vec2 m) {
  const double m2 = m.norm2();
  if (!(m2 > 0.0)) throw std::domain_error("reflect: zero mirror vector");
  return (dot(m, v) * m - dot(tilde(m), v) * tilde(m)) / m2;
}

/// Unit vector along v. Vectors shorter than 1e-12 are rejected so that
/// downstream formulas can rely on |result| == 1.
inline Vec2 unit(Vec2 v) {
  const double n = v.norm();
  if (!(n > 1e-12)) throw std::domain_error("unit: vector too short to normalize");
  return v / n;
}

}  // namespace biarc
