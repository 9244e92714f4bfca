#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

#include "biarc/vec2.hpp"

namespace biarc {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Thrown when a biarc cannot be assembled from the given data.
struct construction_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  /// Absolute floor on |sin(psi/2)|; below it the joint locus is treated
  /// as the straight line through the two endpoints.
  double eps_angle = 1e-9;
  /// |skew(tangent, chord)| / |chord| below which an arc is emitted as a
  /// line segment (the radius formula divides by that skew).
  double eps_line = 1e-9;
};

/// Wrap an angle into (-pi, pi].
inline double wrap_angle(double a) {
  a = std::remainder(a, kTwoPi);  // lands in [-pi, pi]
  if (a <= -kPi) a += kTwoPi;
  return a;
}

// ---------------------------------------------------------------------------
// Hermite boundary data
// ---------------------------------------------------------------------------

/// Oriented G1 Hermite pair: two points with unit tangents.
struct G1Pair {
  Vec2 A;   // start point
  Vec2 tA;  // unit tangent at A
  Vec2 B;   // end point
  Vec2 tB;  // unit tangent at B

  Vec2 chord() const { return B - A; }

  /// Normalizes the tangents on ingestion; rejects zero tangents and
  /// non-finite coordinates.
  static G1Pair make(Vec2 a, Vec2 ta, Vec2 b, Vec2 tb) {
    if (!a.finite() || !ta.finite() || !b.finite() || !tb.finite())
      throw std::domain_error("G1Pair: non-finite input");
    return G1Pair{a, unit(ta), b, unit(tb)};
  }
};

// ---------------------------------------------------------------------------
// Biarc angle
// ---------------------------------------------------------------------------

/// The directed angle psi from tA to tB plus its half-angle terms, which
/// nearly every joint-circle formula consumes.
struct BiarcAngle {
  double psi = 0.0;       // in (-pi, pi]
  double sin_half = 0.0;  // sin(psi/2), sign of psi
  double cos_half = 1.0;  // cos(psi/2), always >= 0
  double tan_half = 0.0;  // +inf for antiparallel tangents
};

inline BiarcAngle biarc_angle(Vec2 ta, Vec2 tb) {
  const double s = skew(ta, tb);
  const double d = dot(ta, tb);
  BiarcAngle r;
  r.psi = std::atan2(s, d);
  if (r.psi <= -kPi) r.psi = kPi;  // antiparallel convention: psi = +pi
  // One half-angle term comes from the dot product, the other from
  // sin(psi) = 2 sin(psi/2) cos(psi/2). The square root alone cannot
  // resolve psi near 0 (or pi), where 1 -+ d underflows to rounding noise
  // while the skew still carries the exact angle.
  if (d >= 0.0) {
    r.cos_half = std::sqrt((1.0 + d) / 2.0);
    r.sin_half = s / (2.0 * r.cos_half);
  } else {
    r.sin_half = std::copysign(std::sqrt((1.0 - d) / 2.0), r.psi);
    r.cos_half = s == 0.0 ? 0.0 : s / (2.0 * r.sin_half);
  }
  r.tan_half = r.sin_half / r.cos_half;  // +inf when cos_half == 0
  return r;
}

// ---------------------------------------------------------------------------
// Geometric case classification
// ---------------------------------------------------------------------------

/// One of the seven geometric situations a Hermite pair can be in,
/// driven by tangent parallelism, the dot-product discriminant
/// dot(c,tA) vs dot(c,tB), and collinearity of tA with the chord.
struct CaseLabel {
  int case_id = 0;  // 1..7
  std::string_view description;
};

inline CaseLabel classify(const G1Pair& pair, const Tolerances& tol = {}) {
  const Vec2 c = pair.chord();
  const double cl = c.norm();
  if (!(cl > 0.0)) throw std::domain_error("classify: zero chord");

  const BiarcAngle ang = biarc_angle(pair.tA, pair.tB);
  const bool parallel = std::abs(ang.sin_half) < tol.eps_angle;
  const bool antiparallel = ang.cos_half < tol.eps_angle;
  const bool collinear = std::abs(skew(c, pair.tA)) <= 1e-9 * cl;

  if (parallel) {
    if (collinear) return {6, "parallel collinear tangents: single line"};
    return {5, "parallel tangents: joint locus is the line through A and B"};
  }
  if (antiparallel)
    return {7, "antiparallel tangents: chord is a diameter of the joint circle"};

  const double disc = dot(c, pair.tA) - dot(c, pair.tB);
  if (std::abs(disc) <= 1e-9 * cl)
    return {2, "tangents tangential to the joint circle: single arc"};
  if (disc > 0.0) {
    if (collinear) return {4, "start tangent collinear with the chord"};
    return {1, "tangents point inside the joint circle"};
  }
  return {3, "tangents point outside the joint circle"};
}

// ---------------------------------------------------------------------------
// Joint circle frame
// ---------------------------------------------------------------------------

/// Precomputed joint-circle data for one Hermite pair: the locus of all
/// admissible join points is a circle through A and B (or the line AB in
/// the degenerate parallel-tangent case).
struct JointFrame {
  double psi = 0.0;
  double sin_half = 0.0;
  double cos_half = 1.0;
  double tan_half = 0.0;
  Vec2 origin_offset;      // A -> J0, the joint at u = 0 (equal chords)
  Vec2 origin_tangent;     // biarc tangent at J0
  Vec2 reflected_tangent;  // tA mirrored across the chord (t_A*)
  bool degenerate = false; // psi ~ 0: joint locus is the line through A, B

  /// Signed joint-circle radius. Undefined for the degenerate case.
  double radius() const {
    require_circle();
    return radius_;
  }
  /// A -> I, the joint-circle center. Undefined for the degenerate case.
  Vec2 center_offset() const {
    require_circle();
    return center_offset_;
  }

 private:
  void require_circle() const {
    if (degenerate)
      throw std::logic_error("JointFrame: joint circle degenerated to a line");
  }
  friend JointFrame joint_frame(const G1Pair&, const Tolerances&);
  double radius_ = 0.0;
  Vec2 center_offset_;
};

inline JointFrame joint_frame(const G1Pair& pair, const Tolerances& tol = {}) {
  const Vec2 c = pair.chord();
  const double cl = c.norm();
  if (!(cl > 0.0)) throw std::domain_error("joint_frame: zero chord");

  const BiarcAngle ang = biarc_angle(pair.tA, pair.tB);
  JointFrame f;
  f.psi = ang.psi;
  f.sin_half = ang.sin_half;
  f.cos_half = ang.cos_half;
  f.tan_half = ang.tan_half;
  f.reflected_tangent = reflect(pair.tA, c);
  f.degenerate = std::abs(ang.sin_half) < tol.eps_angle;

  if (f.degenerate) {
    f.origin_offset = c / 2.0;
    f.origin_tangent = f.reflected_tangent;
    return f;
  }

  f.radius_ = cl / (2.0 * f.sin_half);
  f.center_offset_ = c / 2.0 + (f.cos_half / (2.0 * f.sin_half)) * tilde(c);
  // tan(psi/4) via the cancellation-free half-angle identity.
  const double tan_quarter = f.sin_half / (1.0 + f.cos_half);
  f.origin_offset = (c - tan_quarter * tilde(c)) / 2.0;
  // Rotate the mirrored start tangent back by psi/2.
  f.origin_tangent =
      f.cos_half * f.reflected_tangent - f.sin_half * tilde(f.reflected_tangent);
  return f;
}

// ---------------------------------------------------------------------------
// Parametric joint family
// ---------------------------------------------------------------------------

/// Chord vector from A to the joint at position parameter u, where the
/// joint angle on the circle is phi = u * psi / 2. u = -1 gives A itself,
/// u = 0 the equal-chord origin, u = 1 gives B. Values outside [-1, 1]
/// address the far side of the joint circle.
inline Vec2 chord_at(const JointFrame& frame, const G1Pair& pair, double u) {
  const Vec2 c = pair.chord();
  if (frame.degenerate) return ((1.0 + u) / 2.0) * c;
  const double phi = u * frame.psi / 2.0;
  return ((frame.sin_half + std::sin(phi)) * c +
          (frame.cos_half - std::cos(phi)) * tilde(c)) /
         (2.0 * frame.sin_half);
}

/// Biarc tangent at the joint with position parameter u. Constant in the
/// degenerate case.
inline Vec2 joint_tangent_at(const JointFrame& frame, double u) {
  if (frame.degenerate) return frame.reflected_tangent;
  return rotate(frame.origin_tangent, u * frame.psi / 2.0);
}

/// Inverse of chord_at: recover u from a chord vector whose tip lies on
/// the joint circle (verified within rel_tol of the radius).
///
/// The two atan2 arguments below are exactly sin(phi) and cos(phi) of the
/// joint angle, so the recovery keeps the full quadrant. The printed
/// tangent-quotient form of this inversion has the wrong sign on its
/// cot(psi/2) term; both expressions here were re-derived from the
/// forward map and are covered by round-trip tests.
inline double param_of_chord(const JointFrame& frame, const G1Pair& pair, Vec2 a,
                             double rel_tol = 1e-6) {
  const Vec2 c = pair.chord();
  const double c2 = c.norm2();
  if (!(c2 > 0.0)) throw std::domain_error("param_of_chord: zero chord");

  if (frame.degenerate) {
    // Joint locus is the line through A and B.
    if (std::abs(skew(a, c)) > rel_tol * c2)
      throw std::domain_error("param_of_chord: point not on the joint line");
    return 2.0 * dot(a, c) / c2 - 1.0;
  }

  const double r = std::abs(frame.radius());
  const double off_circle = std::abs((a - frame.center_offset()).norm() - r);
  if (off_circle > rel_tol * r)
    throw std::domain_error("param_of_chord: point not on the joint circle");

  const double sin_phi = (2.0 * dot(a, c) - c2) * frame.sin_half / c2;
  const double cos_phi = 2.0 * skew(a, c) * frame.sin_half / c2 + frame.cos_half;
  const double phi = std::atan2(sin_phi, cos_phi);
  return 2.0 * phi / frame.psi;
}

// ---------------------------------------------------------------------------
// Single-arc construction from a chord and a boundary tangent
// ---------------------------------------------------------------------------

/// Arc data produced from one chord + tangent; is_line marks vanishing
/// curvature (sweep and radius unset then).
struct ChordArc {
  bool is_line = false;
  double sweep = 0.0;       // signed arc angle, in (-2pi, 2pi)
  double radius = 0.0;      // signed, positive counterclockwise
  Vec2 center_offset;       // from the tangent's base point
};

/// Build one directed arc spanning `chord`. With at_start the tangent
/// belongs to the chord's tail (the alpha side of a biarc); otherwise to
/// its tip (the beta side). The half arc angle is measured between the
/// tangent and the chord, so the full sweep stays in (-2pi, 2pi).
inline ChordArc arc_from_chord(Vec2 chord, Vec2 tangent, bool at_start,
                               const Tolerances& tol = {}) {
  const double cl = chord.norm();
  if (!(cl > 0.0)) throw std::domain_error("arc_from_chord: zero chord");

  const double s = at_start ? skew(tangent, chord) : skew(chord, tangent);
  const double d = dot(tangent, chord);

  if (std::abs(s) < tol.eps_line * cl) {
    if (d > 0.0) return ChordArc{true, 0.0, 0.0, Vec2{}};
    // Tangent antiparallel to the chord: the limit is a full circle of
    // unbounded radius, not a line.
    throw construction_error(
        "arc_from_chord: tangent antiparallel to chord (degenerate full circle)");
  }

  ChordArc r;
  r.sweep = 2.0 * std::atan2(s, d);
  r.radius = chord.norm2() / (2.0 * s);
  r.center_offset = r.radius * tilde(tangent);
  return r;
}

// ---------------------------------------------------------------------------
// Arc segment and biarc assembly
// ---------------------------------------------------------------------------

/// One directed circular arc or line segment.
struct ArcSegment {
  enum class Kind { line, arc };
  Kind kind = Kind::line;
  Vec2 start;
  Vec2 end;
  // Arc only. radius is signed (positive counterclockwise) and sweep
  // carries the same sign.
  double radius = 0.0;
  Vec2 center;
  double sweep = 0.0;

  static ArcSegment make_line(Vec2 s, Vec2 e) {
    ArcSegment seg;
    seg.kind = Kind::line;
    seg.start = s;
    seg.end = e;
    return seg;
  }
  static ArcSegment make_arc(Vec2 s, Vec2 e, Vec2 center, double radius,
                             double sweep) {
    ArcSegment seg;
    seg.kind = Kind::arc;
    seg.start = s;
    seg.end = e;
    seg.center = center;
    seg.radius = radius;
    seg.sweep = sweep;
    return seg;
  }

  bool is_arc() const { return kind == Kind::arc; }
  double chord_length() const { return (end - start).norm(); }
  double length() const {
    return is_arc() ? std::abs(radius * sweep) : chord_length();
  }

  /// Point at fraction t in [0, 1] of the traversal.
  Vec2 point_at(double t) const {
    if (!is_arc()) return start + t * (end - start);
    return center + rotate(start - center, sweep * t);
  }

  /// Unit tangent at fraction t; undefined for zero-length lines.
  Vec2 tangent_at(double t) const {
    if (!is_arc()) return unit(end - start);
    return tilde(point_at(t) - center) / radius;
  }
  Vec2 start_tangent() const { return tangent_at(0.0); }
  Vec2 end_tangent() const { return tangent_at(1.0); }
};

/// A pair of tangentially joined segments interpolating a G1 Hermite pair,
/// plus the joint bookkeeping.
struct Biarc {
  ArcSegment seg_a;    // from A to the joint
  ArcSegment seg_b;    // from the joint to B
  Vec2 joint;          // J, shared endpoint of both segments
  Vec2 joint_tangent;  // common unit tangent at J
  double u = 0.0;      // joint position parameter
  double alpha = 0.0;  // signed sweep of seg_a (0 for a line)
  double beta = 0.0;   // signed sweep of seg_b
  Vec2 chord_a;        // A -> J
  Vec2 chord_b;        // J -> B

  /// True when the joint sits outside the short side of the joint circle
  /// (|u| > 1); spline fitting normally rejects such joints.
  bool joint_on_far_side() const { return std::abs(u) > 1.0; }
};

namespace detail {

inline ArcSegment segment_from_chord(Vec2 from, Vec2 to, Vec2 tangent,
                                     bool at_start, double chord_scale,
                                     const Tolerances& tol) {
  const Vec2 chord = to - from;
  if (chord.norm() <= 1e-12 * chord_scale)
    return ArcSegment::make_line(from, to);  // vanished half
  const ChordArc ca = arc_from_chord(chord, tangent, at_start, tol);
  if (ca.is_line) return ArcSegment::make_line(from, to);
  const Vec2 base = at_start ? from : to;
  ArcSegment seg =
      ArcSegment::make_arc(from, to, base + ca.center_offset, ca.radius, ca.sweep);
  return seg;
}

}  // namespace detail

/// Assemble the concrete biarc for joint parameter u. Validates the
/// chord closure a + b = c, the angle sum alpha + beta = psi (mod 2pi)
/// and finiteness; violations raise construction_error with the case id.
inline Biarc build_biarc(const G1Pair& pair, double u, const Tolerances& tol = {}) {
  const JointFrame frame = joint_frame(pair, tol);
  const Vec2 c = pair.chord();
  const double cl = c.norm();

  Biarc b;
  b.u = u;
  b.chord_a = chord_at(frame, pair, u);
  b.chord_b = c - b.chord_a;
  b.joint = pair.A + b.chord_a;
  b.joint_tangent = joint_tangent_at(frame, u);

  const auto fail = [&](const std::string& what) {
    throw construction_error("build_biarc: " + what + " (case " +
                             std::to_string(classify(pair, tol).case_id) +
                             ", u = " + std::to_string(u) + ")");
  };

  try {
    b.seg_a = detail::segment_from_chord(pair.A, b.joint, pair.tA, true, cl, tol);
    b.seg_b = detail::segment_from_chord(b.joint, pair.B, pair.tB, false, cl, tol);
  } catch (const construction_error& e) {
    fail(e.what());
  }
  b.alpha = b.seg_a.sweep;
  b.beta = b.seg_b.sweep;

  if (!b.joint.finite() || !b.joint_tangent.finite() ||
      !std::isfinite(b.alpha) || !std::isfinite(b.beta))
    fail("non-finite result");

  // Independent cross-check of the two sweeps against the biarc angle;
  // the sum may legitimately differ from psi by a multiple of 2pi.
  if (std::abs(wrap_angle(b.alpha + b.beta - frame.psi)) > 1e-9)
    fail("arc angles inconsistent with the biarc angle");
  if ((b.chord_a + b.chord_b - c).norm() > 1e-9 * cl) fail("chord closure violated");

  return b;
}

}  // namespace biarc
