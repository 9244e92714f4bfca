#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "biarc/biarc.hpp"

namespace biarc {

/// A joint-selection strategy is not always applicable; this error carries
/// the reason. select() turns it into a fallback, direct callers see it.
struct strategy_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Strategy {
  equal_chord,
  parallel_tangent,
  j_shaped,
  curvature_constrained,
  cubic_midpoint,
};

enum class Side { start, end };

inline std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::equal_chord: return "equal-chord";
    case Strategy::parallel_tangent: return "parallel-tangent";
    case Strategy::j_shaped: return "j-shape";
    case Strategy::curvature_constrained: return "curvature";
    case Strategy::cubic_midpoint: return "cubic-midpoint";
  }
  return "?";
}

inline std::optional<Strategy> strategy_from_name(std::string_view name) {
  for (Strategy s : {Strategy::equal_chord, Strategy::parallel_tangent,
                     Strategy::j_shaped, Strategy::curvature_constrained,
                     Strategy::cubic_midpoint})
    if (strategy_name(s) == name) return s;
  return std::nullopt;
}

struct RadiusConstraint {
  double radius = 0.0;  // signed, per the counterclockwise-positive convention
  Side side = Side::start;
};

struct StrategySpec {
  Strategy kind = Strategy::equal_chord;
  std::optional<RadiusConstraint> given_radius;  // curvature_constrained only
  std::vector<Strategy> fallback{Strategy::equal_chord};

  void validate() const {
    if (kind == Strategy::curvature_constrained) {
      if (!given_radius)
        throw std::domain_error("curvature strategy requires a given radius");
    } else if (given_radius) {
      throw std::domain_error("a given radius is only valid with the curvature strategy");
    }
  }
};

struct StrategyResult {
  double u = 0.0;
  Strategy applied = Strategy::equal_chord;
  bool fell_back = false;  // true iff applied != requested kind
  std::vector<std::string> diagnostics;
};

// ---------------------------------------------------------------------------
// The five strategies
// ---------------------------------------------------------------------------

/// Chords of equal length on both sides: the joint-circle origin itself.
/// Always applicable, including the degenerate parallel-tangent case.
inline double equal_chord(const JointFrame&) { return 0.0; }

namespace detail {

// parallel_tangent and j_shaped solve a tan(phi) equation with two
// solutions phi and phi +- pi. Keep the ones inside the smoothness window
// u in (-1, 1) that pass the strategy's own direction filter, reject
// joints within 1e-6 of an endpoint (a vanished segment defeats the
// strategy), and of the survivors prefer the one with the larger minimum
// chord length.
template <typename Filter>
inline std::optional<double> pick_window_candidate(const JointFrame& frame,
                                                   const G1Pair& pair,
                                                   double phi_base, Filter&& accept) {
  const double half = frame.psi / 2.0;
  double best_u = 0.0;
  double best_min = -1.0;
  for (double phi : {phi_base, wrap_angle(phi_base + kPi)}) {
    const double u = phi / half;
    if (std::abs(u) > 1.0 - 1e-6) continue;
    if (!accept(phi)) continue;
    const Vec2 a = chord_at(frame, pair, u);
    const Vec2 b = pair.chord() - a;
    const double shorter = std::min(a.norm(), b.norm());
    if (shorter > best_min) {
      best_min = shorter;
      best_u = u;
    }
  }
  if (best_min < 0.0) return std::nullopt;
  return best_u;
}

}  // namespace detail

/// Joint tangent directed parallel to the chord. Not applicable for
/// parallel end tangents or when both solutions fall outside the window.
inline std::optional<double> parallel_tangent(const JointFrame& frame,
                                              const G1Pair& pair) {
  if (frame.degenerate) return std::nullopt;
  const Vec2 c = pair.chord();
  const double phi =
      std::atan2(skew(frame.origin_tangent, c), dot(frame.origin_tangent, c));
  // Both the parallel and the antiparallel alignment count as solutions.
  return detail::pick_window_candidate(frame, pair, phi, [](double) { return true; });
}

/// Force one side of the biarc to be a straight line. The dot-product
/// discriminant decides which side can degenerate; on a tie the biarc is
/// already a single arc and phi = 0.
inline std::optional<double> j_shaped(const JointFrame& frame, const G1Pair& pair) {
  if (frame.degenerate) return std::nullopt;
  const Vec2 c = pair.chord();
  const double disc = dot(c, pair.tA) - dot(c, pair.tB);
  if (std::abs(disc) <= 1e-9 * c.norm()) {
    // Both halves already lie on one circle; the origin is the joint.
    return detail::pick_window_candidate(frame, pair, 0.0,
                                         [](double) { return true; });
  }
  const Vec2 target = disc > 0.0 ? pair.tA : pair.tB;
  const double phi = std::atan2(skew(frame.origin_tangent, target),
                                dot(frame.origin_tangent, target));
  // The joint tangent must run along the degenerating side's tangent, not
  // against it; the reversed alignment would bend that side into a half
  // circle instead of a line.
  const auto same_direction = [&](double candidate) {
    return dot(rotate(frame.origin_tangent, candidate), target) > 0.0;
  };
  return detail::pick_window_candidate(frame, pair, phi, same_direction);
}

/// Result of the curvature-constrained construction: both radii, the
/// joint tangent and the joint parameter.
struct CurvatureConstrained {
  double radius_start = 0.0;  // R_A
  double radius_end = 0.0;    // R_B
  Vec2 joint_tangent;
  double u = 0.0;
};

/// Fix the radius of one arc and derive everything else via the center
/// loop closure. The closure solves for the quarter-turned joint tangent,
/// so one inverse quarter turn recovers the tangent itself.
inline CurvatureConstrained curvature_constrained(const G1Pair& pair, Side side,
                                                  double given_radius,
                                                  const Tolerances& tol = {}) {
  const Vec2 c = pair.chord();
  const double c2 = c.norm2();
  const double cl = std::sqrt(c2);
  if (!(cl > 0.0)) throw std::domain_error("curvature_constrained: zero chord");
  if (!std::isfinite(given_radius) || given_radius == 0.0)
    throw strategy_error("curvature: given radius must be finite and nonzero");

  const double sa = skew(pair.tA, c);
  const double sb = skew(pair.tB, c);
  const double dm1 = dot(pair.tA, pair.tB) - 1.0;
  const double den_tol = 1e-12 * (cl + std::abs(given_radius));

  double ra = 0.0, rb = 0.0;
  if (side == Side::start) {
    ra = given_radius;
    const double den = ra * dm1 - sb;
    if (std::abs(den) <= den_tol)
      throw strategy_error("curvature: infeasible radius (opposite side degenerates)");
    rb = (c2 / 2.0 - ra * sa) / den;
  } else {
    rb = given_radius;
    const double den = rb * dm1 + sa;
    if (std::abs(den) <= den_tol)
      throw strategy_error("curvature: infeasible radius (opposite side degenerates)");
    ra = (c2 / 2.0 + rb * sb) / den;
  }

  if (std::abs(ra - rb) <= 1e-9 * (std::abs(ra) + std::abs(rb)))
    throw strategy_error(
        "curvature: equal arc radii leave the joint tangent indeterminate");

  const Vec2 tj_tilde = (ra * tilde(pair.tA) - rb * tilde(pair.tB) - c) / (ra - rb);
  const double tj_norm = tj_tilde.norm();
  if (std::abs(tj_norm - 1.0) > 1e-6)
    throw strategy_error("curvature: inconsistent joint tangent (|t| = " +
                         std::to_string(tj_norm) + ")");
  const Vec2 tj = -tilde(tj_tilde) / tj_norm;

  const JointFrame frame = joint_frame(pair, tol);
  double u = 0.0;
  if (frame.degenerate) {
    // No angular parameter on a straight joint locus; recover u from the
    // start chord a = R_A (tilde tA - tilde tJ) instead.
    u = param_of_chord(frame, pair, ra * (tilde(pair.tA) - tilde(tj)));
  } else {
    const double phi =
        std::atan2(skew(frame.origin_tangent, tj), dot(frame.origin_tangent, tj));
    u = 2.0 * phi / frame.psi;
  }

  try {
    const Biarc check = build_biarc(pair, u, tol);
    const ArcSegment& seg = side == Side::start ? check.seg_a : check.seg_b;
    if (!seg.is_arc() ||
        std::abs(seg.radius - given_radius) > 1e-9 * std::abs(given_radius))
      throw strategy_error(
          "curvature: rebuilt biarc does not reproduce the requested radius");
  } catch (const construction_error& e) {
    throw strategy_error(std::string("curvature: validation failed: ") + e.what());
  }

  return CurvatureConstrained{ra, rb, tj, u};
}

/// Cubic-midpoint data: besides the joint parameter, the auxiliary
/// quantities are exposed for inspection.
struct CubicMidpoint {
  double u = 0.0;
  Vec2 chord;      // A -> joint, the Bezier midpoint offset
  double h = 0.0;  // control-point distance
  double kappa = 0.0;
};

/// Joint at the midpoint of the cubic Bezier matching the Hermite data,
/// with the control distance h chosen so the midpoint lands on the joint
/// circle. Not applicable for (near-)parallel end tangents, where the h
/// quadratic degenerates.
inline std::optional<CubicMidpoint> cubic_midpoint(const JointFrame& frame,
                                                   const G1Pair& pair) {
  if (frame.degenerate) return std::nullopt;
  const Vec2 t_ba = pair.tA - pair.tB;
  const double t2 = t_ba.norm2();
  if (t2 <= 1e-18) return std::nullopt;

  const Vec2 c = pair.chord();
  const double kappa = skew(t_ba, c) / t2;
  // Positive root of h^2 + p h - q = 0, q > 0.
  const double p = 8.0 * kappa * frame.cos_half / (3.0 * frame.sin_half);
  const double q = 4.0 * c.norm2() / (9.0 * frame.sin_half * frame.sin_half);
  const double h = -p / 2.0 + std::sqrt(p * p / 4.0 + q);
  if (!(h > 0.0) || !std::isfinite(h)) return std::nullopt;

  const Vec2 a = c / 2.0 + (3.0 / 8.0) * h * t_ba;
  const double u = param_of_chord(frame, pair, a);
  if (!std::isfinite(u)) return std::nullopt;
  // The midpoint can coincide with an endpoint (for instance antiparallel
  // tangents along the chord put it exactly on B); a vanished segment is
  // no biarc, so signal not-applicable.
  if (std::abs(std::abs(u) - 1.0) < 1e-6) return std::nullopt;
  return CubicMidpoint{u, a, h, kappa};
}

// ---------------------------------------------------------------------------
// Strategy dispatch with fallback
// ---------------------------------------------------------------------------

/// Resolve the joint parameter for one Hermite pair: try the requested
/// strategy, walk the fallback chain on a not-applicable result, and end
/// at equal_chord, which always applies. Case-6 pairs (single line) skip
/// strategy selection entirely.
inline StrategyResult select(const G1Pair& pair, const StrategySpec& spec,
                             const Tolerances& tol = {}) {
  spec.validate();
  StrategyResult res;
  res.applied = spec.kind;

  if (classify(pair, tol).case_id == 6) {
    res.diagnostics.emplace_back("single line (case 6): no joint strategy consulted");
    return res;
  }

  const JointFrame frame = joint_frame(pair, tol);

  std::vector<Strategy> chain;
  chain.push_back(spec.kind);
  chain.insert(chain.end(), spec.fallback.begin(), spec.fallback.end());
  if (std::find(chain.begin(), chain.end(), Strategy::equal_chord) == chain.end())
    chain.push_back(Strategy::equal_chord);

  for (Strategy kind : chain) {
    std::optional<double> u;
    switch (kind) {
      case Strategy::equal_chord:
        u = equal_chord(frame);
        break;
      case Strategy::parallel_tangent:
        u = parallel_tangent(frame, pair);
        if (!u)
          res.diagnostics.emplace_back(
              "parallel-tangent: no usable joint inside the smoothness window");
        break;
      case Strategy::j_shaped:
        u = j_shaped(frame, pair);
        if (!u)
          res.diagnostics.emplace_back(
              "j-shape: no usable joint inside the smoothness window");
        break;
      case Strategy::cubic_midpoint:
        if (auto cm = cubic_midpoint(frame, pair))
          u = cm->u;
        else
          res.diagnostics.emplace_back("cubic-midpoint: degenerate for this pair");
        break;
      case Strategy::curvature_constrained:
        if (!spec.given_radius) {
          res.diagnostics.emplace_back("curvature: no radius given, skipped");
          break;
        }
        try {
          const CurvatureConstrained cc = curvature_constrained(
              pair, spec.given_radius->side, spec.given_radius->radius, tol);
          if (std::abs(cc.u) > 1.0)
            res.diagnostics.emplace_back(
                "curvature: joint on the far side of the joint circle; "
                "check the radius sign");
          u = cc.u;
        } catch (const strategy_error& e) {
          res.diagnostics.emplace_back(e.what());
        }
        break;
    }
    if (u) {
      res.u = *u;
      res.applied = kind;
      res.fell_back = kind != spec.kind;
      return res;
    }
  }
  throw std::logic_error("select: fallback chain exhausted");  // unreachable
}

}  // namespace biarc
