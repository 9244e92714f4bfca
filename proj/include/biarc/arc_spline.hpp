#pragma once

#include <string>
#include <vector>

#include "biarc/strategies.hpp"

namespace biarc {

/// Ordered vertex chain. Closed polylines wrap around implicitly and must
/// not repeat the first vertex at the end.
struct Polyline {
  std::vector<Vec2> vertices;
  bool closed = false;

  std::size_t edge_count() const {
    return closed ? vertices.size() : vertices.size() - 1;
  }

  double bbox_diagonal() const {
    double xmin = vertices.front().x, xmax = xmin;
    double ymin = vertices.front().y, ymax = ymin;
    for (const Vec2& v : vertices) {
      xmin = std::min(xmin, v.x);
      xmax = std::max(xmax, v.x);
      ymin = std::min(ymin, v.y);
      ymax = std::max(ymax, v.y);
    }
    return Vec2{xmax - xmin, ymax - ymin}.norm();
  }

  static Polyline make(std::vector<Vec2> vertices, bool closed) {
    if (vertices.size() < 2) throw std::domain_error("polyline: need at least 2 vertices");
    for (const Vec2& v : vertices)
      if (!v.finite()) throw std::domain_error("polyline: non-finite vertex");
    Polyline p{std::move(vertices), closed};
    const double tol = 1e-12 * p.bbox_diagonal();
    const std::size_t n = p.vertices.size();
    const std::size_t pairs = closed ? n : n - 1;
    for (std::size_t i = 0; i < pairs; ++i) {
      if ((p.vertices[(i + 1) % n] - p.vertices[i]).norm() <= tol)
        throw std::domain_error("polyline: duplicate consecutive vertex at index " +
                                std::to_string(i));
    }
    return p;
  }
};

/// One unit tangent per polyline vertex.
using TangentField = std::vector<Vec2>;

/// Vertex tangents parallel to the predecessor-to-successor direction;
/// open endpoints take their single adjacent edge direction.
inline TangentField assign_tangents(const Polyline& poly) {
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  const double tol = 1e-12 * poly.bbox_diagonal();
  TangentField tangents(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 dir;
    if (poly.closed)
      dir = v[(i + 1) % n] - v[(i + n - 1) % n];
    else if (i == 0)
      dir = v[1] - v[0];
    else if (i == n - 1)
      dir = v[n - 1] - v[n - 2];
    else
      dir = v[i + 1] - v[i - 1];
    if (dir.norm() <= tol)
      throw std::domain_error("assign_tangents: predecessor equals successor at vertex " +
                              std::to_string(i));
    tangents[i] = unit(dir);
  }
  return tangents;
}

struct EdgeRecord {
  Strategy applied = Strategy::equal_chord;
  bool fell_back = false;
  double u = 0.0;
};

/// G1 chain of arc and line segments with per-edge fitting metadata.
struct ArcSpline {
  std::vector<ArcSegment> segments;
  std::vector<EdgeRecord> edges;
  double total_length = 0.0;

  bool closed() const {
    if (segments.empty()) return false;
    const Vec2 a = segments.front().start;
    const Vec2 b = segments.back().end;
    return a.x == b.x && a.y == b.y;  // shared endpoint values, exact
  }
  std::size_t fallback_count() const {
    std::size_t k = 0;
    for (const EdgeRecord& e : edges) k += e.fell_back ? 1 : 0;
    return k;
  }
};

inline double spline_length(const ArcSpline& spline) {
  double sum = 0.0;
  for (const ArcSegment& s : spline.segments) sum += s.length();
  return sum;
}

namespace detail {

/// Append the two biarc halves, dropping vanished pieces and collapsing
/// the single-line / single-arc degeneracies into one segment.
inline void append_biarc_segments(std::vector<ArcSegment>& out, const Biarc& b) {
  const double scale = (b.seg_b.end - b.seg_a.start).norm();
  const auto vanished = [&](const ArcSegment& s) {
    return s.chord_length() <= 1e-12 * scale;
  };
  const bool keep_a = !vanished(b.seg_a);
  const bool keep_b = !vanished(b.seg_b);

  if (keep_a && keep_b) {
    if (!b.seg_a.is_arc() && !b.seg_b.is_arc()) {
      // Two collinear lines (the common joint tangent forces collinearity).
      out.push_back(ArcSegment::make_line(b.seg_a.start, b.seg_b.end));
      return;
    }
    if (b.seg_a.is_arc() && b.seg_b.is_arc()) {
      const double r = std::abs(b.seg_a.radius);
      const double combined = b.seg_a.sweep + b.seg_b.sweep;
      if ((b.seg_a.center - b.seg_b.center).norm() <= 1e-9 * r &&
          std::abs(b.seg_a.radius - b.seg_b.radius) <= 1e-9 * r &&
          std::abs(combined) <= kTwoPi) {
        out.push_back(ArcSegment::make_arc(b.seg_a.start, b.seg_b.end,
                                           b.seg_a.center, b.seg_a.radius,
                                           combined));
        return;
      }
    }
  }
  if (keep_a) out.push_back(b.seg_a);
  if (keep_b) out.push_back(b.seg_b);
}

}  // namespace detail

/// Wrap a single biarc as a one-edge spline (degenerate halves merged the
/// same way fit_spline does).
inline ArcSpline spline_from_biarc(const Biarc& b, EdgeRecord record) {
  ArcSpline spline;
  detail::append_biarc_segments(spline.segments, b);
  spline.edges.push_back(record);
  spline.total_length = spline_length(spline);
  return spline;
}

/// Fit one biarc per polyline edge using the given vertex tangents and
/// strategy. Adjacent biarcs share the vertex tangents, so the chain is
/// G1 by construction.
inline ArcSpline fit_spline(const Polyline& poly, const TangentField& tangents,
                            const StrategySpec& spec, const Tolerances& tol = {}) {
  if (tangents.size() != poly.vertices.size())
    throw std::domain_error("fit_spline: tangent count must match vertex count");

  ArcSpline spline;
  const std::size_t n = poly.vertices.size();
  for (std::size_t i = 0; i < poly.edge_count(); ++i) {
    const std::size_t j = (i + 1) % n;
    const G1Pair pair = G1Pair::make(poly.vertices[i], tangents[i],
                                     poly.vertices[j], tangents[j]);
    try {
      const StrategyResult r = select(pair, spec, tol);
      const Biarc b = build_biarc(pair, r.u, tol);
      detail::append_biarc_segments(spline.segments, b);
      spline.edges.push_back({r.applied, r.fell_back, r.u});
    } catch (const construction_error& e) {
      throw construction_error("edge " + std::to_string(i) + ": " + e.what());
    }
  }
  spline.total_length = spline_length(spline);
  return spline;
}

}  // namespace biarc
