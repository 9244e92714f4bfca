#include <catch2/catch_amalgamated.hpp>

#include "biarc/arc_spline.hpp"
#include "test_helpers.hpp"

using biarc::ArcSegment;
using biarc::ArcSpline;
using biarc::G1Pair;
using biarc::Polyline;
using biarc::Strategy;
using biarc::Vec2;
using Catch::Approx;

namespace {

Polyline w_polygon() { return Polyline::make(testutil::w_polygon_vertices(), true); }

}  // namespace

TEST_CASE("polyline validation") {
  CHECK_THROWS_AS(Polyline::make({{0, 0}}, false), std::domain_error);
  CHECK_THROWS_AS(Polyline::make({{0, 0}, {0, 0}, {1, 1}}, false), std::domain_error);
  // closed polylines must not repeat the first vertex
  CHECK_THROWS_AS(Polyline::make({{0, 0}, {1, 0}, {1, 1}, {0, 0}}, true),
                  std::domain_error);
  const Polyline p = Polyline::make({{0, 0}, {1, 0}, {1, 1}}, true);
  CHECK(p.edge_count() == 3);
  CHECK(Polyline::make({{0, 0}, {1, 0}, {1, 1}}, false).edge_count() == 2);
}

TEST_CASE("tangent assignment") {
  SECTION("collinear interior vertex") {
    const Polyline p = Polyline::make({{0, 0}, {1, 0}, {2, 0}}, false);
    const auto t = biarc::assign_tangents(p);
    CHECK(testutil::vec_dist(t[1], {1, 0}) <= 1e-15);
  }

  SECTION("closed unit square uses neighbor diagonals") {
    const Polyline p = Polyline::make({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, true);
    const auto t = biarc::assign_tangents(p);
    const double s2 = std::sqrt(2.0) / 2.0;
    CHECK(testutil::vec_dist(t[0], {s2, -s2}) <= 1e-15);
    CHECK(testutil::vec_dist(t[1], {s2, s2}) <= 1e-15);
    CHECK(testutil::vec_dist(t[2], {-s2, s2}) <= 1e-15);
    CHECK(testutil::vec_dist(t[3], {-s2, -s2}) <= 1e-15);
  }

  SECTION("open endpoints take the adjacent edge direction") {
    const Polyline p = Polyline::make({{0, 0}, {2, 0}, {2, 2}}, false);
    const auto t = biarc::assign_tangents(p);
    CHECK(testutil::vec_dist(t.front(), {1, 0}) <= 1e-15);
    CHECK(testutil::vec_dist(t.back(), {0, 1}) <= 1e-15);
  }

  SECTION("coincident predecessor and successor is an error") {
    const Polyline p = Polyline::make({{0, 0}, {1, 0}}, true);
    CHECK_THROWS_WITH(biarc::assign_tangents(p),
                      Catch::Matchers::ContainsSubstring("vertex 0"));
  }
}

TEST_CASE("fit_spline basics") {
  SECTION("two-vertex open polyline yields one edge") {
    const Polyline p = Polyline::make({{0, 0}, {3, 4}}, false);
    const ArcSpline s = biarc::fit_spline(p, biarc::assign_tangents(p), {});
    CHECK(s.edges.size() == 1);
    CHECK(s.segments.size() <= 2);
    // both tangents sit on the chord, so this is the single-line case
    CHECK(s.segments.size() == 1);
    CHECK_FALSE(s.segments.front().is_arc());
    CHECK(s.total_length == Approx(5.0).epsilon(1e-12));
  }

  SECTION("tangent count mismatch") {
    const Polyline p = Polyline::make({{0, 0}, {1, 0}, {2, 1}}, false);
    CHECK_THROWS_AS(biarc::fit_spline(p, biarc::TangentField{{1, 0}}, {}),
                    std::domain_error);
  }

  SECTION("closed square under equal chords") {
    const Polyline p = Polyline::make({{0, 0}, {4, 0}, {4, 4}, {0, 4}}, true);
    const ArcSpline s = biarc::fit_spline(p, biarc::assign_tangents(p), {});
    CHECK(s.closed());
    CHECK(s.edges.size() == 4);
    CHECK(s.fallback_count() == 0);
    CHECK(testutil::max_chain_defect(s) <= 1e-9);
  }
}

TEST_CASE("fit_spline on the sharp 13-gon") {
  const Polyline poly = w_polygon();
  const auto tangents = biarc::assign_tangents(poly);

  SECTION("equal chords: no fallbacks, G1 chain, vertex interpolation") {
    const ArcSpline s = biarc::fit_spline(poly, tangents, {});
    CHECK(s.edges.size() == 13);
    CHECK(s.segments.size() <= 26);
    CHECK(s.fallback_count() == 0);
    CHECK(testutil::max_chain_defect(s) <= 1e-9);

    // every polyline vertex appears as a segment endpoint
    for (const Vec2& v : poly.vertices) {
      bool found = false;
      for (const ArcSegment& seg : s.segments)
        if ((seg.start.x == v.x && seg.start.y == v.y) ||
            (seg.end.x == v.x && seg.end.y == v.y))
          found = true;
      CHECK(found);
    }

    // the spline tangent at each vertex matches the prescribed field
    std::size_t seg_index = 0;
    for (std::size_t e = 0; e < s.edges.size(); ++e) {
      const ArcSegment& first = s.segments[seg_index];
      CHECK(testutil::vec_dist(first.start_tangent(), tangents[e]) <= 1e-9);
      // advance past this edge's segments
      const Vec2 target = poly.vertices[(e + 1) % poly.vertices.size()];
      while (seg_index < s.segments.size() &&
             !(s.segments[seg_index].end.x == target.x &&
               s.segments[seg_index].end.y == target.y))
        ++seg_index;
      ++seg_index;
    }
  }

  SECTION("strategy fallback accounting on sharp data") {
    for (const Strategy kind : {Strategy::parallel_tangent, Strategy::j_shaped}) {
      const ArcSpline s = biarc::fit_spline(poly, tangents, {kind, std::nullopt, {}});
      CHECK(s.fallback_count() > 0);
      CHECK(testutil::max_chain_defect(s) <= 1e-9);
      for (const auto& e : s.edges)
        CHECK((e.applied == kind || e.fell_back));
    }
  }

  SECTION("cubic midpoint handles the sharp corners without fallback") {
    const ArcSpline s =
        biarc::fit_spline(poly, tangents, {Strategy::cubic_midpoint, std::nullopt, {}});
    CHECK(s.fallback_count() == 0);
    CHECK(testutil::max_chain_defect(s) <= 1e-9);
  }
}

TEST_CASE("degenerate merges contribute single segments") {
  SECTION("collinear edge becomes one line") {
    const Polyline p = Polyline::make({{0, 0}, {1, 0}, {2, 0}, {2.0, 1.0}}, false);
    const ArcSpline s = biarc::fit_spline(p, biarc::assign_tangents(p), {});
    // first edge has both tangents along the chord: exactly one line
    REQUIRE_FALSE(s.segments.empty());
    CHECK_FALSE(s.segments.front().is_arc());
    CHECK(testutil::vec_dist(s.segments.front().start, {0, 0}) == 0.0);
    CHECK(testutil::vec_dist(s.segments.front().end, {1, 0}) == 0.0);
  }

  SECTION("single-arc pair contributes one arc") {
    const G1Pair pair = G1Pair::make({0, 0}, testutil::dir(biarc::kPi / 3), {2, 0},
                                     testutil::dir(-biarc::kPi / 3));
    const ArcSpline s = biarc::spline_from_biarc(biarc::build_biarc(pair, 0.0),
                                                 {Strategy::equal_chord, false, 0.0});
    REQUIRE(s.segments.size() == 1);
    CHECK(s.segments.front().is_arc());
    CHECK(testutil::vec_dist(s.segments.front().start, {0, 0}) == 0.0);
    CHECK(testutil::vec_dist(s.segments.front().end, {2, 0}) == 0.0);
  }
}

TEST_CASE("spline length") {
  SECTION("line and full circle") {
    ArcSpline line;
    line.segments.push_back(ArcSegment::make_line({0, 0}, {3, 4}));
    CHECK(biarc::spline_length(line) == Approx(5.0).epsilon(1e-15));

    ArcSpline circle;
    circle.segments.push_back(
        ArcSegment::make_arc({2, 0}, {2, 0}, {0, 0}, 2.0, biarc::kTwoPi));
    CHECK(biarc::spline_length(circle) == Approx(4.0 * biarc::kPi).epsilon(1e-15));
  }

  SECTION("reference biarc length matches dense sampling") {
    const biarc::Biarc b = biarc::build_biarc(testutil::reference_pair(), 0.0);
    const ArcSpline s =
        biarc::spline_from_biarc(b, {Strategy::equal_chord, false, 0.0});
    const double sqrt2 = std::sqrt(2.0);
    const double expected = 100.0 * (2.0 - sqrt2) * (3.0 * biarc::kPi / 4.0) +
                            100.0 * sqrt2 * (biarc::kPi / 4.0);
    CHECK(s.total_length == Approx(expected).epsilon(1e-12));

    double sampled = 0.0;
    for (const ArcSegment& seg : s.segments) {
      Vec2 prev = seg.point_at(0.0);
      for (int i = 1; i <= 10000; ++i) {
        const Vec2 cur = seg.point_at(i / 10000.0);
        sampled += (cur - prev).norm();
        prev = cur;
      }
    }
    CHECK(s.total_length == Approx(sampled).epsilon(1e-6));
  }
}
