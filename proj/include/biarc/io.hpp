#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "biarc/arc_spline.hpp"

namespace biarc::io {

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Number formatting
// ---------------------------------------------------------------------------

/// Shortest decimal representation with at most `precision` significant
/// digits. Locale independent, so output is byte-identical across runs.
inline std::string format_number(double x, int precision) {
  if (x == 0.0) x = 0.0;  // flush -0
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, precision);
  return std::string(buf, res.ptr);
}

/// Round to `precision` significant digits (by a formatting round trip).
inline double quantize(double x, int precision) {
  const std::string s = format_number(x, precision);
  double r = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), r);
  return r;
}

// ---------------------------------------------------------------------------
// Arc-list JSON
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json json_vec(Vec2 v, int precision) {
  return nlohmann::ordered_json::array(
      {quantize(v.x, precision), quantize(v.y, precision)});
}

inline std::string emit_arcjson(const ArcSpline& spline, int precision = 6) {
  nlohmann::ordered_json doc;
  doc["segments"] = nlohmann::ordered_json::array();
  for (const ArcSegment& s : spline.segments) {
    nlohmann::ordered_json seg;
    seg["kind"] = s.is_arc() ? "arc" : "line";
    seg["start"] = json_vec(s.start, precision);
    seg["end"] = json_vec(s.end, precision);
    if (s.is_arc()) {
      seg["center"] = json_vec(s.center, precision);
      seg["radius"] = quantize(s.radius, precision);
      seg["sweep"] = quantize(s.sweep, precision);
    }
    doc["segments"].push_back(std::move(seg));
  }
  doc["edges"] = nlohmann::ordered_json::array();
  for (const EdgeRecord& e : spline.edges) {
    nlohmann::ordered_json rec;
    rec["strategy"] = std::string(strategy_name(e.applied));
    rec["fell_back"] = e.fell_back;
    rec["u"] = quantize(e.u, precision);
    doc["edges"].push_back(std::move(rec));
  }
  return doc.dump(2) + "\n";
}

/// Parse a document produced by emit_arcjson back into segments (edge
/// metadata is ignored); used for round-trip verification.
inline std::vector<ArcSegment> parse_arcjson(const std::string& text) {
  std::vector<ArcSegment> segments;
  try {
    const nlohmann::json doc = nlohmann::json::parse(text);
    const auto vec = [](const nlohmann::json& j) {
      return Vec2{j.at(0).get<double>(), j.at(1).get<double>()};
    };
    for (const auto& seg : doc.at("segments")) {
      if (seg.at("kind") == "arc")
        segments.push_back(ArcSegment::make_arc(
            vec(seg.at("start")), vec(seg.at("end")), vec(seg.at("center")),
            seg.at("radius").get<double>(), seg.at("sweep").get<double>()));
      else
        segments.push_back(
            ArcSegment::make_line(vec(seg.at("start")), vec(seg.at("end"))));
    }
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("arc json: ") + e.what());
  }
  return segments;
}

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

namespace detail {

struct Bounds {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool empty = true;
  void add(Vec2 p) {
    if (empty) {
      xmin = xmax = p.x;
      ymin = ymax = p.y;
      empty = false;
      return;
    }
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
};

/// Does absolute circle angle `q` lie on the swept range of the arc?
inline bool angle_on_arc(const ArcSegment& s, double q) {
  const double theta0 = std::atan2(s.start.y - s.center.y, s.start.x - s.center.x);
  const double span = std::abs(s.sweep);
  double delta = s.sweep >= 0.0 ? q - theta0 : theta0 - q;
  delta = std::fmod(delta, kTwoPi);
  if (delta < 0.0) delta += kTwoPi;
  return delta <= span;
}

inline Bounds spline_bounds(const ArcSpline& spline) {
  Bounds b;
  for (const ArcSegment& s : spline.segments) {
    b.add(s.start);
    b.add(s.end);
    if (!s.is_arc()) continue;
    const double r = std::abs(s.radius);
    const Vec2 axis[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const double q[4] = {0.0, kPi / 2.0, kPi, -kPi / 2.0};
    for (int i = 0; i < 4; ++i)
      if (angle_on_arc(s, q[i])) b.add(s.center + r * axis[i]);
  }
  return b;
}

/// Split an (almost) full-circle arc into two halves; SVG arc commands
/// and G2/G3 moves are ill-defined when the endpoints coincide.
inline std::vector<ArcSegment> split_full_circles(const std::vector<ArcSegment>& in) {
  std::vector<ArcSegment> out;
  for (const ArcSegment& s : in) {
    if (s.is_arc() && std::abs(s.sweep) >= kTwoPi - 1e-9) {
      const Vec2 mid = s.point_at(0.5);
      out.push_back(
          ArcSegment::make_arc(s.start, mid, s.center, s.radius, s.sweep / 2.0));
      out.push_back(
          ArcSegment::make_arc(mid, s.end, s.center, s.radius, s.sweep / 2.0));
    } else {
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace detail

inline std::string emit_svg(const ArcSpline& spline, int precision = 6) {
  const auto segments = detail::split_full_circles(spline.segments);
  const detail::Bounds b = detail::spline_bounds(spline);
  double w = b.xmax - b.xmin;
  double h = b.ymax - b.ymin;
  double margin = 0.05 * std::max(w, h);
  if (!(margin > 0.0)) margin = 1.0;
  w += 2.0 * margin;
  h += 2.0 * margin;

  const auto num = [&](double x) { return format_number(x, precision); };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<!-- path coordinates are mathematical y-up; the scale(1,-1) wrapper"
         " maps them onto SVG's y-down viewport -->\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(b.xmin - margin)
      << " " << num(-(b.ymax + margin)) << " " << num(w) << " " << num(h) << "\">\n";
  out << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke=\"black\" stroke-width=\""
      << num(std::max(w, h) / 200.0) << "\">\n";

  out << "<path d=\"";
  if (!segments.empty()) {
    out << "M " << num(segments.front().start.x) << " " << num(segments.front().start.y);
    for (const ArcSegment& s : segments) {
      if (!s.is_arc()) {
        out << " L " << num(s.end.x) << " " << num(s.end.y);
        continue;
      }
      const double r = std::abs(s.radius);
      const int large_arc = std::abs(s.sweep) > kPi ? 1 : 0;
      const int svg_sweep = s.sweep > 0.0 ? 1 : 0;  // 1 = counterclockwise (y-up)
      out << " A " << num(r) << " " << num(r) << " 0 " << large_arc << " "
          << svg_sweep << " " << num(s.end.x) << " " << num(s.end.y);
    }
    if (spline.closed()) out << " Z";
  }
  out << "\"/>\n</g>\n</svg>\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Arc-move toolpath (G-code, XY plane)
// ---------------------------------------------------------------------------

inline std::string emit_gcode(const ArcSpline& spline, int precision = 6) {
  const auto segments = detail::split_full_circles(spline.segments);
  const auto num = [&](double x) { return format_number(x, precision); };

  std::ostringstream out;
  if (segments.empty()) return out.str();
  out << "G0 X" << num(segments.front().start.x) << " Y"
      << num(segments.front().start.y) << "\n";
  for (const ArcSegment& s : segments) {
    if (!s.is_arc()) {
      out << "G1 X" << num(s.end.x) << " Y" << num(s.end.y) << "\n";
      continue;
    }
    // G3 is counterclockwise, matching positive sweep; I/J are the center
    // offsets from the segment start.
    out << (s.sweep > 0.0 ? "G3" : "G2") << " X" << num(s.end.x) << " Y"
        << num(s.end.y) << " I" << num(s.center.x - s.start.x) << " J"
        << num(s.center.y - s.start.y) << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Input documents
// ---------------------------------------------------------------------------

enum class InputKind { autodetect, polyline, hermite };

using Input = std::variant<Polyline, G1Pair>;

namespace detail {

inline Vec2 get_vec2(const nlohmann::json& j, const char* key,
                     const std::string& origin) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2 ||
      !j[key][0].is_number() || !j[key][1].is_number())
    throw parse_error(origin + ": field '" + key + "' must be a [x, y] number pair");
  const Vec2 v{j[key][0].get<double>(), j[key][1].get<double>()};
  if (!v.finite()) throw parse_error(origin + ": field '" + key + "' is not finite");
  return v;
}

}  // namespace detail

inline Input parse_input_text(const std::string& text, InputKind kind,
                              const std::string& origin = "<input>") {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(origin + ": " + e.what());
  }
  if (!doc.is_object()) throw parse_error(origin + ": expected a JSON object");

  if (kind == InputKind::autodetect)
    kind = doc.contains("vertices") ? InputKind::polyline : InputKind::hermite;

  try {
    if (kind == InputKind::polyline) {
      if (!doc.contains("vertices") || !doc["vertices"].is_array())
        throw parse_error(origin + ": polyline needs a 'vertices' array");
      std::vector<Vec2> vertices;
      for (std::size_t i = 0; i < doc["vertices"].size(); ++i) {
        const auto& v = doc["vertices"][i];
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
          throw parse_error(origin + ": vertex " + std::to_string(i) +
                            " must be a [x, y] number pair");
        vertices.push_back({v[0].get<double>(), v[1].get<double>()});
      }
      bool closed = false;
      if (doc.contains("closed")) {
        if (!doc["closed"].is_boolean())
          throw parse_error(origin + ": 'closed' must be a boolean");
        closed = doc["closed"].get<bool>();
      }
      return Polyline::make(std::move(vertices), closed);
    }
    return G1Pair::make(detail::get_vec2(doc, "A", origin),
                        detail::get_vec2(doc, "tA", origin),
                        detail::get_vec2(doc, "B", origin),
                        detail::get_vec2(doc, "tB", origin));
  } catch (const std::domain_error& e) {
    throw parse_error(origin + ": " + e.what());
  }
}

inline Input parse_input(const std::string& path, InputKind kind) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error(path + ": cannot open input file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_input_text(buf.str(), kind, path);
}

// ---------------------------------------------------------------------------
// CLI front end
// ---------------------------------------------------------------------------

struct RunConfig {
  std::string input_path;
  InputKind kind = InputKind::autodetect;
  bool closed = false;
  StrategySpec strategy;
  std::string out_json;
  std::string out_svg;
  std::string out_gcode;
  bool report = false;
  int precision = 6;
  Tolerances tol;

  void validate() const {
    if (out_json.empty() && out_svg.empty() && out_gcode.empty() && !report)
      throw std::domain_error(
          "no output requested: pass --out-json, --out-svg, --out-gcode or --report");
    if (precision < 3 || precision > 17)
      throw std::domain_error("precision must be in [3, 17]");
  }
};

namespace detail {

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parse_error(path + ": cannot open output file");
  out << content;
  if (!out) throw parse_error(path + ": write failed");
}

inline void print_report(std::ostream& out, const ArcSpline& spline,
                         const G1Pair* pair, const RunConfig& cfg) {
  const auto num = [&](double x) { return format_number(x, cfg.precision); };
  if (pair) {
    const JointFrame frame = joint_frame(*pair, cfg.tol);
    out << "input: hermite\n";
    out << "case: " << classify(*pair, cfg.tol).case_id << "\n";
    out << "psi_deg: " << num(frame.psi * 180.0 / kPi) << "\n";
  } else {
    out << "input: polyline\n";
  }
  if (!spline.edges.empty()) {
    out << "strategy: " << strategy_name(spline.edges.front().applied) << "\n";
    if (pair) {
      out << "fell_back: " << (spline.edges.front().fell_back ? "true" : "false")
          << "\n";
      out << "u: " << num(spline.edges.front().u) << "\n";
    }
  }
  if (pair && !spline.segments.empty()) {
    const ArcSegment& sa = spline.segments.front();
    const ArcSegment& sb = spline.segments.back();
    out << "alpha_deg: " << (sa.is_arc() ? num(sa.sweep * 180.0 / kPi) : "0") << "\n";
    out << "beta_deg: " << (sb.is_arc() ? num(sb.sweep * 180.0 / kPi) : "0") << "\n";
    out << "R_A: " << (sa.is_arc() ? num(sa.radius) : "line") << "\n";
    out << "R_B: " << (sb.is_arc() ? num(sb.radius) : "line") << "\n";
  }
  out << "edges: " << spline.edges.size() << "\n";
  out << "segments: " << spline.segments.size() << "\n";
  out << "fallbacks: " << spline.fallback_count() << "\n";
  out << "total_length: " << num(spline.total_length) << "\n";
}

}  // namespace detail

}  // namespace biarc::io
