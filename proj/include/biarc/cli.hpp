#pragma once

#include <CLI11.hpp>

#include "biarc/io.hpp"

namespace biarc::io {

namespace detail {

inline std::vector<Strategy> parse_fallback_list(const std::string& csv) {
  std::vector<Strategy> list;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto s = strategy_from_name(item);
    if (!s) throw std::domain_error("unknown fallback strategy '" + item + "'");
    list.push_back(*s);
  }
  return list;
}

}  // namespace detail

/// Parse flags, run the fit and write the requested outputs.
/// Exit codes: 0 success, 1 input error, 2 construction error.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"biarc interpolation and arc-spline fitting"};
  app.get_formatter()->column_width(28);

  std::string input, kind_s = "auto", strategy_s = "equal-chord", side_s = "start";
  std::string fallback_s;
  double radius = 0.0;
  RunConfig cfg;

  app.add_option("--input", input, "input JSON file")->required();
  app.add_option("--kind", kind_s, "input kind (default: auto-detect)")
      ->check(CLI::IsMember({"auto", "polyline", "hermite"}));
  app.add_flag("--closed", cfg.closed, "treat the polyline as closed");
  app.add_option("--strategy", strategy_s, "joint selection strategy")
      ->check(CLI::IsMember({"equal-chord", "parallel-tangent", "j-shape",
                             "cubic-midpoint", "curvature"}));
  auto* radius_opt =
      app.add_option("--radius", radius, "signed arc radius (curvature strategy)");
  auto* side_opt = app.add_option("--side", side_s, "constrained side (curvature)")
                       ->check(CLI::IsMember({"start", "end"}));
  app.add_option("--fallback", fallback_s,
                 "comma separated fallback strategies (default: equal-chord)");
  app.add_option("--out-json", cfg.out_json, "write the arc list as JSON");
  app.add_option("--out-svg", cfg.out_svg, "write an SVG figure");
  app.add_option("--out-gcode", cfg.out_gcode, "write an arc-move toolpath");
  app.add_option("--precision", cfg.precision, "significant digits for output (3..17)");
  app.add_option("--eps-angle", cfg.tol.eps_angle, "degenerate-joint-circle threshold");
  app.add_option("--eps-line", cfg.tol.eps_line, "arc-to-line threshold");
  app.add_flag("--report", cfg.report, "print a fit summary to stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    cfg.input_path = input;
    cfg.kind = kind_s == "polyline" ? InputKind::polyline
               : kind_s == "hermite" ? InputKind::hermite
                                     : InputKind::autodetect;
    const auto strategy = strategy_from_name(strategy_s);
    if (!strategy) throw std::domain_error("unknown strategy '" + strategy_s + "'");
    cfg.strategy.kind = *strategy;
    if (*strategy == Strategy::curvature_constrained) {
      if (radius_opt->count() == 0)
        throw std::domain_error("--strategy curvature requires --radius");
      cfg.strategy.given_radius =
          RadiusConstraint{radius, side_s == "end" ? Side::end : Side::start};
    } else {
      if (radius_opt->count() > 0 || side_opt->count() > 0)
        throw std::domain_error("--radius/--side are only valid with --strategy curvature");
    }
    if (!fallback_s.empty()) cfg.strategy.fallback = detail::parse_fallback_list(fallback_s);
    cfg.validate();

    const Input parsed = parse_input(cfg.input_path, cfg.kind);

    ArcSpline spline;
    const G1Pair* pair_ptr = nullptr;
    G1Pair pair_storage;
    if (std::holds_alternative<Polyline>(parsed)) {
      Polyline poly = std::get<Polyline>(parsed);
      if (cfg.closed && !poly.closed)
        poly = Polyline::make(std::move(poly.vertices), true);
      spline = fit_spline(poly, assign_tangents(poly), cfg.strategy, cfg.tol);
    } else {
      pair_storage = std::get<G1Pair>(parsed);
      pair_ptr = &pair_storage;
      const StrategyResult r = select(pair_storage, cfg.strategy, cfg.tol);
      const Biarc b = build_biarc(pair_storage, r.u, cfg.tol);
      spline = spline_from_biarc(b, {r.applied, r.fell_back, r.u});
    }

    if (!cfg.out_json.empty())
      detail::write_file(cfg.out_json, emit_arcjson(spline, cfg.precision));
    if (!cfg.out_svg.empty())
      detail::write_file(cfg.out_svg, emit_svg(spline, cfg.precision));
    if (!cfg.out_gcode.empty())
      detail::write_file(cfg.out_gcode, emit_gcode(spline, cfg.precision));
    if (cfg.report) detail::print_report(out, spline, pair_ptr, cfg);
    return 0;
  } catch (const construction_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace biarc::io
