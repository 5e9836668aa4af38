#pragma once

// Command implementations for the wiretwist CLI. Kept in a header so the test
// suite can drive `run_cli` with captured streams.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wiretwist/io.hpp"
#include "wiretwist/wiretwist.hpp"

namespace wiretwist::cli {

enum class Command { Stiffness, Integral, Doe, Fit, TorqueCurve, OracleCheck };
enum class Format { Text, Json, Csv };

enum ExitCode : int { kOk = 0, kInvalidInput = 2, kNumericFailure = 3, kCheckFailure = 4 };

struct RunConfig {
  Command command = Command::Stiffness;

  // Ring; defaults are the reference bearing.
  double R = 227.0;
  double r = 3.3;
  int Z = 82;
  double E = 210000.0;

  // Bite, either as ratios or absolute mm. No bite flags means a circular section.
  std::optional<double> rw_ratio;
  std::optional<double> L_ratio;
  std::optional<double> rw;
  std::optional<double> L;
  std::optional<double> gamma_deg;
  std::optional<double> gamma_rad;

  Format format = Format::Text;
  std::string output;

  std::string scheme = "simpson";
  double rel_tol = 1e-10;
  std::optional<int> cap;

  // doe
  std::vector<double> rw_ratios{2.0, 2.5, 3.0};
  std::vector<double> x_values{0.25, 0.5, 0.75, 1.0};
  std::vector<double> gammas_deg{45.0};
  // fit
  std::string input;
  // torque-curve
  double alpha_max = 0.1;
  int steps = 10;
  // oracle-check
  double alpha = 1e-3;
  int grid = 400;
  std::optional<int> n_rho;
  std::optional<int> n_theta;
  double threshold = 1e-3;
};

inline QuadratureSpec quadrature_of(const RunConfig& cfg) {
  if (cfg.scheme == "simpson") return QuadratureSpec::simpson(cfg.rel_tol, cfg.cap.value_or(40));
  if (cfg.scheme == "gauss") return QuadratureSpec::gauss_legendre(cfg.rel_tol, cfg.cap.value_or(512));
  throw InvalidArgument("unknown quadrature scheme '" + cfg.scheme + "' (expected simpson or gauss)");
}

inline SectionGeometry section_of(const RunConfig& cfg, std::ostream& err) {
  double gamma = std::numbers::pi / 4.0;
  if (cfg.gamma_deg && cfg.gamma_rad) throw InvalidArgument("give either --gamma-deg or --gamma-rad, not both");
  if (cfg.gamma_deg) gamma = *cfg.gamma_deg * std::numbers::pi / 180.0;
  if (cfg.gamma_rad) gamma = *cfg.gamma_rad;

  const bool has_ratio = cfg.rw_ratio || cfg.L_ratio;
  const bool has_abs = cfg.rw || cfg.L;
  if (!has_ratio && !has_abs) return SectionGeometry::circular(cfg.r);
  if (has_ratio) {
    if (!cfg.rw_ratio || !cfg.L_ratio) throw InvalidArgument("--rw-ratio and --L-ratio must be given together");
    if (has_abs) err << "warning: both ratio and absolute bite parameters given; using the ratios\n";
    return SectionGeometry::wire_race_ratios(cfg.r, *cfg.rw_ratio, *cfg.L_ratio, gamma);
  }
  if (!cfg.rw || !cfg.L) throw InvalidArgument("--rw and --L must be given together");
  return SectionGeometry::wire_race(cfg.r, *cfg.rw, *cfg.L, gamma);
}

inline WireRing ring_of(const RunConfig& cfg, std::ostream& err) {
  return WireRing(cfg.R, cfg.Z, cfg.E, section_of(cfg, err));
}

namespace detail {

using nlohmann::json;
using io::format_number;
using io::rounded;

inline json inputs_json(const WireRing& ring) {
  const auto& s = ring.section();
  json in = {{"R_mm", rounded(ring.R())},
             {"r_mm", rounded(s.r())},
             {"Z", ring.Z()},
             {"E_MPa", rounded(ring.E())},
             {"section", s.kind() == SectionKind::Circular ? "circular" : "wire-race"}};
  if (s.kind() == SectionKind::WireRace) {
    in["rw_mm"] = rounded(s.r_w());
    in["L_mm"] = rounded(s.L());
    in["rw_ratio"] = rounded(s.rw_ratio());
    in["L_ratio"] = rounded(s.L_ratio());
    in["gamma_rad"] = rounded(s.gamma());
  }
  return in;
}

inline json meta_json(const QuadratureSpec& q) {
  return {{"version", kVersion},
          {"quadrature", {{"scheme", to_string(q.scheme)}, {"rel_tol", rounded(q.rel_tol)}, {"cap", q.cap}}}};
}

inline json envelope(json inputs, json results, const QuadratureSpec& q) {
  return {{"inputs", std::move(inputs)}, {"results", std::move(results)}, {"meta", meta_json(q)}};
}

inline void describe(std::ostream& os, const WireRing& ring) {
  const auto& s = ring.section();
  os << "ring: R=" << format_number(ring.R()) << " mm, Z=" << ring.Z() << ", E=" << format_number(ring.E())
     << " MPa\n";
  if (s.kind() == SectionKind::Circular) {
    os << "section: circular, r=" << format_number(s.r()) << " mm\n";
  } else {
    os << "section: wire race, r=" << format_number(s.r()) << " mm, r_w/r=" << format_number(s.rw_ratio())
       << ", L/r=" << format_number(s.L_ratio()) << ", gamma=" << format_number(s.gamma()) << " rad\n";
  }
}

inline double rel_diff(double value, double reference) { return (value - reference) / reference; }

inline int cmd_stiffness(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto quad = quadrature_of(cfg);
  const auto ring = ring_of(cfg, err);
  const auto circle = WireRing(ring.R(), ring.Z(), ring.E(), SectionGeometry::circular(ring.section().r()));
  const double k_closed = stiffness_circular(circle);
  const auto integral = section_integral(ring.section(), quad);
  const double k_numeric = stiffness_from_integral(ring, integral.I);
  const auto k_eng = stiffness_engineering(ring);
  if (k_eng.out_of_range) {
    err << "warning: L/r - r_w/r = " << format_number(ring.section().clearance_ratio())
        << " is below the validated range [0.25, 1] of the engineering formula\n";
  }

  switch (cfg.format) {
    case Format::Json: {
      json results = {{"units", "N*mm/rad"},
                      {"K_closed_form_full_circle", rounded(k_closed)},
                      {"K_numeric", rounded(k_numeric)},
                      {"K_engineering", rounded(k_eng.value)},
                      {"rel_diff_closed_form_vs_numeric", rounded(rel_diff(k_closed, k_numeric))},
                      {"rel_diff_engineering_vs_numeric", rounded(rel_diff(k_eng.value, k_numeric))},
                      {"section_integral_mm4", rounded(integral.I)},
                      {"engineering_out_of_range", k_eng.out_of_range}};
      out << envelope(inputs_json(ring), results, quad).dump(2) << '\n';
      break;
    }
    case Format::Csv:
      out << "method,K_Nmm_per_rad,rel_diff_vs_numeric\n";
      out << "closed_form_full_circle," << format_number(k_closed) << ','
          << format_number(rel_diff(k_closed, k_numeric)) << '\n';
      out << "numeric," << format_number(k_numeric) << ",0\n";
      out << "engineering," << format_number(k_eng.value) << ',' << format_number(rel_diff(k_eng.value, k_numeric))
          << '\n';
      break;
    case Format::Text:
      describe(out, ring);
      out << "twisting stiffness [N*mm/rad]\n";
      out << "  closed form (full circle) : " << format_number(k_closed) << "  ("
          << format_number(100.0 * rel_diff(k_closed, k_numeric)) << " % vs numeric)\n";
      out << "  numeric section integral  : " << format_number(k_numeric) << '\n';
      out << "  engineering formula       : " << format_number(k_eng.value) << "  ("
          << format_number(100.0 * rel_diff(k_eng.value, k_numeric)) << " % vs numeric)\n";
      break;
  }
  return kOk;
}

inline int cmd_integral(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto quad = quadrature_of(cfg);
  const auto section = section_of(cfg, err);
  const auto integral = section_integral(section, quad);
  const double r4 = std::pow(section.r(), 4);
  std::optional<ThetaLimits> limits;
  if (section.kind() == SectionKind::WireRace && classify_section(section) == Intersection::PartialBite) {
    limits = theta_limits(section);
  }
  const std::string classification =
      classify_section(section) == Intersection::FullCircle ? "full-circle" : "partial-bite";

  switch (cfg.format) {
    case Format::Json: {
      json results = {{"classification", classification},
                      {"I_mm4", rounded(integral.I)},
                      {"I1_mm4", rounded(integral.I1)},
                      {"I2_mm4", rounded(integral.I2)},
                      {"est_error_mm4", rounded(integral.est_error)},
                      {"I_over_r4", rounded(integral.I / r4)}};
      if (limits) {
        results["theta1_rad"] = rounded(limits->theta1);
        results["theta2_rad"] = rounded(limits->theta2);
      }
      json inputs = {{"r_mm", rounded(section.r())}};
      if (section.kind() == SectionKind::WireRace) {
        inputs["rw_ratio"] = rounded(section.rw_ratio());
        inputs["L_ratio"] = rounded(section.L_ratio());
        inputs["gamma_rad"] = rounded(section.gamma());
      }
      out << envelope(inputs, results, quad).dump(2) << '\n';
      break;
    }
    case Format::Csv:
      out << "classification,I_mm4,I1_mm4,I2_mm4,est_error_mm4,I_over_r4,theta1_rad,theta2_rad\n";
      out << classification << ',' << format_number(integral.I) << ',' << format_number(integral.I1) << ','
          << format_number(integral.I2) << ',' << format_number(integral.est_error) << ','
          << format_number(integral.I / r4) << ',' << (limits ? format_number(limits->theta1) : "") << ','
          << (limits ? format_number(limits->theta2) : "") << '\n';
      break;
    case Format::Text:
      out << "classification: " << classification << '\n';
      out << "I    = " << format_number(integral.I) << " mm^4  (I/r^4 = " << format_number(integral.I / r4) << ")\n";
      out << "I1   = " << format_number(integral.I1) << " mm^4\n";
      out << "I2   = " << format_number(integral.I2) << " mm^4  (error estimate " << format_number(integral.est_error)
          << ")\n";
      if (limits) {
        out << "bite arc: theta1 = " << format_number(limits->theta1) << " rad, theta2 = " << format_number(limits->theta2)
            << " rad\n";
      }
      break;
  }
  return kOk;
}

inline DoeGrid grid_of(const RunConfig& cfg) {
  DoeGrid grid;
  grid.rw_ratios = cfg.rw_ratios;
  grid.x_values = cfg.x_values;
  grid.gammas.clear();
  for (double g : cfg.gammas_deg) grid.gammas.push_back(g * std::numbers::pi / 180.0);
  return grid;
}

inline int cmd_doe(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto quad = quadrature_of(cfg);
  const auto table = run_doe(grid_of(cfg), quad);
  if (cfg.format == Format::Json) {
    json inputs = {{"rw_ratios", cfg.rw_ratios}, {"x_values", cfg.x_values}, {"gammas_deg", cfg.gammas_deg}};
    out << envelope(inputs, {{"rows", io::doe_to_json(table)}}, quad).dump(2) << '\n';
  } else {
    io::write_doe_csv(out, table);
  }
  return kOk;
}

inline std::string engineering_formula_text(double c) {
  return "K_T = (E r^4 / (Z R)) * (pi^2/2 - " + format_number(2.0 * c) + " pi [1 - (L/r - r_w/r)])";
}

inline int cmd_fit(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto quad = quadrature_of(cfg);
  DoeTable table;
  std::string source = "regenerated";
  if (!cfg.input.empty()) {
    std::ifstream in(cfg.input);
    if (!in) throw InvalidArgument("cannot open DoE CSV '" + cfg.input + "'");
    table = io::read_doe_csv(in);
    source = cfg.input;
  } else {
    table = run_doe(grid_of(cfg), quad);
  }
  const auto fit = fit_surrogate(table);

  switch (cfg.format) {
    case Format::Json: {
      auto rows = io::doe_to_json(table);
      for (std::size_t i = 0; i < rows.size(); ++i) rows[i]["residual"] = rounded(fit.residuals[i]);
      json results = {{"c", rounded(fit.c)},
                      {"reference_c", kPublishedSlope},
                      {"max_abs_residual", rounded(fit.max_abs_residual())},
                      {"formula", engineering_formula_text(fit.c)},
                      {"rows", rows}};
      out << envelope({{"source", source}}, results, quad).dump(2) << '\n';
      break;
    }
    case Format::Csv:
      out << "rw_ratio,L_ratio,gamma_rad,x,I_over_r4,residual\n";
      for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        out << format_number(row.rw_ratio) << ',' << format_number(row.L_ratio) << ',' << format_number(row.gamma)
            << ',' << format_number(row.x()) << ',' << format_number(row.I_over_r4) << ','
            << format_number(fit.residuals[i]) << '\n';
      }
      break;
    case Format::Text:
      out << "surrogate I/r^4 = pi/4 - c [1 - (L/r - r_w/r)]  fitted on " << table.rows.size() << " rows ("
          << source << ")\n";
      out << "c = " << format_number(fit.c) << "  (reference value " << format_number(kPublishedSlope) << ")\n";
      out << "max |residual| = " << format_number(fit.max_abs_residual()) << '\n';
      out << "residuals:\n";
      for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        out << "  r_w/r=" << format_number(row.rw_ratio) << " L/r=" << format_number(row.L_ratio)
            << " x=" << format_number(row.x()) << " I/r^4=" << format_number(row.I_over_r4)
            << " residual=" << format_number(fit.residuals[i]) << '\n';
      }
      out << engineering_formula_text(fit.c) << '\n';
      break;
  }
  return kOk;
}

inline int cmd_torque_curve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto quad = quadrature_of(cfg);
  const auto ring = ring_of(cfg, err);
  const auto curve = torque_curve(ring, cfg.alpha_max, cfg.steps, quad);
  switch (cfg.format) {
    case Format::Json: {
      auto samples = json::array();
      for (const auto& s : curve.samples) samples.push_back({{"alpha_rad", rounded(s.alpha)}, {"T_Nmm", rounded(s.torque)}});
      json results = {{"K_origin", rounded(curve.K_origin)},
                      {"K_secant_pos", rounded(curve.K_secant_pos)},
                      {"K_secant_neg", rounded(curve.K_secant_neg)},
                      {"samples", samples}};
      out << envelope(inputs_json(ring), results, quad).dump(2) << '\n';
      break;
    }
    case Format::Csv:
      io::write_torque_csv(out, curve);
      err << "K_origin=" << format_number(curve.K_origin) << " K_secant_pos=" << format_number(curve.K_secant_pos)
          << " K_secant_neg=" << format_number(curve.K_secant_neg) << " [N*mm/rad]\n";
      break;
    case Format::Text:
      describe(out, ring);
      out << "K_origin     = " << format_number(curve.K_origin) << " N*mm/rad\n";
      out << "K_secant(+)  = " << format_number(curve.K_secant_pos) << " N*mm/rad\n";
      out << "K_secant(-)  = " << format_number(curve.K_secant_neg) << " N*mm/rad\n";
      io::write_torque_csv(out, curve);
      break;
  }
  return kOk;
}

inline int cmd_oracle_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto quad = quadrature_of(cfg);
  const auto ring = ring_of(cfg, err);
  const GridSpec grid = GridSpec{cfg.n_rho.value_or(cfg.grid), cfg.n_theta.value_or(cfg.grid)}.validated();
  const double t_quad = torque_full(ring, cfg.alpha, quad);
  const double t_oracle = oracle_torque(ring, cfg.alpha, grid);
  const double deviation = std::abs(t_oracle - t_quad) / std::abs(t_quad);
  const bool pass = deviation <= cfg.threshold;

  switch (cfg.format) {
    case Format::Json: {
      json results = {{"alpha_rad", rounded(cfg.alpha)},
                      {"grid", {grid.n_rho, grid.n_theta}},
                      {"T_quadrature_Nmm", rounded(t_quad)},
                      {"T_oracle_Nmm", rounded(t_oracle)},
                      {"rel_deviation", rounded(deviation)},
                      {"threshold", rounded(cfg.threshold)},
                      {"pass", pass}};
      out << envelope(inputs_json(ring), results, quad).dump(2) << '\n';
      break;
    }
    case Format::Csv:
      out << "alpha_rad,n_rho,n_theta,T_quadrature_Nmm,T_oracle_Nmm,rel_deviation,threshold,pass\n";
      out << format_number(cfg.alpha) << ',' << grid.n_rho << ',' << grid.n_theta << ',' << format_number(t_quad)
          << ',' << format_number(t_oracle) << ',' << format_number(deviation) << ',' << format_number(cfg.threshold)
          << ',' << (pass ? "true" : "false") << '\n';
      break;
    case Format::Text:
      describe(out, ring);
      out << "alpha = " << format_number(cfg.alpha) << " rad, grid " << grid.n_rho << " x " << grid.n_theta << '\n';
      out << "T quadrature = " << format_number(t_quad) << " N*mm\n";
      out << "T oracle     = " << format_number(t_oracle) << " N*mm\n";
      out << "relative deviation = " << format_number(deviation) << " (threshold " << format_number(cfg.threshold)
          << ") " << (pass ? "PASS" : "FAIL") << '\n';
      break;
  }
  return pass ? kOk : kCheckFailure;
}

inline int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  switch (cfg.command) {
    case Command::Stiffness: return cmd_stiffness(cfg, out, err);
    case Command::Integral: return cmd_integral(cfg, out, err);
    case Command::Doe: return cmd_doe(cfg, out, err);
    case Command::Fit: return cmd_fit(cfg, out, err);
    case Command::TorqueCurve: return cmd_torque_curve(cfg, out, err);
    case Command::OracleCheck: return cmd_oracle_check(cfg, out, err);
  }
  return kInvalidInput;
}

}  // namespace detail

/// Runs one command, writing to `cfg.output` when set and to `out` otherwise.
/// Library errors are mapped to exit codes.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.output.empty()) return detail::dispatch(cfg, out, err);
    std::ostringstream buffer;
    const int code = detail::dispatch(cfg, buffer, err);
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) throw InvalidArgument("cannot open output file '" + cfg.output + "'");
    file << buffer.str();
    return code;
  } catch (const QuadratureNotConverged& e) {
    err << "error: numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const InvalidGeometry& e) {
    err << "error: InvalidGeometry: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
}

inline void add_ring_options(CLI::App& app, RunConfig& cfg) {
  app.add_option("--R", cfg.R, "wire ring radius [mm]")->capture_default_str();
  app.add_option("--r", cfg.r, "section radius [mm]")->capture_default_str();
  app.add_option("--Z", cfg.Z, "number of balls")->capture_default_str();
  app.add_option("--E", cfg.E, "Young's modulus [MPa]")->capture_default_str();
}

inline void add_section_options(CLI::App& app, RunConfig& cfg) {
  app.add_option("--rw-ratio", cfg.rw_ratio, "bite radius / r");
  app.add_option("--L-ratio", cfg.L_ratio, "bite centre distance / r");
  app.add_option("--rw", cfg.rw, "bite radius [mm]");
  app.add_option("--L", cfg.L, "bite centre distance [mm]");
  app.add_option("--gamma-deg", cfg.gamma_deg, "bite centre angle [deg] (default 45)");
  app.add_option("--gamma-rad", cfg.gamma_rad, "bite centre angle [rad]");
}

inline void add_common_options(CLI::App& app, RunConfig& cfg) {
  app.add_option("--format", cfg.format, "output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"text", Format::Text}, {"json", Format::Json}, {"csv", Format::Csv}}));
  app.add_option("-o,--output", cfg.output, "output file (default stdout)");
  app.add_option("--scheme", cfg.scheme, "quadrature scheme: simpson | gauss")->capture_default_str();
  app.add_option("--rel-tol", cfg.rel_tol, "quadrature relative tolerance")->capture_default_str();
  app.add_option("--cap", cfg.cap, "refinement cap (depth for simpson, panels for gauss)");
}

/// Parses argv and runs the selected command.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Twisting stiffness of wire-race bearing raceways", "wiretwist"};
  app.require_subcommand(1);

  struct Entry {
    const char* name;
    const char* help;
    Command command;
    bool ring;
    bool section;
  };
  const Entry entries[] = {
      {"stiffness", "closed-form, numeric and engineering twisting stiffness", Command::Stiffness, true, true},
      {"integral", "section integral I = I1 + I2", Command::Integral, false, true},
      {"doe", "full-factorial table of I/r^4 (CSV)", Command::Doe, false, false},
      {"fit", "least-squares slope of the engineering surrogate", Command::Fit, false, false},
      {"torque-curve", "finite-angle torque curve with origin and secant stiffness", Command::TorqueCurve, true, true},
      {"oracle-check", "compare quadrature torque against the brute-force oracle", Command::OracleCheck, true, true},
  };
  std::vector<std::pair<CLI::App*, Command>> subs;
  for (const auto& e : entries) {
    auto* sub = app.add_subcommand(e.name, e.help);
    if (e.ring) add_ring_options(*sub, cfg);
    if (e.section) {
      add_section_options(*sub, cfg);
      if (!e.ring) sub->add_option("--r", cfg.r, "section radius [mm]")->capture_default_str();
    }
    add_common_options(*sub, cfg);
    subs.emplace_back(sub, e.command);
  }
  auto* doe = subs[2].first;
  auto* fit = subs[3].first;
  for (auto* sub : {doe, fit}) {
    sub->add_option("--rw-ratios", cfg.rw_ratios, "r_w/r levels")->delimiter(',')->capture_default_str();
    sub->add_option("--x-values", cfg.x_values, "L/r - r_w/r levels")->delimiter(',')->capture_default_str();
    sub->add_option("--gammas-deg", cfg.gammas_deg, "gamma levels [deg]")->delimiter(',')->capture_default_str();
  }
  fit->add_option("-i,--input", cfg.input, "DoE CSV to fit (default: regenerate the DoE)");
  auto* curve = subs[4].first;
  curve->add_option("--alpha-max", cfg.alpha_max, "largest twist angle [rad]")->capture_default_str();
  curve->add_option("--steps", cfg.steps, "intervals per twist sign")->capture_default_str();
  auto* check = subs[5].first;
  check->add_option("--alpha", cfg.alpha, "twist angle [rad]")->capture_default_str();
  check->add_option("--grid", cfg.grid, "oracle cells per direction")->capture_default_str();
  check->add_option("--n-rho", cfg.n_rho, "oracle radial cells");
  check->add_option("--n-theta", cfg.n_theta, "oracle angular cells");
  check->add_option("--threshold", cfg.threshold, "maximum relative deviation")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  for (const auto& [sub, command] : subs) {
    if (sub->parsed()) cfg.command = command;
  }
  return run(cfg, out, err);
}

}  // namespace wiretwist::cli
