// rfcomp: design, compile, simulate and check composite pulses for
// amplitude-dispersed spin ensembles.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rfcomp/bloch.hpp"
#include "rfcomp/design_io.hpp"
#include "rfcomp/error.hpp"
#include "rfcomp/modulation.hpp"
#include "rfcomp/pulse_text.hpp"
#include "rfcomp/reference_corpus.hpp"
#include "rfcomp/search.hpp"
#include "rfcomp/synthesis.hpp"
#include "table1.hpp"

namespace {

using namespace rfcomp;
using nlohmann::json;

constexpr double kDeg = std::numbers::pi / 180.0;

Vec3 target_state(double theta_deg) {
  return {std::sin(theta_deg * kDeg), 0.0, std::cos(theta_deg * kDeg)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void write_summary(const std::string& path, const json& j) {
  if (!path.empty()) write_file(path, j.dump(2) + "\n");
}

std::string join_deg(const std::vector<double>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ", ";
    s += format_deg(v[k]);
  }
  return "[" + s + "]";
}

const auto kOddGrid = CLI::Validator(
    [](std::string& s) -> std::string {
      const int n = std::stoi(s);
      if (n < 3 || n % 2 == 0) return "grid must be an odd count >= 3";
      return {};
    },
    "ODD>=3");

const auto kPositive = CLI::Validator(
    [](std::string& s) -> std::string {
      if (!(std::stod(s) > 0.0)) return "value must be positive";
      return {};
    },
    "POSITIVE");

const auto kOpenUnit = CLI::Validator(
    [](std::string& s) -> std::string {
      const double v = std::stod(s);
      if (!(v > 0.0 && v < 1.0)) return "value must lie in (0, 1)";
      return {};
    },
    "(0,1)");

struct DesignArgs {
  std::string method = "dmod";
  int terms = 2;
  double theta = 90.0;
  double delta = 0.5;
  std::string selection = "heuristic";
  std::uint64_t seed = 0;
  int starts = 100;
  std::string out;
  std::string summary;
};

int cmd_design(const DesignArgs& a) {
  SearchOptions opts;
  opts.seed = a.seed;
  opts.starts = a.starts;
  const Method method = parse_method(a.method);
  const Selection sel = parse_selection(a.selection);
  SearchResult r;
  try {
    r = run_search(method, a.terms, a.theta, a.delta, sel, opts);
  } catch (const ConvergenceError& e) {
    std::cerr << "design: " << e.what() << "\n";
    return 2;
  }
  std::cout << "method     " << to_string(method) << "\n"
            << "selection  " << to_string(sel) << "\n"
            << "gamma_deg  " << join_deg(r.design.gammas_deg) << "\n"
            << "alpha_deg  " << join_deg(r.design.alphas_deg) << "\n";
  std::printf("residual   %.6g\nstate_err  %.6g\n", r.residual, r.state_error);
  if (!a.out.empty()) save_design(r.design, a.out);
  json j = json::parse(design_to_json(r.design));
  j["residual"] = r.residual;
  j["state_error"] = r.state_error;
  j["evaluations"] = r.evaluations;
  write_summary(a.summary, j);
  return 0;
}

struct CompileArgs {
  std::string design;
  double threshold = 9.0;
  bool reverse = false;
  bool explicit_z = false;
  std::string out;
};

int cmd_compile(const CompileArgs& a) {
  const DesignRecord d = load_design(a.design);
  const BlockOrder order = a.reverse ? BlockOrder::descending_gamma : BlockOrder::ascending_gamma;
  PulseProgram p;
  if (d.method == Method::delta_mod) {
    p = compile_dmod(d, a.threshold, order,
                     a.explicit_z ? DmodForm::explicit_z : DmodForm::phase_encoded);
  } else {
    p = compile_fsm(d, a.threshold, order);
  }
  const std::string text = serialize_program(p);
  if (a.out.empty()) {
    std::cout << text << "\n";
  } else {
    write_file(a.out, text + "\n");
  }
  return 0;
}

struct SimArgs {
  std::string pulse;
  int grid = 201;
  double delta = 0.5;
  double omega = 0.0;
  double theta = 90.0;
  std::string csv;
  std::string residual_csv;
  std::string summary;
};

json report_json(const ErrorReport& r) {
  return {{"l2_error", r.l2_error}, {"flip_table_rad", r.flip_table},
          {"flip_rf_sum_rad", r.flip_rf_sum}};
}

int cmd_simulate(const SimArgs& a) {
  PulseProgram program;
  try {
    program = parse_program(read_file(a.pulse));
  } catch (const ParseError& e) {
    std::cerr << "simulate: " << e.what() << "\n";
    return 2;
  }
  const EnsembleGrid grid = EnsembleGrid::centered(a.delta, a.grid);
  const SimOptions opts{a.omega, 1000};
  const StateProfile profile = simulate_program(program, grid, opts);
  ErrorReport r = l2_error(profile, target_state(a.theta));
  r.flip_table = total_flip_angle(program, FlipConvention::table);
  r.flip_rf_sum = total_flip_angle(program, FlipConvention::rf_sum);
  std::printf("l2_error        %.6g\nflip_table_rad  %.3f\nflip_rf_sum_rad %.3f\n", r.l2_error,
              r.flip_table, r.flip_rf_sum);
  if (!a.csv.empty()) {
    std::ofstream out(a.csv);
    write_profile_csv(out, profile);
  }
  if (!a.residual_csv.empty()) {
    std::ofstream out(a.residual_csv);
    write_residual_csv(out, profile, r);
  }
  write_summary(a.summary, report_json(r));
  return 0;
}

struct EvalArgs {
  std::string design;
  int grid = 201;
  double threshold = 9.0;
  std::string summary;
};

int cmd_evaluate(const EvalArgs& a) {
  const DesignRecord d = load_design(a.design);
  const cli::Oracles o = cli::design_oracles(d, a.grid, a.threshold);
  const PulseProgram p = compile(d, a.threshold);
  const double flip_table = total_flip_angle(p, FlipConvention::table);
  const double flip_sum = total_flip_angle(p, FlipConvention::rf_sum);
  std::printf(
      "profile_residual %.6g\nideal_state_err  %.6g\nsimulated_err    %.6g\n"
      "flip_table_rad   %.3f\nflip_rf_sum_rad  %.3f\n",
      o.residual, o.ideal, o.simulated, flip_table, flip_sum);
  write_summary(a.summary, {{"profile_residual", o.residual},
                            {"ideal_state_error", o.ideal},
                            {"simulated_error", o.simulated},
                            {"flip_table_rad", flip_table},
                            {"flip_rf_sum_rad", flip_sum}});
  return 0;
}

struct TableArgs {
  std::vector<std::string> selections = {"heuristic", "greedy", "gradient"};
  bool listed_only = false;
  std::uint64_t seed = 0;
  int starts = 100;
  std::string summary;
};

int cmd_table1(const TableArgs& a) {
  cli::Table1Options opts;
  opts.selections.clear();
  for (const auto& s : a.selections) opts.selections.push_back(parse_selection(s));
  opts.regenerate = !a.listed_only;
  opts.search.seed = a.seed;
  opts.search.starts = a.starts;
  const cli::Table1Report rep = cli::run_table1(opts);
  std::cout << cli::format_table1(rep);
  json cells = json::array();
  for (const auto& c : rep.cells) {
    json j = {{"method", to_string(c.method)},
              {"selection", to_string(c.selection)},
              {"terms", c.terms},
              {"table_error", c.table_error},
              {"table_flip_rad", c.table_flip},
              {"listed_simulated", c.listed.simulated},
              {"listed_ideal", c.listed.ideal},
              {"listed_residual", c.listed.residual},
              {"listed_flip_rad", c.listed_flip},
              {"listed_error_ok", c.listed_error_ok},
              {"listed_flip_ok", c.listed_flip_ok}};
    if (c.regenerated) {
      j["regen_gammas_deg"] = c.regenerated->design.gammas_deg;
      j["regen_state_error"] = c.regenerated->state_error;
      j["regen_residual"] = c.regenerated->residual;
      j["regen_simulated"] = c.regen.simulated;
      j["regen_flip_rad"] = c.regen_flip;
      j["regen_error_ok"] = c.regen_error_ok;
    }
    cells.push_back(std::move(j));
  }
  write_summary(a.summary, {{"cells", cells},
                            {"dominance_checked", rep.dominance_checked},
                            {"dominance_failed", rep.dominance_failed},
                            {"pass", rep.all_pass()}});
  std::cout << (rep.all_pass() ? "PASS" : "FAIL") << "\n";
  return rep.all_pass() ? 0 : 1;
}

struct ModArgs {
  std::string shape = "linear";
  double amplitude = 1.0;
  double rate = 0.01;
  std::vector<double> eps = {0.6, 0.8, 1.0, 1.2, 1.4};
  int substeps = 1000;
  bool robust = false;
  std::string csv;
  std::string summary;
};

int cmd_modulate(const ModArgs& a) {
  ModulationSpec spec;
  if (a.shape == "linear") {
    spec.amplitude = a.amplitude;
    spec.rate = a.rate;
  } else {
    std::ifstream in(a.shape);
    if (!in) {
      std::cerr << "modulate: cannot open shape file " << a.shape << "\n";
      return 2;
    }
    try {
      spec = read_shape_csv(in, a.amplitude, a.rate);
    } catch (const std::exception& e) {
      std::cerr << "modulate: " << e.what() << "\n";
      return 2;
    }
  }
  spec.validate();
  if (!spec.first_order_regime()) {
    std::cerr << "modulate: warning: B/A >= 0.2, first-order expressions are unreliable\n";
  }
  const bool linear = spec.shape == ModulationSpec::Shape::linear;
  std::ostringstream csv;
  csv << "epsilon,c_first_order,c_simulated\n";
  json rows = json::array();
  std::printf("%8s %14s %14s %12s\n", "epsilon", "first_order", "simulated", "distance");
  for (const double e : a.eps) {
    const double c1 = linear ? linear_first_order_coefficient(spec, e)
                             : arbitrary_first_order_coefficient(spec, e);
    const Rotation exact = simulate_modulated(spec, e, a.substeps);
    const double cs = y_angle(exact);
    const double dist = geodesic_distance(exact, axis_exp(Axis::y, c1));
    std::printf("%8.4f %14.8g %14.8g %12.4g\n", e, c1, cs, dist);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g\n", e, c1, cs);
    csv << buf;
    rows.push_back({{"epsilon", e}, {"c_first_order", c1}, {"c_simulated", cs},
                    {"distance", dist}});
  }
  json j = {{"rows", rows}};
  if (a.robust) {
    if (!linear) {
      std::cerr << "modulate: --robust requires the linear shape\n";
      return 2;
    }
    const RobustComposite rc = robust_composite(spec, a.eps);
    std::printf("robust angle at 1   %.8g\nrobust d/deps at 1 %.3g\n", rc.report.angle_at_one,
                rc.report.derivative_at_one);
    j["robust_angle_at_one"] = rc.report.angle_at_one;
    j["robust_derivative_at_one"] = rc.report.derivative_at_one;
  }
  if (!a.csv.empty()) write_file(a.csv, csv.str());
  write_summary(a.summary, j);
  return 0;
}

struct RoundtripArgs {
  double threshold = 9.0;
  std::string summary;
};

int cmd_roundtrip(const RoundtripArgs& a) {
  constexpr double kDisplayTol = 0.1 + 1e-9;
  int failures = 0;
  json rows = json::array();
  for (const ReferenceDesign& ref : reference_designs()) {
    const PulseProgram parsed = parse_program(ref.pulse_text);
    const std::string text = serialize_program(parsed);
    const bool stable = serialize_program(parse_program(text)) == text &&
                        programs_match(parse_program(text), parsed, kDisplayTol);
    const bool compiled = programs_match(compile(to_design(ref), a.threshold), parsed, kDisplayTol);
    if (!stable || !compiled) ++failures;
    std::printf("%-24s round-trip %s  compile %s\n", std::string(ref.name).c_str(),
                stable ? "PASS" : "FAIL", compiled ? "PASS" : "FAIL");
    rows.push_back({{"name", ref.name}, {"roundtrip", stable}, {"compile_matches", compiled}});
  }
  std::printf("failures: %d/%zu\n", failures, reference_designs().size());
  write_summary(a.summary, {{"rows", rows}, {"failures", failures}});
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Composite pulse design for amplitude-dispersed spin ensembles"};
  app.require_subcommand(1);
  app.allow_extras(false);

  DesignArgs da;
  auto* design = app.add_subcommand("design", "Select frequencies and amplitudes");
  design->add_option("--method", da.method, "fsm or dmod")
      ->check(CLI::IsMember({"fsm", "dmod", "delta_mod"}));
  design->add_option("--terms", da.terms, "Number of basis terms")->check(CLI::PositiveNumber);
  design->add_option("--theta", da.theta, "Target rotation angle, degrees");
  design->add_option("--delta", da.delta, "Dispersion half-width")->check(kOpenUnit);
  design->add_option("--selection", da.selection, "heuristic, greedy or gradient")
      ->check(CLI::IsMember({"heuristic", "greedy", "gradient"}));
  design->add_option("--seed", da.seed, "Multistart seed")->envname("RFCOMP_SEED");
  design->add_option("--starts", da.starts, "Random multistart count")
      ->check(CLI::PositiveNumber);
  design->add_option("--out", da.out, "Design file to write");
  design->add_option("--summary", da.summary, "JSON summary file");

  CompileArgs ca;
  auto* comp = app.add_subcommand("compile", "Turn a design into pulse text");
  comp->add_option("design", ca.design, "Design file")->required()->check(CLI::ExistingFile);
  comp->add_option("--threshold", ca.threshold, "Largest amplitude per block, degrees")
      ->check(kPositive);
  comp->add_flag("--reverse-order", ca.reverse, "Emit blocks in descending frequency");
  comp->add_flag("--explicit-z", ca.explicit_z, "Use z shifts instead of phase encoding");
  comp->add_option("--out", ca.out, "Pulse file to write");

  SimArgs sa;
  auto* sim = app.add_subcommand("simulate", "Simulate pulse text over the ensemble");
  sim->add_option("pulse", sa.pulse, "Pulse file")->required()->check(CLI::ExistingFile);
  sim->add_option("--grid", sa.grid, "Ensemble grid points (odd)")->check(kOddGrid);
  sim->add_option("--delta", sa.delta, "Dispersion half-width")->check(kOpenUnit);
  sim->add_option("--omega", sa.omega, "Off-resonance offset");
  sim->add_option("--theta", sa.theta, "Target rotation angle, degrees");
  sim->add_option("--csv", sa.csv, "Write epsilon,x,y,z");
  sim->add_option("--residual-csv", sa.residual_csv, "Write epsilon,residual");
  sim->add_option("--summary", sa.summary, "JSON summary file");

  EvalArgs ea;
  auto* eval = app.add_subcommand("evaluate", "Evaluate a design file");
  eval->add_option("design", ea.design, "Design file")->required()->check(CLI::ExistingFile);
  eval->add_option("--grid", ea.grid, "Ensemble grid points (odd)")->check(kOddGrid);
  eval->add_option("--threshold", ea.threshold, "Largest amplitude per block, degrees")
      ->check(kPositive);
  eval->add_option("--summary", ea.summary, "JSON summary file");

  TableArgs ta;
  auto* table = app.add_subcommand("table1", "Regenerate the performance table");
  table->add_option("--selection", ta.selections, "Selections to include")
      ->delimiter(',')
      ->check(CLI::IsMember({"heuristic", "greedy", "gradient"}));
  table->add_flag("--listed-only", ta.listed_only, "Check reference designs only");
  table->add_option("--seed", ta.seed, "Multistart seed")->envname("RFCOMP_SEED");
  table->add_option("--starts", ta.starts, "Random multistart count")->check(CLI::PositiveNumber);
  table->add_option("--summary", ta.summary, "JSON summary file");

  ModArgs ma;
  auto* mod = app.add_subcommand("modulate", "First-order phase-modulation analysis");
  mod->add_option("--shape", ma.shape, "linear, or a t,f CSV file");
  mod->add_option("-A,--amplitude", ma.amplitude, "RF amplitude")->check(kPositive);
  mod->add_option("-B,--rate", ma.rate, "Modulation rate bound")->check(CLI::NonNegativeNumber);
  mod->add_option("--eps", ma.eps, "Dispersion values")->delimiter(',');
  mod->add_option("--substeps", ma.substeps, "Slices per interval")->check(CLI::PositiveNumber);
  mod->add_flag("--robust", ma.robust, "Also build the first-order robust composite");
  mod->add_option("--csv", ma.csv, "Write epsilon,c_first_order,c_simulated");
  mod->add_option("--summary", ma.summary, "JSON summary file");

  RoundtripArgs ra;
  auto* rt = app.add_subcommand("roundtrip", "Parse and re-serialize the reference listings");
  rt->add_option("--threshold", ra.threshold, "Largest amplitude per block, degrees")
      ->check(kPositive);
  rt->add_option("--summary", ra.summary, "JSON summary file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*design) return cmd_design(da);
    if (*comp) return cmd_compile(ca);
    if (*sim) return cmd_simulate(sa);
    if (*eval) return cmd_evaluate(ea);
    if (*table) return cmd_table1(ta);
    if (*mod) return cmd_modulate(ma);
    if (*rt) return cmd_roundtrip(ra);
  } catch (const ParseError& e) {
    std::cerr << app.get_subcommands().front()->get_name() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << app.get_subcommands().front()->get_name() << ": " << e.what() << "\n";
    return 2;
  }
  return 1;
}
