// Command-line front end: seeded ensemble benchmarks of the propagator
// approximants, the two downfolding sweeps, and CSV -> SVG plotting.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>

#include "varprop/csv.hpp"
#include "varprop/ensemble.hpp"
#include "varprop/graphene.hpp"
#include "varprop/hubbard.hpp"
#include "varprop/parallel.hpp"
#include "varprop/svg.hpp"

namespace {

using namespace varprop;

Method parse_method(const std::string& name) {
  static const std::map<std::string, Method> kNames = {
      {"taylor2", Method::kTaylor},
      {"kpm2", Method::kKpm},
      {"variational", Method::kVariational},
      {"closed_form", Method::kVariationalClosedForm},
      {"residual_action", Method::kResidualAction},
  };
  const auto it = kNames.find(name);
  if (it == kNames.end()) {
    throw CLI::ValidationError("--methods", "unknown method '" + name + "'");
  }
  return it->second;
}

struct BenchOptions {
  std::vector<int> dims{5};
  int samples = 100;
  std::uint64_t seed = 0;
  double t_max = 2.0;
  int grid = 100;
  std::vector<std::string> methods{"taylor2", "kpm2", "variational", "closed_form",
                                   "residual_action"};
  int n_star = 2;
  int threads = 0;
  std::string out;
  std::string svg;
};

int run_bench(const BenchOptions& opt) {
  validate_output_path(opt.out);
  if (!opt.svg.empty()) validate_output_path(opt.svg);

  std::vector<BenchRecord> records;
  for (const int dim : opt.dims) {
    EvolutionConfig cfg;
    cfg.dim = dim;
    cfg.samples = opt.samples;
    cfg.seed = opt.seed;
    cfg.t_max = opt.t_max;
    cfg.grid_points = opt.grid;
    cfg.n_star = opt.n_star;
    cfg.threads = opt.threads;
    cfg.methods.clear();
    for (const auto& name : opt.methods) cfg.methods.push_back(parse_method(name));
    const EvolutionCurves curves = evolution_curves(cfg);
    const auto part = aggregate_records(curves, dim);
    records.insert(records.end(), part.begin(), part.end());
  }
  write_bench_csv(opt.out, records);

  if (!opt.svg.empty()) {
    std::map<std::string, PlotSeries> by_curve;
    for (const auto& r : records) {
      std::string key = method_name(r.method);
      if (opt.dims.size() > 1) key += " d=" + std::to_string(r.dim);
      auto& s = by_curve[key];
      s.label = key;
      s.x.push_back(r.t_norm);
      s.y.push_back(r.l2_mean);
    }
    std::vector<PlotSeries> series;
    for (auto& [key, s] : by_curve) series.push_back(std::move(s));
    PlotOptions po;
    po.title = "propagator distance vs normalized time";
    po.x_label = "t |H|";
    po.y_label = "l2 distance";
    write_svg(opt.svg, series, po);
  }
  return 0;
}

struct GrapheneOptions {
  double gamma = 1.0;
  double p_min = 0.02;
  double p_max = 1.0;
  int points = 100;
  std::string axis = "p2";
  std::string convention = "printed";
  int threads = 0;
  std::string out;
  std::string svg;
};

int run_graphene(const GrapheneOptions& opt) {
  validate_output_path(opt.out);
  if (!opt.svg.empty()) validate_output_path(opt.svg);
  GrapheneSweepConfig cfg;
  cfg.gamma = opt.gamma;
  cfg.p_min = opt.p_min;
  cfg.p_max = opt.p_max;
  cfg.points = opt.points;
  cfg.axis = opt.axis == "p1" ? SweepAxis::kP1 : SweepAxis::kP2;
  cfg.convention =
      opt.convention == "complex" ? PmConvention::kComplex : PmConvention::kAsPrinted;
  cfg.threads = opt.threads;
  const GrapheneSweepResult sweep = graphene_sweep(cfg);
  write_graphene_csv(opt.out, sweep);

  if (!opt.svg.empty()) {
    PlotSeries s_std{"standard", {}, {}}, s_var{"improved", {}, {}};
    for (const auto& point : sweep.points) {
      if (!point.valid) continue;
      s_std.x.push_back(point.p);
      s_std.y.push_back(point.delta_std);
      s_var.x.push_back(point.p);
      s_var.y.push_back(point.delta_var);
    }
    PlotOptions po;
    po.title = "relative level mismatch";
    po.x_label = opt.axis;
    po.y_label = "Delta";
    po.log_y = true;
    write_svg(opt.svg, {s_std, s_var}, po);
  }
  return 0;
}

struct HubbardOptions {
  int sites = 5;
  double interaction = 1.0;
  double tu_min = 0.01;
  double tu_max = 0.4;
  int points = 50;
  std::string boundary = "periodic";
  std::string coeffs = "printed";
  bool allow_large = false;
  int threads = 0;
  std::string out;
  std::string aggregate_out;
  std::string svg;
};

int run_hubbard(const HubbardOptions& opt) {
  std::string aggregate = opt.aggregate_out;
  if (aggregate.empty()) {
    std::filesystem::path p(opt.out);
    aggregate = (p.parent_path() / (p.stem().string() + "_aggregate.csv")).string();
  }
  validate_output_path(opt.out);
  validate_output_path(aggregate);
  if (!opt.svg.empty()) validate_output_path(opt.svg);

  HubbardSweepConfig cfg;
  cfg.n_sites = opt.sites;
  cfg.interaction = opt.interaction;
  cfg.tu_min = opt.tu_min;
  cfg.tu_max = opt.tu_max;
  cfg.points = opt.points;
  cfg.boundary = opt.boundary == "open" ? Boundary::kOpen : Boundary::kPeriodic;
  cfg.coefficients =
      opt.coeffs == "ode" ? CoefficientSource::kOde : CoefficientSource::kPrinted;
  cfg.allow_large = opt.allow_large;
  cfg.threads = opt.threads;
  const HubbardSweepResult sweep = hubbard_sweep(cfg);
  write_hubbard_levels_csv(opt.out, sweep);
  write_hubbard_aggregate_csv(aggregate, sweep);

  if (!opt.svg.empty()) {
    PlotSeries s_std{"standard, first half", {}, {}}, s_var{"improved, first half", {}, {}};
    for (const auto& r : sweep.aggregate) {
      s_std.x.push_back(r.t_over_u);
      s_std.y.push_back(r.avg_first_half_std);
      s_var.x.push_back(r.t_over_u);
      s_var.y.push_back(r.avg_first_half_var);
    }
    PlotOptions po;
    po.title = "averaged relative level error";
    po.x_label = "t/U";
    po.y_label = "relative error";
    po.log_x = true;
    po.log_y = true;
    write_svg(opt.svg, {s_std, s_var}, po);
  }
  return 0;
}

struct PlotCmdOptions {
  std::string in;
  std::string out;
  bool log_x = false;
  bool log_y = false;
  std::string title;
};

int run_plot(const PlotCmdOptions& opt) {
  validate_output_path(opt.out);
  const CsvTable table = read_csv(opt.in);

  std::vector<PlotSeries> series;
  PlotOptions po;
  po.log_x = opt.log_x;
  po.log_y = opt.log_y;
  po.title = opt.title;

  const auto num = [](const std::string& s) { return std::strtod(s.c_str(), nullptr); };

  if (table.column("method") >= 0 && table.column("l2_mean") >= 0) {
    const int c_method = table.column("method"), c_dim = table.column("dim");
    const int c_x = table.column("t_norm"), c_y = table.column("l2_mean");
    std::map<std::string, PlotSeries> by_curve;
    for (const auto& row : table.rows) {
      const std::string key = row[c_method] + " d=" + row[c_dim];
      auto& s = by_curve[key];
      s.label = key;
      s.x.push_back(num(row[c_x]));
      s.y.push_back(num(row[c_y]));
    }
    for (auto& [key, s] : by_curve) series.push_back(std::move(s));
    po.x_label = "t |H|";
    po.y_label = "l2 distance";
  } else if (table.column("p2") >= 0 && table.column("delta_std") >= 0) {
    PlotSeries s_std{"standard", {}, {}}, s_var{"improved", {}, {}};
    const int c_x = table.column("p2");
    for (const auto& row : table.rows) {
      s_std.x.push_back(num(row[c_x]));
      s_std.y.push_back(num(row[table.column("delta_std")]));
      s_var.x.push_back(num(row[c_x]));
      s_var.y.push_back(num(row[table.column("delta_var")]));
    }
    series = {s_std, s_var};
    po.x_label = "p2";
    po.y_label = "Delta";
  } else if (table.column("avg_first_half_std") >= 0) {
    PlotSeries s_std{"standard, first half", {}, {}}, s_var{"improved, first half", {}, {}};
    const int c_x = table.column("t_over_u");
    for (const auto& row : table.rows) {
      s_std.x.push_back(num(row[c_x]));
      s_std.y.push_back(num(row[table.column("avg_first_half_std")]));
      s_var.x.push_back(num(row[c_x]));
      s_var.y.push_back(num(row[table.column("avg_first_half_var")]));
    }
    series = {s_std, s_var};
    po.x_label = "t/U";
    po.y_label = "relative error";
  } else if (table.column("level_index") >= 0 && table.column("err_std") >= 0) {
    PlotSeries s_std{"standard, level 1", {}, {}}, s_var{"improved, level 1", {}, {}};
    const int c_x = table.column("t_over_u"), c_l = table.column("level_index");
    for (const auto& row : table.rows) {
      if (row[c_l] != "1") continue;
      s_std.x.push_back(num(row[c_x]));
      s_std.y.push_back(num(row[table.column("err_std")]));
      s_var.x.push_back(num(row[c_x]));
      s_var.y.push_back(num(row[table.column("err_var")]));
    }
    series = {s_std, s_var};
    po.x_label = "t/U";
    po.y_label = "relative error";
  } else {
    throw std::invalid_argument("plot: unrecognized CSV schema in " + opt.in);
  }
  write_svg(opt.out, series, po);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variational propagator benchmarks and downfolding sweeps"};
  app.require_subcommand(1);
  app.set_config("--config");

  BenchOptions bench;
  auto* cmd_bench = app.add_subcommand(
      "bench-evolution", "l2 distance of propagator approximants over a seeded ensemble");
  cmd_bench->add_option("--dim", bench.dims, "Hilbert-space dimensions")->capture_default_str();
  cmd_bench->add_option("--samples", bench.samples, "ensemble size")->capture_default_str();
  cmd_bench->add_option("--seed", bench.seed, "ensemble seed")->required();
  cmd_bench->add_option("--tmax", bench.t_max, "largest normalized time t|H|")
      ->capture_default_str();
  cmd_bench->add_option("--grid", bench.grid, "time grid points")->capture_default_str();
  cmd_bench->add_option("--methods", bench.methods,
                        "subset of taylor2,kpm2,variational,closed_form,residual_action")
      ->delimiter(',')
      ->capture_default_str();
  cmd_bench->add_option("--nstar", bench.n_star, "polynomial cutoff order")
      ->capture_default_str();
  cmd_bench->add_option("--threads", bench.threads, "worker threads (0 = VARPROP_THREADS/auto)")
      ->capture_default_str();
  cmd_bench->add_option("--out", bench.out, "output CSV")->required();
  cmd_bench->add_option("--svg", bench.svg, "optional SVG plot");

  GrapheneOptions graphene;
  auto* cmd_graphene =
      app.add_subcommand("graphene", "bilayer low-energy level mismatch sweep");
  cmd_graphene->add_option("--gamma", graphene.gamma, "interlayer coupling")
      ->capture_default_str();
  cmd_graphene->add_option("--pmin", graphene.p_min, "first momentum")->capture_default_str();
  cmd_graphene->add_option("--pmax", graphene.p_max, "last momentum")->capture_default_str();
  cmd_graphene->add_option("--points", graphene.points, "grid points")->capture_default_str();
  cmd_graphene->add_option("--axis", graphene.axis, "sweep axis: p1 or p2")
      ->check(CLI::IsMember({"p1", "p2"}))
      ->capture_default_str();
  cmd_graphene->add_option("--convention", graphene.convention,
                           "off-diagonal momentum convention: printed or complex")
      ->check(CLI::IsMember({"printed", "complex"}))
      ->capture_default_str();
  cmd_graphene->add_option("--threads", graphene.threads, "worker threads")
      ->capture_default_str();
  cmd_graphene->add_option("--out", graphene.out, "output CSV")->required();
  cmd_graphene->add_option("--svg", graphene.svg, "optional SVG plot");

  HubbardOptions hubbard;
  auto* cmd_hubbard =
      app.add_subcommand("hubbard", "chain spin-model error sweep at half filling");
  cmd_hubbard->add_option("--sites", hubbard.sites, "chain length (2..7)")
      ->capture_default_str();
  cmd_hubbard->add_option("--interaction", hubbard.interaction, "U")->capture_default_str();
  cmd_hubbard->add_option("--tumin", hubbard.tu_min, "first t/U")->capture_default_str();
  cmd_hubbard->add_option("--tumax", hubbard.tu_max, "last t/U")->capture_default_str();
  cmd_hubbard->add_option("--points", hubbard.points, "log-spaced grid points")
      ->capture_default_str();
  cmd_hubbard->add_option("--boundary", hubbard.boundary, "periodic or open")
      ->check(CLI::IsMember({"periodic", "open"}))
      ->capture_default_str();
  cmd_hubbard->add_option("--coeffs", hubbard.coeffs,
                          "coupling coefficients: printed formula or moment-flow (ode)")
      ->check(CLI::IsMember({"printed", "ode"}))
      ->capture_default_str();
  cmd_hubbard->add_flag("--allow-large", hubbard.allow_large, "permit 7 sites");
  cmd_hubbard->add_option("--threads", hubbard.threads, "worker threads")
      ->capture_default_str();
  cmd_hubbard->add_option("--out", hubbard.out, "per-level CSV")->required();
  cmd_hubbard->add_option("--aggregate-out", hubbard.aggregate_out,
                          "averages CSV (default: <out stem>_aggregate.csv)");
  cmd_hubbard->add_option("--svg", hubbard.svg, "optional SVG plot");

  PlotCmdOptions plot;
  auto* cmd_plot = app.add_subcommand("plot", "render a produced CSV as a static SVG");
  cmd_plot->add_option("--in", plot.in, "input CSV")->required()->check(CLI::ExistingFile);
  cmd_plot->add_option("--out", plot.out, "output SVG")->required();
  cmd_plot->add_flag("--log-x", plot.log_x, "logarithmic x axis");
  cmd_plot->add_flag("--log-y", plot.log_y, "logarithmic y axis");
  cmd_plot->add_option("--title", plot.title, "plot title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cmd_bench->parsed()) return run_bench(bench);
    if (cmd_graphene->parsed()) return run_graphene(graphene);
    if (cmd_hubbard->parsed()) return run_hubbard(hubbard);
    if (cmd_plot->parsed()) return run_plot(plot);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
