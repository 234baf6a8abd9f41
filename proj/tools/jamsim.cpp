#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jamsim/fluid.hpp"
#include "jamsim/io.hpp"
#include "jamsim/montecarlo.hpp"
#include "jamsim/rsa.hpp"

using ordered_json = nlohmann::ordered_json;

namespace {

struct Options {
  std::string config;
  std::string out = "out";
  std::uint64_t seed = 20240801;
  std::string model = "er-chain";
  double c = 1.0;
  std::int64_t n = 1000;
  int reps = 1;
  double lambda = 1.0;
  int dim = 2;
  bool poisson = false;
  double step = 1e-4;
  double level = 0.99;
  double horizon = 1.0;
  std::string grid;  // figure2 grid: "lo:hi:count" or comma-separated values
  std::string deltas = "0.05,0.1";
  double cell_factor = 1.0 / 64.0;
};

void add_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "JSON config file; explicit flags override its fields");
  cmd->add_option("--out", o.out, "output directory")->capture_default_str();
  cmd->add_option("--seed", o.seed, "base seed for all replicate streams")->capture_default_str();
  cmd->add_option("--model", o.model, "er-chain, er-graph, or rsa")
      ->check(CLI::IsMember({"er-chain", "er-graph", "rsa"}))
      ->capture_default_str();
  cmd->add_option("--c", o.c, "mean degree")->capture_default_str();
  cmd->add_option("--n", o.n, "vertex / expected point count")->capture_default_str();
  cmd->add_option("--reps", o.reps, "number of replications")->capture_default_str();
  cmd->add_option("--lambda", o.lambda, "point intensity (rsa)")->capture_default_str();
  cmd->add_option("--dim", o.dim, "box dimension, 1 or 2 (rsa)")->capture_default_str();
  cmd->add_flag("--poisson", o.poisson, "draw the point count from Poisson(lambda |C|)");
  cmd->add_option("--step", o.step, "ODE integration step")->capture_default_str();
  cmd->add_option("--level", o.level, "confidence level")->capture_default_str();
  cmd->add_option("--horizon", o.horizon, "envelope horizon T")->capture_default_str();
  cmd->add_option("--grid", o.grid, "c grid, lo:hi:count or comma-separated");
  cmd->add_option("--deltas", o.deltas, "comma-separated deviation thresholds")
      ->capture_default_str();
  cmd->add_option("--cell-factor", o.cell_factor, "raster cell size as a fraction of r")
      ->capture_default_str();
}

// Fields present in the JSON config fill in everything the command line left
// at its default; explicit flags win.
void apply_config(const CLI::App& cmd, Options& o) {
  if (o.config.empty()) return;
  std::ifstream in(o.config);
  if (!in) throw std::runtime_error("cannot open config file " + o.config);
  const nlohmann::json cfg = nlohmann::json::parse(in);
  auto fill = [&](const char* flag, const char* key, auto& field) {
    if (cfg.contains(key) && cmd.count(flag) == 0)
      field = cfg.at(key).get<std::decay_t<decltype(field)>>();
  };
  fill("--out", "out", o.out);
  fill("--seed", "seed", o.seed);
  fill("--model", "model", o.model);
  fill("--c", "c", o.c);
  fill("--n", "n", o.n);
  fill("--reps", "reps", o.reps);
  fill("--lambda", "lambda", o.lambda);
  fill("--dim", "dim", o.dim);
  fill("--poisson", "poisson", o.poisson);
  fill("--step", "step", o.step);
  fill("--level", "level", o.level);
  fill("--horizon", "horizon", o.horizon);
  fill("--grid", "grid", o.grid);
  fill("--deltas", "deltas", o.deltas);
  fill("--cell-factor", "cell_factor", o.cell_factor);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw std::runtime_error("expected a comma-separated list of numbers");
  return out;
}

std::vector<double> parse_grid(const std::string& text) {
  if (text.empty()) {
    std::vector<double> grid;  // evenly spaced over (0, 3]
    for (int i = 1; i <= 15; ++i) grid.push_back(0.2 * static_cast<double>(i));
    return grid;
  }
  if (text.find(':') == std::string::npos) return parse_list(text);
  double lo = 0.0, hi = 0.0;
  int count = 0;
  char sep1 = 0, sep2 = 0;
  std::stringstream ss(text);
  ss >> lo >> sep1 >> hi >> sep2 >> count;
  if (!ss || sep1 != ':' || sep2 != ':' || count < 1)
    throw std::runtime_error("grid must be lo:hi:count or a comma-separated list");
  std::vector<double> grid;
  if (count == 1) {
    grid.push_back(hi);
    return grid;
  }
  for (int i = 0; i < count; ++i)
    grid.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
  return grid;
}

jamsim::ModelKind parse_model(const std::string& name) {
  if (name == "er-chain") return jamsim::ModelKind::ErChain;
  if (name == "er-graph") return jamsim::ModelKind::ErGraph;
  if (name == "rsa") return jamsim::ModelKind::Rsa;
  throw std::runtime_error("unknown model " + name);
}

jamsim::RunSpec make_spec(const Options& o) {
  jamsim::RunSpec spec;
  spec.model = parse_model(o.model);
  spec.replications = o.reps;
  spec.base_seed = o.seed;
  spec.level = o.level;
  if (spec.model == jamsim::ModelKind::Rsa) {
    spec.box = jamsim::box_for_mean_degree(o.c, o.lambda, o.n, o.dim);
    spec.count_mode = o.poisson ? jamsim::CountMode::PoissonCount : jamsim::CountMode::FixedCount;
    spec.rsa.cell_factor = o.cell_factor;
  } else {
    spec.er = jamsim::ErParams{o.n, o.c};
    jamsim::validate(spec.er);
  }
  return spec;
}

std::string out_path(const Options& o, const char* name) {
  return (std::filesystem::path(o.out) / name).string();
}

void write_file(const std::string& path, const std::string& content) {
  jamsim::write_text_atomic(path, content);
  std::cout << "wrote " << path << "\n";
}

void run_fluid(const Options& o) {
  if (!(o.c > 0.0))
    throw std::runtime_error(
        "fluid: c must be positive (the ER curve and the bound ODEs need a positive mean degree)");
  jamsim::OdeSettings ode;
  ode.step = o.step;
  const jamsim::JammingStats stats = jamsim::er_jamming_stats(o.c);
  const jamsim::FluidCurve fluid =
      jamsim::integrate_fluid([&](double z) { return o.c * (1.0 - z); }, ode);
  const jamsim::VarianceCurve variance = jamsim::integrate_variance(o.c, ode);
  const jamsim::BoundCurves bounds = jamsim::integrate_bounds(o.c, ode);

  const double t_end = std::max(bounds.t_upper, fluid.t_star);
  const double out_step = std::max(o.step, 1e-3);
  std::vector<double> t, z_er, l, u, m;
  for (double ti = 0.0; ti < t_end + 0.5 * out_step; ti += out_step) {
    const double tc = std::min(ti, t_end);
    t.push_back(tc);
    z_er.push_back(fluid.value_at(tc));
    l.push_back(bounds.l_at(tc));
    u.push_back(bounds.u_at(tc));
    m.push_back(tc <= fluid.t_star ? variance.m_at(tc) : std::nan(""));
  }
  write_file(out_path(o, "fluid.csv"), jamsim::csv_table({"t", "z_er", "l", "u", "m"},
                                                         {t, z_er, l, u, m}));

  ordered_json summary;
  summary["c"] = o.c;
  summary["step"] = o.step;
  summary["t_star"] = stats.t_star;
  summary["t_star_ode"] = fluid.t_star;
  summary["t_lower"] = bounds.t_lower;
  summary["t_upper"] = bounds.t_upper;
  summary["sigma2"] = stats.sigma2;
  write_file(out_path(o, "fluid_summary.json"), summary.dump(2) + "\n");
}

ordered_json stats_json(const jamsim::SummaryStats& stats) {
  ordered_json out;
  out["count"] = stats.count;
  out["mean"] = stats.mean;
  out["variance"] = stats.variance;
  out["ci_low"] = stats.ci_low;
  out["ci_high"] = stats.ci_high;
  out["level"] = stats.level;
  out["ci_defined"] = stats.ci_defined;
  return out;
}

void run_simulate(const Options& o) {
  jamsim::RunSpec spec = make_spec(o);
  ordered_json summary;
  summary["model"] = o.model;
  summary["c"] = o.c;
  summary["n"] = o.n;
  summary["reps"] = o.reps;
  summary["seed"] = o.seed;

  if (spec.model == jamsim::ModelKind::Rsa) {
    spec.rsa.with_upper = true;
    spec.rsa.with_lower = true;
    const std::vector<jamsim::CoupledRun> runs = jamsim::run_coupled_replications(spec);
    write_file(out_path(o, "trace.csv"), jamsim::coupled_trace_csv(runs.front()));
    std::vector<double> t_z, t_u, t_l;
    for (const jamsim::CoupledRun& run : runs) {
      t_z.push_back(run.z.trajectory.scaled_hitting_time());
      t_u.push_back(run.upper->trajectory.scaled_hitting_time());
      t_l.push_back(run.lower->trajectory.scaled_hitting_time());
    }
    summary["lambda"] = o.lambda;
    summary["dim"] = o.dim;
    summary["radius"] = spec.box.radius;
    summary["side"] = spec.box.side[0];
    summary["t_z"] = t_z;
    summary["t_u"] = t_u;
    summary["t_l"] = t_l;
    summary["t_z_stats"] = stats_json(jamsim::summarize(t_z, o.level));
  } else {
    const std::vector<jamsim::Trajectory> trajectories = jamsim::run_trajectories(spec);
    write_file(out_path(o, "trace.csv"), jamsim::trajectory_csv(trajectories.front()));
    const jamsim::JammingEstimate estimate = jamsim::estimate_jamming(trajectories, o.level);
    summary["t_hat"] = estimate.samples;
    summary["t_hat_stats"] = stats_json(estimate.stats);
  }
  write_file(out_path(o, "simulate_summary.json"), summary.dump(2) + "\n");
}

void run_figure2(const Options& o) {
  const std::vector<double> grid = parse_grid(o.grid);
  jamsim::OdeSettings ode;
  ode.step = o.step;
  std::vector<jamsim::Figure2Row> rows;
  for (const double c : grid) {
    if (!(c > 0.0)) throw std::runtime_error("figure2: grid values must be positive");
    const jamsim::BoundCurves bounds = jamsim::integrate_bounds(c, ode);
    Options point = o;
    point.model = "rsa";
    point.c = c;
    const jamsim::RunSpec spec = make_spec(point);
    const jamsim::JammingEstimate estimate = jamsim::estimate_jamming(spec);
    jamsim::Figure2Row row;
    row.c = c;
    row.t_lower = bounds.t_lower;
    row.t_upper = bounds.t_upper;
    row.t_er = std::log1p(c) / c;
    row.rsa_mean = estimate.stats.mean;
    row.ci_low = estimate.stats.ci_low;
    row.ci_high = estimate.stats.ci_high;
    rows.push_back(row);
  }
  write_file(out_path(o, "figure2.csv"), jamsim::figure2_csv(rows));

  ordered_json summary;
  summary["n"] = o.n;
  summary["reps"] = o.reps;
  summary["seed"] = o.seed;
  summary["lambda"] = o.lambda;
  summary["dim"] = o.dim;
  summary["level"] = o.level;
  summary["grid"] = grid;
  write_file(out_path(o, "figure2_summary.json"), summary.dump(2) + "\n");
}

void run_clt(const Options& o) {
  if (parse_model(o.model) == jamsim::ModelKind::Rsa)
    throw std::runtime_error("clt: closed-form T* and sigma2 exist for the ER models only");
  const jamsim::JammingStats stats = jamsim::er_jamming_stats(o.c);
  const jamsim::RunSpec spec = make_spec(o);
  const jamsim::CltReport report = jamsim::clt_study(spec, stats.t_star, stats.sigma2);

  std::vector<double> index(report.standardized.size());
  for (std::size_t i = 0; i < index.size(); ++i) index[i] = static_cast<double>(i);
  write_file(out_path(o, "clt_samples.csv"),
             jamsim::csv_table({"replicate", "w"}, {index, report.standardized}));

  ordered_json summary;
  summary["model"] = o.model;
  summary["c"] = o.c;
  summary["n"] = o.n;
  summary["reps"] = o.reps;
  summary["seed"] = o.seed;
  summary["t_star"] = report.t_star;
  summary["sigma2"] = report.sigma2;
  summary["sample_mean"] = report.sample_mean;
  summary["sample_variance"] = report.sample_variance;
  summary["ks_statistic"] = report.ks.statistic;
  summary["ks_p_value"] = report.ks.p_value;
  write_file(out_path(o, "clt_summary.json"), summary.dump(2) + "\n");
}

void run_envelope(const Options& o) {
  if (parse_model(o.model) == jamsim::ModelKind::Rsa)
    throw std::runtime_error("envelope: the fluid error bound applies to the ER models only");
  jamsim::OdeSettings ode;
  ode.step = o.step;
  const jamsim::ErrorBoundReport bound = jamsim::er_error_bound(o.n, o.c, o.horizon);
  const jamsim::FluidCurve curve =
      jamsim::integrate_fluid([&](double z) { return o.c * (1.0 - z); }, ode);
  const jamsim::RunSpec spec = make_spec(o);
  const std::vector<double> deltas = parse_list(o.deltas);
  const jamsim::EnvelopeReport report = jamsim::fluid_envelope_check(spec, curve, bound, deltas);

  std::vector<double> d, emp, bnd, ok;
  for (const jamsim::EnvelopeDeltaRow& row : report.deltas) {
    d.push_back(row.delta);
    emp.push_back(row.empirical);
    bnd.push_back(row.bound);
    ok.push_back(row.ok ? 1.0 : 0.0);
  }
  write_file(out_path(o, "envelope_deltas.csv"),
             jamsim::csv_table({"delta", "empirical", "bound", "ok"}, {d, emp, bnd, ok}));

  ordered_json summary;
  summary["model"] = o.model;
  summary["c"] = o.c;
  summary["n"] = o.n;
  summary["reps"] = o.reps;
  summary["seed"] = o.seed;
  summary["horizon"] = o.horizon;
  summary["omega"] = report.omega;
  summary["l2_sup_deviation"] = report.l2_sup_deviation;
  summary["l2_ok"] = report.l2_ok;
  write_file(out_path(o, "envelope_summary.json"), summary.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and numerics toolkit for exploration processes on random graphs"};
  app.require_subcommand(1);

  Options fluid_o, sim_o, fig1_o, fig2_o, clt_o, env_o;
  fig1_o.model = "rsa";
  fig1_o.c = 1.4;
  fig1_o.n = 2000;
  fig1_o.reps = 1;
  fig2_o.n = 1000;
  fig2_o.reps = 20;
  clt_o.n = 10000;
  clt_o.reps = 2000;
  env_o.n = 10000;
  env_o.reps = 100;

  CLI::App* fluid_cmd =
      app.add_subcommand("fluid", "Integrate the fluid, variance, and bound curves");
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Run exploration replications");
  CLI::App* fig1_cmd =
      app.add_subcommand("figure1", "simulate with the coupled-run defaults (rsa, c=1.4, N=2000)");
  CLI::App* fig2_cmd =
      app.add_subcommand("figure2", "Jamming constant vs c with fluid bounds and ER curve");
  CLI::App* clt_cmd = app.add_subcommand("clt", "Standardized hitting-time study");
  CLI::App* env_cmd = app.add_subcommand("envelope", "Finite-N fluid error-bound check");
  add_options(fluid_cmd, fluid_o);
  add_options(sim_cmd, sim_o);
  add_options(fig1_cmd, fig1_o);
  add_options(fig2_cmd, fig2_o);
  add_options(clt_cmd, clt_o);
  add_options(env_cmd, env_o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (fluid_cmd->parsed()) {
      apply_config(*fluid_cmd, fluid_o);
      run_fluid(fluid_o);
    } else if (sim_cmd->parsed()) {
      apply_config(*sim_cmd, sim_o);
      run_simulate(sim_o);
    } else if (fig1_cmd->parsed()) {
      apply_config(*fig1_cmd, fig1_o);
      run_simulate(fig1_o);
    } else if (fig2_cmd->parsed()) {
      apply_config(*fig2_cmd, fig2_o);
      run_figure2(fig2_o);
    } else if (clt_cmd->parsed()) {
      apply_config(*clt_cmd, clt_o);
      run_clt(clt_o);
    } else if (env_cmd->parsed()) {
      apply_config(*env_cmd, env_o);
      run_envelope(env_o);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
