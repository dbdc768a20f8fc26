#include "volest/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "volest/config.hpp"
#include "volest/errors.hpp"
#include "volest/estimate.hpp"
#include "volest/harness.hpp"
#include "volest/io.hpp"
#include "volest/scale.hpp"
#include "volest/simulate.hpp"

namespace volest::cli {

namespace fs = std::filesystem;

unsigned threads_from_env() {
  const char* raw = std::getenv("VOLEST_THREADS");
  if (!raw) return 0;
  char* end = nullptr;
  const unsigned long v = std::strtoul(raw, &end, 10);
  if (end == raw || *end != '\0') return 0;
  return static_cast<unsigned>(v);
}

namespace {

struct Invocation {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  std::string seed;
  // estimate
  std::string path_csv;
  // scale
  std::string table_path;
  std::string range = "0.5,5,10";
};

RunConfig load_config(const Invocation& inv) {
  ConfigMap map;
  if (!inv.config_path.empty()) {
    std::ifstream in(inv.config_path);
    if (!in) throw ConfigError("cannot read config file '" + inv.config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    map.merge_text(buf.str());
  }
  for (const auto& o : inv.overrides) map.apply_override(o);
  if (!inv.seed.empty()) map.set("seed", inv.seed);
  return map.resolve();
}

std::string header(std::string_view subcommand, const RunConfig& cfg) {
  return "# volest " + std::string(subcommand) + "\n" + echo_config(cfg);
}

constexpr std::string_view kQuadratureNote = "# integrals discretised by left-point sums\n";

void warn_clamps(Index clamps, std::ostream& err) {
  if (clamps > 0) err << "warning: positive-domain guard clamped " << clamps << " step(s)\n";
}

// Writes to <out_dir>/<name> when an output directory is set, else to `out`.
void emit(const Invocation& inv, std::string_view name, const std::string& text,
          std::ostream& out) {
  if (inv.out_dir.empty()) {
    out << text;
    return;
  }
  fs::create_directories(inv.out_dir);
  const fs::path file = fs::path(inv.out_dir) / name;
  std::ofstream os(file, std::ios::binary);
  if (!os) throw ConfigError("cannot write '" + file.string() + "'");
  os << text;
}

void require_valid(const RunConfig& cfg) {
  const auto report = validate_spec(cfg.spec);
  if (!report.ok()) throw ConfigError("model specification invalid:\n" + report.to_text());
}

EstimateResult estimate_path(const ModelSpec& spec, const PathPair& path) {
  return spec.linear() ? estimate_theta_linear(spec.sigma2, path) : estimate_theta(spec, path);
}

int cmd_simulate(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = load_config(inv);
  require_valid(cfg);
  const TimeGrid grid(cfg.T, cfg.h);
  const fs::path dir = inv.out_dir.empty() ? fs::path(".") : fs::path(inv.out_dir);
  fs::create_directories(dir);
  Index clamps = 0;
  for (Index i = 0; i < cfg.n_paths; ++i) {
    const PathPair path = simulate_pair(cfg.spec, grid, {cfg.seed, static_cast<std::uint64_t>(i)});
    clamps += path.clamp_count;
    std::ofstream os(dir / ("path_" + std::to_string(i) + ".csv"), std::ios::binary);
    if (!os) throw ConfigError("cannot write into '" + dir.string() + "'");
    os << header("simulate", cfg) << "# path_index=" << i << '\n';
    write_path_csv(os, path);
  }
  out << "wrote " << cfg.n_paths << " path(s) to " << dir.string() << '\n';
  warn_clamps(clamps, err);
  return kOk;
}

int cmd_estimate(const Invocation& inv, std::ostream& out) {
  const RunConfig cfg = load_config(inv);
  std::string text = header("estimate", cfg);
  text += kQuadratureNote;
  text += std::string(kEstimateHeader) + '\n';
  if (!inv.path_csv.empty()) {
    std::ifstream in(inv.path_csv);
    if (!in) throw ConfigError("cannot read path file '" + inv.path_csv + "'");
    const PathPair path = read_path_csv(in);
    text += estimate_csv_row(estimate_path(cfg.spec, path)) + '\n';
  } else {
    require_valid(cfg);
    const TimeGrid grid(cfg.T, cfg.h);
    for (Index i = 0; i < cfg.n_paths; ++i) {
      const PathPair path =
          simulate_pair(cfg.spec, grid, {cfg.seed, static_cast<std::uint64_t>(i)});
      text += estimate_csv_row(estimate_path(cfg.spec, path)) + '\n';
    }
  }
  emit(inv, "estimate.csv", text, out);
  return kOk;
}

int cmd_scale(const Invocation& inv, std::ostream& out) {
  const RunConfig cfg = load_config(inv);
  const ScaleReport report = classify_a6(cfg.spec.vol, cfg.spec.sigma2);
  out << report.to_text();
  if (!inv.table_path.empty()) {
    const auto r = parse_list(inv.range, "range");
    if (r.size() != 3 || r[2] < 2 || !(r[1] > r[0])) {
      throw ConfigError("--range expects lo,hi,n with hi > lo and n >= 2");
    }
    const auto n = static_cast<int>(r[2]);
    std::string csv = "y,rho,s\n";
    for (int i = 0; i < n; ++i) {
      const double y = r[0] + (r[1] - r[0]) * i / (n - 1);
      csv += format_fixed17(y) + ',' + format_fixed17(scale_density(cfg.spec.vol, report.c, y)) +
             ',' + format_fixed17(scale_function(cfg.spec.vol, report.c, y)) + '\n';
    }
    std::ofstream os(inv.table_path, std::ios::binary);
    if (!os) throw ConfigError("cannot write '" + inv.table_path + "'");
    os << csv;
  }
  return kOk;
}

int cmd_check(const Invocation& inv, std::ostream& out) {
  const RunConfig cfg = load_config(inv);
  const ValidationReport validation = validate_spec(cfg.spec);
  out << validation.to_text();
  const ScaleReport scale = classify_a6(cfg.spec.vol, cfg.spec.sigma2);
  out << scale.to_text();
  const double s = cfg.spec.sigma1(cfg.spec.x0) * cfg.spec.sigma2(cfg.spec.vol.y0());
  const double beta = cfg.spec.vol.diffusion(cfg.spec.vol.y0());
  if (std::abs(cfg.spec.rho) < 1.0 && s != 0.0 && beta != 0.0) {
    out << "ellipticity_margin_at_start: "
        << format_double(ellipticity_margin(std::abs(s), std::abs(beta), cfg.spec.rho)) << '\n';
  }
  return validation.ok() && scale.consistency_guaranteed ? kOk : kCheckFailed;
}

int cmd_table1(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = load_config(inv);
  const auto results = run_table1(cfg.effective_horizons(), cfg.h, cfg.n_paths, cfg.seed,
                                  cfg.spec.rho, threads_from_env());
  emit(inv, "table1.csv", header("table1", cfg) + std::string(kQuadratureNote) + table1_csv(results),
       out);
  bool flagged = false;
  for (const auto& r : results) {
    if (r.summary.clamp_count > 0) err << "config " << r.config.id << ": ";
    warn_clamps(r.summary.clamp_count, err);
    if (r.summary.flagged()) {
      err << "config " << r.config.id << ": more than 5% of paths failed\n";
      flagged = true;
    }
  }
  return flagged ? kNumericFailure : kOk;
}

int cmd_curve(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = load_config(inv);
  const McSummary summary = run_experiment(cfg.experiment(threads_from_env()));
  std::string text =
      header("curve", cfg) + std::string(kQuadratureNote) + "T,median_abs_error,n_ok\n";
  for (const auto& row : summary.rows) {
    text += format_double(row.T) + ',' + format_double(row.median_abs_error) + ',' +
            std::to_string(row.n_ok) + '\n';
  }
  emit(inv, "curve.csv", text, out);
  warn_clamps(summary.clamp_count, err);
  if (summary.flagged()) {
    err << "more than 5% of paths failed\n";
    return kNumericFailure;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulation and drift estimation for SDEs with multiplicative stochastic volatility",
               "volest"};
  app.require_subcommand(1);
  Invocation inv;

  auto common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", inv.config_path, "key=value configuration file");
    sub->add_option("--set", inv.overrides, "override a configuration key (key=value)");
    sub->add_option("-o,--out", inv.out_dir, "output directory");
    sub->add_option("--seed", inv.seed, "override the master seed");
    return sub;
  };
  auto* simulate = common(app.add_subcommand("simulate", "simulate paths and dump them as CSV"));
  auto* estimate = common(app.add_subcommand("estimate", "estimate theta from a path CSV or simulated paths"));
  estimate->add_option("--path", inv.path_csv, "observed path in t,x,y,dw CSV format");
  auto* scale = common(app.add_subcommand("scale", "scale function report and boundary classification"));
  scale->add_option("--table", inv.table_path, "write y,rho,s samples to this CSV file");
  scale->add_option("--range", inv.range, "sample range lo,hi,n for --table");
  auto* check = common(app.add_subcommand("check", "validate the model and its consistency conditions"));
  auto* table1 = common(app.add_subcommand("table1", "Monte-Carlo sweep over the built-in table configurations"));
  auto* curve = common(app.add_subcommand("curve", "median estimation error versus horizon"));

  std::vector<const char*> argv{"volest"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(inv, out, err);
    if (estimate->parsed()) return cmd_estimate(inv, out);
    if (scale->parsed()) return cmd_scale(inv, out);
    if (check->parsed()) return cmd_check(inv, out);
    if (table1->parsed()) return cmd_table1(inv, out, err);
    if (curve->parsed()) return cmd_curve(inv, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DegenerateVolatilityError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const NonFiniteStateError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const NoInformationError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const ExperimentError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const QuadratureError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace volest::cli
