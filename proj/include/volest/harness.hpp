#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "volest/models.hpp"

namespace volest {

struct ExperimentConfig {
  ModelSpec spec;
  std::vector<double> horizons;  // strictly increasing
  double h = 1e-3;
  Index n_paths = 100;
  std::uint64_t master_seed = 1;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct HorizonSummary {
  double T;
  double mean;
  double std;  // sample standard deviation, n-1 denominator
  double median_abs_error;
  Index n_ok;
  Index n_fail;
};

struct McSummary {
  std::vector<HorizonSummary> rows;  // one per horizon, ascending T
  Index clamp_count = 0;             // positive-domain guard activations over all paths

  // More than 5% of paths failed at some horizon.
  bool flagged() const;
};

// Throws ConfigError on an invalid configuration.
void validate_experiment(const ExperimentConfig& config);

// theta_hat for every (path, horizon); NaN marks a path that tripped a guard.
// Each path is simulated once to the largest horizon and estimated on
// prefixes, so path i at horizon T is a pure function of (seed, i, T).
Eigen::MatrixXd collect_estimates(const ExperimentConfig& config, Index* clamp_count = nullptr);

McSummary summarize(const ExperimentConfig& config, const Eigen::MatrixXd& estimates);

// Throws ExperimentError when some horizon has no successful path.
McSummary run_experiment(const ExperimentConfig& config);

struct CurvePoint {
  double T;
  double median_abs_error;  // median over paths of |theta_hat_T - theta|
  Index n_ok;
};

std::vector<CurvePoint> consistency_curve(const ExperimentConfig& config);

// The seven volatility configurations of the reference Monte-Carlo table,
// with x0 = y0 = 1 and theta = 2, plus the published means and standard
// deviations at T = 10, 50, 100, 200.
struct Table1Config {
  int id;
  std::string alpha_label;
  std::string beta_label;
  std::string sigma2_label;
  ModelSpec spec;
  std::array<double, 4> reference_mean;
  std::array<double, 4> reference_std;
};

inline constexpr std::array<double, 4> kTable1Horizons{10.0, 50.0, 100.0, 200.0};

std::vector<Table1Config> table1_configs(double rho = 0.0);

struct Table1Result {
  Table1Config config;
  McSummary summary;
};

std::vector<Table1Result> run_table1(const std::vector<double>& horizons, double h, Index n_paths,
                                     std::uint64_t master_seed, double rho, unsigned threads);

// Header `config_id,alpha,beta,sigma2,T,mean,std,n_ok,n_fail`.
std::string table1_csv(const std::vector<Table1Result>& results);

}  // namespace volest
