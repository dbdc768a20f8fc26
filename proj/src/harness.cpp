#include "volest/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "volest/errors.hpp"
#include "volest/estimate.hpp"
#include "volest/numeric.hpp"
#include "volest/simulate.hpp"

namespace volest {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double median(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lower + upper);
}

unsigned worker_count(unsigned requested, Index n_paths) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<Index>(n, n_paths));
}

}  // namespace

bool McSummary::flagged() const {
  return std::any_of(rows.begin(), rows.end(), [](const HorizonSummary& r) {
    return static_cast<double>(r.n_fail) > 0.05 * static_cast<double>(r.n_ok + r.n_fail);
  });
}

void validate_experiment(const ExperimentConfig& config) {
  if (config.n_paths < 2) throw ConfigError("n_paths must be >= 2");
  if (config.horizons.empty()) throw ConfigError("at least one horizon is required");
  for (std::size_t i = 0; i < config.horizons.size(); ++i) {
    TimeGrid(config.horizons[i], config.h);  // throws if h does not divide T
    if (i > 0 && !(config.horizons[i] > config.horizons[i - 1])) {
      throw ConfigError("horizons must be strictly increasing");
    }
  }
  const auto report = validate_spec(config.spec);
  if (!report.ok()) throw ConfigError("model specification invalid:\n" + report.to_text());
}

Eigen::MatrixXd collect_estimates(const ExperimentConfig& config, Index* clamp_count) {
  validate_experiment(config);
  const TimeGrid grid(config.horizons.back(), config.h);
  std::vector<Index> steps;
  for (double T : config.horizons) steps.push_back(TimeGrid(T, config.h).steps());

  Eigen::MatrixXd out(config.n_paths, static_cast<Index>(config.horizons.size()));
  std::vector<Index> clamps(static_cast<std::size_t>(config.n_paths), 0);
  std::atomic<Index> next{0};
  std::exception_ptr fatal;
  std::mutex fatal_mutex;

  auto worker = [&] {
    for (Index i = next++; i < config.n_paths; i = next++) {
      try {
        const PathPair path =
            simulate_pair(config.spec, grid, NoiseStream{config.master_seed, static_cast<std::uint64_t>(i)});
        clamps[static_cast<std::size_t>(i)] = path.clamp_count;
        for (std::size_t j = 0; j < steps.size(); ++j) {
          double value = kNaN;
          try {
            value = config.spec.linear()
                        ? estimate_theta_linear(config.spec.sigma2, path, steps[j]).theta_hat
                        : estimate_theta(config.spec, path, steps[j]).theta_hat;
          } catch (const DegenerateVolatilityError&) {
          } catch (const NoInformationError&) {
          }
          out(i, static_cast<Index>(j)) = std::isfinite(value) ? value : kNaN;
        }
      } catch (const NonFiniteStateError&) {
        out.row(i).setConstant(kNaN);
      } catch (...) {
        std::lock_guard lock(fatal_mutex);
        if (!fatal) fatal = std::current_exception();
        next = config.n_paths;
      }
    }
  };

  const unsigned n_workers = worker_count(config.threads, config.n_paths);
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }
  if (fatal) std::rethrow_exception(fatal);
  if (clamp_count) {
    *clamp_count = 0;
    for (Index c : clamps) *clamp_count += c;
  }
  return out;
}

McSummary summarize(const ExperimentConfig& config, const Eigen::MatrixXd& estimates) {
  McSummary summary;
  for (Index j = 0; j < estimates.cols(); ++j) {
    std::vector<double> ok;
    for (Index i = 0; i < estimates.rows(); ++i) {
      if (std::isfinite(estimates(i, j))) ok.push_back(estimates(i, j));
    }
    HorizonSummary row{config.horizons[static_cast<std::size_t>(j)], kNaN, kNaN, kNaN,
                       static_cast<Index>(ok.size()), estimates.rows() - static_cast<Index>(ok.size())};
    if (!ok.empty()) {
      const double n = static_cast<double>(ok.size());
      row.mean = pairwise_sum(ok) / n;
      std::vector<double> work(ok.size());
      for (std::size_t i = 0; i < ok.size(); ++i) work[i] = (ok[i] - row.mean) * (ok[i] - row.mean);
      if (ok.size() >= 2) row.std = std::sqrt(pairwise_sum(work) / (n - 1.0));
      for (std::size_t i = 0; i < ok.size(); ++i) work[i] = std::abs(ok[i] - config.spec.theta);
      row.median_abs_error = median(work);
    }
    summary.rows.push_back(row);
  }
  return summary;
}

McSummary run_experiment(const ExperimentConfig& config) {
  Index clamps = 0;
  const Eigen::MatrixXd estimates = collect_estimates(config, &clamps);
  McSummary summary = summarize(config, estimates);
  summary.clamp_count = clamps;
  for (const auto& row : summary.rows) {
    if (row.n_ok == 0) {
      throw ExperimentError("every path failed at T=" + format_double(row.T));
    }
  }
  return summary;
}

std::vector<CurvePoint> consistency_curve(const ExperimentConfig& config) {
  const McSummary summary = run_experiment(config);
  std::vector<CurvePoint> curve;
  for (const auto& row : summary.rows) curve.push_back({row.T, row.median_abs_error, row.n_ok});
  return curve;
}

std::vector<Table1Config> table1_configs(double rho) {
  auto spec = [rho](VolatilityModel vol, CoefFn sigma2) {
    ModelSpec s;
    s.theta = 2.0;
    s.vol = vol;
    s.sigma2 = sigma2;
    s.x0 = 1.0;
    s.rho = rho;
    return s;
  };
  return {
      {1, "1", "1", "|y|^(1/4)", spec(VolatilityModel::bachelier(1, 1, 1), coef::Power{1, 0.25}),
       {1.9455, 1.9431, 1.9711, 1.9762}, {0.4260, 0.2576, 0.2367, 0.2022}},
      {2, "y", "2y", "sqrt(y)", spec(VolatilityModel::gbm(1, 2, 1), coef::SqrtY{1}),
       {2.0104, 2.0000, 2.0000, 2.0000}, {0.1225, 5.7e-5, 4.7e-8, 1.6e-14}},
      {3, "y", "y", "1/(1+y)", spec(VolatilityModel::gbm(1, 1, 1), coef::Reciprocal1p{1}),
       {2.0008, 2.0001, 2.0000, 2.0000}, {0.0769, 0.0010, 2.2e-12, 1.4e-14}},
      {4, "y", "1", "2+sin(y)", spec(VolatilityModel::vasicek(-1, 0, 1, 1), coef::SinShift{2, 1}),
       {1.9358, 1.9819, 1.9927, 1.9939}, {0.5436, 0.2437, 0.1679, 0.1077}},
      {5, "-y", "1", "2+sin(y)", spec(VolatilityModel::vasicek(1, 0, 1, 1), coef::SinShift{2, 1}),
       {1.9061, 1.9684, 1.9700, 1.9786}, {0.5994, 0.2472, 0.1781, 0.1254}},
      {6, "2-y", "sqrt(y)", "sqrt(y)", spec(VolatilityModel::cir(1, 2, 1, 1), coef::SqrtY{1}),
       {1.9923, 2.0039, 1.9796, 1.9872}, {0.3540, 0.1604, 0.1173, 0.0782}},
      {7, "2-y", "sqrt(y)", "y", spec(VolatilityModel::cir(1, 2, 1, 1), coef::Linear{1, 0}),
       {2.0830, 1.9835, 1.9803, 1.9886}, {0.4347, 0.1974, 0.1205, 0.0840}},
  };
}

std::vector<Table1Result> run_table1(const std::vector<double>& horizons, double h, Index n_paths,
                                     std::uint64_t master_seed, double rho, unsigned threads) {
  std::vector<Table1Result> results;
  for (auto& cfg : table1_configs(rho)) {
    ExperimentConfig exp{cfg.spec, horizons, h, n_paths, master_seed, threads};
    McSummary summary = run_experiment(exp);
    results.push_back({std::move(cfg), std::move(summary)});
  }
  return results;
}

std::string table1_csv(const std::vector<Table1Result>& results) {
  std::string out = "config_id,alpha,beta,sigma2,T,mean,std,n_ok,n_fail\n";
  for (const auto& r : results) {
    for (const auto& row : r.summary.rows) {
      out += std::to_string(r.config.id) + ',' + r.config.alpha_label + ',' + r.config.beta_label +
             ',' + r.config.sigma2_label + ',' + format_double(row.T) + ',' +
             format_double(row.mean) + ',' + format_double(row.std) + ',' +
             std::to_string(row.n_ok) + ',' + std::to_string(row.n_fail) + '\n';
    }
  }
  return out;
}

}  // namespace volest
