#include "volest/config.hpp"

#include <algorithm>
#include <charconv>

#include "volest/errors.hpp"

namespace volest {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double to_double(std::string_view s, std::string_view key) {
  s = trim(s);
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError("key '" + std::string(key) + "': invalid number '" + std::string(s) + "'");
  }
  return v;
}

template <typename Int>
Int to_integer(std::string_view s, std::string_view key) {
  s = trim(s);
  Int v{};
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ConfigError("key '" + std::string(key) + "': invalid integer '" + std::string(s) + "'");
  }
  return v;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_double(v[i]);
  }
  return out;
}

CoefFn to_coef(std::string_view s, std::string_view key) {
  try {
    return CoefFn::parse(s);
  } catch (const ConfigError& e) {
    throw ConfigError("key '" + std::string(key) + "': " + e.what());
  }
}

}  // namespace

std::vector<double> parse_list(std::string_view text, std::string_view key) {
  std::vector<double> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(to_double(text.substr(start, comma - start), key));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<double> RunConfig::effective_horizons() const {
  return horizons.empty() ? std::vector<double>{T} : horizons;
}

ExperimentConfig RunConfig::experiment(unsigned threads) const {
  return {spec, effective_horizons(), h, n_paths, seed, threads};
}

const std::vector<std::string>& ConfigMap::keys() {
  static const std::vector<std::string> k{"theta", "a",  "sigma1", "sigma2", "vol.kind",
                                          "vol.params", "y0", "x0", "rho", "T",
                                          "h", "horizons", "n_paths", "seed"};
  return k;
}

void ConfigMap::set(std::string_view key, std::string_view value) {
  key = trim(key);
  const auto& k = keys();
  if (std::find(k.begin(), k.end(), key) == k.end()) {
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  }
  values_[std::string(key)] = std::string(trim(value));
}

void ConfigMap::apply_override(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("override '" + std::string(assignment) + "' is not key=value");
  }
  set(assignment.substr(0, eq), assignment.substr(eq + 1));
}

void ConfigMap::merge_text(std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
    }
    try {
      set(line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

RunConfig ConfigMap::resolve() const {
  auto get = [&](std::string_view key, std::string_view fallback) -> std::string_view {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : std::string_view(it->second);
  };
  RunConfig cfg;
  cfg.spec.theta = to_double(get("theta", "2"), "theta");
  cfg.spec.a = to_coef(get("a", "identity"), "a");
  cfg.spec.sigma1 = to_coef(get("sigma1", "identity"), "sigma1");
  cfg.spec.sigma2 = to_coef(get("sigma2", "constant(1)"), "sigma2");
  const VolKind kind = parse_vol_kind(get("vol.kind", "bachelier"));
  const auto params = parse_list(get("vol.params", "0,1"), "vol.params");
  const double y0 = to_double(get("y0", "1"), "y0");
  cfg.spec.vol = VolatilityModel(kind, params, y0);
  cfg.spec.x0 = to_double(get("x0", "1"), "x0");
  cfg.spec.rho = to_double(get("rho", "0"), "rho");
  cfg.T = to_double(get("T", "10"), "T");
  cfg.h = to_double(get("h", "0.001"), "h");
  cfg.horizons = parse_list(get("horizons", ""), "horizons");
  cfg.n_paths = to_integer<Index>(get("n_paths", "100"), "n_paths");
  cfg.seed = to_integer<std::uint64_t>(get("seed", "1"), "seed");
  if (cfg.n_paths < 1) throw ConfigError("key 'n_paths': must be >= 1");
  if (!(std::abs(cfg.spec.rho) <= 1.0)) throw ConfigError("key 'rho': |rho| must be <= 1");
  for (double T : cfg.effective_horizons()) TimeGrid(T, cfg.h);
  return cfg;
}

RunConfig parse_config(std::string_view text) {
  ConfigMap map;
  map.merge_text(text);
  return map.resolve();
}

std::string echo_config(const RunConfig& c, std::string_view prefix) {
  std::string out;
  auto line = [&](std::string_view key, const std::string& value) {
    out += prefix;
    out += key;
    out += '=';
    out += value;
    out += '\n';
  };
  const auto p = c.spec.vol.params();
  line("theta", format_double(c.spec.theta));
  line("a", c.spec.a.to_string());
  line("sigma1", c.spec.sigma1.to_string());
  line("sigma2", c.spec.sigma2.to_string());
  line("vol.kind", std::string(to_string(c.spec.vol.kind())));
  line("vol.params", join({p.begin(), p.end()}));
  line("y0", format_double(c.spec.vol.y0()));
  line("x0", format_double(c.spec.x0));
  line("rho", format_double(c.spec.rho));
  line("T", format_double(c.T));
  line("h", format_double(c.h));
  line("horizons", join(c.horizons));
  line("n_paths", std::to_string(c.n_paths));
  line("seed", std::to_string(c.seed));
  return out;
}

}  // namespace volest
