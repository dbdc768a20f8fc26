#include "volest/coef.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <limits>
#include <numbers>
#include <vector>

#include "volest/errors.hpp"

namespace volest {

std::string_view to_string(Boundary b) {
  switch (b) {
    case Boundary::MinusInfinity:
      return "-inf";
    case Boundary::ZeroPlus:
      return "0+";
    case Boundary::PlusInfinity:
      return "+inf";
  }
  return "?";
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s, std::string_view context) {
  s = trim(s);
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError("invalid number '" + std::string(s) + "' in " + std::string(context));
  }
  return v;
}

std::vector<double> parse_args(std::string_view args, std::string_view context) {
  std::vector<double> out;
  args = trim(args);
  if (args.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto comma = args.find(',', start);
    out.push_back(parse_number(args.substr(start, comma - start), context));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// True if c + d*sin(y) vanishes somewhere in (l, r).
bool sin_shift_has_zero(double c, double d, double l, double r) {
  if (d == 0.0) return c == 0.0;
  const double s = -c / d;
  if (std::abs(s) > 1.0) return false;
  if (!std::isfinite(l) || !std::isfinite(r)) return true;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (double root : {std::asin(s), std::numbers::pi - std::asin(s)}) {
    double k = std::ceil((l - root) / two_pi);
    double y = root + k * two_pi;
    if (y <= l) y += two_pi;
    if (y < r) return true;
  }
  return false;
}

LocalProfile undefined(std::string reason) {
  return {false, false, false, std::move(reason)};
}

LocalProfile non_integrable(std::string reason) {
  return {true, true, false, std::move(reason)};
}

bool interior(double z, double l, double r) { return l < z && z < r; }

}  // namespace

CoefFn CoefFn::parse(std::string_view text) {
  const std::string_view src = trim(text);
  std::string_view name = src;
  std::string_view args;
  if (auto open = src.find('('); open != std::string_view::npos) {
    if (src.back() != ')') throw ConfigError("missing ')' in coefficient '" + std::string(src) + "'");
    name = trim(src.substr(0, open));
    args = src.substr(open + 1, src.size() - open - 2);
  }
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  const auto p = parse_args(args, src);
  auto need = [&](std::size_t n) {
    if (p.size() != n) {
      throw ConfigError("coefficient '" + key + "' expects " + std::to_string(n) +
                        " parameter(s), got " + std::to_string(p.size()));
    }
  };
  if (key == "identity") {
    need(0);
    return identity();
  }
  if (key == "constant") {
    need(1);
    return coef::Constant{p[0]};
  }
  if (key == "linear") {
    need(2);
    return coef::Linear{p[0], p[1]};
  }
  if (key == "power") {
    need(2);
    return coef::Power{p[0], p[1]};
  }
  if (key == "sqrtabs") {
    need(1);
    return coef::SqrtAbs{p[0]};
  }
  if (key == "reciprocal1p") {
    need(1);
    return coef::Reciprocal1p{p[0]};
  }
  if (key == "sinshift") {
    need(2);
    return coef::SinShift{p[0], p[1]};
  }
  if (key == "meanrev") {
    need(2);
    return coef::AffineMeanRev{p[0], p[1]};
  }
  if (key == "sqrty") {
    need(1);
    return coef::SqrtY{p[0]};
  }
  throw ConfigError("unknown coefficient kind '" + key + "'");
}

std::string_view CoefFn::kind_name() const {
  return std::visit(
      [](const auto& f) -> std::string_view {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, coef::Constant>) return "constant";
        else if constexpr (std::is_same_v<F, coef::Linear>) return "linear";
        else if constexpr (std::is_same_v<F, coef::Power>) return "power";
        else if constexpr (std::is_same_v<F, coef::SqrtAbs>) return "sqrtabs";
        else if constexpr (std::is_same_v<F, coef::Reciprocal1p>) return "reciprocal1p";
        else if constexpr (std::is_same_v<F, coef::SinShift>) return "sinshift";
        else if constexpr (std::is_same_v<F, coef::AffineMeanRev>) return "meanrev";
        else return "sqrty";
      },
      v_);
}

std::string CoefFn::to_string() const {
  std::string out(kind_name());
  out += '(';
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        auto add = [&](double v, bool first) {
          if (!first) out += ',';
          out += format_double(v);
        };
        if constexpr (std::is_same_v<F, coef::Linear>) {
          add(f.m, true), add(f.b, false);
        } else if constexpr (std::is_same_v<F, coef::Power>) {
          add(f.c, true), add(f.p, false);
        } else if constexpr (std::is_same_v<F, coef::SinShift>) {
          add(f.c, true), add(f.d, false);
        } else if constexpr (std::is_same_v<F, coef::AffineMeanRev>) {
          add(f.a, true), add(f.b, false);
        } else {
          add(f.c, true);
        }
      },
      v_);
  out += ')';
  return out;
}

bool CoefFn::in_domain(double y) const {
  if (!std::isfinite(y)) return false;
  if (const auto* f = std::get_if<coef::Power>(&v_)) return !(f->p < 0.0 && y == 0.0);
  if (std::holds_alternative<coef::Reciprocal1p>(v_)) return y != -1.0;
  if (std::holds_alternative<coef::SqrtY>(v_)) return y >= 0.0;
  return true;
}

bool CoefFn::is_identity() const {
  if (const auto* f = std::get_if<coef::Linear>(&v_)) return f->m == 1.0 && f->b == 0.0;
  return false;
}

bool CoefFn::is_constant() const {
  return std::visit(
      [](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, coef::Constant>) return true;
        else if constexpr (std::is_same_v<F, coef::Linear>) return f.m == 0.0;
        else if constexpr (std::is_same_v<F, coef::Power>) return f.p == 0.0 || f.c == 0.0;
        else if constexpr (std::is_same_v<F, coef::SinShift>) return f.d == 0.0;
        else if constexpr (std::is_same_v<F, coef::AffineMeanRev>) return f.a == 0.0;
        else return f.c == 0.0;
      },
      v_);
}

TailBehavior CoefFn::tail(Boundary b) const {
  const bool at_infinity = b != Boundary::ZeroPlus;
  return std::visit(
      [&](const auto& f) -> TailBehavior {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, coef::Constant>) {
          return f.c != 0.0 ? TailBehavior::power(0.0) : TailBehavior::unknown();
        } else if constexpr (std::is_same_v<F, coef::Linear> ||
                             std::is_same_v<F, coef::AffineMeanRev>) {
          double m, c0;
          if constexpr (std::is_same_v<F, coef::Linear>) {
            m = f.m, c0 = f.b;
          } else {
            m = -f.a, c0 = f.a * f.b;
          }
          if (m == 0.0) return c0 != 0.0 ? TailBehavior::power(0.0) : TailBehavior::unknown();
          if (at_infinity) return TailBehavior::power(1.0);
          return c0 != 0.0 ? TailBehavior::power(0.0) : TailBehavior::power(1.0);
        } else if constexpr (std::is_same_v<F, coef::Power>) {
          return f.c != 0.0 ? TailBehavior::power(f.p) : TailBehavior::unknown();
        } else if constexpr (std::is_same_v<F, coef::SqrtAbs>) {
          return f.c != 0.0 ? TailBehavior::power(0.5) : TailBehavior::unknown();
        } else if constexpr (std::is_same_v<F, coef::Reciprocal1p>) {
          if (f.c == 0.0) return TailBehavior::unknown();
          return at_infinity ? TailBehavior::power(-1.0) : TailBehavior::power(0.0);
        } else if constexpr (std::is_same_v<F, coef::SinShift>) {
          if (at_infinity) {
            // Oscillates through zero when |d| >= |c|: no power-law asymptotics.
            return std::abs(f.d) < std::abs(f.c) ? TailBehavior::bounded() : TailBehavior::unknown();
          }
          if (f.c != 0.0) return TailBehavior::power(0.0);
          return f.d != 0.0 ? TailBehavior::power(1.0) : TailBehavior::unknown();
        } else {
          if (f.c == 0.0 || b == Boundary::MinusInfinity) return TailBehavior::unknown();
          return TailBehavior::power(0.5);
        }
      },
      v_);
}

LocalProfile CoefFn::local_profile(double l, double r) const {
  return std::visit(
      [&](const auto& f) -> LocalProfile {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, coef::Constant>) {
          if (f.c == 0.0) return non_integrable("identically zero");
          return {};
        } else if constexpr (std::is_same_v<F, coef::Linear> ||
                             std::is_same_v<F, coef::AffineMeanRev>) {
          double m, c0;
          if constexpr (std::is_same_v<F, coef::Linear>) {
            m = f.m, c0 = f.b;
          } else {
            m = -f.a, c0 = f.a * f.b;
          }
          if (m == 0.0) {
            if (c0 == 0.0) return non_integrable("identically zero");
            return {};
          }
          const double zero = -c0 / m;
          if (interior(zero, l, r)) {
            return non_integrable("simple zero at y=" + format_double(zero));
          }
          return {};
        } else if constexpr (std::is_same_v<F, coef::Power> || std::is_same_v<F, coef::SqrtAbs>) {
          double c, p;
          if constexpr (std::is_same_v<F, coef::Power>) {
            c = f.c, p = f.p;
          } else {
            c = f.c, p = 0.5;
          }
          if (c == 0.0) return non_integrable("identically zero");
          if (!interior(0.0, l, r) || p == 0.0) return {};
          if (p < 0.0) return undefined("pole at y=0");
          // |y|^(-2p) is integrable at 0 iff 2p < 1
          if (2.0 * p >= 1.0) return non_integrable("zero of order " + format_double(p) + " at y=0");
          return {};
        } else if constexpr (std::is_same_v<F, coef::Reciprocal1p>) {
          if (f.c == 0.0) return non_integrable("identically zero");
          if (interior(-1.0, l, r)) return undefined("pole at y=-1");
          return {};
        } else if constexpr (std::is_same_v<F, coef::SinShift>) {
          if (sin_shift_has_zero(f.c, f.d, l, r)) return non_integrable("vanishes inside the domain");
          return {};
        } else {
          if (l < 0.0) return undefined("sqrt(y) undefined for y<0");
          if (f.c == 0.0) return non_integrable("identically zero");
          return {};
        }
      },
      v_);
}

}  // namespace volest
