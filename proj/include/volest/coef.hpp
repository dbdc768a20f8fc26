#pragma once

// Closed catalog of scalar coefficient functions.
//
// Every member carries symbolic asymptotics at the boundaries of the state
// domains used by the volatility models (-inf, 0+, +inf) together with its
// interior profile on an interval, so boundary integrability questions can be
// decided without numeric integration.

#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>

namespace volest {

enum class Boundary { MinusInfinity, ZeroPlus, PlusInfinity };

std::string_view to_string(Boundary b);

// f(y) ~ C |y|^exponent near a boundary, C != 0.
struct TailBehavior {
  enum class Kind {
    PowerLaw,
    BoundedAwayFromZero,  // 0 < m <= |f| <= M near the boundary
    Unknown,
  };
  Kind kind = Kind::Unknown;
  double exponent = 0.0;

  static TailBehavior power(double p) { return {Kind::PowerLaw, p}; }
  static TailBehavior bounded() { return {Kind::BoundedAwayFromZero, 0.0}; }
  static TailBehavior unknown() { return {}; }

  bool known() const { return kind != Kind::Unknown; }
  // Exponent usable in power-law comparisons; bounded-away counts as 0.
  double effective_exponent() const { return kind == Kind::PowerLaw ? exponent : 0.0; }
};

// Behaviour of a coefficient on the open interval (l, r).
struct LocalProfile {
  bool defined = true;          // evaluable at every point of (l, r)
  bool locally_bounded = true;  // bounded on compact subsets
  bool inverse_square_locally_integrable = true;
  std::string reason;  // first violated property, if any
};

namespace coef {

struct Constant {
  double c;
  bool operator==(const Constant&) const = default;
};
// m*y + b
struct Linear {
  double m, b;
  bool operator==(const Linear&) const = default;
};
// c*|y|^p
struct Power {
  double c, p;
  bool operator==(const Power&) const = default;
};
// c*sqrt(|y|)
struct SqrtAbs {
  double c;
  bool operator==(const SqrtAbs&) const = default;
};
// c/(1+y)
struct Reciprocal1p {
  double c;
  bool operator==(const Reciprocal1p&) const = default;
};
// c + d*sin(y)
struct SinShift {
  double c, d;
  bool operator==(const SinShift&) const = default;
};
// a*(b - y)
struct AffineMeanRev {
  double a, b;
  bool operator==(const AffineMeanRev&) const = default;
};
// c*sqrt(y), y >= 0
struct SqrtY {
  double c;
  bool operator==(const SqrtY&) const = default;
};

}  // namespace coef

class CoefFn {
 public:
  using Variant = std::variant<coef::Constant, coef::Linear, coef::Power, coef::SqrtAbs,
                               coef::Reciprocal1p, coef::SinShift, coef::AffineMeanRev,
                               coef::SqrtY>;

  CoefFn() : v_(coef::Constant{1.0}) {}
  template <typename Alt>
    requires std::is_constructible_v<Variant, Alt>
  CoefFn(Alt alt) : v_(std::move(alt)) {}

  static CoefFn constant(double c) { return coef::Constant{c}; }
  static CoefFn identity() { return coef::Linear{1.0, 0.0}; }

  // Parses `kind(p1,p2,...)`; throws ConfigError.
  static CoefFn parse(std::string_view text);
  // Inverse of parse; shortest round-trip number formatting.
  std::string to_string() const;
  std::string_view kind_name() const;

  const Variant& variant() const { return v_; }
  bool operator==(const CoefFn&) const = default;

  bool in_domain(double y) const;

  template <typename Scalar>
  Scalar operator()(Scalar y) const {
    using std::abs, std::pow, std::sin, std::sqrt;
    return std::visit(
        [&](const auto& f) -> Scalar {
          using F = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<F, coef::Constant>) {
            return Scalar(f.c);
          } else if constexpr (std::is_same_v<F, coef::Linear>) {
            return Scalar(f.m) * y + Scalar(f.b);
          } else if constexpr (std::is_same_v<F, coef::Power>) {
            return Scalar(f.c) * pow(abs(y), Scalar(f.p));
          } else if constexpr (std::is_same_v<F, coef::SqrtAbs>) {
            return Scalar(f.c) * sqrt(abs(y));
          } else if constexpr (std::is_same_v<F, coef::Reciprocal1p>) {
            return Scalar(f.c) / (Scalar(1) + y);
          } else if constexpr (std::is_same_v<F, coef::SinShift>) {
            return Scalar(f.c) + Scalar(f.d) * sin(y);
          } else if constexpr (std::is_same_v<F, coef::AffineMeanRev>) {
            return Scalar(f.a) * (Scalar(f.b) - y);
          } else {
            return Scalar(f.c) * sqrt(y);
          }
        },
        v_);
  }

  // Time-dependent signature; every catalog member is time-homogeneous.
  template <typename Scalar>
  Scalar operator()(Scalar /*t*/, Scalar y) const {
    return (*this)(y);
  }

  TailBehavior tail(Boundary b) const;
  LocalProfile local_profile(double l, double r) const;

  bool is_identity() const;
  bool is_constant() const;

 private:
  Variant v_;
};

// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

}  // namespace volest
