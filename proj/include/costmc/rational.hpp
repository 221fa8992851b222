#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Core>

#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

namespace costmc {

// Exact rational scalar for the exact arithmetic mode.
//
// Thin wrapper over boost::multiprecision::cpp_rational with constructors
// restricted to integral types: the unconstrained converting constructors of
// the boost number type hard-error when Eigen probes convertibility of its
// expression types, so Eigen matrices must never see the boost type directly.
class Rational {
 public:
  using rep_type = boost::multiprecision::cpp_rational;
  using int_type = boost::multiprecision::cpp_int;

  Rational() = default;
  template <std::integral I>
  Rational(I value) : v_(value) {}
  template <std::integral I>
  Rational(I num, I den) : v_(int_type(num), int_type(den)) {}
  Rational(int_type num, int_type den) : v_(std::move(num), std::move(den)) {}
  explicit Rational(rep_type v) : v_(std::move(v)) {}

  const rep_type& rep() const { return v_; }
  int_type numerator() const { return boost::multiprecision::numerator(v_); }
  int_type denominator() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_.is_zero(); }
  bool is_integer() const { return denominator() == 1; }
  int sign() const { return v_.sign(); }
  double to_double() const { return v_.convert_to<double>(); }

  Rational operator-() const { return Rational(-v_); }
  Rational operator+() const { return *this; }

  Rational& operator+=(const Rational& o) {
    v_ += o.v_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    v_ -= o.v_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    v_ *= o.v_;
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
  friend Rational operator/(const Rational& a, const Rational& b) { return Rational(a.v_ / b.v_); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return a.v_.compare(b.v_) <=> 0;
  }

  friend Rational abs(const Rational& a) {
    return a.sign() < 0 ? Rational(-a.v_) : a;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& a) { return os << a.v_; }

 private:
  rep_type v_;
};

// Accepts integers ("-3"), fractions ("7/25"), and decimals with an optional
// exponent ("0.04", "2.5e-3"); all map to an exact rational.
inline std::optional<Rational> try_parse_rational(std::string_view text) {
  using int_type = Rational::int_type;

  auto parse_int = [](std::string_view s) -> std::optional<int_type> {
    if (s.empty()) return std::nullopt;
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
      neg = s[0] == '-';
      i = 1;
    }
    if (i == s.size()) return std::nullopt;
    int_type value = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return std::nullopt;
      value = value * 10 + (s[i] - '0');
    }
    return neg ? -value : value;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_int(text.substr(0, slash));
    auto den = parse_int(text.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    return Rational(std::move(*num), std::move(*den));
  }

  std::string_view mantissa = text;
  long exponent10 = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    auto exp = parse_int(text.substr(e + 1));
    if (!exp || *exp > 1000 || *exp < -1000) return std::nullopt;
    exponent10 = exp->convert_to<long>();
    mantissa = text.substr(0, e);
  }

  std::string digits;
  long frac_len = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    digits.append(mantissa.substr(0, dot));
    digits.append(mantissa.substr(dot + 1));
    frac_len = static_cast<long>(mantissa.size() - dot - 1);
    if (frac_len == 0) return std::nullopt;
  } else {
    digits.assign(mantissa);
  }
  auto value = parse_int(digits);
  if (!value) return std::nullopt;

  int_type den = 1;
  long down = frac_len - exponent10;
  for (long k = 0; k < down; ++k) den *= 10;
  int_type num = std::move(*value);
  for (long k = 0; k < -down; ++k) num *= 10;
  return Rational(std::move(num), std::move(den));
}

}  // namespace costmc

namespace Eigen {

template <>
struct NumTraits<costmc::Rational> : GenericNumTraits<costmc::Rational> {
  using Real = costmc::Rational;
  using NonInteger = costmc::Rational;
  using Nested = costmc::Rational;
  using Literal = long long;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 60,
    MulCost = 60,
  };

  static costmc::Rational epsilon() { return costmc::Rational(0); }
  static costmc::Rational dummy_precision() { return costmc::Rational(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen
