#pragma once

#include <charconv>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

#include "costmc/rational.hpp"

namespace costmc {

// Every instance fixes one scalar mode: double (tolerance-based tests) or
// Rational (every comparison exact, no tolerance anywhere).
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool is_exact = false;
  static constexpr const char* mode_name = "float";
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool is_exact = true;
  static constexpr const char* mode_name = "rational";
};

template <class S>
inline constexpr bool is_exact_scalar_v = scalar_traits<S>::is_exact;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.to_double(); }

// Shortest round-trip representation; reparsing yields the same double.
inline std::string format_scalar(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

inline std::string format_scalar(const Rational& x) {
  std::string s = x.numerator().str();
  if (!x.is_integer()) {
    s += '/';
    s += x.denominator().str();
  }
  return s;
}

template <class S>
std::optional<S> try_parse_scalar(std::string_view text);

template <>
inline std::optional<double> try_parse_scalar<double>(std::string_view text) {
  double value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

template <>
inline std::optional<Rational> try_parse_scalar<Rational>(std::string_view text) {
  return try_parse_rational(text);
}

// Float-mode tolerance for independence tests and numerical rank; rational
// mode ignores it. Overridable via --tol and the COSTMC_TOL environment
// variable.
struct Tolerance {
  double tau = 1e-8;

  static Tolerance from_environment() {
    Tolerance tol;
    if (const char* env = std::getenv("COSTMC_TOL")) {
      if (auto v = try_parse_scalar<double>(env); v && *v > 0) tol.tau = *v;
    }
    return tol;
  }
};

}  // namespace costmc
