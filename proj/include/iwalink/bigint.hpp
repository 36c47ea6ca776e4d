#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "iwalink/error.hpp"

namespace iwalink {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

inline void require_prime(std::int64_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
}

inline Integer ipow(std::int64_t base, std::uint64_t exp) {
  Integer r;
  Integer b(static_cast<long>(base));
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), exp);
  return r;
}

inline std::int64_t ipow64(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

/// p-adic valuation of a nonzero integer.
inline std::int64_t valuation(const Integer& x, std::int64_t p) {
  if (x == 0) throw Error(ErrorKind::InvalidArgument, "valuation of zero");
  Integer tmp;
  Integer pp(static_cast<long>(p));
  return static_cast<std::int64_t>(mpz_remove(tmp.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t()));
}

/// Splits x = p^v * u with p not dividing u; x must be nonzero.
inline std::pair<std::int64_t, Integer> split_p_part(const Integer& x, std::int64_t p) {
  Integer u;
  Integer pp(static_cast<long>(p));
  auto v = static_cast<std::int64_t>(mpz_remove(u.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t()));
  return {v, u};
}

/// Non-negative residue of x modulo m (m > 0).
inline Integer mod_floor(const Integer& x, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline std::int64_t mod_floor(std::int64_t x, std::int64_t m) {
  std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

/// Decimal string with an optional leading '-' (ASCII or U+2212 on input).
inline Integer parse_integer(std::string_view text) {
  std::string s(text);
  static const std::string unicode_minus = "\xE2\x88\x92";
  if (s.rfind(unicode_minus, 0) == 0) s = "-" + s.substr(unicode_minus.size());
  if (!s.empty() && s[0] == '+') s = s.substr(1);
  const auto digits = (!s.empty() && s[0] == '-') ? std::string_view(s).substr(1) : std::string_view(s);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos) {
    throw Error(ErrorKind::ParseError, "not a decimal integer: '" + std::string(text) + "'");
  }
  return Integer(s, 10);
}

inline std::string to_decimal(const Integer& x) { return x.get_str(10); }

inline std::string to_decimal(const Rational& x) {
  Rational c(x);
  c.canonicalize();
  return c.get_str(10);
}

inline Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace iwalink
