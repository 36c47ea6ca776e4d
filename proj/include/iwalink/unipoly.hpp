#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "iwalink/bigint.hpp"
#include "iwalink/error.hpp"
#include "iwalink/intmatrix.hpp"

namespace iwalink {

namespace detail {
inline Integer pow_int(const Integer& b, std::int64_t e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}
}  // namespace detail

/// Dense univariate integer polynomial, lowest degree first.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }
  UniPoly(std::initializer_list<long> coeffs) {
    for (long x : coeffs) c_.emplace_back(x);
    trim();
  }

  static UniPoly monomial(std::size_t deg, const Integer& coef = 1) {
    std::vector<Integer> c(deg + 1);
    c[deg] = coef;
    return UniPoly(std::move(c));
  }

  /// x^n - 1
  static UniPoly x_pow_minus_one(std::size_t n) {
    std::vector<Integer> c(n + 1);
    c[0] = -1;
    c[n] += 1;
    return UniPoly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  std::int64_t degree() const { return static_cast<std::int64_t>(c_.size()) - 1; }
  const std::vector<Integer>& coefficients() const { return c_; }
  const Integer& lead() const { return c_.back(); }
  Integer operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }

  Integer evaluate(const Integer& x) const {
    Integer r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }

  Integer content() const {
    Integer g = 0;
    for (const auto& x : c_) g = gcd(g, x);
    return g;
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Integer> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return UniPoly(std::move(c));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<Integer> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return UniPoly(std::move(c));
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(c));
  }
  friend UniPoly operator*(const UniPoly& a, const Integer& s) {
    std::vector<Integer> c(a.c_);
    for (auto& x : c) x *= s;
    return UniPoly(std::move(c));
  }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

  /// Exact division of every coefficient by s.
  UniPoly divided_by(const Integer& s) const {
    std::vector<Integer> c(c_);
    for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), s.get_mpz_t());
    return UniPoly(std::move(c));
  }

  /// Remainder modulo a monic divisor.
  UniPoly mod_monic(const UniPoly& m) const {
    if (m.is_zero() || m.lead() != 1) throw Error(ErrorKind::InvalidArgument, "mod_monic needs a monic divisor");
    std::vector<Integer> r(c_);
    const std::size_t dm = static_cast<std::size_t>(m.degree());
    for (std::size_t i = r.size(); i-- > dm;) {
      if (r[i] == 0) continue;
      const Integer f = r[i];
      for (std::size_t j = 0; j <= dm; ++j) r[i - dm + j] -= f * m.c_[j];
    }
    if (r.size() > dm) r.resize(dm);
    return UniPoly(std::move(r));
  }

  /// lc(b)^(deg a - deg b + 1) * a mod b.
  UniPoly pseudo_remainder(const UniPoly& b) const {
    if (b.is_zero()) throw Error(ErrorKind::ZeroDivisor, "pseudo-remainder by zero");
    if (degree() < b.degree()) return *this;
    std::vector<Integer> r(c_);
    const std::size_t db = static_cast<std::size_t>(b.degree());
    std::int64_t e = degree() - b.degree() + 1;
    const Integer& lb = b.lead();
    for (std::size_t i = r.size(); i-- > db;) {
      const Integer f = r[i];
      for (std::size_t j = 0; j < i; ++j) r[j] *= lb;
      r[i] = 0;
      if (f != 0) {
        for (std::size_t j = 0; j < db; ++j) r[i - db + j] -= f * b.c_[j];
      }
      --e;
    }
    if (e > 0) {
      const Integer f = detail::pow_int(lb, e);
      for (auto& x : r) x *= f;
    }
    r.resize(db);
    return UniPoly(std::move(r));
  }

  std::string to_string(const std::string& var = "x") const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i] == 0) continue;
      const bool neg = c_[i] < 0;
      Integer mag = abs(c_[i]);
      if (!s.empty()) s += neg ? " - " : " + ";
      else if (neg) s += "-";
      if (mag != 1 || i == 0) s += mag.get_str();
      if (i > 0) {
        if (mag != 1) s += "*";
        s += var;
        if (i > 1) s += "^" + std::to_string(i);
      }
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Integer> c_;
};

/// Resultant by the subresultant PRS; Res(f,g) = lc(f)^deg g * prod g(roots of f).
inline Integer resultant_uni(const UniPoly& f, const UniPoly& g) {
  if (f.is_zero() && g.is_zero()) throw Error(ErrorKind::BothZero, "resultant of two zero polynomials");
  if (f.is_zero() || g.is_zero()) {
    // Res(0, c) = 1 for a nonzero constant c by the determinant convention of an empty matrix
    const UniPoly& other = f.is_zero() ? g : f;
    return other.degree() == 0 ? Integer(1) : Integer(0);
  }
  if (f.degree() == 0) return detail::pow_int(f.lead(), g.degree());
  if (g.degree() == 0) return detail::pow_int(g.lead(), f.degree());

  UniPoly a = f, b = g;
  Integer s = 1;
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if ((a.degree() & 1) && (b.degree() & 1)) s = -1;
  }
  const Integer ca = a.content(), cb = b.content();
  a = a.divided_by(ca);
  b = b.divided_by(cb);
  const Integer t = detail::pow_int(ca, b.degree()) * detail::pow_int(cb, a.degree());
  Integer gg = 1, h = 1;
  while (true) {
    const std::int64_t delta = a.degree() - b.degree();
    if ((a.degree() & 1) && (b.degree() & 1)) s = -s;
    UniPoly r = a.pseudo_remainder(b);
    a = std::move(b);
    b = r.divided_by(gg * detail::pow_int(h, delta));
    gg = a.lead();
    if (delta == 0) {
      // h unchanged
    } else {
      Integer num = detail::pow_int(gg, delta);
      Integer den = detail::pow_int(h, delta - 1);
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    if (b.is_zero()) return 0;
    if (b.degree() == 0) {
      const std::int64_t da = a.degree();
      Integer num = detail::pow_int(b.lead(), da);
      Integer den = detail::pow_int(h, da - 1);
      Integer hh;
      mpz_divexact(hh.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      return s * t * hh;
    }
  }
}

/// Resultant as the Sylvester determinant; used as an independent check for small degrees.
inline Integer resultant_sylvester(const UniPoly& f, const UniPoly& g) {
  if (f.is_zero() && g.is_zero()) throw Error(ErrorKind::BothZero, "resultant of two zero polynomials");
  if (f.is_zero() || g.is_zero()) return (f.is_zero() ? g : f).degree() == 0 ? Integer(1) : Integer(0);
  const std::size_t m = static_cast<std::size_t>(f.degree()), n = static_cast<std::size_t>(g.degree());
  const std::size_t sz = m + n;
  if (sz == 0) return 1;
  BigMatrix s(sz, std::vector<Integer>(sz));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) s[i][i + j] = f[m - j];
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= n; ++j) s[n + i][i + j] = g[n - j];
  }
  return bareiss_determinant(std::move(s));
}

/// Phi_{p^k}; Phi_1 = x - 1.
inline UniPoly cyclotomic(std::int64_t p, unsigned k) {
  require_prime(p);
  if (k == 0) return UniPoly{-1, 1};
  const std::uint64_t step = static_cast<std::uint64_t>(ipow(p, k - 1).get_ui());
  std::vector<Integer> c(static_cast<std::size_t>(step * static_cast<std::uint64_t>(p - 1) + 1));
  for (std::int64_t j = 0; j < p; ++j) c[static_cast<std::size_t>(step * static_cast<std::uint64_t>(j))] = 1;
  return UniPoly(std::move(c));
}

/// Exact quotient a / m for a monic divisor m; throws when the remainder is nonzero.
inline UniPoly exact_quotient_monic(const UniPoly& a, const UniPoly& m) {
  if (m.is_zero() || m.lead() != 1) throw Error(ErrorKind::InvalidArgument, "divisor must be monic");
  if (a.degree() < m.degree()) {
    if (!a.is_zero()) throw Error(ErrorKind::InvalidArgument, "inexact division");
    return UniPoly{};
  }
  std::vector<Integer> r(a.coefficients());
  const std::size_t dm = static_cast<std::size_t>(m.degree());
  std::vector<Integer> q(r.size() - dm);
  for (std::size_t i = r.size(); i-- > dm;) {
    const Integer f = r[i];
    q[i - dm] = f;
    if (f == 0) continue;
    for (std::size_t j = 0; j <= dm; ++j) r[i - dm + j] -= f * m[j];
  }
  for (std::size_t i = 0; i < dm; ++i) {
    if (r[i] != 0) throw Error(ErrorKind::InvalidArgument, "inexact division");
  }
  return UniPoly(std::move(q));
}

/// Phi_n for any n >= 1, as (x^n - 1) / prod_{d | n, d < n} Phi_d.
inline UniPoly cyclotomic_n(std::uint64_t n) {
  if (n == 0 || n > 100000) throw Error(ErrorKind::InvalidArgument, "cyclotomic index out of range");
  UniPoly f = UniPoly::x_pow_minus_one(static_cast<std::size_t>(n));
  for (std::uint64_t d = 1; d < n; ++d) {
    if (n % d == 0) f = exact_quotient_monic(f, cyclotomic_n(d));
  }
  return f;
}

/// Euler phi of p^k.
inline std::int64_t euler_phi_prime_power(std::int64_t p, unsigned k) {
  if (k == 0) return 1;
  return ipow64(p, static_cast<int>(k) - 1) * (p - 1);
}

}  // namespace iwalink
