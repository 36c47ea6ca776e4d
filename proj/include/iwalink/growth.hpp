#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iwalink/bigint.hpp"
#include "iwalink/error.hpp"
#include "iwalink/intmatrix.hpp"

namespace iwalink {

/// f(U, V) with rational coefficients, deg_V <= 1 and total degree <= d.
/// Monomials are keyed by (i, j) for U^i V^j.
class GrowthPolynomial {
 public:
  GrowthPolynomial() = default;
  explicit GrowthPolynomial(unsigned d) : d_(d) {}

  unsigned degree_bound() const { return d_; }
  const std::map<std::pair<unsigned, unsigned>, Rational>& coefficients() const { return c_; }

  void set(unsigned i, unsigned j, const Rational& v) {
    if (j > 1 || i + j > d_) throw Error(ErrorKind::InvalidArgument, "monomial outside the growth polynomial shape");
    if (v == 0) {
      c_.erase({i, j});
    } else {
      c_[{i, j}] = v;
    }
  }

  Rational coefficient(unsigned i, unsigned j) const {
    auto it = c_.find({i, j});
    return it == c_.end() ? Rational(0) : it->second;
  }

  bool is_zero() const { return c_.empty(); }

  Rational evaluate(const Integer& u, const Integer& v) const {
    Rational s = 0;
    for (const auto& [ij, c] : c_) {
      Integer term;
      mpz_pow_ui(term.get_mpz_t(), u.get_mpz_t(), ij.first);
      if (ij.second == 1) term *= v;
      s += c * Rational(term);
    }
    return s;
  }

  /// Value at (p^n, n).
  Rational at_level(std::int64_t p, unsigned n) const { return evaluate(ipow(p, n), Integer(n)); }

  /// Multiplies by U^k, raising the degree bound accordingly.
  GrowthPolynomial times_u_power(unsigned k) const {
    GrowthPolynomial out(d_ + k);
    for (const auto& [ij, c] : c_) out.c_[{ij.first + k, ij.second}] = c;
    return out;
  }

  static std::string monomial_name(unsigned i, unsigned j) {
    std::string u = i == 0 ? "" : (i == 1 ? "U" : "U^" + std::to_string(i));
    if (j == 0) return u.empty() ? "1" : u;
    return u.empty() ? "V" : u + "*V";
  }

  /// Monomials from the highest U-degree down, the V-term first at equal U-degree.
  std::vector<std::pair<std::string, Rational>> named_terms() const {
    std::vector<std::pair<std::pair<unsigned, unsigned>, Rational>> items(c_.begin(), c_.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
      if (a.first.first != b.first.first) return a.first.first > b.first.first;
      return a.first.second > b.first.second;
    });
    std::vector<std::pair<std::string, Rational>> out;
    for (const auto& [ij, c] : items) out.emplace_back(monomial_name(ij.first, ij.second), c);
    return out;
  }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (const auto& [name, c] : named_terms()) {
      const bool neg = c < 0;
      Rational mag = abs(c);
      if (!s.empty()) s += neg ? " - " : " + ";
      else if (neg) s += "-";
      if (name == "1") {
        s += to_decimal(mag);
      } else {
        if (mag != 1) s += to_decimal(mag) + "*";
        s += name;
      }
    }
    return s;
  }

  friend bool operator==(const GrowthPolynomial& a, const GrowthPolynomial& b) { return a.d_ == b.d_ && a.c_ == b.c_; }

 private:
  unsigned d_ = 0;
  std::map<std::pair<unsigned, unsigned>, Rational> c_;
};

struct GrowthSample {
  unsigned n = 0;
  Integer value;
};

struct GrowthFit {
  GrowthPolynomial poly;
  unsigned n0 = 0;              // first level used by the accepted fit
  std::size_t verified = 0;     // held-out samples reproduced exactly
};

namespace detail {

/// Solves the square system A x = b exactly: fraction-free elimination, rational back-substitution.
inline std::optional<std::vector<Rational>> solve_exact(BigMatrix a, std::vector<Integer> b) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[k], a[piv]);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j <= n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  std::vector<Rational> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational s(a[i][n]);
    for (std::size_t j = i + 1; j < n; ++j) s -= Rational(a[i][j]) * x[j];
    x[i] = s / Rational(a[i][i]);
    x[i].canonicalize();
  }
  return x;
}

/// Monomial exponents of the 2d+1 unknowns: U^0..U^d, then U^0 V..U^{d-1} V.
inline std::vector<std::pair<unsigned, unsigned>> growth_monomials(unsigned d) {
  std::vector<std::pair<unsigned, unsigned>> m;
  for (unsigned i = 0; i <= d; ++i) m.emplace_back(i, 0);
  for (unsigned i = 0; i < d; ++i) m.emplace_back(i, 1);
  return m;
}

}  // namespace detail

/// Exact fit of f with f(p^n, n) = value, escalating the start level until every later
/// sample is reproduced. Needs 2d+1 fitting samples plus at least one held-out sample.
inline GrowthFit fit_growth_polynomial(std::vector<GrowthSample> samples, std::int64_t p, unsigned d) {
  require_prime(p);
  std::sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].n != samples[i - 1].n + 1) throw Error(ErrorKind::InvalidArgument, "samples must be at consecutive levels");
  }
  const std::size_t unknowns = 2 * static_cast<std::size_t>(d) + 1;
  if (samples.size() < unknowns + 1) {
    throw Error(ErrorKind::InsufficientSamples, "need at least " + std::to_string(unknowns + 1) + " consecutive samples, got " +
                                                    std::to_string(samples.size()));
  }
  const auto monos = detail::growth_monomials(d);
  for (std::size_t start = 0; start + unknowns < samples.size(); ++start) {
    BigMatrix a(unknowns, std::vector<Integer>(unknowns));
    std::vector<Integer> b(unknowns);
    for (std::size_t r = 0; r < unknowns; ++r) {
      const auto& s = samples[start + r];
      const Integer u = ipow(p, s.n);
      for (std::size_t c = 0; c < unknowns; ++c) {
        Integer v;
        mpz_pow_ui(v.get_mpz_t(), u.get_mpz_t(), monos[c].first);
        if (monos[c].second == 1) v *= s.n;
        a[r][c] = v;
      }
      b[r] = s.value;
    }
    auto x = detail::solve_exact(std::move(a), std::move(b));
    if (!x) continue;
    GrowthPolynomial f(d);
    for (std::size_t c = 0; c < unknowns; ++c) f.set(monos[c].first, monos[c].second, (*x)[c]);
    bool ok = true;
    for (std::size_t r = start + unknowns; r < samples.size() && ok; ++r) {
      ok = f.at_level(p, samples[r].n) == Rational(samples[r].value);
    }
    if (ok) return GrowthFit{f, samples[start].n, samples.size() - start - unknowns};
  }
  throw Error(ErrorKind::NoStableFit, "no growth polynomial reproduces the samples from any start level with a held-out check");
}

}  // namespace iwalink
