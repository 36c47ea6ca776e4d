#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "iwalink/bigint.hpp"
#include "iwalink/error.hpp"

namespace iwalink {

using Exponent = std::vector<std::int64_t>;
using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Sparse Laurent polynomial in a fixed number of variables over the integers.
///
/// Terms are kept in a std::map keyed by exponent vector, so iteration is in
/// lexicographic order and equal polynomials compare and serialize identically.
/// Zero coefficients are never stored; the zero polynomial has no terms.
class LaurentPoly {
 public:
  using TermMap = std::map<Exponent, Integer>;

  LaurentPoly() : nvars_(1) {}
  explicit LaurentPoly(std::size_t nvars) : nvars_(nvars) {
    if (nvars == 0) throw Error(ErrorKind::InvalidArgument, "LaurentPoly needs at least one variable");
  }

  static LaurentPoly constant(std::size_t nvars, const Integer& c) {
    LaurentPoly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
  }

  static LaurentPoly monomial(const Exponent& e, const Integer& c = 1) {
    LaurentPoly p(e.size());
    p.add_term(e, c);
    return p;
  }

  /// The variable t_i (0-based).
  static LaurentPoly variable(std::size_t nvars, std::size_t i) {
    Exponent e(nvars, 0);
    e.at(i) = 1;
    return monomial(e);
  }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Integer coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  void add_term(const Exponent& e, const Integer& c) {
    if (e.size() != nvars_) throw Error(ErrorKind::DimensionMismatch, "exponent length differs from variable count");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Lexicographically largest term; polynomial must be nonzero.
  const std::pair<const Exponent, Integer>& leading_term() const { return *terms_.rbegin(); }

  Exponent min_exponents() const {
    Exponent m(nvars_, 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
      first = false;
    }
    return m;
  }

  Exponent max_exponents() const {
    Exponent m(nvars_, 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) m[i] = first ? e[i] : std::max(m[i], e[i]);
      first = false;
    }
    return m;
  }

  bool is_polynomial() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) {
      return std::all_of(t.first.begin(), t.first.end(), [](std::int64_t a) { return a >= 0; });
    });
  }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && is_origin(terms_.begin()->first)); }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  LaurentPoly& operator*=(const Integer& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const Integer& s) { return a *= s; }
  friend LaurentPoly operator*(const Integer& s, LaurentPoly a) { return a *= s; }
  friend LaurentPoly operator-(LaurentPoly a) { return a *= Integer(-1); }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_same(b);
    LaurentPoly r(a.nvars_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  LaurentPoly pow(unsigned k) const {
    LaurentPoly result = constant(nvars_, 1);
    LaurentPoly base = *this;
    while (k > 0) {
      if (k & 1U) result *= base;
      k >>= 1U;
      if (k > 0) base *= base;
    }
    return result;
  }

  /// Multiplies by t^shift.
  LaurentPoly shifted(const Exponent& shift) const {
    if (shift.size() != nvars_) throw Error(ErrorKind::DimensionMismatch, "shift length differs from variable count");
    LaurentPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      Exponent f(e);
      for (std::size_t i = 0; i < nvars_; ++i) f[i] += shift[i];
      r.terms_.emplace(std::move(f), c);
    }
    return r;
  }

  std::string to_string(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Integer mag = abs(c);
      os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
      const bool unit_mon = is_origin(e);
      if (mag != 1 || unit_mon) os << mag.get_str();
      bool need_star = (mag != 1 && !unit_mon);
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        if (need_star) os << "*";
        os << (i < names.size() ? names[i] : "t" + std::to_string(i + 1));
        if (e[i] != 1) os << "^" << e[i];
        need_star = true;
      }
      first = false;
    }
    return os.str();
  }

 private:
  static bool is_origin(const Exponent& e) {
    return std::all_of(e.begin(), e.end(), [](std::int64_t a) { return a == 0; });
  }
  void check_same(const LaurentPoly& o) const {
    if (o.nvars_ != nvars_) throw Error(ErrorKind::DimensionMismatch, "polynomials have different variable counts");
  }

  std::size_t nvars_;
  TermMap terms_;
};

namespace detail {

/// Row k of Pascal's triangle, cached.
inline const std::vector<Integer>& binomial_row(std::int64_t k) {
  thread_local std::vector<std::vector<Integer>> rows{{Integer(1)}};
  while (static_cast<std::int64_t>(rows.size()) <= k) {
    const auto& prev = rows.back();
    std::vector<Integer> next(prev.size() + 1);
    next.front() = 1;
    next.back() = 1;
    for (std::size_t i = 1; i < prev.size(); ++i) next[i] = prev[i - 1] + prev[i];
    rows.push_back(std::move(next));
  }
  return rows[static_cast<std::size_t>(k)];
}

/// Expands sum c * prod_i (t_i + offset)^{a_i} for a polynomial with nonnegative exponents.
inline LaurentPoly translate(const LaurentPoly& p, std::int64_t offset) {
  LaurentPoly out(p.nvars());
  const std::size_t d = p.nvars();
  for (const auto& [e, c] : p.terms()) {
    // iterate over all k <= e (odometer)
    Exponent k(d, 0);
    while (true) {
      Integer coeff = c;
      for (std::size_t i = 0; i < d; ++i) {
        coeff *= binomial_row(e[i])[static_cast<std::size_t>(k[i])];
        const std::int64_t rest = e[i] - k[i];
        if (offset != 1 && rest > 0) coeff *= ipow(offset, static_cast<std::uint64_t>(rest));
      }
      out.add_term(k, coeff);
      std::size_t i = 0;
      while (i < d && k[i] == e[i]) k[i++] = 0;
      if (i == d) break;
      ++k[i];
    }
  }
  return out;
}

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, a1 = mod_floor(a, m);
  while (a1 != 0) {
    const std::int64_t q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw Error(ErrorKind::ZeroDivisor, "element not invertible modulo " + std::to_string(m));
  return mod_floor(x, m);
}

}  // namespace detail

/// Exponent that clears all negative exponents (componentwise -min, floored at 0).
inline Exponent clearing_monomial(const LaurentPoly& p) {
  Exponent m = p.min_exponents();
  for (auto& a : m) a = a < 0 ? -a : 0;
  return m;
}

/// Q(T) = t^m P(t) at t_i = 1 + T_i, with t^m the minimal monomial clearing negative exponents.
inline LaurentPoly shift_substitute(const LaurentPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "shift_substitute of zero");
  return detail::translate(p.shifted(clearing_monomial(p)), 1);
}

/// Inverse change of variables T_i -> t_i - 1; input must be an ordinary polynomial.
inline LaurentPoly unshift(const LaurentPoly& q) {
  if (!q.is_polynomial()) throw Error(ErrorKind::InvalidArgument, "unshift expects nonnegative exponents");
  return detail::translate(q, -1);
}

/// Replaces variable s_j of p by the monomial t^{M_j}. M has one row per variable of p.
inline LaurentPoly substitute_monomials(const LaurentPoly& p, const IntMatrix& m) {
  if (m.size() != p.nvars() || m.empty()) {
    throw Error(ErrorKind::DimensionMismatch, "substitution matrix needs one row per variable");
  }
  const std::size_t d = m.front().size();
  if (d == 0) throw Error(ErrorKind::DimensionMismatch, "substitution matrix has no columns");
  for (const auto& row : m) {
    if (row.size() != d) throw Error(ErrorKind::DimensionMismatch, "ragged substitution matrix");
  }
  LaurentPoly out(d);
  Exponent f(d);
  for (const auto& [e, c] : p.terms()) {
    std::fill(f.begin(), f.end(), 0);
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      for (std::size_t k = 0; k < d; ++k) f[k] += e[j] * m[j][k];
    }
    out.add_term(f, c);
  }
  return out;
}

/// Coefficients reduced into {0, ..., p-1}; zeros dropped.
inline LaurentPoly mod_p_reduce(const LaurentPoly& p, std::int64_t prime) {
  LaurentPoly out(p.nvars());
  const Integer m(static_cast<long>(prime));
  for (const auto& [e, c] : p.terms()) out.add_term(e, mod_floor(c, m));
  return out;
}

/// Minimum p-adic valuation of the coefficients.
inline std::int64_t p_content(const LaurentPoly& p, std::int64_t prime) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "p_content of zero");
  std::int64_t best = -1;
  for (const auto& [e, c] : p.terms()) {
    const auto v = valuation(c, prime);
    if (best < 0 || v < best) best = v;
  }
  return best;
}

inline Integer integer_content(const LaurentPoly& p) {
  Integer g = 0;
  for (const auto& [e, c] : p.terms()) g = gcd(g, c);
  return g;
}

/// Exact division by a scalar; every coefficient must be divisible.
inline LaurentPoly divide_exact(const LaurentPoly& p, const Integer& s) {
  LaurentPoly out(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    if (c % s != 0) throw Error(ErrorKind::InvalidArgument, "scalar does not divide polynomial");
    out.add_term(e, c / s);
  }
  return out;
}

/// Representative of p modulo units +-t^a: minimal exponents zero, leading coefficient positive.
inline LaurentPoly normalize_unit(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  Exponent shift = p.min_exponents();
  for (auto& a : shift) a = -a;
  LaurentPoly q = p.shifted(shift);
  if (q.leading_term().second < 0) q *= Integer(-1);
  return q;
}

inline bool equal_up_to_unit(const LaurentPoly& a, const LaurentPoly& b) {
  return normalize_unit(a) == normalize_unit(b);
}

/// Sets variable `var` to 1, returning a polynomial in the remaining variables.
inline LaurentPoly specialize_to_one(const LaurentPoly& p, std::size_t var) {
  if (var >= p.nvars() || p.nvars() < 2) throw Error(ErrorKind::DimensionMismatch, "cannot specialize variable");
  LaurentPoly out(p.nvars() - 1);
  for (const auto& [e, c] : p.terms()) {
    Exponent f;
    f.reserve(e.size() - 1);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i != var) f.push_back(e[i]);
    }
    out.add_term(f, c);
  }
  return out;
}

/// Quotient Q with P = Q * D, or nullopt when D does not divide P.
///
/// `modulus` 0 divides over the integers; a prime modulus divides over F_p with both
/// inputs reduced first. Quotient exponents are confined to the box allowed by the
/// per-variable exponent ranges, which also bounds the loop for Laurent inputs. When both
/// inputs are ordinary polynomials the division is taken in the polynomial ring.
inline std::optional<LaurentPoly> trial_divide(const LaurentPoly& p, const LaurentPoly& d, std::int64_t modulus = 0) {
  if (p.nvars() != d.nvars()) throw Error(ErrorKind::DimensionMismatch, "trial_divide variable counts differ");
  const bool field = modulus > 0;
  LaurentPoly rem = field ? mod_p_reduce(p, modulus) : p;
  const LaurentPoly div = field ? mod_p_reduce(d, modulus) : d;
  if (div.is_zero()) throw Error(ErrorKind::ZeroDivisor, "division by zero polynomial");
  LaurentPoly quot(p.nvars());
  if (rem.is_zero()) return quot;

  const std::size_t n = p.nvars();
  const bool polynomial_ring = rem.is_polynomial() && div.is_polynomial();
  const Exponent pmin = rem.min_exponents(), pmax = rem.max_exponents();
  const Exponent dmin = div.min_exponents(), dmax = div.max_exponents();
  Exponent qmin(n), qmax(n);
  for (std::size_t i = 0; i < n; ++i) {
    qmin[i] = pmin[i] - dmin[i];
    qmax[i] = pmax[i] - dmax[i];
    if (polynomial_ring) qmin[i] = std::max<std::int64_t>(qmin[i], 0);
    if (qmin[i] > qmax[i]) return std::nullopt;
  }
  const auto& [dlead_e, dlead_c] = div.leading_term();
  const Integer mod(static_cast<long>(modulus));
  Integer dlead_inv;
  if (field) dlead_inv = Integer(static_cast<long>(detail::mod_inverse(mpz_fdiv_ui(dlead_c.get_mpz_t(), static_cast<unsigned long>(modulus)), modulus)));

  while (!rem.is_zero()) {
    const auto [re, rc] = rem.leading_term();
    Exponent qe(n);
    for (std::size_t i = 0; i < n; ++i) {
      qe[i] = re[i] - dlead_e[i];
      if (qe[i] < qmin[i] || qe[i] > qmax[i]) return std::nullopt;
    }
    Integer qc;
    if (field) {
      qc = mod_floor(rc * dlead_inv, mod);
    } else {
      if (rc % dlead_c != 0) return std::nullopt;
      qc = rc / dlead_c;
    }
    quot.add_term(qe, qc);
    for (const auto& [de, dc] : div.terms()) {
      Exponent e(n);
      for (std::size_t i = 0; i < n; ++i) e[i] = qe[i] + de[i];
      Integer c = -qc * dc;
      if (field) c = mod_floor(c, mod);
      rem.add_term(e, c);
    }
    if (field) rem = mod_p_reduce(rem, modulus);
  }
  return quot;
}

}  // namespace iwalink
