#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "iwalink/bigint.hpp"
#include "iwalink/laurent.hpp"
#include "iwalink/unipoly.hpp"

namespace iwalink {

/// Sparse element g(z) of Z[z]/(z^{p^K} - 1): exponents in [0, p^K).
using SparseCyclic = std::map<std::int64_t, Integer>;

namespace detail {

/// Base-p digits of x, least significant first, padded to `len`.
inline std::vector<std::int64_t> digits(std::int64_t x, std::int64_t p, std::size_t len) {
  std::vector<std::int64_t> out(len, 0);
  for (std::size_t i = 0; i < len && x > 0; ++i) {
    out[i] = x % p;
    x /= p;
  }
  return out;
}

inline std::int64_t binom_small_mod(std::int64_t n, std::int64_t k, std::int64_t p) {
  if (k < 0 || k > n) return 0;
  std::int64_t num = 1, den = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    num = num * ((n - i) % p) % p;
    den = den * ((i + 1) % p) % p;
  }
  return num * mod_inverse(den, p) % p;
}

/// Smallest i >= from whose base-p digits are all bounded by those of b, or -1.
inline std::int64_t next_dominated(const std::vector<std::int64_t>& bd, std::int64_t from, std::int64_t p) {
  const std::size_t len = bd.size();
  std::vector<std::int64_t> id = digits(from, p, len + 1);
  if (id[len] != 0) return -1;
  std::int64_t high = -1;
  for (std::size_t s = 0; s < len; ++s) {
    if (id[s] > bd[s]) high = static_cast<std::int64_t>(s);
  }
  if (high < 0) return from;
  for (std::size_t t = static_cast<std::size_t>(high) + 1; t < len; ++t) {
    if (id[t] < bd[t]) {
      std::int64_t r = 0;
      for (std::size_t s = len; s-- > 0;) {
        std::int64_t dig = s > t ? id[s] : (s == t ? id[t] + 1 : 0);
        r = r * p + dig;
      }
      return r;
    }
  }
  return -1;
}

/// Multiplicity of z = 1 as a root of sum c_j z^{b_j} over F_p, searched below `limit`.
/// Coefficients are taken mod p. Returns -1 if every Hasse coefficient below `limit` vanishes.
inline std::int64_t root_one_multiplicity(const SparseCyclic& g, std::int64_t p, std::size_t ndigits, std::int64_t limit) {
  struct Term {
    std::vector<std::int64_t> bd;
    std::int64_t c;
  };
  std::vector<Term> terms;
  terms.reserve(g.size());
  for (const auto& [b, c] : g) {
    const std::int64_t cm = static_cast<std::int64_t>(mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(p)));
    if (cm != 0) terms.push_back({digits(b, p, ndigits), cm});
  }
  if (terms.empty()) return -1;
  std::int64_t i = 0;
  while (i < limit) {
    std::int64_t next = -1;
    for (const auto& t : terms) {
      const std::int64_t cand = next_dominated(t.bd, i, p);
      if (cand >= 0 && (next < 0 || cand < next)) next = cand;
    }
    if (next < 0 || next >= limit) return -1;
    i = next;
    const auto id = digits(i, p, ndigits);
    std::int64_t sum = 0;
    for (const auto& t : terms) {
      std::int64_t prod = t.c;
      for (std::size_t s = 0; s < ndigits && prod != 0; ++s) prod = prod * binom_small_mod(t.bd[s], id[s], p) % p;
      sum = (sum + prod) % p;
    }
    if (sum != 0) return i;
    ++i;
  }
  return -1;
}

/// Reduces g modulo Phi_{p^K}; result has exponents below phi(p^K).
inline SparseCyclic reduce_mod_cyclotomic(const SparseCyclic& g, std::int64_t p, std::int64_t pk1) {
  const std::int64_t top = (p - 1) * pk1;
  SparseCyclic out;
  for (const auto& [b, c] : g) {
    if (b < top) {
      out[b] += c;
    } else {
      const std::int64_t r = b - top;
      for (std::int64_t j = 0; j < p - 1; ++j) out[j * pk1 + r] -= c;
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace detail

/// Builds g(z) = sum c_e z^{(e . y) mod p^K} from a t-form polynomial and an exponent vector y.
inline SparseCyclic orbit_polynomial(const LaurentPoly& g, const std::vector<std::int64_t>& y, std::int64_t pk) {
  SparseCyclic out;
  for (const auto& [e, c] : g.terms()) {
    std::int64_t b = 0;
    for (std::size_t i = 0; i < e.size(); ++i) b = mod_floor(b + mod_floor(e[i], pk) * y[i], pk);
    out[b] += c;
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

/// v_pi(g(zeta_{p^K})) with pi = zeta - 1, i.e. v_p of the norm of g(zeta).
/// nullopt when g(zeta) = 0. K = 0 means evaluation at 1.
inline std::optional<std::int64_t> orbit_valuation(const SparseCyclic& g, std::int64_t p, unsigned k) {
  if (k == 0) {
    Integer s = 0;
    for (const auto& [b, c] : g) s += c;
    if (s == 0) return std::nullopt;
    return valuation(s, p);
  }
  if (g.empty()) return std::nullopt;
  const std::int64_t pk1 = ipow64(p, static_cast<int>(k) - 1);
  const std::int64_t phi = pk1 * (p - 1);
  // strip the common p-power of the coefficients first
  std::int64_t t = std::numeric_limits<std::int64_t>::max();
  for (const auto& [b, c] : g) t = std::min(t, valuation(c, p));
  SparseCyclic h = g;
  if (t > 0) {
    const Integer pt = ipow(p, static_cast<std::uint64_t>(t));
    for (auto& [b, c] : h) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pt.get_mpz_t());
  }
  const std::int64_t fast = detail::root_one_multiplicity(h, p, k, phi);
  if (fast >= 0) return t * phi + fast;
  // every Hasse coefficient below phi vanishes mod p: reduce exactly
  SparseCyclic r = detail::reduce_mod_cyclotomic(h, p, pk1);
  if (r.empty()) return std::nullopt;
  std::int64_t t2 = std::numeric_limits<std::int64_t>::max();
  for (const auto& [b, c] : r) t2 = std::min(t2, valuation(c, p));
  const Integer pt2 = ipow(p, static_cast<std::uint64_t>(t2));
  for (auto& [b, c] : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pt2.get_mpz_t());
  const std::int64_t m = detail::root_one_multiplicity(r, p, k, phi);
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "internal: reduced element has no finite valuation");
  return (t + t2) * phi + m;
}

/// Exact norm N(g(zeta_{p^K})) = Res(Phi_{p^K}, g); zero when g(zeta) = 0.
inline Integer orbit_norm(const SparseCyclic& g, std::int64_t p, unsigned k) {
  if (k == 0) {
    Integer s = 0;
    for (const auto& [b, c] : g) s += c;
    return s;
  }
  const std::int64_t pk1 = ipow64(p, static_cast<int>(k) - 1);
  SparseCyclic r = detail::reduce_mod_cyclotomic(g, p, pk1);
  if (r.empty()) return 0;
  std::vector<Integer> dense(static_cast<std::size_t>(r.rbegin()->first + 1));
  for (const auto& [b, c] : r) dense[static_cast<std::size_t>(b)] = c;
  return resultant_uni(cyclotomic(p, k), UniPoly(std::move(dense)));
}

}  // namespace iwalink
