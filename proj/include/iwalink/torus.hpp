#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iwalink/bigint.hpp"
#include "iwalink/cyclotomic_valuation.hpp"
#include "iwalink/error.hpp"
#include "iwalink/intmatrix.hpp"
#include "iwalink/laurent.hpp"
#include "iwalink/parallel.hpp"

namespace iwalink {

/// How a zero of the polynomial inside the region is reported.
enum class VanishingPolicy {
  Explicit,        // report Vanishes
  ZeroConvention,  // treat v(0) = 0 and keep summing
};

/// {zeta in W(n)^d : zeta^v = 1 for v in eq, zeta^w != 1 for w in neq}.
/// A point is stored as its exponent vector x in (Z/p^n)^d with zeta_i = omega^{x_i}.
struct TorusRegion {
  std::int64_t p = 2;
  unsigned n = 0;
  std::size_t d = 1;
  IntMatrix eq;
  IntMatrix neq;

  static TorusRegion full(std::int64_t p, unsigned n, std::size_t d) { return TorusRegion{p, n, d, {}, {}}; }

  /// (W(n) \ {1})^d
  static TorusRegion punctured(std::int64_t p, unsigned n, std::size_t d) {
    TorusRegion r = full(p, n, d);
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<std::int64_t> row(d, 0);
      row[i] = 1;
      r.neq.push_back(row);
    }
    return r;
  }

  std::int64_t modulus() const { return ipow64(p, static_cast<int>(n)); }

  void validate() const {
    require_prime(p);
    if (d == 0) throw Error(ErrorKind::DimensionMismatch, "torus dimension must be positive");
    for (const auto* rows : {&eq, &neq}) {
      for (const auto& r : *rows) {
        if (r.size() != d) throw Error(ErrorKind::DimensionMismatch, "constraint length differs from torus dimension");
      }
    }
  }

  bool contains(const std::vector<std::int64_t>& x) const {
    const std::int64_t m = modulus();
    auto dot = [&](const std::vector<std::int64_t>& v) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < d; ++i) s = mod_floor(s + mod_floor(v[i], m) * x[i], m);
      return s;
    };
    for (const auto& v : eq) {
      if (dot(v) != 0) return false;
    }
    for (const auto& w : neq) {
      if (dot(w) == 0) return false;
    }
    return true;
  }
};

/// Direct-sum parametrization of a subgroup of (Z/p^n)^d by generators of order p^{m_k}.
struct SubgroupBasis {
  std::int64_t p = 2;
  unsigned n = 0;
  std::size_t d = 1;
  IntMatrix generators;
  std::vector<unsigned> order_exponents;

  std::size_t rank() const { return generators.size(); }
  std::vector<std::int64_t> orders() const {
    std::vector<std::int64_t> o;
    for (unsigned m : order_exponents) o.push_back(ipow64(p, static_cast<int>(m)));
    return o;
  }
  Integer order() const {
    unsigned total = 0;
    for (unsigned m : order_exponents) total += m;
    return ipow(p, total);
  }
};

/// Solutions of v.x = 0 mod p^n for every row v, via a diagonal form P A Q = D.
inline SubgroupBasis solve_subgroup(const IntMatrix& rows, std::int64_t p, unsigned n, std::size_t d) {
  require_prime(p);
  if (d == 0) throw Error(ErrorKind::DimensionMismatch, "torus dimension must be positive");
  const std::int64_t pn = ipow64(p, static_cast<int>(n));
  SubgroupBasis basis{p, n, d, {}, {}};
  BigMatrix q;
  std::vector<Integer> diag;
  if (rows.empty()) {
    q.assign(d, std::vector<Integer>(d));
    for (std::size_t i = 0; i < d; ++i) q[i][i] = 1;
  } else {
    auto dg = diagonalize(rows, d);
    q = std::move(dg.q);
    diag = std::move(dg.diagonal);
  }
  const Integer pnz(static_cast<long>(pn));
  for (std::size_t k = 0; k < d; ++k) {
    std::int64_t h = pn;
    if (k < diag.size() && diag[k] != 0) h = Integer(gcd(diag[k], pnz)).get_si();
    if (h == 1) continue;
    unsigned m = 0;
    for (std::int64_t t = h; t > 1; t /= p) ++m;
    std::vector<std::int64_t> g(d);
    const std::int64_t scale = pn / h;
    for (std::size_t i = 0; i < d; ++i) g[i] = mod_floor(Integer(mod_floor(q[i][k], pnz) * scale), pnz).get_si();
    basis.generators.push_back(std::move(g));
    basis.order_exponents.push_back(m);
  }
  return basis;
}

/// One Galois orbit: point x of order p^K, with y = x / p^{n-K} the exponent in zeta_{p^K}.
struct Orbit {
  unsigned k = 0;
  std::vector<std::int64_t> x;
  std::vector<std::int64_t> y;
};

/// Representatives of the orbits of the subgroup under (Z/p^n)^x acting by scaling.
inline std::vector<Orbit> orbit_representatives(const SubgroupBasis& b) {
  const std::int64_t pn = ipow64(b.p, static_cast<int>(b.n));
  const std::size_t r = b.rank();
  std::vector<Orbit> out;
  // odometer over order tuples (k_j), 0 <= k_j <= m_j
  std::vector<unsigned> ks(r, 0);
  while (true) {
    unsigned big = 0;
    for (unsigned kj : ks) big = std::max(big, kj);
    std::size_t j0 = r;
    for (std::size_t j = 0; j < r; ++j) {
      if (ks[j] == big) {
        j0 = j;
        break;
      }
    }
    // odometer over unit choices for j != j0 with k_j > 0
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < r; ++j) {
      if (j != j0 && ks[j] > 0) free.push_back(j);
    }
    std::vector<std::int64_t> unit(r, 1);
    while (true) {
      std::vector<std::int64_t> x(b.d, 0);
      for (std::size_t j = 0; j < r; ++j) {
        if (ks[j] == 0 || (big == 0)) continue;
        const std::int64_t a = ipow64(b.p, static_cast<int>(b.order_exponents[j] - ks[j])) * unit[j];
        for (std::size_t i = 0; i < b.d; ++i) x[i] = mod_floor(x[i] + a % pn * b.generators[j][i] % pn, pn);
      }
      Orbit o;
      o.k = big;
      const std::int64_t down = ipow64(b.p, static_cast<int>(b.n - big));
      o.y.resize(b.d);
      for (std::size_t i = 0; i < b.d; ++i) o.y[i] = x[i] / down;
      o.x = std::move(x);
      out.push_back(std::move(o));
      // advance units
      std::size_t f = 0;
      for (; f < free.size(); ++f) {
        const std::size_t j = free[f];
        const std::int64_t lim = ipow64(b.p, static_cast<int>(ks[j]));
        std::int64_t u = unit[j] + 1;
        if (u % b.p == 0) ++u;
        if (u < lim) {
          unit[j] = u;
          break;
        }
        unit[j] = 1;
      }
      if (f == free.size()) break;
    }
    std::size_t j = 0;
    for (; j < r; ++j) {
      if (ks[j] < b.order_exponents[j]) {
        ++ks[j];
        break;
      }
      ks[j] = 0;
    }
    if (j == r) break;
  }
  return out;
}

/// Every point of the region, by brute force (tests and small oracles only).
inline std::vector<std::vector<std::int64_t>> enumerate_points(const TorusRegion& region) {
  region.validate();
  const std::int64_t m = region.modulus();
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> x(region.d, 0);
  while (true) {
    if (region.contains(x)) out.push_back(x);
    std::size_t i = 0;
    for (; i < region.d; ++i) {
      if (++x[i] < m) break;
      x[i] = 0;
    }
    if (i == region.d) break;
  }
  return out;
}

/// Exact product, or the symbol Vanishes.
struct TorusProduct {
  bool vanishes = false;
  Integer value = 1;
  std::int64_t valuation = 0;  // v_p(value); meaningless when vanishes
};

/// Valuation sum, or the symbol Vanishes.
struct TorusSum {
  bool vanishes = false;
  Integer value = 0;
};

namespace detail {

struct OrbitValue {
  bool zero = false;
  std::int64_t v = 0;
};

inline std::vector<OrbitValue> orbit_valuations(const LaurentPoly& g, const std::vector<Orbit>& orbits, std::int64_t p) {
  return parallel_map<OrbitValue>(orbits.size(), [&](std::size_t i) {
    const Orbit& o = orbits[i];
    const std::int64_t pk = ipow64(p, static_cast<int>(o.k));
    const auto v = orbit_valuation(orbit_polynomial(g, o.y, pk), p, o.k);
    return v ? OrbitValue{false, *v} : OrbitValue{true, 0};
  });
}

inline TorusProduct product_over_orbits(const LaurentPoly& g, const std::vector<Orbit>& orbits, std::int64_t p) {
  const auto norms = parallel_map<Integer>(orbits.size(), [&](std::size_t i) {
    const Orbit& o = orbits[i];
    const std::int64_t pk = ipow64(p, static_cast<int>(o.k));
    return orbit_norm(orbit_polynomial(g, o.y, pk), p, o.k);
  });
  TorusProduct out;
  for (const auto& v : norms) {
    if (v == 0) {
      out.vanishes = true;
      out.value = 0;
      return out;
    }
    out.value *= v;
  }
  out.valuation = valuation(out.value, p);
  return out;
}

inline void check_poly(const LaurentPoly& g, std::size_t d) {
  if (g.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "polynomial is zero");
  if (g.nvars() != d) throw Error(ErrorKind::DimensionMismatch, "polynomial variable count differs from torus dimension");
}

}  // namespace detail

/// prod F(eta) over the subgroup, F in the t-variables.
inline TorusProduct torus_product(const LaurentPoly& f, const SubgroupBasis& basis) {
  detail::check_poly(f, basis.d);
  return detail::product_over_orbits(f, orbit_representatives(basis), basis.p);
}

/// Exact product of G (t-variables) over the region points.
inline TorusProduct region_product(const LaurentPoly& g, const TorusRegion& region) {
  region.validate();
  detail::check_poly(g, region.d);
  std::vector<Orbit> kept;
  for (auto& o : orbit_representatives(solve_subgroup(region.eq, region.p, region.n, region.d))) {
    if (region.contains(o.x)) kept.push_back(std::move(o));
  }
  return detail::product_over_orbits(g, kept, region.p);
}

/// Whether G (t-variables) has a zero in the region; the first zero found is stored in `witness`.
inline bool region_vanishes(const LaurentPoly& g, const TorusRegion& region, std::vector<std::int64_t>* witness = nullptr) {
  region.validate();
  detail::check_poly(g, region.d);
  std::vector<Orbit> kept;
  for (auto& o : orbit_representatives(solve_subgroup(region.eq, region.p, region.n, region.d))) {
    if (region.contains(o.x)) kept.push_back(std::move(o));
  }
  const auto vals = detail::orbit_valuations(g, kept, region.p);
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (vals[i].zero) {
      if (witness) *witness = kept[i].x;
      return true;
    }
  }
  return false;
}

/// Sum of v(G(zeta)) over the region for G in the t-variables, by inclusion-exclusion over
/// the inequality rows. Each subgroup term uses v(0) = 0; under the Explicit policy a zero
/// is reported as Vanishes only when it lies in the region itself.
inline TorusSum sigma_t(const LaurentPoly& g, const TorusRegion& region, VanishingPolicy policy = VanishingPolicy::ZeroConvention) {
  region.validate();
  detail::check_poly(g, region.d);
  const std::size_t s = region.neq.size();
  if (s > 20) throw Error(ErrorKind::ScaleExceeded, "too many inequality constraints");
  TorusSum out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << s); ++mask) {
    IntMatrix rows = region.eq;
    int sign = 1;
    for (std::size_t i = 0; i < s; ++i) {
      if (mask >> i & 1U) {
        rows.push_back(region.neq[i]);
        sign = -sign;
      }
    }
    const auto orbits = orbit_representatives(solve_subgroup(rows, region.p, region.n, region.d));
    const auto vals = detail::orbit_valuations(g, orbits, region.p);
    Integer part = 0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (vals[i].zero) {
        if (mask == 0 && policy == VanishingPolicy::Explicit && region.contains(orbits[i].x)) {
          out.vanishes = true;
          out.value = 0;
          return out;
        }
        continue;
      }
      part += vals[i].v;
    }
    out.value += sign * part;
  }
  return out;
}

/// Sum over the region of v(F(zeta - 1)) for F in the T-variables.
inline TorusSum sigma(const LaurentPoly& f, const TorusRegion& region, VanishingPolicy policy = VanishingPolicy::ZeroConvention) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "sigma of zero");
  return sigma_t(unshift(f), region, policy);
}

/// Same sum computed by filtering orbits by region membership (cross-check for sigma_t).
inline TorusSum sigma_t_filtered(const LaurentPoly& g, const TorusRegion& region, VanishingPolicy policy = VanishingPolicy::ZeroConvention) {
  region.validate();
  detail::check_poly(g, region.d);
  std::vector<Orbit> kept;
  for (auto& o : orbit_representatives(solve_subgroup(region.eq, region.p, region.n, region.d))) {
    if (region.contains(o.x)) kept.push_back(std::move(o));
  }
  TorusSum out;
  for (const auto& v : detail::orbit_valuations(g, kept, region.p)) {
    if (v.zero) {
      if (policy == VanishingPolicy::Explicit) return TorusSum{true, 0};
      continue;
    }
    out.value += v.v;
  }
  return out;
}

/// prod over W(n)^d of F(zeta) as the determinant of multiplication by F on the group ring
/// Z[x_1..x_d]/(x_i^{p^n} - 1). Independent of the orbit engine; desk scale only.
inline Integer norm_det_oracle(const LaurentPoly& f, std::int64_t p, unsigned n) {
  require_prime(p);
  const std::size_t d = f.nvars();
  const std::int64_t big_n = ipow64(p, static_cast<int>(n));
  if (d > 2 || big_n > 9) throw Error(ErrorKind::ScaleExceeded, "norm_det_oracle is limited to d <= 2 and p^n <= 9");
  std::size_t dim = 1;
  for (std::size_t i = 0; i < d; ++i) dim *= static_cast<std::size_t>(big_n);
  auto index = [&](const std::vector<std::int64_t>& e) {
    std::size_t idx = 0;
    for (std::size_t i = d; i-- > 0;) idx = idx * static_cast<std::size_t>(big_n) + static_cast<std::size_t>(e[i]);
    return idx;
  };
  BigMatrix m(dim, std::vector<Integer>(dim));
  std::vector<std::int64_t> basis(d, 0);
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t rest = col;
    for (std::size_t i = 0; i < d; ++i) {
      basis[i] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(big_n));
      rest /= static_cast<std::size_t>(big_n);
    }
    for (const auto& [e, c] : f.terms()) {
      std::vector<std::int64_t> target(d);
      for (std::size_t i = 0; i < d; ++i) target[i] = mod_floor(basis[i] + e[i], big_n);
      m[index(target)][col] += c;
    }
  }
  return bareiss_determinant(std::move(m));
}

}  // namespace iwalink
