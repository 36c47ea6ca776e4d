#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iwalink/bigint.hpp"
#include "iwalink/error.hpp"
#include "iwalink/growth.hpp"
#include "iwalink/intmatrix.hpp"
#include "iwalink/iwasawa.hpp"
#include "iwalink/laurent.hpp"
#include "iwalink/torus.hpp"

namespace iwalink {

/// Subset of components, 1-based and strictly increasing.
using Subset = std::vector<int>;

inline std::string subset_key(const Subset& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out;
}

struct LinkPresentation {
  int c = 1;
  std::map<Subset, LaurentPoly> sublink_delta;
  std::optional<IntMatrix> linking_numbers;  // c x c symmetric, diagonal ignored

  Subset full_set() const {
    Subset s;
    for (int i = 1; i <= c; ++i) s.push_back(i);
    return s;
  }

  const LaurentPoly& delta() const { return sublink(full_set()); }

  bool has_sublink(const Subset& s) const { return s.empty() || sublink_delta.count(s) != 0; }

  const LaurentPoly& sublink(const Subset& s) const {
    auto it = sublink_delta.find(s);
    if (it == sublink_delta.end()) throw Error(ErrorKind::MissingSublink, "no polynomial for sublink {" + subset_key(s) + "}");
    return it->second;
  }

  std::int64_t lk(int i, int j) const {
    if (!linking_numbers) throw Error(ErrorKind::MissingLinkingNumbers, "link has no linking numbers");
    return (*linking_numbers)[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
  }

  void validate() const {
    if (c < 1 || c > 20) throw Error(ErrorKind::InvalidArgument, "component count must be in 1..20");
    for (const auto& [s, f] : sublink_delta) {
      if (s.empty()) throw Error(ErrorKind::InvalidArgument, "the empty sublink is fixed to 1 and cannot be given");
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 1 || s[i] > c || (i && s[i] <= s[i - 1])) {
          throw Error(ErrorKind::InvalidArgument, "malformed sublink {" + subset_key(s) + "}");
        }
      }
      if (f.nvars() != s.size()) {
        throw Error(ErrorKind::DimensionMismatch, "sublink {" + subset_key(s) + "} needs " + std::to_string(s.size()) + " variables");
      }
    }
    if (!sublink_delta.count(full_set())) throw Error(ErrorKind::MissingSublink, "the polynomial of the whole link is required");
    if (linking_numbers) {
      const auto& l = *linking_numbers;
      if (l.size() != static_cast<std::size_t>(c)) throw Error(ErrorKind::DimensionMismatch, "linking matrix must be c x c");
      for (std::size_t i = 0; i < l.size(); ++i) {
        if (l[i].size() != l.size()) throw Error(ErrorKind::DimensionMismatch, "linking matrix must be c x c");
        for (std::size_t j = 0; j < i; ++j) {
          if (l[i][j] != l[j][i]) throw Error(ErrorKind::InvalidArgument, "linking matrix must be symmetric");
        }
      }
    }
  }
};

/// A meridian image entry: an integer, or a p-adic integer known to `precision` digits.
struct PadicEntry {
  Integer value;                       // integer, or sum digits[i] p^i
  std::optional<unsigned> precision;   // absent for exact integers

  static PadicEntry integer(const Integer& v) { return {v, std::nullopt}; }

  static PadicEntry from_digits(const std::vector<std::int64_t>& digits, std::int64_t p, unsigned precision) {
    if (digits.size() > precision) throw Error(ErrorKind::InvalidArgument, "more digits than the declared precision");
    Integer v = 0;
    for (std::size_t i = digits.size(); i-- > 0;) {
      if (digits[i] < 0 || digits[i] >= p) throw Error(ErrorKind::InvalidArgument, "p-adic digit out of range");
      v = v * p + digits[i];
    }
    return {v, precision};
  }

  /// Residue mod p^n.
  std::int64_t reduce(std::int64_t p, unsigned n) const {
    if (precision && *precision < n) {
      throw Error(ErrorKind::PrecisionInsufficient,
                  "p-adic entry known to " + std::to_string(*precision) + " digits, level " + std::to_string(n) + " needs " + std::to_string(n));
    }
    return mod_floor(value, ipow(p, n)).get_si();
  }
};

struct CoverSpec {
  std::int64_t p = 2;
  std::size_t d = 1;
  std::vector<std::vector<PadicEntry>> meridian_images;  // c rows of length d
  std::string base = "ZHS3";

  static CoverSpec from_integers(std::int64_t p, const IntMatrix& v) {
    CoverSpec s;
    s.p = p;
    s.d = v.empty() ? 0 : v.front().size();
    for (const auto& row : v) {
      std::vector<PadicEntry> r;
      for (auto x : row) r.push_back(PadicEntry::integer(x));
      s.meridian_images.push_back(r);
    }
    return s;
  }

  static CoverSpec identity(std::int64_t p, std::size_t c) {
    IntMatrix v(c, std::vector<std::int64_t>(c, 0));
    for (std::size_t i = 0; i < c; ++i) v[i][i] = 1;
    return from_integers(p, v);
  }

  bool integral() const {
    for (const auto& row : meridian_images) {
      for (const auto& e : row) {
        if (e.precision) return false;
      }
    }
    return true;
  }

  /// Integer rows; only valid when every entry is an integer.
  IntMatrix integer_rows() const {
    if (!integral()) throw Error(ErrorKind::InvalidArgument, "meridian images have p-adic entries");
    IntMatrix out;
    for (const auto& row : meridian_images) {
      std::vector<std::int64_t> r;
      for (const auto& e : row) {
        if (!e.value.fits_slong_p()) throw Error(ErrorKind::InvalidArgument, "meridian image entry too large");
        r.push_back(e.value.get_si());
      }
      out.push_back(r);
    }
    return out;
  }

  /// Rows reduced into [0, p^n).
  IntMatrix rows_mod(unsigned n) const {
    IntMatrix out;
    for (const auto& row : meridian_images) {
      std::vector<std::int64_t> r;
      for (const auto& e : row) r.push_back(e.reduce(p, n));
      out.push_back(r);
    }
    return out;
  }

  void validate(int c) const {
    require_prime(p);
    if (base != "ZHS3") {
      throw Error(ErrorKind::InvalidArgument, "only integral homology sphere bases have exact formulas; got base " + base);
    }
    if (d == 0) throw Error(ErrorKind::DimensionMismatch, "cover rank must be positive");
    if (meridian_images.size() != static_cast<std::size_t>(c)) {
      throw Error(ErrorKind::DimensionMismatch, "need one meridian image per component");
    }
    for (const auto& row : meridian_images) {
      if (row.size() != d) throw Error(ErrorKind::DimensionMismatch, "meridian image rows must have length d");
    }
    if (rank_mod_p(rows_mod(1), p) < d) {
      throw Error(ErrorKind::SurjectivityFailure, "meridian images do not span (Z/" + std::to_string(p) + ")^" + std::to_string(d));
    }
  }
};

/// e(H_1) at one level, or the symbol Infinite.
struct HomologyValue {
  bool infinite = false;
  Integer value = 0;

  std::string to_string() const { return infinite ? "Infinite" : to_decimal(value); }
  friend bool operator==(const HomologyValue& a, const HomologyValue& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
};

/// Which product vanished and where (exponent vector of a zero).
struct VanishingWitness {
  Subset sublink;
  std::vector<std::int64_t> point;
};

struct LevelResult {
  unsigned n = 0;
  HomologyValue exponent;
  std::optional<VanishingWitness> witness;
};

namespace detail {

inline std::vector<Subset> nonempty_subsets(int c) {
  std::vector<Subset> out;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << c); ++mask) {
    Subset s;
    for (int i = 0; i < c; ++i) {
      if (mask >> i & 1U) s.push_back(i + 1);
    }
    out.push_back(s);
  }
  return out;
}

/// Delta_{L'} with variable k replaced by t^{rows[L'_k]}.
inline LaurentPoly substituted_sublink(const LaurentPoly& delta, const Subset& s, const IntMatrix& rows) {
  IntMatrix m;
  for (int j : s) m.push_back(rows[static_cast<std::size_t>(j - 1)]);
  return substitute_monomials(delta, m);
}

/// {zeta^{v_j} != 1 for j in s, zeta^{v_j} = 1 otherwise}.
inline TorusRegion sublink_region(const Subset& s, const IntMatrix& rows, std::int64_t p, unsigned n, std::size_t d) {
  TorusRegion r = TorusRegion::full(p, n, d);
  std::size_t k = 0;
  for (std::size_t j = 0; j < rows.size(); ++j) {
    const bool inside = k < s.size() && static_cast<std::size_t>(s[k] - 1) == j;
    (inside ? r.neq : r.eq).push_back(rows[j]);
    if (inside) ++k;
  }
  return r;
}

}  // namespace detail

/// Delta_L(t^{v_1}, ..., t^{v_c}) up to units.
inline LaurentPoly reduced_alexander(const LinkPresentation& link, const CoverSpec& spec) {
  link.validate();
  spec.validate(link.c);
  return normalize_unit(substitute_monomials(link.delta(), spec.integer_rows()));
}

/// e(H_1(M_{p^n})) of the branched cover: d n - sum_i R_i + sum_{L'} S_{L'}.
inline LevelResult homology_exponent_branched(const LinkPresentation& link, const CoverSpec& spec, unsigned n) {
  link.validate();
  spec.validate(link.c);
  const auto subsets = detail::nonempty_subsets(link.c);
  for (const auto& s : subsets) link.sublink(s);
  const IntMatrix rows = spec.rows_mod(n);
  const std::size_t d = spec.d;
  LevelResult out;
  out.n = n;
  Integer e = Integer(static_cast<long>(d)) * n;
  for (int i = 1; i <= link.c; ++i) {
    const Subset s{i};
    LaurentPoly g = LaurentPoly::monomial(rows[static_cast<std::size_t>(i - 1)]) - LaurentPoly::constant(d, 1);
    if (g.is_zero()) continue;  // v_i = 0 mod p^n: the region is empty
    const TorusRegion region = detail::sublink_region(s, rows, spec.p, n, d);
    const TorusSum r = sigma_t(g, region, VanishingPolicy::Explicit);
    if (r.vanishes) {
      out.exponent.infinite = true;
      out.witness = VanishingWitness{{}, {}};
      return out;
    }
    e -= r.value;
  }
  for (const auto& s : subsets) {
    const LaurentPoly g = detail::substituted_sublink(link.sublink(s), s, rows);
    const TorusRegion region = detail::sublink_region(s, rows, spec.p, n, d);
    if (g.is_zero()) {
      const auto pts = orbit_representatives(solve_subgroup(region.eq, spec.p, n, d));
      for (const auto& o : pts) {
        if (region.contains(o.x)) {
          out.exponent.infinite = true;
          out.witness = VanishingWitness{s, o.x};
          return out;
        }
      }
      continue;
    }
    const TorusSum t = sigma_t(g, region, VanishingPolicy::Explicit);
    if (t.vanishes) {
      std::vector<std::int64_t> w;
      region_vanishes(g, region, &w);
      out.exponent.infinite = true;
      out.witness = VanishingWitness{s, w};
      return out;
    }
    e += t.value;
  }
  out.exponent.value = e;
  return out;
}

/// |H_1(M_{p^n})| for c = d and identity meridian images: product over sublinks of punctured-torus products.
inline LevelResult homology_order_full(const LinkPresentation& link, std::int64_t p, unsigned n) {
  link.validate();
  require_prime(p);
  const std::size_t c = static_cast<std::size_t>(link.c);
  const IntMatrix rows = CoverSpec::identity(p, c).integer_rows();
  LevelResult out;
  out.n = n;
  Integer total = 1;
  for (const auto& s : detail::nonempty_subsets(link.c)) {
    const LaurentPoly g = detail::substituted_sublink(link.sublink(s), s, rows);
    const TorusRegion region = detail::sublink_region(s, rows, p, n, c);
    if (n == 0) continue;
    if (g.is_zero()) {
      out.exponent.infinite = true;
      out.witness = VanishingWitness{s, std::vector<std::int64_t>(c, 0)};
      for (int j : s) out.witness->point[static_cast<std::size_t>(j - 1)] = 1;
      return out;
    }
    const TorusProduct prod = region_product(g, region);
    if (prod.vanishes) {
      std::vector<std::int64_t> w;
      region_vanishes(g, region, &w);
      out.exponent.infinite = true;
      out.witness = VanishingWitness{s, w};
      return out;
    }
    total *= prod.value;
  }
  out.exponent.value = abs(total);
  return out;
}

/// p-exponent of prod_{1 != xi in W(n)} A(xi), A(t) = (t - 1) Delta_L(t, ..., t).
inline LevelResult homology_order_tln(const LinkPresentation& link, std::int64_t p, unsigned n) {
  link.validate();
  require_prime(p);
  const LaurentPoly& delta = link.delta();
  LaurentPoly diag = substitute_monomials(delta, IntMatrix(delta.nvars(), std::vector<std::int64_t>{1}));
  const LaurentPoly t = LaurentPoly::variable(1, 0);
  const LaurentPoly a = (t - LaurentPoly::constant(1, 1)) * diag;
  LevelResult out;
  out.n = n;
  if (n == 0) return out;
  const TorusRegion region = TorusRegion::punctured(p, n, 1);
  if (a.is_zero()) {
    out.exponent.infinite = true;
    out.witness = VanishingWitness{link.full_set(), {1}};
    return out;
  }
  const TorusSum s = sigma_t(a, region, VanishingPolicy::Explicit);
  if (s.vanishes) {
    std::vector<std::int64_t> w;
    region_vanishes(a, region, &w);
    out.exponent.infinite = true;
    out.witness = VanishingWitness{link.full_set(), w};
    return out;
  }
  out.exponent.value = s.value;
  return out;
}

struct TorresResult {
  int component = 0;  // the component whose variable is set to 1
  bool pass = false;
  LaurentPoly lhs{1};
  LaurentPoly rhs{1};
};

struct TorresReport {
  std::vector<TorresResult> components;
  bool pass() const {
    for (const auto& r : components) {
      if (!r.pass) return false;
    }
    return true;
  }
  std::optional<int> first_failure() const {
    for (const auto& r : components) {
      if (!r.pass) return r.component;
    }
    return std::nullopt;
  }
};

/// Torres identity for each deleted component, up to units +-t^a.
inline TorresReport torres_check(const LinkPresentation& link) {
  link.validate();
  if (!link.linking_numbers) throw Error(ErrorKind::MissingLinkingNumbers, "Torres check needs linking numbers");
  TorresReport rep;
  if (link.c < 2) return rep;
  const Subset all = link.full_set();
  for (int k = 1; k <= link.c; ++k) {
    Subset rest;
    for (int j : all) {
      if (j != k) rest.push_back(j);
    }
    const std::size_t m = rest.size();
    TorresResult r;
    r.component = k;
    r.lhs = specialize_to_one(link.delta(), static_cast<std::size_t>(k - 1));
    const LaurentPoly& sub = link.sublink(rest);
    const LaurentPoly one = LaurentPoly::constant(m, 1);
    if (link.c == 2) {
      const std::int64_t l = link.lk(rest[0], k);
      const std::int64_t al = l < 0 ? -l : l;
      LaurentPoly geo(1);
      for (std::int64_t i = 0; i < al; ++i) geo.add_term({i}, 1);  // (t^|l| - 1)/(t - 1)
      r.rhs = geo * sub;
    } else {
      Exponent e(m);
      for (std::size_t i = 0; i < m; ++i) e[i] = link.lk(rest[i], k);
      r.rhs = (LaurentPoly::monomial(e) - one) * sub;
    }
    r.pass = equal_up_to_unit(r.lhs, r.rhs);
    rep.components.push_back(std::move(r));
  }
  return rep;
}

struct VanishingLevel {
  unsigned n = 0;
  bool vanishes_punctured = false;   // on (W(n) \ {1})^c
  bool vanishes_off_origin = false;  // on W(n)^c \ {(1, ..., 1)}
  std::vector<std::int64_t> witness_punctured;
  std::vector<std::int64_t> witness_off_origin;
};

struct VanishingReport {
  std::int64_t p = 2;
  std::vector<VanishingLevel> levels;
  bool nonvanishing_punctured() const {
    for (const auto& l : levels) {
      if (l.vanishes_punctured) return false;
    }
    return true;
  }
  bool nonvanishing_off_origin() const {
    for (const auto& l : levels) {
      if (l.vanishes_off_origin) return false;
    }
    return true;
  }
};

/// Zeros of Delta_L on the punctured torus and on the torus minus the origin, levels 1..nmax.
inline VanishingReport vanishing_check(const LinkPresentation& link, std::int64_t p, unsigned nmax) {
  link.validate();
  require_prime(p);
  const std::size_t c = static_cast<std::size_t>(link.c);
  const LaurentPoly& delta = link.delta();
  const IntMatrix rows = CoverSpec::identity(p, c).integer_rows();
  VanishingReport rep;
  rep.p = p;
  for (unsigned n = 1; n <= nmax; ++n) {
    VanishingLevel lv;
    lv.n = n;
    for (const auto& s : detail::nonempty_subsets(link.c)) {
      if (lv.vanishes_off_origin && s.size() < c) continue;
      const TorusRegion region = detail::sublink_region(s, rows, p, n, c);
      std::vector<std::int64_t> w;
      bool hit;
      if (delta.is_zero()) {
        hit = true;
        w.assign(c, 0);
        for (int j : s) w[static_cast<std::size_t>(j - 1)] = 1;
      } else {
        hit = region_vanishes(delta, region, &w);
      }
      if (!hit) continue;
      if (!lv.vanishes_off_origin) {
        lv.vanishes_off_origin = true;
        lv.witness_off_origin = w;
      }
      if (s.size() == c) {
        lv.vanishes_punctured = true;
        lv.witness_punctured = w;
      }
    }
    rep.levels.push_back(lv);
  }
  return rep;
}

/// The prime-to-p root of unity congruent to a mod p, mod p^precision.
inline Integer teichmuller_lift(const Integer& a, std::int64_t p, unsigned precision) {
  require_prime(p);
  if (a % p == 0) throw Error(ErrorKind::InvalidArgument, "Teichmuller lift of a multiple of p");
  const Integer mod = ipow(p, precision);
  Integer x = mod_floor(a, mod);
  for (unsigned i = 0; i <= precision + 1; ++i) {
    Integer y;
    mpz_powm_ui(y.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p), mod.get_mpz_t());
    if (y == x) return x;
    x = y;
  }
  return x;
}

struct PadicLimit {
  std::int64_t p = 2;
  unsigned precision = 0;
  Integer modulus;
  Integer residue;
  unsigned stable_from = 0;          // first level from which every residue agrees
  std::optional<Integer> predicted;  // omega(a) / a for orders a^{p^n - 1}
  bool agrees = true;
};

/// Residue mod p^precision of the limit of the prime-to-p parts of `orders`.
inline PadicLimit padic_limit_nonp(std::vector<GrowthSample> orders, std::int64_t p, unsigned precision,
                                   std::optional<Integer> base = std::nullopt) {
  require_prime(p);
  if (orders.empty()) throw Error(ErrorKind::InsufficientSamples, "no orders given");
  std::sort(orders.begin(), orders.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
  PadicLimit out;
  out.p = p;
  out.precision = precision;
  out.modulus = ipow(p, precision);
  std::vector<Integer> res;
  for (const auto& o : orders) {
    if (o.value == 0) throw Error(ErrorKind::InvalidArgument, "order 0 at level " + std::to_string(o.n));
    res.push_back(mod_floor(split_p_part(abs(o.value), p).second, out.modulus));
  }
  if (res.size() < 2 || res[res.size() - 1] != res[res.size() - 2]) {
    throw Error(ErrorKind::NotStabilized, "residues mod " + to_decimal(out.modulus) + " do not stabilize within the given levels");
  }
  std::size_t first = res.size() - 1;
  while (first > 0 && res[first - 1] == res.back()) --first;
  out.residue = res.back();
  out.stable_from = orders[first].n;
  if (base) {
    const Integer w = teichmuller_lift(*base, p, precision);
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), Integer(mod_floor(*base, out.modulus)).get_mpz_t(), out.modulus.get_mpz_t()) == 0) {
      throw Error(ErrorKind::InvalidArgument, "base is not a unit mod p");
    }
    out.predicted = mod_floor(w * inv, out.modulus);
    out.agrees = *out.predicted == out.residue;
  }
  return out;
}

struct HomologyReport {
  std::int64_t p = 2;
  std::size_t d = 1;
  std::string mode;  // "branched", "full-order" or "tln"
  std::vector<LevelResult> levels;
  std::optional<GrowthFit> fit;
  std::optional<Rational> fitted_mu;
  std::optional<Rational> fitted_lambda;
  std::string fit_status;
};

namespace detail {

/// Fits the longest run of finite exponents ending at the last level.
inline void attach_fit(HomologyReport& rep, unsigned dim) {
  std::vector<GrowthSample> tail;
  for (auto it = rep.levels.rbegin(); it != rep.levels.rend() && !it->exponent.infinite; ++it) {
    tail.insert(tail.begin(), GrowthSample{it->n, it->exponent.value});
  }
  try {
    GrowthFit fit = fit_growth_polynomial(tail, rep.p, dim);
    rep.fitted_mu = fit.poly.coefficient(dim, 0);
    rep.fitted_lambda = dim >= 1 ? fit.poly.coefficient(dim - 1, 1) : Rational(0);
    rep.fit = std::move(fit);
    rep.fit_status = "ok";
  } catch (const Error& e) {
    rep.fit_status = to_string(e.kind());
  }
}

}  // namespace detail

/// Branched-cover exponents for n = 1..nmax and their growth polynomial.
inline HomologyReport growth_report(const LinkPresentation& link, const CoverSpec& spec, unsigned nmax) {
  HomologyReport rep;
  rep.p = spec.p;
  rep.d = spec.d;
  rep.mode = "branched";
  for (unsigned n = 1; n <= nmax; ++n) rep.levels.push_back(homology_exponent_branched(link, spec, n));
  detail::attach_fit(rep, static_cast<unsigned>(spec.d));
  return rep;
}

/// Full orders (c = d, identity images) for n = 1..nmax; the fit uses their p-exponents.
inline HomologyReport growth_report_full(const LinkPresentation& link, std::int64_t p, unsigned nmax) {
  HomologyReport rep;
  rep.p = p;
  rep.d = static_cast<std::size_t>(link.c);
  rep.mode = "full-order";
  for (unsigned n = 1; n <= nmax; ++n) rep.levels.push_back(homology_order_full(link, p, n));
  HomologyReport exps = rep;
  for (auto& l : exps.levels) {
    if (!l.exponent.infinite) l.exponent.value = valuation(l.exponent.value, p);
  }
  detail::attach_fit(exps, static_cast<unsigned>(rep.d));
  rep.fit = exps.fit;
  rep.fitted_mu = exps.fitted_mu;
  rep.fitted_lambda = exps.fitted_lambda;
  rep.fit_status = exps.fit_status;
  return rep;
}

inline HomologyReport tln_report(const LinkPresentation& link, std::int64_t p, unsigned nmax) {
  HomologyReport rep;
  rep.p = p;
  rep.d = 1;
  rep.mode = "tln";
  for (unsigned n = 1; n <= nmax; ++n) rep.levels.push_back(homology_order_tln(link, p, n));
  detail::attach_fit(rep, 1);
  return rep;
}

}  // namespace iwalink
