#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "iwalink/bigint.hpp"
#include "iwalink/error.hpp"
#include "iwalink/growth.hpp"
#include "iwalink/intmatrix.hpp"
#include "iwalink/laurent.hpp"
#include "iwalink/parallel.hpp"
#include "iwalink/torus.hpp"

namespace iwalink {

/// mu of a shifted polynomial: the p-content.
inline std::int64_t mu_invariant(const LaurentPoly& f, std::int64_t p) {
  require_prime(p);
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "mu of zero");
  return p_content(f, p);
}

/// Primitive integer directions e with |e_j| <= bound_j, first nonzero entry positive.
inline std::vector<std::vector<std::int64_t>> candidate_directions(const std::vector<std::int64_t>& bound) {
  const std::size_t d = bound.size();
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> e(d);
  for (std::size_t i = 0; i < d; ++i) e[i] = -bound[i];
  while (true) {
    std::int64_t g = 0;
    for (auto a : e) g = std::gcd(g, a);
    if (g == 1) {
      auto first = std::find_if(e.begin(), e.end(), [](std::int64_t a) { return a != 0; });
      if (*first > 0) out.push_back(e);
    }
    std::size_t i = 0;
    for (; i < d; ++i) {
      if (++e[i] <= bound[i]) break;
      e[i] = -bound[i];
    }
    if (i == d) break;
  }
  return out;
}

/// Multiplicity of (t^e - 1) in a t-form polynomial over F_p, e primitive.
inline std::int64_t direction_multiplicity(const LaurentPoly& delta_bar, const std::vector<std::int64_t>& e, std::int64_t p) {
  const IntMatrix a = transpose(unimodular_to_first_basis(e));
  LaurentPoly q = substitute_monomials(delta_bar, a);
  q = q.shifted(clearing_monomial(q));
  LaurentPoly s1 = LaurentPoly::variable(q.nvars(), 0) - LaurentPoly::constant(q.nvars(), 1);
  std::int64_t mult = 0;
  while (true) {
    auto next = trial_divide(q, s1, p);
    if (!next) break;
    q = std::move(*next);
    ++mult;
  }
  return mult;
}

struct LambdaFactor {
  std::vector<std::int64_t> direction;
  std::int64_t multiplicity = 0;
};

/// Height-one primes (t^e - 1) dividing the mod-p reduction of F / p^mu, with multiplicities.
inline std::vector<LambdaFactor> lambda_factors(const LaurentPoly& f, std::int64_t p) {
  const std::int64_t mu = mu_invariant(f, p);
  const LaurentPoly f0 = divide_exact(f, ipow(p, static_cast<std::uint64_t>(mu)));
  const LaurentPoly delta_bar = mod_p_reduce(unshift(f0), p);
  const Exponent lo = delta_bar.min_exponents(), hi = delta_bar.max_exponents();
  std::vector<std::int64_t> bound(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) bound[i] = hi[i] - lo[i];
  const auto dirs = candidate_directions(bound);
  const auto mults = parallel_map<std::int64_t>(dirs.size(), [&](std::size_t i) { return direction_multiplicity(delta_bar, dirs[i], p); });
  std::vector<LambdaFactor> out;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    if (mults[i] > 0) out.push_back({dirs[i], mults[i]});
  }
  return out;
}

/// lambda of a shifted polynomial by factor detection over integer directions.
inline std::int64_t lambda_by_factors(const LaurentPoly& f, std::int64_t p) {
  std::int64_t total = 0;
  for (const auto& lf : lambda_factors(f, p)) total += lf.multiplicity;
  return total;
}

/// F (t-variables) = unit * H(s_1..s_r) after a unimodular monomial change, r = rank of the
/// exponent differences (at least 1).
struct RankReduction {
  std::size_t rank = 1;
  LaurentPoly reduced;  // r variables, t-form
};

inline RankReduction reduce_effective_rank(const LaurentPoly& g) {
  if (g.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "rank reduction of zero");
  const std::size_t d = g.nvars();
  const Exponent base = g.terms().begin()->first;
  IntMatrix diffs;
  for (const auto& [e, c] : g.terms()) {
    std::vector<std::int64_t> row(d);
    bool nonzero = false;
    for (std::size_t i = 0; i < d; ++i) {
      row[i] = e[i] - base[i];
      nonzero |= row[i] != 0;
    }
    if (nonzero) diffs.push_back(row);
  }
  if (diffs.empty()) return {1, LaurentPoly::constant(1, g.terms().begin()->second)};
  const auto dg = diagonalize(diffs, d);
  std::size_t r = 0;
  for (const auto& x : dg.diagonal) r += x != 0 ? 1 : 0;
  IntMatrix q(d, std::vector<std::int64_t>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) q[i][j] = dg.q[i][j].get_si();
  }
  LaurentPoly moved = substitute_monomials(g, q);
  Exponent shift = moved.min_exponents();
  for (auto& a : shift) a = -a;
  moved = moved.shifted(shift);
  LaurentPoly out(r);
  for (const auto& [e, c] : moved.terms()) {
    for (std::size_t i = r; i < d; ++i) {
      if (e[i] != 0) throw Error(ErrorKind::InvalidArgument, "internal: rank reduction left a trailing exponent");
    }
    out.add_term(Exponent(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(r)), c);
  }
  return {r, out};
}

struct AsymptoticOptions {
  unsigned nmax = 0;  // 0 selects max(2r+3, 6) for the effective rank r
  VanishingPolicy policy = VanishingPolicy::ZeroConvention;
  bool throw_on_mismatch = true;
};

struct AsymptoticReport {
  std::int64_t p = 2;
  std::size_t d = 1;
  std::size_t effective_rank = 1;
  std::int64_t mu = 0;      // structural
  std::int64_t lambda = 0;  // structural
  Rational fitted_mu;
  Rational fitted_lambda;
  bool agree = false;
  GrowthFit fit;
  std::vector<GrowthSample> samples;  // Sigma_n in d variables
  std::vector<Rational> residuals;    // (Sigma_n - mu p^{dn} - lambda n p^{(d-1)n}) / p^{(d-1)n}
  std::vector<LambdaFactor> factors;
};

/// Sigma_n for n = 1..nmax, exact growth fit, and comparison with the structural invariants.
inline AsymptoticReport verify_asymptotic(const LaurentPoly& f, std::int64_t p, const AsymptoticOptions& opt = {}) {
  require_prime(p);
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "verify_asymptotic of zero");
  AsymptoticReport rep;
  rep.p = p;
  rep.d = f.nvars();
  rep.mu = mu_invariant(f, p);
  rep.factors = lambda_factors(f, p);
  for (const auto& lf : rep.factors) rep.lambda += lf.multiplicity;

  const LaurentPoly g = unshift(f);
  const RankReduction red = reduce_effective_rank(g);
  rep.effective_rank = red.rank;
  const unsigned r = static_cast<unsigned>(red.rank);
  const unsigned d = static_cast<unsigned>(rep.d);
  const unsigned nmax = opt.nmax ? opt.nmax : std::max(2 * r + 3, 6U);

  std::vector<GrowthSample> reduced;
  for (unsigned n = 1; n <= nmax; ++n) {
    const TorusSum s = sigma_t(red.reduced, TorusRegion::full(p, n, r), opt.policy);
    if (s.vanishes) throw Error(ErrorKind::VanishesOnTorus, "polynomial vanishes on W(" + std::to_string(n) + ")^d");
    reduced.push_back({n, s.value});
    rep.samples.push_back({n, s.value * ipow(p, static_cast<std::uint64_t>((d - r) * n))});
  }
  GrowthFit fit = fit_growth_polynomial(reduced, p, r);
  fit.poly = fit.poly.times_u_power(d - r);
  rep.fit = fit;
  rep.fitted_mu = fit.poly.coefficient(d, 0);
  rep.fitted_lambda = d >= 1 ? fit.poly.coefficient(d - 1, 1) : Rational(0);
  rep.agree = rep.fitted_mu == rep.mu && rep.fitted_lambda == rep.lambda;
  for (const auto& s : rep.samples) {
    const Integer pd1 = ipow(p, static_cast<std::uint64_t>((d - 1) * s.n));
    Rational res(s.value - Integer(rep.mu) * ipow(p, static_cast<std::uint64_t>(d * s.n)) - Integer(rep.lambda) * Integer(s.n) * pd1, pd1);
    res.canonicalize();
    rep.residuals.push_back(res);
  }
  if (!rep.agree && opt.throw_on_mismatch) {
    throw Error(ErrorKind::MismatchMuLambda, "structural (mu, lambda) = (" + std::to_string(rep.mu) + ", " + std::to_string(rep.lambda) +
                                                 ") but fitted = (" + to_decimal(rep.fitted_mu) + ", " + to_decimal(rep.fitted_lambda) + ")");
  }
  return rep;
}

}  // namespace iwalink
