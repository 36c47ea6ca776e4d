#pragma once

#include <random>
#include <utility>
#include <vector>

#include "iwalink/laurent.hpp"

namespace iwalink::testing {

inline LaurentPoly poly2(const std::vector<std::pair<Exponent, long>>& terms) {
  LaurentPoly p(terms.empty() ? 2 : terms.front().first.size());
  for (const auto& [e, c] : terms) p.add_term(e, c);
  return p;
}

/// Random polynomial with up to `nterms` terms, exponents in [lo, hi], |coefficients| <= cmax.
inline LaurentPoly random_poly(std::mt19937_64& rng, std::size_t d, int nterms, int lo, int hi, int cmax) {
  std::uniform_int_distribution<int> ex(lo, hi), co(-cmax, cmax);
  LaurentPoly p(d);
  for (int i = 0; i < nterms; ++i) {
    Exponent e(d);
    for (auto& a : e) a = ex(rng);
    p.add_term(e, co(rng));
  }
  return p;
}

}  // namespace iwalink::testing
