#include <gtest/gtest.h>

#include <random>

#include "iwalink/torus.hpp"
#include "test_util.hpp"

using namespace iwalink;
using iwalink::testing::random_poly;

namespace {

LaurentPoly T(std::size_t d, std::size_t i) { return LaurentPoly::variable(d, i); }
LaurentPoly one(std::size_t d) { return LaurentPoly::constant(d, 1); }

Integer sigma_value(const LaurentPoly& f, const TorusRegion& r, VanishingPolicy pol = VanishingPolicy::ZeroConvention) {
  TorusSum s = sigma(f, r, pol);
  EXPECT_FALSE(s.vanishes);
  return s.value;
}

}  // namespace

TEST(SolveSubgroup, Examples) {
  auto b = solve_subgroup({{1, 0}}, 2, 1, 2);
  ASSERT_EQ(b.rank(), 1U);
  EXPECT_EQ(b.generators[0], (std::vector<std::int64_t>{0, 1}));
  EXPECT_EQ(b.orders(), (std::vector<std::int64_t>{2}));

  auto full = solve_subgroup({}, 3, 2, 2);
  ASSERT_EQ(full.rank(), 2U);
  EXPECT_EQ(full.generators[0], (std::vector<std::int64_t>{1, 0}));
  EXPECT_EQ(full.generators[1], (std::vector<std::int64_t>{0, 1}));
  EXPECT_EQ(full.orders(), (std::vector<std::int64_t>{9, 9}));

  auto diag = solve_subgroup({{1, 1}}, 2, 1, 2);
  ASSERT_EQ(diag.rank(), 1U);
  EXPECT_EQ(diag.generators[0], (std::vector<std::int64_t>{1, 1}));
  EXPECT_EQ(diag.orders(), (std::vector<std::int64_t>{2}));
}

TEST(SolveSubgroup, OrderMatchesEnumeration) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> c(-4, 4);
  for (std::int64_t p : {2, 3}) {
    for (unsigned n = 0; n <= 3; ++n) {
      if (ipow64(p, static_cast<int>(n)) > 27) continue;
      for (int it = 0; it < 8; ++it) {
        const std::size_t d = 1 + static_cast<std::size_t>(it % 3);
        if (ipow64(ipow64(p, static_cast<int>(n)), static_cast<int>(d)) > 30000) continue;
        IntMatrix rows;
        for (int r = 0; r < it % 3; ++r) {
          std::vector<std::int64_t> v(d);
          for (auto& x : v) x = c(rng);
          rows.push_back(v);
        }
        auto basis = solve_subgroup(rows, p, n, d);
        TorusRegion region{p, n, d, rows, {}};
        const auto points = enumerate_points(region);
        EXPECT_EQ(basis.order(), Integer(static_cast<long>(points.size())));
        // orbits cover each point exactly once
        std::size_t covered = 0;
        for (const auto& o : orbit_representatives(basis)) {
          EXPECT_TRUE(region.contains(o.x));
          covered += static_cast<std::size_t>(euler_phi_prime_power(p, o.k));
        }
        EXPECT_EQ(covered, points.size());
      }
    }
  }
}

TEST(TorusProduct, Examples) {
  LaurentPoly f = T(1, 0) - Integer(3) * one(1);
  auto r = torus_product(f, solve_subgroup({}, 2, 1, 1));
  EXPECT_FALSE(r.vanishes);
  EXPECT_EQ(r.value, 8);
  EXPECT_EQ(r.valuation, 3);

  for (std::int64_t p : {2, 3, 5}) {
    auto u = torus_product(T(1, 0), solve_subgroup({}, p, 2, 1));
    EXPECT_EQ(abs(u.value), 1);
    EXPECT_EQ(u.valuation, 0);
  }
  auto z = torus_product(T(1, 0) - one(1), solve_subgroup({}, 3, 1, 1));
  EXPECT_TRUE(z.vanishes);
  EXPECT_THROW(torus_product(LaurentPoly(1), solve_subgroup({}, 3, 1, 1)), Error);
}

TEST(Sigma, Examples) {
  EXPECT_EQ(sigma_value(T(2, 0), TorusRegion::full(3, 2, 2)), 18);
  EXPECT_EQ(sigma_value(Integer(2) * one(2), TorusRegion::full(2, 1, 2)), 4);
  EXPECT_EQ(sigma_value(one(3), TorusRegion::full(5, 1, 3)), 0);
  EXPECT_EQ(sigma_value(one(2), TorusRegion{3, 2, 2, {{1, 1}}, {{1, 0}}}), 0);
}

TEST(Sigma, ExplicitPolicyReportsAxisZero) {
  // T1 vanishes on the axis zeta_1 = 1: v(0) = 0 gives the anchor value, Explicit reports it
  EXPECT_TRUE(sigma(T(2, 0), TorusRegion::full(3, 1, 2), VanishingPolicy::Explicit).vanishes);
  EXPECT_EQ(sigma(T(2, 0), TorusRegion::full(3, 1, 2)).value, 3);
}

TEST(Sigma, VanishesInsideRegion) {
  LaurentPoly t1 = T(1, 0);
  // F(T) = T vanishes at zeta = 1 (T = 0); the punctured torus avoids it
  EXPECT_EQ(sigma_value(t1, TorusRegion::punctured(3, 2, 1)), 2);
  LaurentPoly g = t1 - Integer(2) * one(1);  // zeta - 3 in t-form never vanishes
  EXPECT_FALSE(sigma(g, TorusRegion::full(3, 2, 1)).vanishes);
  // (T1 - T2) vanishes on the diagonal minus the origin
  LaurentPoly h = T(2, 0) - T(2, 1);
  auto r = sigma(h, TorusRegion::punctured(2, 1, 2), VanishingPolicy::Explicit);
  EXPECT_TRUE(r.vanishes);
  auto z = sigma(h, TorusRegion::punctured(2, 1, 2), VanishingPolicy::ZeroConvention);
  EXPECT_FALSE(z.vanishes);
}

TEST(Sigma, AgreesWithExactProductAndFiltering) {
  std::mt19937_64 rng(23);
  int compared = 0;
  for (int it = 0; it < 80; ++it) {
    const std::size_t d = 1 + static_cast<std::size_t>(it % 2);
    const std::int64_t p = it % 3 == 0 ? 3 : 2;
    const unsigned n = 1 + static_cast<unsigned>(it % 3);
    LaurentPoly g = random_poly(rng, d, 4, -2, 3, 6);
    if (g.is_zero()) continue;
    TorusRegion regions[] = {TorusRegion::full(p, n, d), TorusRegion::punctured(p, n, d)};
    for (const auto& region : regions) {
      const auto prod = region_product(g, region);
      const auto s = sigma_t(g, region, VanishingPolicy::Explicit);
      const auto f = sigma_t_filtered(g, region, VanishingPolicy::Explicit);
      EXPECT_EQ(prod.vanishes, s.vanishes);
      EXPECT_EQ(f.vanishes, s.vanishes);
      if (!prod.vanishes) {
        EXPECT_EQ(s.value, prod.valuation) << g.to_string();
        EXPECT_EQ(f.value, prod.valuation);
        ++compared;
      }
      const auto s0 = sigma_t(g, region, VanishingPolicy::ZeroConvention);
      const auto f0 = sigma_t_filtered(g, region, VanishingPolicy::ZeroConvention);
      EXPECT_EQ(s0.value, f0.value);
    }
  }
  EXPECT_GT(compared, 50);
}

TEST(Sigma, PartitionBySignPatterns) {
  std::mt19937_64 rng(29);
  const IntMatrix family = {{1, 0}, {1, 2}};
  for (int it = 0; it < 20; ++it) {
    LaurentPoly g = random_poly(rng, 2, 4, 0, 3, 5);
    if (g.is_zero()) continue;
    const std::int64_t p = it % 2 ? 3 : 2;
    const unsigned n = 2;
    auto full = sigma_t(g, TorusRegion::full(p, n, 2), VanishingPolicy::ZeroConvention);
    Integer total = 0;
    for (int mask = 0; mask < 4; ++mask) {
      TorusRegion r = TorusRegion::full(p, n, 2);
      for (int i = 0; i < 2; ++i) (mask >> i & 1 ? r.eq : r.neq).push_back(family[static_cast<std::size_t>(i)]);
      total += sigma_t(g, r, VanishingPolicy::ZeroConvention).value;
    }
    EXPECT_EQ(total, full.value);
  }
}

TEST(NormDetOracle, Examples) {
  EXPECT_EQ(norm_det_oracle(T(1, 0) - Integer(3) * one(1), 2, 1), 8);
  EXPECT_EQ(norm_det_oracle(one(2), 3, 2), 1);
  auto x = T(2, 0), y = T(2, 1);
  EXPECT_EQ(norm_det_oracle(x.pow(2) * y.pow(2) + x * y + one(2), 2, 1), 9);
  try {
    norm_det_oracle(one(3), 2, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ScaleExceeded);
  }
  EXPECT_THROW(norm_det_oracle(one(1), 2, 4), Error);
}

TEST(NormDetOracle, MatchesTorusProduct) {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 30; ++it) {
    const std::size_t d = 1 + static_cast<std::size_t>(it % 2);
    LaurentPoly f = random_poly(rng, d, 4, -2, 3, 5);
    if (f.is_zero()) continue;
    for (std::int64_t p : {2, 3}) {
      for (unsigned n = 0; n <= 2; ++n) {
        const auto tp = torus_product(f, solve_subgroup({}, p, n, d));
        EXPECT_EQ(tp.vanishes ? Integer(0) : tp.value, norm_det_oracle(f, p, n)) << f.to_string();
      }
    }
  }
}

TEST(OrbitValuation, FastPathMatchesNorm) {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<int> c(-9, 9);
  for (std::int64_t p : {2, 3, 5}) {
    for (unsigned k = 1; k <= 3; ++k) {
      const std::int64_t pk = ipow64(p, static_cast<int>(k));
      std::uniform_int_distribution<std::int64_t> ex(0, pk - 1);
      for (int it = 0; it < 30; ++it) {
        SparseCyclic g;
        for (int j = 0; j < 4; ++j) g[ex(rng)] += c(rng) * (it % 4 == 0 ? p : 1);
        for (auto i = g.begin(); i != g.end();) i = i->second == 0 ? g.erase(i) : std::next(i);
        const Integer norm = orbit_norm(g, p, k);
        const auto v = orbit_valuation(g, p, k);
        if (norm == 0) {
          EXPECT_FALSE(v.has_value());
        } else {
          ASSERT_TRUE(v.has_value());
          EXPECT_EQ(*v, valuation(norm, p));
        }
      }
    }
  }
}
