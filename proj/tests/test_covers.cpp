#include <gtest/gtest.h>

#include "iwalink/covers.hpp"
#include "iwalink/families.hpp"

using namespace iwalink;

namespace {

Integer whitehead_exponent(std::int64_t p, std::int64_t kappa, unsigned n) {
  const Integer pn = ipow(p, n);
  return (Integer(kappa) * pn + 2 * n - 2 * kappa) * pn - 2 * n + kappa;
}

LinkPresentation whitehead_pk(std::int64_t p, unsigned kappa) { return whitehead_entry(2 * ipow64(p, static_cast<int>(kappa))).link; }

template <class Fn>
ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(ReducedAlexander, Examples) {
  const auto w2 = catalog("W_2").link;
  const LaurentPoly t = LaurentPoly::variable(1, 0), one = LaurentPoly::constant(1, 1);
  EXPECT_EQ(reduced_alexander(w2, CoverSpec::from_integers(3, {{1}, {1}})), (t - one) * (t - one));
  const auto md = catalog("6_1^2").link;
  EXPECT_EQ(reduced_alexander(md, CoverSpec::identity(5, 2)), normalize_unit(md.delta()));
  const auto sol = catalog("4_1^2").link;
  EXPECT_EQ(reduced_alexander(sol, CoverSpec::identity(2, 2)).to_string(), sol.delta().to_string());
}

TEST(ReducedAlexander, SurjectivityFailure) {
  const auto w2 = catalog("W_2").link;
  EXPECT_EQ(kind_of([&] { reduced_alexander(w2, CoverSpec::from_integers(3, {{1, 0}, {1, 0}})); }), ErrorKind::SurjectivityFailure);
  EXPECT_EQ(kind_of([&] { homology_exponent_branched(w2, CoverSpec::from_integers(3, {{3, 0}, {0, 1}}), 1); }),
            ErrorKind::SurjectivityFailure);
  EXPECT_NO_THROW(homology_exponent_branched(w2, CoverSpec::from_integers(3, {{2, 0}, {0, 1}}), 1));
}

TEST(ReducedAlexander, RejectsRationalHomologyBase) {
  CoverSpec spec = CoverSpec::identity(3, 2);
  spec.base = "QHS3";
  EXPECT_EQ(kind_of([&] { homology_exponent_branched(catalog("W_2").link, spec, 1); }), ErrorKind::InvalidArgument);
}

TEST(HomologyExponentBranched, Examples) {
  const auto w6 = catalog("W_6").link;
  EXPECT_EQ(homology_exponent_branched(w6, CoverSpec::identity(3, 2), 1).exponent.value, 8);
  const auto md = catalog("6_1^2").link;
  const auto r = homology_exponent_branched(md, CoverSpec::identity(2, 2), 2);
  EXPECT_FALSE(r.exponent.infinite);
  EXPECT_EQ(r.exponent.value, 0);
  const auto inf = homology_exponent_branched(md, CoverSpec::identity(3, 2), 2);
  EXPECT_TRUE(inf.exponent.infinite);
  EXPECT_EQ(inf.exponent.to_string(), "Infinite");
  ASSERT_TRUE(inf.witness.has_value());
  EXPECT_EQ(inf.witness->sublink, (Subset{1, 2}));
}

TEST(HomologyExponentBranched, WhiteheadFamily) {
  for (std::int64_t p : {2, 3}) {
    for (unsigned kappa = 0; kappa <= 1; ++kappa) {
      const auto link = whitehead_pk(p, kappa);
      for (unsigned n = 0; n <= 3; ++n) {
        const auto r = homology_exponent_branched(link, CoverSpec::identity(p, 2), n);
        ASSERT_FALSE(r.exponent.infinite);
        EXPECT_EQ(r.exponent.value, whitehead_exponent(p, kappa, n)) << "p=" << p << " kappa=" << kappa << " n=" << n;
      }
    }
  }
}

TEST(HomologyExponentBranched, MissingSublink) {
  LinkPresentation link = catalog("W_2").link;
  link.sublink_delta.erase({2});
  EXPECT_EQ(kind_of([&] { homology_exponent_branched(link, CoverSpec::identity(3, 2), 1); }), ErrorKind::MissingSublink);
}

TEST(HomologyExponentBranched, PadicEntries) {
  const auto link = catalog("W_2").link;
  CoverSpec spec;
  spec.p = 3;
  spec.d = 1;
  // v_2 = 1 + 2*3 + 0*9 to precision 3
  spec.meridian_images = {{PadicEntry::integer(1)}, {PadicEntry::from_digits({1, 2, 0}, 3, 3)}};
  CoverSpec lift = spec;
  lift.meridian_images[1][0] = PadicEntry::integer(7 + 27 * 5);
  for (unsigned n = 1; n <= 3; ++n) {
    EXPECT_EQ(homology_exponent_branched(link, spec, n).exponent, homology_exponent_branched(link, lift, n).exponent);
  }
  EXPECT_EQ(kind_of([&] { homology_exponent_branched(link, spec, 4); }), ErrorKind::PrecisionInsufficient);
}

TEST(HomologyOrderFull, Examples) {
  const auto md = catalog("6_1^2").link;
  EXPECT_EQ(homology_order_full(md, 2, 2).exponent.value, 27);
  EXPECT_EQ(homology_order_full(md, 5, 1).exponent.value, 81);
  EXPECT_EQ(homology_order_full(md, 7, 0).exponent.value, 1);
  EXPECT_EQ(homology_order_full(catalog("W_2").link, 3, 0).exponent.value, 1);
  EXPECT_TRUE(homology_order_full(md, 3, 1).exponent.infinite);
}

TEST(HomologyOrderFull, AgreesWithBranchedExponent) {
  for (const std::string name : {"W_1", "W_2", "W_3", "W_4", "W_6", "6_1^2", "4_1^2"}) {
    const auto link = catalog(name).link;
    for (std::int64_t p : {2, 3}) {
      for (unsigned n = 1; n <= 2; ++n) {
        const auto full = homology_order_full(link, p, n);
        const auto br = homology_exponent_branched(link, CoverSpec::identity(p, 2), n);
        EXPECT_EQ(full.exponent.infinite, br.exponent.infinite) << name << " p=" << p << " n=" << n;
        if (!full.exponent.infinite && !br.exponent.infinite) {
          EXPECT_EQ(Integer(valuation(full.exponent.value, p)), br.exponent.value) << name << " p=" << p << " n=" << n;
        }
      }
    }
  }
}

TEST(HomologyOrderTln, Examples) {
  EXPECT_EQ(homology_order_tln(whitehead_pk(2, 1), 2, 3).exponent.value, 16);
  EXPECT_EQ(homology_order_tln(catalog("W_2").link, 3, 2).exponent.value, 6);
  EXPECT_EQ(homology_order_tln(catalog("W_2").link, 3, 0).exponent.value, 0);
  for (std::int64_t p : {2, 3}) {
    for (unsigned kappa = 0; kappa <= 1; ++kappa) {
      for (unsigned n = 1; n <= 4; ++n) {
        const Integer pn = ipow(p, n);
        EXPECT_EQ(homology_order_tln(whitehead_pk(p, kappa), p, n).exponent.value, Integer(kappa) * pn + 3 * n - kappa);
      }
    }
  }
}

TEST(TorresCheck, Examples) {
  EXPECT_TRUE(torres_check(catalog("W_1").link).pass());
  EXPECT_TRUE(torres_check(catalog("W_4").link).pass());
  // lk = 0 forces Delta(x, 1) = 0
  LinkPresentation bad = catalog("W_2").link;
  LaurentPoly f(2);
  f.add_term({1, 0}, 1);
  f.add_term({0, 1}, 1);
  bad.sublink_delta[{1, 2}] = f;
  const auto rep = torres_check(bad);
  EXPECT_FALSE(rep.pass());
  EXPECT_EQ(rep.first_failure(), 1);
  EXPECT_EQ(kind_of([] { torres_check(catalog("4_1^2").link); }), ErrorKind::MissingLinkingNumbers);
}

TEST(TorresCheck, ThreeComponents) {
  // Delta = xyz - 1 with Hopf-link sublinks and all linking numbers 1
  LinkPresentation link;
  link.c = 3;
  LaurentPoly f(3);
  f.add_term({1, 1, 1}, 1);
  f.add_term({0, 0, 0}, -1);
  link.sublink_delta[{1, 2, 3}] = f;
  for (const Subset& s : {Subset{1, 2}, Subset{1, 3}, Subset{2, 3}}) link.sublink_delta[s] = LaurentPoly::constant(2, 1);
  link.linking_numbers = IntMatrix{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  EXPECT_TRUE(torres_check(link).pass());
  link.linking_numbers = IntMatrix{{0, 2, 1}, {2, 0, 1}, {1, 1, 0}};
  EXPECT_FALSE(torres_check(link).pass());
}

TEST(TorresCheck, PassesOnCatalog) {
  for (const auto& name : catalog_names()) {
    const auto e = catalog(name);
    if (!e.link.linking_numbers) continue;
    EXPECT_TRUE(torres_check(e.link).pass()) << name;
  }
  for (std::int64_t k = 1; k <= 40; ++k) EXPECT_TRUE(torres_check(whitehead_entry(k).link).pass()) << k;
}

TEST(VanishingCheck, Examples) {
  const auto md = vanishing_check(catalog("6_1^2").link, 2, 3);
  ASSERT_EQ(md.levels.size(), 3U);
  EXPECT_TRUE(md.nonvanishing_punctured());
  EXPECT_TRUE(md.nonvanishing_off_origin());

  const auto sol = vanishing_check(catalog("4_1^2").link, 2, 1);
  EXPECT_TRUE(sol.levels[0].vanishes_off_origin);
  EXPECT_EQ(sol.levels[0].witness_off_origin, (std::vector<std::int64_t>{1, 1}));

  const auto md3 = vanishing_check(catalog("6_1^2").link, 3, 2);
  EXPECT_TRUE(md3.levels[1].vanishes_punctured);
}

TEST(PadicLimit, Examples) {
  std::vector<GrowthSample> orders;
  for (unsigned n = 1; n <= 7; ++n) orders.push_back({n, ipow(3, (std::uint64_t{1} << n) - 1)});
  const auto lim = padic_limit_nonp(orders, 2, 6, Integer(3));
  EXPECT_EQ(lim.residue, 43);
  EXPECT_EQ(lim.residue * 3 % 64, 1);
  ASSERT_TRUE(lim.predicted.has_value());
  EXPECT_TRUE(lim.agrees);

  EXPECT_EQ(padic_limit_nonp({{1, 1}, {2, 1}}, 5, 4).residue, 1);

  std::vector<GrowthSample> five;
  for (unsigned n = 1; n <= 4; ++n) five.push_back({n, ipow(3, static_cast<std::uint64_t>(ipow64(5, static_cast<int>(n)) - 1))});
  const auto l5 = padic_limit_nonp(five, 5, 3, Integer(3));
  EXPECT_TRUE(l5.agrees);
  EXPECT_EQ(mod_floor(l5.residue * 3, Integer(125)), teichmuller_lift(3, 5, 3));
}

TEST(PadicLimit, Errors) {
  std::vector<GrowthSample> orders;
  for (unsigned n = 1; n <= 3; ++n) orders.push_back({n, ipow(3, (std::uint64_t{1} << n) - 1)});
  EXPECT_EQ(kind_of([&] { padic_limit_nonp(orders, 2, 8); }), ErrorKind::NotStabilized);
}

TEST(TeichmullerLift, Properties) {
  for (std::int64_t p : {3, 5, 7}) {
    for (std::int64_t a = 1; a < p; ++a) {
      const Integer w = teichmuller_lift(a, p, 4);
      const Integer mod = ipow(p, 4);
      Integer wp;
      mpz_powm_ui(wp.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(p - 1), mod.get_mpz_t());
      EXPECT_EQ(wp, 1);
      EXPECT_EQ(mod_floor(w - a, Integer(p)), 0);
    }
  }
}

TEST(GrowthReport, FitsWhiteheadAndMatchesInvariants) {
  for (std::int64_t p : {2, 3}) {
    for (unsigned kappa = 0; kappa <= 1; ++kappa) {
      const auto link = whitehead_pk(p, kappa);
      const auto rep = growth_report(link, CoverSpec::identity(p, 2), 6);
      ASSERT_TRUE(rep.fit.has_value()) << rep.fit_status;
      EXPECT_EQ(*rep.fitted_mu, kappa);
      EXPECT_EQ(*rep.fitted_lambda, 2);
      const LaurentPoly f = shift_substitute(link.delta());
      EXPECT_EQ(*rep.fitted_mu, mu_invariant(f, p));
      EXPECT_EQ(*rep.fitted_lambda, lambda_by_factors(f, p));
    }
  }
}

TEST(GrowthReport, MagenDavid) {
  const auto md = catalog("6_1^2").link;
  const auto rep = growth_report_full(md, 2, 3);
  for (const auto& l : rep.levels) EXPECT_EQ(l.exponent.value, ipow(3, ipow64(2, static_cast<int>(l.n)) - 1));
  const auto bad = growth_report(md, CoverSpec::identity(3, 2), 2);
  EXPECT_TRUE(bad.levels[1].exponent.infinite);
  EXPECT_FALSE(bad.fit.has_value());
}

TEST(GrowthReport, TlnFit) {
  const auto rep = tln_report(whitehead_pk(3, 1), 3, 6);
  ASSERT_TRUE(rep.fit.has_value());
  EXPECT_EQ(rep.fit->poly.to_string(), "U + 3*V - 1");
}
