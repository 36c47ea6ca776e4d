#include <gtest/gtest.h>

#include "iwalink/families.hpp"

using namespace iwalink;

namespace {

LaurentPoly xy(std::initializer_list<std::pair<Exponent, long>> terms) {
  LaurentPoly f(2);
  for (const auto& [e, c] : terms) f.add_term(e, c);
  return f;
}

}  // namespace

TEST(WhiteheadDelta, Examples) {
  EXPECT_EQ(whitehead_delta(0, Parity::Odd), xy({{{0, 0}, 1}, {{1, 1}, 1}}));
  EXPECT_EQ(whitehead_delta(1, Parity::Even), xy({{{0, 0}, 1}, {{1, 1}, 1}, {{1, 0}, -1}, {{0, 1}, -1}}));
  for (std::int64_t p : {2, 3, 5}) {
    for (int kappa = 0; kappa <= 2; ++kappa) {
      const std::int64_t m = ipow64(p, kappa);
      const LaurentPoly x = LaurentPoly::variable(2, 0), y = LaurentPoly::variable(2, 1), one = LaurentPoly::constant(2, 1);
      EXPECT_EQ(whitehead_delta(m, Parity::Even), Integer(static_cast<long>(m)) * (x - one) * (y - one));
    }
  }
}

TEST(WhiteheadDelta, IndexOutOfRange) {
  for (auto [m, par] : {std::pair{-1L, Parity::Odd}, std::pair{0L, Parity::Even}, std::pair{-3L, Parity::Even}}) {
    try {
      whitehead_delta(m, par);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::IndexOutOfRange);
    }
  }
  EXPECT_THROW(conway_whitehead(0, Parity::Even), Error);
}

TEST(WhiteheadDelta, ValuesAtOne) {
  for (std::int64_t m = 0; m <= 30; ++m) {
    const LaurentPoly f = whitehead_delta(m, Parity::Odd);
    Integer odd = 0;
    for (const auto& [e, c] : f.terms()) odd += c;
    EXPECT_EQ(odd, 2);
    if (m == 0) continue;
    const LaurentPoly g = whitehead_delta(m, Parity::Even);
    Integer even = 0;
    for (const auto& [e, c] : g.terms()) even += c;
    EXPECT_EQ(even, 0);
  }
}

TEST(ConwayWhitehead, Examples) {
  EXPECT_EQ(conway_whitehead(0, Parity::Odd), xy({{{1, 1}, -1}, {{-1, -1}, -1}}));
  EXPECT_EQ(conway_whitehead(1, Parity::Even), xy({{{1, 1}, 1}, {{1, -1}, -1}, {{-1, 1}, -1}, {{-1, -1}, 1}}));
}

TEST(ConwayWhitehead, SelfTest) {
  const auto checks = conway_self_test(20);
  EXPECT_EQ(checks.size(), 2U + 20U * 6U);
  for (const auto& c : checks) EXPECT_TRUE(c.pass) << c.name << " m=" << c.m;
  bool saw_recurrence_3 = false;
  for (const auto& c : checks) saw_recurrence_3 |= c.name == "recurrence-odd" && c.m == 3 && c.pass;
  EXPECT_TRUE(saw_recurrence_3);
}

TEST(Catalog, Examples) {
  EXPECT_EQ(catalog("6_1^2").link.delta(), xy({{{2, 2}, 1}, {{1, 1}, 1}, {{0, 0}, 1}}));
  EXPECT_EQ(catalog("4_1^2").link.delta(), xy({{{1, 1}, 1}, {{0, 0}, -1}}));
  EXPECT_EQ(catalog("8_4^3").name, "8_3^4");
  EXPECT_EQ(catalog("8_4^3").link.delta(), catalog("8_3^4").link.delta());
  EXPECT_EQ(catalog("W_7").link.delta(), whitehead_delta(3, Parity::Odd));
  EXPECT_EQ(catalog("W_6").expected.at("mu@3"), "1");
  for (const auto& name : catalog_names()) EXPECT_NO_THROW(catalog(name).link.validate()) << name;
}

TEST(Catalog, UnknownName) {
  for (const std::string bad : {"", "7_1^2", "W_", "W_0", "W_x"}) {
    try {
      catalog(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_TRUE(e.kind() == ErrorKind::UnknownName || e.kind() == ErrorKind::IndexOutOfRange) << bad;
    }
  }
}

TEST(Ingest, EmptyAndRoundTrip) {
  EXPECT_TRUE(ingest_text("").empty());
  EXPECT_TRUE(ingest_text("  \n").empty());
  std::vector<CatalogEntry> all;
  for (const auto& name : catalog_names()) all.push_back(catalog(name));
  const std::string text = export_entries(all);
  const auto back = ingest_text(text);
  ASSERT_EQ(back.size(), all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    EXPECT_EQ(back[i].name, all[i].name);
    EXPECT_EQ(back[i].link.sublink_delta, all[i].link.sublink_delta);
    EXPECT_EQ(back[i].link.linking_numbers, all[i].link.linking_numbers);
    EXPECT_EQ(back[i].expected, all[i].expected);
  }
  EXPECT_EQ(export_entries(back), text);
}

TEST(Ingest, RejectsMalformed) {
  auto kind = [](const std::string& text) {
    try {
      ingest_text(text, "corpus.json");
    } catch (const Error& e) {
      return std::pair{e.kind(), std::string(e.what())};
    }
    return std::pair{ErrorKind::InvalidArgument, std::string("accepted")};
  };
  const auto [k1, m1] = kind("[{\"name\": \"a\",\n \"link\": {\"c\": 2,,}}]");
  EXPECT_EQ(k1, ErrorKind::ParseError);
  EXPECT_NE(m1.find("corpus.json:2:"), std::string::npos) << m1;

  const auto [k2, m2] = kind(R"([{"name":"a","link":{"c":2,"sublinks":{"1,3":{"vars":["x","y"],"terms":[]}}}}])");
  EXPECT_EQ(k2, ErrorKind::ParseError);
  EXPECT_NE(m2.find("corpus.json[0].link"), std::string::npos) << m2;

  const auto [k3, m3] = kind(R"({"name":"a","link":{"c":1,"sublinks":{"1":{"vars":["x"],"terms":[{"e":[1,2],"c":"1"}]}}}})");
  EXPECT_EQ(k3, ErrorKind::ParseError);
  EXPECT_NE(m3.find("terms[0].e"), std::string::npos) << m3;
}
