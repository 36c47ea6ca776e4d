#include <gtest/gtest.h>

#include <random>

#include "iwalink/json_io.hpp"
#include "test_util.hpp"

using namespace iwalink;

TEST(PolyJson, BitExactFormat) {
  LaurentPoly f(2);
  f.add_term({0, 0}, 1);
  f.add_term({2, 2}, 1);
  f.add_term({1, 1}, 1);
  EXPECT_EQ(poly_to_json(f, {"x", "y"}).dump(),
            R"({"vars":["x","y"],"terms":[{"e":[2,2],"c":"1"},{"e":[1,1],"c":"1"},{"e":[0,0],"c":"1"}]})");
}

TEST(PolyJson, AcceptsAnyOrderAndUnicodeMinus) {
  const Json j = Json::parse(R"({"vars":["t"],"terms":[{"e":[-1],"c":"−3"},{"e":[4],"c":"12345678901234567890"},{"e":[-1],"c":"1"}]})");
  const NamedPoly np = poly_from_json(j);
  EXPECT_EQ(np.vars, (std::vector<std::string>{"t"}));
  EXPECT_EQ(np.poly.coefficient({-1}), -2);
  EXPECT_EQ(np.poly.coefficient({4}), Integer("12345678901234567890"));
}

TEST(PolyJson, RoundTripRandom) {
  std::mt19937_64 rng(53);
  for (int it = 0; it < 50; ++it) {
    const std::size_t d = 1 + static_cast<std::size_t>(it % 4);
    const LaurentPoly f = iwalink::testing::random_poly(rng, d, 6, -3, 3, 1000);
    const Json j = poly_to_json(f);
    EXPECT_EQ(poly_from_json(Json::parse(j.dump())).poly, f);
  }
}

TEST(PolyJson, FieldDiagnostics) {
  try {
    poly_from_json(Json::parse(R"({"vars":["x"],"terms":[{"e":[1],"c":"abc"}]})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    EXPECT_NE(std::string(e.what()).find("poly.terms[0].c"), std::string::npos) << e.what();
  }
}

TEST(RegionJson, RoundTrip) {
  const TorusRegion r{3, 2, 2, {{1, 0}}, {{0, 1}}};
  const Json j = region_to_json(r);
  EXPECT_EQ(j.dump(), R"({"p":3,"n":2,"d":2,"eq":[[1,0]],"neq":[[0,1]]})");
  const TorusRegion back = region_from_json(j);
  EXPECT_EQ(back.eq, r.eq);
  EXPECT_EQ(back.neq, r.neq);
  EXPECT_THROW(region_from_json(Json::parse(R"({"p":4,"n":1,"d":1})")), Error);
}

TEST(CoverJson, PadicDigits) {
  const CoverSpec spec = cover_from_json(Json::parse(R"({"p":3,"d":2,"V":[[1,0],[{"digits":[1,2,0],"precision":3},1]]})"));
  ASSERT_EQ(spec.meridian_images.size(), 2U);
  EXPECT_EQ(spec.meridian_images[1][0].value, 7);
  EXPECT_EQ(spec.meridian_images[1][0].precision, 3U);
  EXPECT_FALSE(spec.integral());
  EXPECT_EQ(cover_to_json(spec).dump(), R"({"p":3,"d":2,"V":[[1,0],[{"digits":[1,2,0],"precision":3},1]]})");
  EXPECT_THROW(cover_from_json(Json::parse(R"({"p":3,"d":1,"V":[[{"digits":[3],"precision":1}]]})")), Error);
}

TEST(LinkJson, RoundTrip) {
  const Json j = Json::parse(R"({"c":2,"sublinks":{"1":{"vars":["x"],"terms":[{"e":[0],"c":"1"}]},
    "2":{"vars":["y"],"terms":[{"e":[0],"c":"1"}]},
    "1,2":{"vars":["x","y"],"terms":[{"e":[2,2],"c":"1"},{"e":[1,1],"c":"1"},{"e":[0,0],"c":"1"}]}},"lk":{"1,2":3}})");
  const LinkPresentation link = link_from_json(j);
  EXPECT_EQ(link.c, 2);
  EXPECT_EQ(link.lk(1, 2), 3);
  EXPECT_EQ(link_to_json(link), j);
}

TEST(LinkJson, Rejects) {
  EXPECT_THROW(link_from_json(Json::parse(R"({"c":2,"sublinks":{}})")), Error);
  EXPECT_THROW(link_from_json(Json::parse(R"({"c":1,"sublinks":{"1":{"vars":["x","y"],"terms":[]}}})")), Error);
  EXPECT_THROW(link_from_json(Json::parse(R"({"c":2,"sublinks":{"2,1":{"vars":["x","y"],"terms":[]}}})")), Error);
}

TEST(ParseJsonText, LineAndColumn) {
  try {
    parse_json_text("{\n  \"a\": ]\n}", "f.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    EXPECT_NE(std::string(e.what()).find("f.json:2:"), std::string::npos) << e.what();
  }
}
