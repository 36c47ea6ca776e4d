#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iwalink/bigint.hpp"
#include "iwalink/covers.hpp"
#include "iwalink/error.hpp"
#include "iwalink/json_io.hpp"
#include "iwalink/laurent.hpp"

namespace iwalink {

enum class Parity { Odd, Even };

namespace detail {

inline void check_whitehead_index(std::int64_t m, Parity parity) {
  if (m < 0 || (parity == Parity::Even && m < 1)) {
    throw Error(ErrorKind::IndexOutOfRange, "Whitehead index needs m >= 0 (odd) or m >= 1 (even), got m = " + std::to_string(m));
  }
}

inline LaurentPoly xy_poly(std::initializer_list<std::pair<Exponent, Integer>> terms) {
  LaurentPoly f(2);
  for (const auto& [e, c] : terms) f.add_term(e, c);
  return f;
}

}  // namespace detail

/// Delta of W_{2m+1} or W_{2m} in x, y.
inline LaurentPoly whitehead_delta(std::int64_t m, Parity parity) {
  detail::check_whitehead_index(m, parity);
  const Integer k(static_cast<long>(m));
  if (parity == Parity::Odd) return detail::xy_poly({{{0, 0}, 1 + k}, {{1, 0}, -k}, {{0, 1}, -k}, {{1, 1}, 1 + k}});
  return detail::xy_poly({{{0, 0}, k}, {{1, 0}, -k}, {{0, 1}, -k}, {{1, 1}, k}});
}

/// Conway potential of W_{2m+1} or W_{2m} in the square-root variables t_a, t_b.
inline LaurentPoly conway_whitehead(std::int64_t m, Parity parity) {
  detail::check_whitehead_index(m, parity);
  const Integer k(static_cast<long>(m));
  if (parity == Parity::Odd) {
    return detail::xy_poly({{{1, 1}, -(k + 1)}, {{-1, -1}, -(k + 1)}, {{1, -1}, k}, {{-1, 1}, k}});
  }
  return detail::xy_poly({{{1, 1}, k}, {{1, -1}, -k}, {{-1, 1}, -k}, {{-1, -1}, k}});
}

struct ConwayCheck {
  std::string name;
  std::int64_t m = 0;
  bool pass = false;
};

/// Recurrences, inversion symmetry and the Delta(t^2) relation for indices up to mmax.
inline std::vector<ConwayCheck> conway_self_test(std::int64_t mmax = 20) {
  const LaurentPoly diag = detail::xy_poly({{{1, 1}, 1}, {{-1, -1}, 1}});
  const LaurentPoly anti = detail::xy_poly({{{1, -1}, 1}, {{-1, 1}, 1}});
  const IntMatrix invert = {{-1, 0}, {0, -1}};
  const IntMatrix square = {{2, 0}, {0, 2}};
  std::vector<ConwayCheck> out;
  for (std::int64_t m = 0; m <= mmax; ++m) {
    const LaurentPoly odd = conway_whitehead(m, Parity::Odd);
    out.push_back({"symmetry-odd", m, substitute_monomials(odd, invert) == odd});
    out.push_back({"delta-odd", m, equal_up_to_unit(odd, substitute_monomials(whitehead_delta(m, Parity::Odd), square))});
    if (m == 0) continue;
    const LaurentPoly even = conway_whitehead(m, Parity::Even);
    out.push_back({"recurrence-odd", m, odd == -even - diag});
    out.push_back({"recurrence-even", m, even == -conway_whitehead(m - 1, Parity::Odd) - anti});
    out.push_back({"symmetry-even", m, substitute_monomials(even, invert) == even});
    out.push_back({"delta-even", m, equal_up_to_unit(even, substitute_monomials(whitehead_delta(m, Parity::Even), square))});
  }
  return out;
}

struct CatalogEntry {
  std::string name;
  LinkPresentation link;
  std::string provenance;
  std::map<std::string, std::string> expected;  // "quantity@p" -> value
};

namespace detail {

inline LinkPresentation two_unknot_link(const LaurentPoly& delta, std::optional<std::int64_t> lk) {
  LinkPresentation l;
  l.c = 2;
  l.sublink_delta[{1}] = LaurentPoly::constant(1, 1);
  l.sublink_delta[{2}] = LaurentPoly::constant(1, 1);
  l.sublink_delta[{1, 2}] = delta;
  if (lk) l.linking_numbers = IntMatrix{{0, *lk}, {*lk, 0}};
  return l;
}

inline std::optional<std::int64_t> whitehead_index(const std::string& name) {
  if (name.size() < 3 || name.compare(0, 2, "W_") != 0) return std::nullopt;
  std::int64_t k = 0;
  for (std::size_t i = 2; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9' || k > 1000000) return std::nullopt;
    k = 10 * k + (name[i] - '0');
  }
  return k;
}

}  // namespace detail

/// W_k: W_{2m+1} or W_{2m}, unknotted components.
inline CatalogEntry whitehead_entry(std::int64_t k) {
  if (k < 1) throw Error(ErrorKind::IndexOutOfRange, "Whitehead links are indexed from 1");
  const Parity parity = k % 2 ? Parity::Odd : Parity::Even;
  const std::int64_t m = k / 2;
  CatalogEntry e;
  e.name = "W_" + std::to_string(k);
  e.link = detail::two_unknot_link(whitehead_delta(m, parity), parity == Parity::Odd ? 2 : 0);
  e.provenance = "twisted Whitehead family, closed form";
  for (std::int64_t p : {2, 3, 5, 7}) {
    if (parity == Parity::Odd) break;
    const auto [kappa, rest] = split_p_part(Integer(static_cast<long>(m)), p);
    if (rest != 1) continue;
    e.expected["mu@" + std::to_string(p)] = std::to_string(kappa);
    e.expected["lambda@" + std::to_string(p)] = "2";
  }
  return e;
}

inline std::vector<std::string> catalog_names() {
  return {"W_1", "W_2", "W_3", "W_4", "W_6", "W_8", "W_10", "6_1^2", "4_1^2", "6_3^3", "8_3^4"};
}

inline CatalogEntry catalog(const std::string& name) {
  if (auto k = detail::whitehead_index(name)) return whitehead_entry(*k);
  CatalogEntry e;
  e.name = name;
  if (name == "6_1^2") {
    e.link = detail::two_unknot_link(detail::xy_poly({{{2, 2}, 1}, {{1, 1}, 1}, {{0, 0}, 1}}), 3);
    e.provenance = "Magen David link";
    e.expected = {{"lambda@3", "2"}, {"order", "3^(p^n-1) for p != 3"}};
  } else if (name == "4_1^2") {
    e.link = detail::two_unknot_link(detail::xy_poly({{{1, 1}, 1}, {{0, 0}, -1}}), std::nullopt);
    e.provenance = "Solomon's knot";
  } else if (name == "6_3^3") {
    e.link.c = 3;
    LaurentPoly f(3);
    f.add_term({1, 1, 1}, -1);
    f.add_term({0, 0, 0}, 1);
    e.link.sublink_delta[{1, 2, 3}] = f;
    e.provenance = "three-component link with binomial Alexander polynomial";
    e.expected = {{"lambda@2", "1"}, {"lambda@3", "1"}, {"lambda@5", "1"}};
  } else if (name == "8_3^4" || name == "8_4^3") {
    e.name = "8_3^4";
    e.link.c = 4;
    const LaurentPoly x = LaurentPoly::variable(4, 0), y = LaurentPoly::variable(4, 1), z = LaurentPoly::variable(4, 2),
                      w = LaurentPoly::variable(4, 3), one = LaurentPoly::constant(4, 1);
    e.link.sublink_delta[{1, 2, 3, 4}] = (x * w - one) * (y * z - one);
    e.provenance = "four-component link, product of two binomials";
    e.expected = {{"lambda@2", "2"}, {"lambda@3", "2"}, {"lambda@5", "2"}};
  } else {
    throw Error(ErrorKind::UnknownName, "no catalog entry named \"" + name + "\"");
  }
  e.link.validate();
  return e;
}

inline Json entry_to_json(const CatalogEntry& e) {
  Json out{{"name", e.name}, {"link", link_to_json(e.link)}, {"provenance", e.provenance}};
  if (!e.expected.empty()) out["expected"] = e.expected;
  return out;
}

inline CatalogEntry entry_from_json(const Json& j, const std::string& path) {
  CatalogEntry e;
  const Json& name = detail::field(j, "name", path);
  if (!name.is_string()) detail::field_error(path + ".name", "expected a string");
  e.name = name.get<std::string>();
  e.link = link_from_json(detail::field(j, "link", path), path + ".link");
  if (j.contains("provenance")) {
    if (!j["provenance"].is_string()) detail::field_error(path + ".provenance", "expected a string");
    e.provenance = j["provenance"].get<std::string>();
  }
  if (j.contains("expected")) {
    if (!j["expected"].is_object()) detail::field_error(path + ".expected", "expected an object");
    for (const auto& [k, v] : j["expected"].items()) {
      if (!v.is_string()) detail::field_error(path + ".expected." + k, "expected a string");
      e.expected[k] = v.get<std::string>();
    }
  }
  return e;
}

/// Entries from JSON text: an array of entries, a single entry, or nothing.
inline std::vector<CatalogEntry> ingest_text(const std::string& text, const std::string& source = "<input>") {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return {};
  const Json j = parse_json_text(text, source);
  std::vector<CatalogEntry> out;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(entry_from_json(j[i], source + "[" + std::to_string(i) + "]"));
  } else {
    out.push_back(entry_from_json(j, source));
  }
  return out;
}

inline std::vector<CatalogEntry> ingest(const std::string& path) { return ingest_text(read_text_file(path), path); }

inline std::string export_entries(const std::vector<CatalogEntry>& entries) {
  Json out = Json::array();
  for (const auto& e : entries) out.push_back(entry_to_json(e));
  return out.dump(2);
}

}  // namespace iwalink
