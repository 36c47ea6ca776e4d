#pragma once

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "iwalink/bigint.hpp"
#include "iwalink/covers.hpp"
#include "iwalink/error.hpp"
#include "iwalink/growth.hpp"
#include "iwalink/iwasawa.hpp"
#include "iwalink/laurent.hpp"
#include "iwalink/torus.hpp"

namespace iwalink {

using Json = nlohmann::ordered_json;

/// A polynomial together with the names of its variables.
struct NamedPoly {
  std::vector<std::string> vars;
  LaurentPoly poly;
};

inline std::vector<std::string> default_var_names(std::size_t d) {
  static const char* small[] = {"x", "y", "z", "w"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < d; ++i) out.push_back(d <= 4 ? small[i] : "t" + std::to_string(i + 1));
  return out;
}

namespace detail {

[[noreturn]] inline void field_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::ParseError, path + ": " + what);
}

inline const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) field_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) field_error(path, "missing field \"" + key + "\"");
  return *it;
}

inline std::int64_t as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) field_error(path, "expected an integer");
  return j.get<std::int64_t>();
}

inline Integer as_big(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (!j.is_string()) field_error(path, "expected a decimal string");
  try {
    return parse_integer(j.get<std::string>());
  } catch (const Error& e) {
    field_error(path, e.what());
  }
}

inline IntMatrix as_matrix(const Json& j, const std::string& path) {
  if (!j.is_array()) field_error(path, "expected an array of rows");
  IntMatrix out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array()) field_error(rp, "expected an array");
    std::vector<std::int64_t> row;
    for (std::size_t k = 0; k < j[i].size(); ++k) row.push_back(as_int(j[i][k], rp + "[" + std::to_string(k) + "]"));
    out.push_back(row);
  }
  return out;
}

inline Json matrix_json(const IntMatrix& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(row);
  return out;
}

}  // namespace detail

inline Json poly_to_json(const LaurentPoly& p, std::vector<std::string> vars = {}) {
  if (vars.empty()) vars = default_var_names(p.nvars());
  if (vars.size() != p.nvars()) throw Error(ErrorKind::DimensionMismatch, "variable names differ from variable count");
  Json terms = Json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    terms.push_back(Json{{"e", it->first}, {"c", to_decimal(it->second)}});
  }
  return Json{{"vars", vars}, {"terms", terms}};
}

inline NamedPoly poly_from_json(const Json& j, const std::string& path = "poly") {
  const Json& vars = detail::field(j, "vars", path);
  if (!vars.is_array() || vars.empty()) detail::field_error(path + ".vars", "expected a nonempty array of names");
  NamedPoly out{{}, LaurentPoly(vars.size())};
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!vars[i].is_string()) detail::field_error(path + ".vars[" + std::to_string(i) + "]", "expected a string");
    out.vars.push_back(vars[i].get<std::string>());
  }
  const Json& terms = detail::field(j, "terms", path);
  if (!terms.is_array()) detail::field_error(path + ".terms", "expected an array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string tp = path + ".terms[" + std::to_string(i) + "]";
    const Json& e = detail::field(terms[i], "e", tp);
    if (!e.is_array() || e.size() != vars.size()) detail::field_error(tp + ".e", "expected " + std::to_string(vars.size()) + " exponents");
    Exponent ex;
    for (std::size_t k = 0; k < e.size(); ++k) ex.push_back(detail::as_int(e[k], tp + ".e[" + std::to_string(k) + "]"));
    out.poly.add_term(ex, detail::as_big(detail::field(terms[i], "c", tp), tp + ".c"));
  }
  return out;
}

inline Json region_to_json(const TorusRegion& r) {
  return Json{{"p", r.p}, {"n", r.n}, {"d", r.d}, {"eq", detail::matrix_json(r.eq)}, {"neq", detail::matrix_json(r.neq)}};
}

inline TorusRegion region_from_json(const Json& j, const std::string& path = "region") {
  TorusRegion r;
  r.p = detail::as_int(detail::field(j, "p", path), path + ".p");
  const auto n = detail::as_int(detail::field(j, "n", path), path + ".n");
  const auto d = detail::as_int(detail::field(j, "d", path), path + ".d");
  if (n < 0 || d < 1) detail::field_error(path, "need n >= 0 and d >= 1");
  r.n = static_cast<unsigned>(n);
  r.d = static_cast<std::size_t>(d);
  if (j.contains("eq")) r.eq = detail::as_matrix(j["eq"], path + ".eq");
  if (j.contains("neq")) r.neq = detail::as_matrix(j["neq"], path + ".neq");
  try {
    r.validate();
  } catch (const Error& e) {
    detail::field_error(path, e.what());
  }
  return r;
}

inline Subset parse_subset(const std::string& key, const std::string& path) {
  Subset s;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      s.push_back(v);
    } catch (const std::exception&) {
      detail::field_error(path, "bad component list \"" + key + "\"");
    }
  }
  return s;
}

inline Json link_to_json(const LinkPresentation& link) {
  std::vector<Subset> keys;
  for (const auto& kv : link.sublink_delta) keys.push_back(kv.first);
  std::stable_sort(keys.begin(), keys.end(), [](const Subset& a, const Subset& b) { return a.size() < b.size(); });
  Json subs = Json::object();
  for (const auto& s : keys) {
    const LaurentPoly& f = link.sublink_delta.at(s);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < s.size(); ++i) names.push_back(default_var_names(static_cast<std::size_t>(link.c))[static_cast<std::size_t>(s[i] - 1)]);
    subs[subset_key(s)] = poly_to_json(f, names);
  }
  Json out{{"c", link.c}, {"sublinks", subs}};
  if (link.linking_numbers) {
    Json lk = Json::object();
    for (int i = 1; i <= link.c; ++i) {
      for (int j = i + 1; j <= link.c; ++j) lk[subset_key({i, j})] = link.lk(i, j);
    }
    out["lk"] = lk;
  }
  return out;
}

inline LinkPresentation link_from_json(const Json& j, const std::string& path = "link") {
  LinkPresentation link;
  const auto c = detail::as_int(detail::field(j, "c", path), path + ".c");
  if (c < 1 || c > 20) detail::field_error(path + ".c", "component count must be in 1..20");
  link.c = static_cast<int>(c);
  const Json& subs = detail::field(j, "sublinks", path);
  if (!subs.is_object()) detail::field_error(path + ".sublinks", "expected an object keyed by component lists");
  for (const auto& [key, val] : subs.items()) {
    const std::string sp = path + ".sublinks." + key;
    Subset s = parse_subset(key, sp);
    link.sublink_delta.insert_or_assign(s, poly_from_json(val, sp).poly);
  }
  if (j.contains("lk")) {
    const Json& lk = j["lk"];
    if (!lk.is_object()) detail::field_error(path + ".lk", "expected an object keyed by pairs");
    IntMatrix m(static_cast<std::size_t>(c), std::vector<std::int64_t>(static_cast<std::size_t>(c), 0));
    std::size_t seen = 0;
    for (const auto& [key, val] : lk.items()) {
      const std::string lp = path + ".lk." + key;
      Subset s = parse_subset(key, lp);
      if (s.size() != 2 || s[0] == s[1] || s[0] < 1 || s[1] < 1 || s[0] > c || s[1] > c) detail::field_error(lp, "expected a pair of distinct components");
      const auto v = detail::as_int(val, lp);
      m[static_cast<std::size_t>(s[0] - 1)][static_cast<std::size_t>(s[1] - 1)] = v;
      m[static_cast<std::size_t>(s[1] - 1)][static_cast<std::size_t>(s[0] - 1)] = v;
      ++seen;
    }
    if (seen != static_cast<std::size_t>(c * (c - 1) / 2)) detail::field_error(path + ".lk", "every pair of components needs a linking number");
    link.linking_numbers = m;
  }
  try {
    link.validate();
  } catch (const Error& e) {
    detail::field_error(path, e.what());
  }
  return link;
}

inline Json cover_to_json(const CoverSpec& spec) {
  Json rows = Json::array();
  for (const auto& row : spec.meridian_images) {
    Json r = Json::array();
    for (const auto& e : row) {
      if (!e.precision) {
        if (e.value.fits_slong_p()) {
          r.push_back(e.value.get_si());
        } else {
          r.push_back(to_decimal(e.value));
        }
        continue;
      }
      std::vector<std::int64_t> digits;
      Integer v = e.value;
      for (unsigned i = 0; i < *e.precision; ++i) {
        digits.push_back(Integer(v % spec.p).get_si());
        v /= spec.p;
      }
      r.push_back(Json{{"digits", digits}, {"precision", *e.precision}});
    }
    rows.push_back(r);
  }
  Json out{{"p", spec.p}, {"d", spec.d}, {"V", rows}};
  if (spec.base != "ZHS3") out["base"] = spec.base;
  return out;
}

inline CoverSpec cover_from_json(const Json& j, const std::string& path = "cover") {
  CoverSpec spec;
  spec.p = detail::as_int(detail::field(j, "p", path), path + ".p");
  if (!is_prime(spec.p)) detail::field_error(path + ".p", "not a prime");
  const auto d = detail::as_int(detail::field(j, "d", path), path + ".d");
  if (d < 1) detail::field_error(path + ".d", "must be positive");
  spec.d = static_cast<std::size_t>(d);
  if (j.contains("base")) {
    if (!j["base"].is_string()) detail::field_error(path + ".base", "expected a string");
    spec.base = j["base"].get<std::string>();
  }
  const Json& v = detail::field(j, "V", path);
  if (!v.is_array()) detail::field_error(path + ".V", "expected an array of rows");
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string rp = path + ".V[" + std::to_string(i) + "]";
    if (!v[i].is_array()) detail::field_error(rp, "expected an array");
    std::vector<PadicEntry> row;
    for (std::size_t k = 0; k < v[i].size(); ++k) {
      const std::string ep = rp + "[" + std::to_string(k) + "]";
      const Json& e = v[i][k];
      if (e.is_object()) {
        const Json& digits = detail::field(e, "digits", ep);
        if (!digits.is_array()) detail::field_error(ep + ".digits", "expected an array");
        std::vector<std::int64_t> ds;
        for (std::size_t m = 0; m < digits.size(); ++m) ds.push_back(detail::as_int(digits[m], ep + ".digits[" + std::to_string(m) + "]"));
        const auto prec = detail::as_int(detail::field(e, "precision", ep), ep + ".precision");
        if (prec < 0) detail::field_error(ep + ".precision", "must be nonnegative");
        try {
          row.push_back(PadicEntry::from_digits(ds, spec.p, static_cast<unsigned>(prec)));
        } catch (const Error& err) {
          detail::field_error(ep, err.what());
        }
      } else {
        row.push_back(PadicEntry::integer(detail::as_big(e, ep)));
      }
    }
    spec.meridian_images.push_back(row);
  }
  return spec;
}

inline Json growth_poly_json(const GrowthPolynomial& f) {
  Json out = Json::object();
  for (const auto& [name, c] : f.named_terms()) out[name] = to_decimal(c);
  return out;
}

inline Json asymptotic_to_json(const AsymptoticReport& r) {
  Json residuals = Json::array();
  for (const auto& x : r.residuals) residuals.push_back(to_decimal(x));
  Json samples = Json::array();
  for (const auto& s : r.samples) samples.push_back(Json{{"n", s.n}, {"sigma", to_decimal(s.value)}});
  Json factors = Json::array();
  for (const auto& f : r.factors) factors.push_back(Json{{"direction", f.direction}, {"multiplicity", f.multiplicity}});
  return Json{{"p", r.p},
              {"d", r.d},
              {"mu", r.mu},
              {"lambda", r.lambda},
              {"fitted_mu", to_decimal(r.fitted_mu)},
              {"fitted_lambda", to_decimal(r.fitted_lambda)},
              {"agree", r.agree},
              {"effective_rank", r.effective_rank},
              {"growth_poly", growth_poly_json(r.fit.poly)},
              {"fit_from", r.fit.n0},
              {"samples", samples},
              {"residuals", residuals},
              {"factors", factors},
              {"method", Json{{"mu", "content"}, {"lambda", "factors+fit"}}}};
}

inline Json homology_to_json(const HomologyReport& r) {
  Json levels = Json::array();
  for (const auto& l : r.levels) {
    Json row{{"n", l.n}, {"p^n", to_decimal(ipow(r.p, l.n))}};
    if (l.exponent.infinite) {
      row[r.mode == "full-order" ? "order" : "exponent"] = "Infinite";
    } else {
      row[r.mode == "full-order" ? "order" : "exponent"] = to_decimal(l.exponent.value);
    }
    row["status"] = l.exponent.infinite ? "infinite" : "finite";
    if (l.witness) row["vanishing"] = Json{{"sublink", subset_key(l.witness->sublink)}, {"point", l.witness->point}};
    levels.push_back(row);
  }
  Json out{{"p", r.p}, {"d", r.d}, {"mode", r.mode}, {"levels", levels}, {"fit_status", r.fit_status}};
  if (r.fit) {
    out["growth_poly"] = growth_poly_json(r.fit->poly);
    out["fit_from"] = r.fit->n0;
    out["fitted_mu"] = to_decimal(*r.fitted_mu);
    out["fitted_lambda"] = to_decimal(*r.fitted_lambda);
  }
  return out;
}

inline Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::ParseError, source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, path + ": cannot open");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace iwalink
