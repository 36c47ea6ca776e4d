// iwalink: command-line front end.
//
// Exit codes: 0 success, 1 usage/input error, 2 mismatch or failed check,
// 3 vanishing (Infinite homology or a zero on the torus), 4 other mathematical failure.

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iwalink/iwalink.hpp"

using namespace iwalink;

namespace {

enum Exit { kOk = 0, kInput = 1, kMismatch = 2, kVanishing = 3, kMath = 4 };

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::MismatchMuLambda:
      return kMismatch;
    case ErrorKind::VanishesOnTorus:
      return kVanishing;
    case ErrorKind::ParseError:
    case ErrorKind::UnknownName:
    case ErrorKind::InvalidArgument:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::MissingSublink:
    case ErrorKind::MissingLinkingNumbers:
    case ErrorKind::IndexOutOfRange:
      return kInput;
    default:
      return kMath;
  }
}

struct Common {
  std::string format = "text";
  bool json = false;
  bool oracle = false;

  std::string fmt() const { return json ? "json" : format; }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_flag("--json", c.json, "same as --format json");
  cmd->add_flag("--oracle", c.oracle, "add independent cross-checks to the report");
}

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  return read_text_file(path);
}

Json load_json(const std::string& path) { return parse_json_text(read_input(path), path == "-" ? "<stdin>" : path); }

LinkPresentation load_link(const std::string& arg) {
  if (arg.rfind("catalog:", 0) == 0) return catalog(arg.substr(8)).link;
  return link_from_json(load_json(arg), arg);
}

VanishingPolicy parse_policy(const std::string& s) { return s == "explicit" ? VanishingPolicy::Explicit : VanishingPolicy::ZeroConvention; }

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string rational_text(const std::optional<Rational>& r) { return r ? to_decimal(*r) : "-"; }

/// Per-level table shared by growth and tln.
int emit_homology(const HomologyReport& rep, const Json& config, const std::string& fmt, const Json& extra) {
  bool infinite = false;
  for (const auto& l : rep.levels) infinite = infinite || l.exponent.infinite;
  if (fmt == "json") {
    Json j = homology_to_json(rep);
    for (const auto& [k, v] : extra.items()) j[k] = v;
    j["config"] = config;
    print_json(j);
  } else if (fmt == "csv") {
    std::cout << "n,p^n," << (rep.mode == "full-order" ? "order" : "exponent") << ",status\n";
    for (const auto& l : rep.levels) {
      std::cout << l.n << "," << to_decimal(ipow(rep.p, l.n)) << "," << l.exponent.to_string() << ","
                << (l.exponent.infinite ? "infinite" : "finite") << "\n";
    }
  } else {
    std::cout << "p = " << rep.p << ", d = " << rep.d << ", mode " << rep.mode << "\n";
    std::cout << "n\tp^n\t" << (rep.mode == "full-order" ? "order" : "exponent") << "\n";
    for (const auto& l : rep.levels) {
      std::cout << l.n << "\t" << to_decimal(ipow(rep.p, l.n)) << "\t" << l.exponent.to_string();
      if (l.witness) std::cout << "\t(sublink {" << subset_key(l.witness->sublink) << "} vanishes)";
      std::cout << "\n";
    }
    if (rep.fit) {
      std::cout << "growth polynomial: " << rep.fit->poly.to_string() << " (from n = " << rep.fit->n0 << ")\n";
      std::cout << "mu = " << rational_text(rep.fitted_mu) << ", lambda = " << rational_text(rep.fitted_lambda) << "\n";
    } else {
      std::cout << "growth polynomial: not determined (" << rep.fit_status << ")\n";
    }
    for (const auto& [k, v] : extra.items()) std::cout << k << ": " << v.dump() << "\n";
  }
  return infinite ? kVanishing : kOk;
}

// mu-lambda ----------------------------------------------------------------

struct MuLambdaArgs {
  Common common;
  std::string poly;
  std::int64_t p = 0;
  unsigned nmax = 0;
  bool delta = false;
  std::string policy = "zero";
};

int run_mu_lambda(const MuLambdaArgs& a) {
  const NamedPoly np = poly_from_json(load_json(a.poly));
  const LaurentPoly f = a.delta ? shift_substitute(np.poly) : np.poly;
  Json config{{"command", "mu-lambda"}, {"poly", a.poly}, {"p", a.p}, {"nmax", a.nmax}, {"delta", a.delta}, {"vanishing_policy", a.policy}};
  const AsymptoticReport rep = verify_asymptotic(f, a.p, {a.nmax, parse_policy(a.policy), false});
  Json oracle;
  if (a.common.oracle) {
    const LaurentPoly g = unshift(f);
    int checked = 0;
    bool ok = true;
    for (unsigned n = 0; g.nvars() <= 2 && ipow64(a.p, static_cast<int>(n)) <= 9; ++n) {
      const auto tp = torus_product(g, solve_subgroup({}, a.p, n, g.nvars()));
      ok = ok && (tp.vanishes ? Integer(0) : tp.value) == norm_det_oracle(g, a.p, n);
      ++checked;
    }
    oracle = Json{{"norm_det_levels", checked}, {"status", checked == 0 ? "skipped" : (ok ? "agree" : "disagree")}};
  }
  const std::string fmt = a.common.fmt();
  if (fmt == "json") {
    Json j = asymptotic_to_json(rep);
    if (a.common.oracle) j["oracle"] = oracle;
    j["config"] = config;
    print_json(j);
  } else if (fmt == "csv") {
    std::cout << "n,p^n,sigma,residual\n";
    for (std::size_t i = 0; i < rep.samples.size(); ++i) {
      std::cout << rep.samples[i].n << "," << to_decimal(ipow(a.p, rep.samples[i].n)) << "," << to_decimal(rep.samples[i].value) << ","
                << to_decimal(rep.residuals[i]) << "\n";
    }
  } else {
    std::cout << "p = " << rep.p << ", d = " << rep.d << ", effective rank " << rep.effective_rank << "\n";
    std::cout << "mu = " << rep.mu << " (fitted " << to_decimal(rep.fitted_mu) << ")\n";
    std::cout << "lambda = " << rep.lambda << " (fitted " << to_decimal(rep.fitted_lambda) << ")\n";
    std::cout << "growth polynomial: " << rep.fit.poly.to_string() << " (from n = " << rep.fit.n0 << ")\n";
    for (const auto& lf : rep.factors) {
      std::cout << "factor direction (";
      for (std::size_t i = 0; i < lf.direction.size(); ++i) std::cout << (i ? "," : "") << lf.direction[i];
      std::cout << ") multiplicity " << lf.multiplicity << "\n";
    }
    std::cout << "n\tSigma_n\tresidual\n";
    for (std::size_t i = 0; i < rep.samples.size(); ++i) {
      std::cout << rep.samples[i].n << "\t" << to_decimal(rep.samples[i].value) << "\t" << to_decimal(rep.residuals[i]) << "\n";
    }
    if (a.common.oracle) std::cout << "oracle: " << oracle.dump() << "\n";
  }
  if (!rep.agree) {
    std::cerr << "iwalink: structural (mu, lambda) = (" << rep.mu << ", " << rep.lambda << ") disagrees with the fit ("
              << to_decimal(rep.fitted_mu) << ", " << to_decimal(rep.fitted_lambda) << ")\n";
    return kMismatch;
  }
  return kOk;
}

// growth -------------------------------------------------------------------

struct GrowthArgs {
  Common common;
  std::string link;
  std::string cover;
  std::int64_t p = 0;
  unsigned nmax = 4;
  bool full_order = false;
};

int run_growth(const GrowthArgs& a) {
  const LinkPresentation link = load_link(a.link);
  Json config{{"command", "growth"}, {"link", a.link}, {"nmax", a.nmax}, {"full_order", a.full_order}};
  HomologyReport rep;
  Json extra = Json::object();
  if (a.full_order) {
    if (a.p == 0) throw Error(ErrorKind::InvalidArgument, "--full-order needs -p");
    config["p"] = a.p;
    rep = growth_report_full(link, a.p, a.nmax);
  } else {
    CoverSpec spec;
    if (!a.cover.empty()) {
      spec = cover_from_json(load_json(a.cover), a.cover);
      if (a.p != 0 && a.p != spec.p) throw Error(ErrorKind::InvalidArgument, "-p differs from the cover's p");
      config["cover"] = a.cover;
    } else {
      if (a.p == 0) throw Error(ErrorKind::InvalidArgument, "growth needs --cover or -p (identity cover)");
      spec = CoverSpec::identity(a.p, static_cast<std::size_t>(link.c));
      config["cover"] = "identity";
    }
    config["p"] = spec.p;
    rep = growth_report(link, spec, a.nmax);
    if (a.common.oracle) {
      bool identity = spec.integral() && static_cast<std::size_t>(link.c) == spec.d && spec.integer_rows() == CoverSpec::identity(spec.p, spec.d).integer_rows();
      std::string status = "skipped";
      if (identity) {
        status = "agree";
        for (const auto& l : rep.levels) {
          const auto full = homology_order_full(link, spec.p, l.n);
          if (full.exponent.infinite != l.exponent.infinite ||
              (!l.exponent.infinite && Integer(valuation(full.exponent.value, spec.p)) != l.exponent.value)) {
            status = "disagree";
          }
        }
      }
      extra["oracle"] = Json{{"full_order_valuation", status}};
    }
  }
  return emit_homology(rep, config, a.common.fmt(), extra);
}

// sigma --------------------------------------------------------------------

struct SigmaArgs {
  Common common;
  std::string poly;
  std::int64_t p = 0;
  int n = -1;
  int d = 0;
  std::string region = "full";
  bool delta = false;
  std::string policy = "zero";
};

int run_sigma(const SigmaArgs& a) {
  const NamedPoly np = poly_from_json(load_json(a.poly));
  const LaurentPoly f = a.delta ? shift_substitute(np.poly) : np.poly;
  TorusRegion region;
  if (a.region == "full" || a.region == "punctured") {
    if (a.p == 0 || a.n < 0) throw Error(ErrorKind::InvalidArgument, "sigma needs -p and -n with --region " + a.region);
    const std::size_t d = a.d > 0 ? static_cast<std::size_t>(a.d) : f.nvars();
    region = a.region == "full" ? TorusRegion::full(a.p, static_cast<unsigned>(a.n), d) : TorusRegion::punctured(a.p, static_cast<unsigned>(a.n), d);
  } else {
    region = region_from_json(load_json(a.region), a.region);
  }
  if (f.nvars() != region.d) throw Error(ErrorKind::DimensionMismatch, "polynomial has " + std::to_string(f.nvars()) + " variables, region d = " + std::to_string(region.d));
  const VanishingPolicy pol = parse_policy(a.policy);
  const TorusSum s = sigma(f, region, pol);
  std::string oracle;
  if (a.common.oracle) {
    const TorusSum t = sigma_t_filtered(unshift(f), region, pol);
    oracle = t.vanishes == s.vanishes && t.value == s.value ? "agree" : "disagree";
  }
  const std::string value = s.vanishes ? "Vanishes" : to_decimal(s.value);
  const std::string fmt = a.common.fmt();
  if (fmt == "json") {
    Json j{{"sigma", value}, {"region", region_to_json(region)}};
    if (a.common.oracle) j["oracle"] = Json{{"filtered_sum", oracle}};
    j["config"] = Json{{"command", "sigma"}, {"poly", a.poly}, {"delta", a.delta}, {"vanishing_policy", a.policy}};
    print_json(j);
  } else if (fmt == "csv") {
    std::cout << "p,n,d,sigma\n" << region.p << "," << region.n << "," << region.d << "," << value << "\n";
  } else {
    std::cout << value << "\n";
    if (a.common.oracle) std::cout << "oracle: " << oracle << "\n";
  }
  if (a.common.oracle && oracle != "agree") return kMismatch;
  return s.vanishes ? kVanishing : kOk;
}

// tln, torres, vanishing ---------------------------------------------------

struct LinkArgs {
  Common common;
  std::string link;
  std::int64_t p = 0;
  unsigned nmax = 3;
};

int run_tln(const LinkArgs& a) {
  const LinkPresentation link = load_link(a.link);
  const HomologyReport rep = tln_report(link, a.p, a.nmax);
  return emit_homology(rep, Json{{"command", "tln"}, {"link", a.link}, {"p", a.p}, {"nmax", a.nmax}}, a.common.fmt(), Json::object());
}

int run_torres(const LinkArgs& a) {
  const LinkPresentation link = load_link(a.link);
  const TorresReport rep = torres_check(link);
  const std::string fmt = a.common.fmt();
  if (fmt == "json") {
    Json comps = Json::array();
    for (const auto& r : rep.components) {
      comps.push_back(Json{{"component", r.component}, {"pass", r.pass}, {"lhs", poly_to_json(r.lhs)}, {"rhs", poly_to_json(r.rhs)}});
    }
    Json j{{"pass", rep.pass()}, {"components", comps}};
    if (auto f = rep.first_failure()) j["first_failure"] = *f;
    j["config"] = Json{{"command", "torres"}, {"link", a.link}};
    print_json(j);
  } else if (fmt == "csv") {
    std::cout << "component,status\n";
    for (const auto& r : rep.components) std::cout << r.component << "," << (r.pass ? "pass" : "fail") << "\n";
  } else {
    for (const auto& r : rep.components) {
      std::cout << "component " << r.component << ": " << (r.pass ? "pass" : "fail") << "  (" << r.lhs.to_string() << " vs " << r.rhs.to_string()
                << ")\n";
    }
    std::cout << (rep.pass() ? "pass" : "fail") << "\n";
  }
  return rep.pass() ? kOk : kMismatch;
}

std::string point_text(const std::vector<std::int64_t>& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
  return s + ")";
}

int run_vanishing(const LinkArgs& a) {
  const LinkPresentation link = load_link(a.link);
  const VanishingReport rep = vanishing_check(link, a.p, a.nmax);
  const std::string fmt = a.common.fmt();
  if (fmt == "json") {
    Json levels = Json::array();
    for (const auto& l : rep.levels) {
      Json row{{"n", l.n}, {"vanishes_punctured", l.vanishes_punctured}, {"vanishes_off_origin", l.vanishes_off_origin}};
      if (l.vanishes_punctured) row["witness_punctured"] = l.witness_punctured;
      if (l.vanishes_off_origin) row["witness_off_origin"] = l.witness_off_origin;
      levels.push_back(row);
    }
    print_json(Json{{"p", rep.p},
                    {"levels", levels},
                    {"nonvanishing_punctured", rep.nonvanishing_punctured()},
                    {"nonvanishing_off_origin", rep.nonvanishing_off_origin()},
                    {"note", "nonvanishing off the origin is sufficient, not necessary, for the link not to decompose"},
                    {"config", Json{{"command", "vanishing"}, {"link", a.link}, {"p", a.p}, {"nmax", a.nmax}}}});
  } else if (fmt == "csv") {
    std::cout << "n,p^n,punctured,off_origin\n";
    for (const auto& l : rep.levels) {
      std::cout << l.n << "," << to_decimal(ipow(rep.p, l.n)) << "," << (l.vanishes_punctured ? "vanishes" : "nonzero") << ","
                << (l.vanishes_off_origin ? "vanishes" : "nonzero") << "\n";
    }
  } else {
    std::cout << "n\tpunctured torus\ttorus minus origin\n";
    for (const auto& l : rep.levels) {
      std::cout << l.n << "\t" << (l.vanishes_punctured ? "vanishes at " + point_text(l.witness_punctured) : "nonzero") << "\t"
                << (l.vanishes_off_origin ? "vanishes at " + point_text(l.witness_off_origin) : "nonzero") << "\n";
    }
  }
  return kOk;
}

// padic-limit --------------------------------------------------------------

struct PadicArgs {
  Common common;
  std::string orders;
  std::int64_t p = 0;
  unsigned precision = 0;
  std::string base;
  unsigned nmax = 0;
};

int run_padic(const PadicArgs& a) {
  std::vector<GrowthSample> orders;
  std::optional<Integer> base;
  if (!a.base.empty()) base = parse_integer(a.base);
  if (!a.orders.empty()) {
    const Json j = load_json(a.orders);
    const Json& arr = j.is_array() ? j : detail::field(j, "orders", a.orders);
    if (!arr.is_array()) detail::field_error(a.orders, "expected an array of {n, value}");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = a.orders + "[" + std::to_string(i) + "]";
      const auto n = detail::as_int(detail::field(arr[i], "n", path), path + ".n");
      orders.push_back({static_cast<unsigned>(n), detail::as_big(detail::field(arr[i], "value", path), path + ".value")});
    }
  } else {
    if (!base || a.nmax == 0) throw Error(ErrorKind::InvalidArgument, "padic-limit needs --orders, or --base with --nmax");
    for (unsigned n = 1; n <= a.nmax; ++n) {
      Integer v;
      mpz_pow_ui(v.get_mpz_t(), base->get_mpz_t(), ipow(a.p, n).get_ui() - 1);
      orders.push_back({n, v});
    }
  }
  const PadicLimit lim = padic_limit_nonp(orders, a.p, a.precision, base);
  const std::string fmt = a.common.fmt();
  if (fmt == "json") {
    Json j{{"p", lim.p}, {"precision", lim.precision}, {"modulus", to_decimal(lim.modulus)}, {"residue", to_decimal(lim.residue)}, {"stable_from", lim.stable_from}};
    if (lim.predicted) {
      j["teichmuller_prediction"] = to_decimal(*lim.predicted);
      j["agrees"] = lim.agrees;
    }
    j["config"] = Json{{"command", "padic-limit"}, {"orders", a.orders.empty() ? "generated" : a.orders}, {"base", a.base}, {"nmax", a.nmax}};
    print_json(j);
  } else if (fmt == "csv") {
    std::cout << "p,precision,residue,stable_from,prediction\n"
              << lim.p << "," << lim.precision << "," << to_decimal(lim.residue) << "," << lim.stable_from << ","
              << (lim.predicted ? to_decimal(*lim.predicted) : "") << "\n";
  } else {
    std::cout << "limit = " << to_decimal(lim.residue) << " mod " << to_decimal(lim.modulus) << " (stable from n = " << lim.stable_from << ")\n";
    if (lim.predicted) std::cout << "Teichmuller prediction " << to_decimal(*lim.predicted) << ": " << (lim.agrees ? "agrees" : "disagrees") << "\n";
  }
  return lim.agrees ? kOk : kMismatch;
}

// catalog ------------------------------------------------------------------

struct CatalogArgs {
  Common common;
  std::string action = "list";
  std::vector<std::string> names;
};

int run_catalog(const CatalogArgs& a) {
  const bool json = a.common.fmt() == "json";
  if (a.action == "list") {
    if (json) {
      Json arr = Json::array();
      for (const auto& n : catalog_names()) arr.push_back(Json{{"name", n}, {"components", catalog(n).link.c}, {"provenance", catalog(n).provenance}});
      print_json(arr);
    } else {
      for (const auto& n : catalog_names()) std::cout << n << "\n";
    }
    return kOk;
  }
  if (a.action == "show" || a.action == "export") {
    std::vector<CatalogEntry> entries;
    for (const auto& n : (a.names.empty() && a.action == "export" ? catalog_names() : a.names)) entries.push_back(catalog(n));
    if (entries.empty()) throw Error(ErrorKind::InvalidArgument, "catalog show needs a name");
    if (a.action == "show" && entries.size() == 1 && !json) {
      const auto& e = entries[0];
      std::cout << e.name << ": " << e.provenance << "\n";
      for (const auto& [s, f] : e.link.sublink_delta) std::cout << "  {" << subset_key(s) << "}: " << f.to_string() << "\n";
      if (e.link.linking_numbers) {
        for (int i = 1; i <= e.link.c; ++i) {
          for (int j = i + 1; j <= e.link.c; ++j) std::cout << "  lk(" << i << "," << j << ") = " << e.link.lk(i, j) << "\n";
        }
      }
      return kOk;
    }
    if (a.action == "show" && entries.size() == 1) {
      print_json(entry_to_json(entries[0]));
      return kOk;
    }
    std::cout << export_entries(entries) << "\n";
    return kOk;
  }
  if (a.action == "ingest") {
    if (a.names.size() != 1) throw Error(ErrorKind::InvalidArgument, "catalog ingest needs one file");
    const auto entries = a.names[0] == "-" ? ingest_text(read_input("-"), "<stdin>") : ingest(a.names[0]);
    int torres_failures = 0;
    for (const auto& e : entries) {
      std::string torres = "no linking numbers";
      if (e.link.linking_numbers) {
        const bool ok = torres_check(e.link).pass();
        torres = ok ? "Torres pass" : "Torres fail";
        torres_failures += ok ? 0 : 1;
      }
      std::cout << e.name << " (" << e.link.c << " components, " << torres << ")\n";
    }
    std::cout << entries.size() << " entries\n";
    return torres_failures ? kMismatch : kOk;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown catalog action " + a.action + " (list, show, export, ingest)");
}

// fit ----------------------------------------------------------------------

struct FitArgs {
  Common common;
  std::string samples;
  std::int64_t p = 0;
  unsigned d = 1;
};

int run_fit(const FitArgs& a) {
  const Json j = load_json(a.samples);
  const Json& arr = j.is_array() ? j : detail::field(j, "samples", a.samples);
  if (!arr.is_array()) detail::field_error(a.samples, "expected an array of {n, value}");
  std::vector<GrowthSample> s;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = a.samples + "[" + std::to_string(i) + "]";
    const auto n = detail::as_int(detail::field(arr[i], "n", path), path + ".n");
    if (n < 0) detail::field_error(path + ".n", "must be nonnegative");
    s.push_back({static_cast<unsigned>(n), detail::as_big(detail::field(arr[i], "value", path), path + ".value")});
  }
  const GrowthFit fit = fit_growth_polynomial(s, a.p, a.d);
  const std::string fmt = a.common.fmt();
  if (fmt == "json") {
    print_json(Json{{"p", a.p},
                    {"d", a.d},
                    {"growth_poly", growth_poly_json(fit.poly)},
                    {"mu", to_decimal(fit.poly.coefficient(a.d, 0))},
                    {"lambda", to_decimal(a.d ? fit.poly.coefficient(a.d - 1, 1) : Rational(0))},
                    {"fit_from", fit.n0},
                    {"verified", fit.verified},
                    {"config", Json{{"command", "fit"}, {"samples", a.samples}}}});
  } else if (fmt == "csv") {
    std::cout << "monomial,coefficient\n";
    for (const auto& [name, c] : fit.poly.named_terms()) std::cout << name << "," << to_decimal(c) << "\n";
  } else {
    std::cout << fit.poly.to_string() << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iwasawa invariants and homology growth of Z_p^d-covers of links"};
  app.require_subcommand(1);

  MuLambdaArgs ml;
  auto* c_ml = app.add_subcommand("mu-lambda", "mu and lambda of a polynomial, checked against the exact growth fit");
  c_ml->add_option("--poly", ml.poly, "polynomial JSON (- for stdin), in T-variables unless --delta")->required();
  c_ml->add_option("-p", ml.p, "prime")->required();
  c_ml->add_option("--nmax", ml.nmax, "highest level (default max(2r+3, 6))");
  c_ml->add_flag("--delta", ml.delta, "input is Delta in t-variables; substitute t = 1 + T first");
  c_ml->add_option("--vanishing-policy", ml.policy, "zero or explicit")->check(CLI::IsMember({"zero", "explicit"}));
  add_common(c_ml, ml.common);

  GrowthArgs gr;
  auto* c_gr = app.add_subcommand("growth", "homology growth of branched covers");
  c_gr->add_option("--link", gr.link, "link JSON, - for stdin, or catalog:NAME")->required();
  c_gr->add_option("--cover", gr.cover, "cover JSON (default: identity images with -p)");
  c_gr->add_option("-p", gr.p, "prime");
  c_gr->add_option("--nmax", gr.nmax, "highest level");
  c_gr->add_flag("--full-order", gr.full_order, "full orders |H_1| (c = d, identity images)");
  add_common(c_gr, gr.common);

  SigmaArgs sg;
  auto* c_sg = app.add_subcommand("sigma", "Sigma_n: sum of p-adic valuations over a torus region");
  c_sg->add_option("--poly", sg.poly, "polynomial JSON (- for stdin), in T-variables unless --delta")->required();
  c_sg->add_option("-p", sg.p, "prime");
  c_sg->add_option("-n", sg.n, "level");
  c_sg->add_option("-d", sg.d, "torus dimension (default: variable count)");
  c_sg->add_option("--region", sg.region, "full, punctured, or a region JSON file");
  c_sg->add_flag("--delta", sg.delta, "input is in t-variables; substitute t = 1 + T first");
  c_sg->add_option("--vanishing-policy", sg.policy, "zero or explicit")->check(CLI::IsMember({"zero", "explicit"}));
  add_common(c_sg, sg.common);

  LinkArgs tl;
  auto* c_tl = app.add_subcommand("tln", "p-exponents for the covers along the total linking number direction");
  c_tl->add_option("--link", tl.link, "link JSON, - for stdin, or catalog:NAME")->required();
  c_tl->add_option("-p", tl.p, "prime")->required();
  c_tl->add_option("--nmax", tl.nmax, "highest level");
  add_common(c_tl, tl.common);

  LinkArgs to;
  auto* c_to = app.add_subcommand("torres", "Torres conditions for every component");
  c_to->add_option("--link", to.link, "link JSON, - for stdin, or catalog:NAME")->required();
  add_common(c_to, to.common);

  LinkArgs va;
  auto* c_va = app.add_subcommand("vanishing", "zeros of Delta on punctured tori");
  c_va->add_option("--link", va.link, "link JSON, - for stdin, or catalog:NAME")->required();
  c_va->add_option("-p", va.p, "prime")->required();
  c_va->add_option("--nmax", va.nmax, "highest level");
  add_common(c_va, va.common);

  PadicArgs pa;
  auto* c_pa = app.add_subcommand("padic-limit", "p-adic limit of the prime-to-p parts of orders");
  c_pa->add_option("--orders", pa.orders, "JSON array of {n, value}");
  c_pa->add_option("-p", pa.p, "prime")->required();
  c_pa->add_option("--precision", pa.precision, "digits")->required();
  c_pa->add_option("--base", pa.base, "a, for orders a^(p^n - 1) and the Teichmuller cross-check");
  c_pa->add_option("--nmax", pa.nmax, "levels to generate from --base");
  add_common(c_pa, pa.common);

  CatalogArgs ca;
  auto* c_ca = app.add_subcommand("catalog", "built-in links: list, show NAME, export [NAMES], ingest FILE");
  c_ca->add_option("action", ca.action, "list, show, export or ingest");
  c_ca->add_option("names", ca.names, "names or a file");
  add_common(c_ca, ca.common);

  FitArgs fi;
  auto* c_fi = app.add_subcommand("fit", "exact growth polynomial from samples");
  c_fi->add_option("--samples", fi.samples, "JSON array of {n, value}")->required();
  c_fi->add_option("-p", fi.p, "prime")->required();
  c_fi->add_option("-d", fi.d, "dimension");
  add_common(c_fi, fi.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    if (*c_ml) return run_mu_lambda(ml);
    if (*c_gr) return run_growth(gr);
    if (*c_sg) return run_sigma(sg);
    if (*c_tl) return run_tln(tl);
    if (*c_to) return run_torres(to);
    if (*c_va) return run_vanishing(va);
    if (*c_pa) return run_padic(pa);
    if (*c_ca) return run_catalog(ca);
    if (*c_fi) return run_fit(fi);
  } catch (const Error& e) {
    std::cerr << "iwalink: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return kInput;
}
