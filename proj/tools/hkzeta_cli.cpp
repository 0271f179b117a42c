// Command-line front end: closed-form height zeta functions, brute-force
// rational point counts, verification, and asymptotic data for the
// varieties X_d(a_1,...,a_r) over F_q(T) (or a supplied curve).
//
// Exit codes: 0 ok, 1 verification failure, 2 invalid bundle,
//             3 unsupported curve/genus, 4 budget exceeded.

#include <hkzeta/jobspec.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

using namespace hkzeta;

namespace {

struct Options {
  std::string variety = "HK(r=1,t=2;a=1)";
  std::string bundle;  // "gamma,xi"
  bool anticanonical_flag = false;
  long long q = 2;
  std::string curve_path;
  long long M = 4;
  int N = 8;
  int jobs = 1;
  bool csv = false;
  bool components = false;
  double budget = 1e9;
};

CurveData resolve_curve(const Options& o) {
  if (!o.curve_path.empty()) return load_curve(o.curve_path);
  return rational_curve(o.q);
}

LineBundle resolve_bundle(const Options& o, const HKVariety& X) {
  if (o.anticanonical_flag || o.bundle.empty()) return anticanonical(X);
  auto comma = o.bundle.find(',');
  if (comma == std::string::npos)
    throw std::domain_error("bundle must be gamma,xi");
  return {std::stoll(o.bundle.substr(0, comma)),
          std::stoll(o.bundle.substr(comma + 1))};
}

// enumeration cost estimate: product over chart coordinates of the count
// q^{2B+1} of rational functions with pole bound B
Int enumeration_cost(const HKVariety& X, const LineBundle& L, long long q,
                     long long Mmax) {
  long long cL = L.gamma * X.a_max() + L.xi;
  Int cost = 1;
  for (int i = 0; i < X.dim(); ++i) {
    long long B = (i < X.t - 1) ? Mmax / std::max<long long>(cL, 1)
                                : Mmax / std::max<long long>(L.gamma, 1);
    cost *= ipow(Int(q), 2 * B + 1);
  }
  return cost;
}

void check_budget(const Int& cost, double budget) {
  if (Rat(cost) > Rat(Int((long long)budget)))
    throw std::runtime_error("budget: estimated enumeration cost " +
                             cost.str() + " exceeds ceiling");
}

json coefficients_json(const FactoredRational& Z, int N) {
  json out = json::array();
  auto co = Z.expand(N);
  for (int n = 0; n <= N; ++n) out.push_back(to_string(co[n]));
  return out;
}

int cmd_zeta(const Options& o) {
  HKVariety X = parse_variety(o.variety);
  CurveData C = resolve_curve(o);
  LineBundle L = resolve_bundle(o, X);
  if (!is_big(L, X)) {
    std::cerr << "bundle (" << L.gamma << "," << L.xi
              << ") is not big: need gamma > 0 and xi > -gamma a_r\n";
    return 2;
  }
  ZetaResult res = (o.anticanonical_flag || o.bundle.empty())
                       ? anticanonical_zeta(X, C)
                       : (X.a_max() == 0 ? zeta_product(X, L, C)
                                         : zeta_chart_general(X, L, C));
  json out{{"variety", variety_json(X)},
           {"bundle", json{{"gamma", L.gamma}, {"xi", L.xi}}},
           {"q", (long long)C.q()},
           {"genus", C.genus},
           {"Z", factored_json(res.Z)},
           {"coefficients", coefficients_json(res.Z, o.N)},
           {"classification", classification_json(res.cls)},
           {"leading_constant", res.has_lead ? scaled_json(res.lead) : json()}};
  if (o.csv) {
    auto co = res.Z.expand(o.N);
    std::cout << "n,coefficient\n";
    for (int n = 0; n <= o.N; ++n)
      std::cout << n << "," << to_string(co[n]) << "\n";
  } else {
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

int cmd_count(const Options& o) {
  HKVariety X = parse_variety(o.variety);
  CurveData C = resolve_curve(o);
  if (C.genus != 0 || !C.concrete()) {
    std::cerr << "count: enumeration supported over F_q(T) only\n";
    return 3;
  }
  LineBundle L = resolve_bundle(o, X);
  if (!is_big(L, X)) {
    std::cerr << "bundle is not big\n";
    return 2;
  }
  check_budget(enumeration_cost(X, L, o.q, o.M), o.budget);
  auto t0 = std::chrono::steady_clock::now();
  json rows = json::array();
  std::ostringstream csv;
  if (o.components) {
    auto strata = decompose(X, L);
    std::vector<Int> total(o.M + 1, Int(0));
    csv << "component,M,count\n";
    for (size_t i = 0; i < strata.size(); ++i) {
      const Stratum& S = strata[i];
      std::string name =
          S.kind == Stratum::Kind::projective
              ? "P^" + std::to_string(S.n) + "(H^" + std::to_string(S.height_exp) + ")"
          : S.kind == Stratum::Kind::affine
              ? "A^" + std::to_string(S.n) + "(H^" + std::to_string(S.height_exp) + ")"
              : "U[" + S.variety.str() + "]";
      auto c = count_stratum(S, C.field, o.M, o.jobs);
      json mc = json::array();
      for (long long M = 0; M <= o.M; ++M) {
        total[M] += c[M];
        mc.push_back(c[M].str());
        csv << name << "," << M << "," << c[M].str() << "\n";
      }
      rows.push_back(json{{"component", name}, {"counts", mc}});
    }
    json tj = json::array();
    for (long long M = 0; M <= o.M; ++M) {
      tj.push_back(total[M].str());
      csv << "total," << M << "," << total[M].str() << "\n";
    }
    rows.push_back(json{{"component", "total"}, {"counts", tj}});
  } else {
    auto c = count_chart(X, L, C.field, o.M, o.jobs);
    auto t1 = std::chrono::steady_clock::now();
    double dt = std::chrono::duration<double>(t1 - t0).count();
    csv << "M,count,runtime\n";
    for (long long M = 0; M <= o.M; ++M) {
      rows.push_back(json{{"M", M}, {"count", c[M].str()}});
      csv << M << "," << c[M].str() << "," << dt << "\n";
    }
  }
  if (o.csv)
    std::cout << csv.str();
  else
    std::cout << json{{"variety", variety_json(X)},
                      {"bundle", json{{"gamma", L.gamma}, {"xi", L.xi}}},
                      {"rows", rows}}
                     .dump(2)
              << "\n";
  return 0;
}

int cmd_verify(const Options& o) {
  HKVariety X = parse_variety(o.variety);
  CurveData C = resolve_curve(o);
  if (C.genus != 0 || !C.concrete()) {
    std::cerr << "verify: enumeration supported over F_q(T) only\n";
    return 3;
  }
  LineBundle L = resolve_bundle(o, X);
  if (!is_big(L, X)) {
    std::cerr << "bundle is not big\n";
    return 2;
  }
  check_budget(enumeration_cost(X, L, o.q, o.M), o.budget);
  bool all = true;
  auto report = [&](const std::string& name, bool ok) {
    all = all && ok;
    std::cout << name << "," << (ok ? "pass" : "fail") << "\n";
  };
  std::cout << "check,result\n";

  ZetaResult res =
      X.a_max() == 0 ? zeta_product(X, L, C) : zeta_chart_general(X, L, C);
  auto counts = count_chart(X, L, C.field, o.M, o.jobs);
  auto coeffs = res.Z.expand(o.M);
  bool ok = true;
  for (long long M = 0; M <= o.M; ++M)
    ok = ok && Rat(counts[M]) == coeffs[M];
  report("coefficients_match_counts", ok);

  // eta_L | M support
  ok = true;
  for (long long M = 0; M <= o.M; ++M)
    if (M % res.cls.eta_L != 0) ok = ok && counts[M] == 0;
  report("support_in_eta_L_multiples", ok);

  if (L.xi > 0 && X.r * X.t <= 6) {
    auto strata = decompose(X, L);
    std::vector<Int> total(o.M + 1, Int(0));
    for (auto& S : strata) {
      auto c = count_stratum(S, C.field, o.M, o.jobs);
      for (long long M = 0; M <= o.M; ++M) total[M] += c[M];
    }
    auto direct = count_variety(X, L, C.field, o.M);
    ok = true;
    for (long long M = 0; M <= o.M; ++M) ok = ok && total[M] == direct[M];
    report("decomposition_partitions_points", ok);
  }

  return all ? 0 : 1;
}

int cmd_asym(const Options& o) {
  HKVariety X = parse_variety(o.variety);
  CurveData C = resolve_curve(o);
  LineBundle L = resolve_bundle(o, X);
  if (!is_big(L, X)) {
    std::cerr << "bundle is not big\n";
    return 2;
  }
  Classification cls = classify(L, X);
  ZetaResult res = (o.anticanonical_flag || o.bundle.empty())
                       ? anticanonical_zeta(X, C)
                       : (X.a_max() == 0 ? zeta_product(X, L, C)
                                         : zeta_chart_general(X, L, C));
  json out{{"variety", variety_json(X)},
           {"bundle", json{{"gamma", L.gamma}, {"xi", L.xi}}},
           {"classification", classification_json(cls)},
           {"leading_constant", res.has_lead ? scaled_json(res.lead) : json()}};
  try {
    auto asy = asymptotics(res.Z.folded());
    json terms = json::array();
    for (auto& t : asy.terms) {
      json classes = json::array();
      for (int j = 0; j < t.m; ++j) {
        json poly = json::array();
        for (auto& c : t.class_u[j]) poly.push_back(to_string(c));
        classes.push_back(poly);
      }
      terms.push_back(json{{"c", t.c.str()},
                           {"m", t.m},
                           {"order", t.order},
                           {"class_polynomials_in_u", classes}});
    }
    out["partial_fractions"] = terms;
  } catch (const std::exception& e) {
    out["partial_fractions_error"] = e.what();
  }
  try {
    QLValue ql = Q_L_formula(X, L, o.M - (o.M % cls.eta_L), C);
    json qj{{"case", ql.case_id}, {"value", scaled_json(ql.value)}};
    if (ql.case_id != 1) qj["tail_bound"] = to_string(ql.tail_bound);
    out["Q_L"] = qj;
  } catch (const std::exception& e) {
    out["Q_L_error"] = e.what();
  }
  if (o.csv) {
    std::cout << "quantity,value\n"
              << "a(L)," << to_string(cls.a) << "\n"
              << "b(L)," << cls.b << "\n"
              << "a'(L)," << to_string(cls.a_second) << "\n"
              << "leading," << to_string(res.lead.value) << "\n";
  } else {
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

int cmd_invariants(const Options& o) {
  HKVariety X = parse_variety(o.variety);
  LineBundle K = anticanonical(X);
  json out{{"variety", variety_json(X)},
           {"dim", X.dim()},
           {"anticanonical", json{{"gamma", K.gamma}, {"xi", K.xi}}},
           {"eta_X", X.eta()},
           {"N_X", X.n_max()},
           {"alpha_star", to_string(alpha_star(X))}};
  if (!o.bundle.empty()) {
    LineBundle L = resolve_bundle(o, X);
    out["bundle"] = json{{"gamma", L.gamma}, {"xi", L.xi}, {"big", is_big(L, X)}};
    if (is_big(L, X)) out["classification"] = classification_json(classify(L, X));
  }
  if (o.csv) {
    std::cout << "quantity,value\n"
              << "dim," << X.dim() << "\n"
              << "eta_X," << X.eta() << "\n"
              << "N_X," << X.n_max() << "\n"
              << "alpha_star," << to_string(alpha_star(X)) << "\n";
  } else {
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

int cmd_decompose(const Options& o) {
  HKVariety X = parse_variety(o.variety);
  LineBundle L = resolve_bundle(o, X);
  if (!is_big(L, X)) {
    std::cerr << "bundle is not big\n";
    return 2;
  }
  json rows = json::array();
  std::ostringstream csv;
  csv << "kind,description,height\n";
  for (auto& S : decompose(X, L)) {
    switch (S.kind) {
      case Stratum::Kind::projective:
        rows.push_back(json{{"kind", "projective"},
                            {"n", S.n},
                            {"height_exp", S.height_exp}});
        csv << "projective,P^" << S.n << ",H^" << S.height_exp << "\n";
        break;
      case Stratum::Kind::affine:
        rows.push_back(json{{"kind", "affine"},
                            {"n", S.n},
                            {"height_exp", S.height_exp}});
        csv << "affine,A^" << S.n << ",H^" << S.height_exp << "\n";
        break;
      case Stratum::Kind::good_open:
        rows.push_back(json{{"kind", "good_open"},
                            {"variety", variety_json(S.variety)},
                            {"bundle", json{{"gamma", S.bundle.gamma},
                                            {"xi", S.bundle.xi}}}});
        csv << "good_open," << S.variety.str() << ",(" << S.bundle.gamma << ","
            << S.bundle.xi << ")\n";
        break;
    }
  }
  if (o.csv)
    std::cout << csv.str();
  else
    std::cout << json{{"variety", variety_json(X)}, {"strata", rows}}.dump(2)
              << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"height zeta functions and point counts for Hirzebruch-Kleinschmidt varieties"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--variety", o.variety, "variety, e.g. HK(r=1,t=2;a=1)");
    sub->add_option("--bundle", o.bundle, "line bundle gamma,xi");
    sub->add_flag("--anticanonical", o.anticanonical_flag, "use -K_X");
    sub->add_option("--q", o.q, "field size (prime power)");
    sub->add_option("--curve", o.curve_path, "curve data JSON for genus >= 1");
    sub->add_option("-M,--max-height", o.M, "maximal height exponent");
    sub->add_option("-N,--coefficients", o.N, "series coefficients to print");
    sub->add_option("--jobs", o.jobs, "worker threads for enumeration");
    sub->add_flag("--csv", o.csv, "CSV output instead of JSON");
    sub->add_option("--budget", o.budget, "enumeration cost ceiling");
  };

  auto* zeta = app.add_subcommand("zeta", "closed-form height zeta function");
  auto* count = app.add_subcommand("count", "brute-force point counts");
  count->add_flag("--components", o.components, "one row per decomposition piece");
  auto* verify = app.add_subcommand("verify", "closed form vs enumeration");
  auto* asym = app.add_subcommand("asym", "classification and asymptotic constants");
  auto* invariants = app.add_subcommand("invariants", "numerical invariants of X");
  auto* decomp = app.add_subcommand("decompose", "stratification of X(K)");
  for (auto* s : {zeta, count, verify, asym, invariants, decomp}) add_common(s);

  CLI11_PARSE(app, argc, argv);

  try {
    if (zeta->parsed()) return cmd_zeta(o);
    if (count->parsed()) return cmd_count(o);
    if (verify->parsed()) return cmd_verify(o);
    if (asym->parsed()) return cmd_asym(o);
    if (invariants->parsed()) return cmd_invariants(o);
    if (decomp->parsed()) return cmd_decompose(o);
  } catch (const std::runtime_error& e) {
    std::cerr << e.what() << "\n";
    return 4;
  } catch (const std::domain_error& e) {
    std::cerr << e.what() << "\n";
    std::string msg = e.what();
    if (msg.find("big") != std::string::npos || msg.find("bundle") != std::string::npos)
      return 2;
    return 3;
  }
  return 0;
}
