#pragma once
// JSON serialization and the textual variety format "HK(r=1,t=2;a=1,2)".

#include <hkzeta/closedform.hpp>
#include <hkzeta/counting.hpp>

#include <json.hpp>

#include <fstream>
#include <regex>
#include <sstream>

namespace hkzeta {

using json = nlohmann::json;

inline HKVariety parse_variety(const std::string& s) {
  if (!s.empty() && s[0] == '{') {
    json j = json::parse(s);
    return HKVariety{j.at("r").get<int>(), j.at("t").get<int>(),
                     j.at("a").get<std::vector<int>>()};
  }
  static const std::regex re(
      R"(HK\(\s*r\s*=\s*(\d+)\s*,\s*t\s*=\s*(\d+)\s*;\s*a\s*=\s*([0-9,\s]+)\))");
  std::smatch m;
  if (!std::regex_match(s, m, re))
    throw std::domain_error("cannot parse variety spec: " + s);
  std::vector<int> a;
  std::stringstream ss(m[3]);
  std::string tok;
  while (std::getline(ss, tok, ',')) a.push_back(std::stoi(tok));
  return HKVariety{std::stoi(m[1]), std::stoi(m[2]), a};
}

inline json variety_json(const HKVariety& X) {
  return json{{"r", X.r}, {"t", X.t}, {"a", X.a}, {"spec", X.str()}};
}

inline json divisor_json(const Divisor& D) {
  json out = json::array();
  for (auto& [P, c] : D.support())
    out.push_back(json{{"place", P.str()}, {"coeff", c}});
  return out;
}

inline Divisor divisor_from_json(const json& j, const FieldPtr& F) {
  Divisor D;
  for (auto& e : j) {
    std::string p = e.at("place").get<std::string>();
    long long c = e.at("coeff").get<long long>();
    if (p == "inf")
      D.add(Place::infinity(), c);
    else
      D.add(Place::from_prime(parse_poly(F, p)), c);
  }
  return D;
}

inline json factored_json(const FactoredRational& Z) {
  json num = json::array(), den = json::array();
  for (auto& c : Z.num()) num.push_back(to_string(c));
  for (auto& [k, e] : Z.factors())
    den.push_back(json::array({k.c.str(), k.m, e}));
  json out{{"num", num}, {"den", den}};
  if (Z.has_general_den()) {
    json g = json::array();
    for (auto& c : Z.general_den()) g.push_back(to_string(c));
    out["gden"] = g;
  }
  return out;
}

inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

inline FactoredRational factored_from_json(const json& j) {
  ratpoly::P num;
  for (auto& c : j.at("num")) num.push_back(parse_rat(c.get<std::string>()));
  FactoredRational Z(num);
  for (auto& f : j.at("den")) {
    Int c = f.at(0).is_string() ? Int(f.at(0).get<std::string>())
                                : Int(f.at(0).get<long long>());
    Z = Z * FactoredRational::geometric(c, f.at(1).get<int>(), f.at(2).get<int>());
  }
  return Z;
}

inline CurveData curve_from_json(const json& j) {
  CurveData C;
  C.field = make_field(j.at("q").get<long long>());
  C.genus = j.at("g").get<int>();
  C.Lcoeffs.clear();
  for (auto& c : j.at("L")) {
    if (c.is_string())
      C.Lcoeffs.push_back(Int(c.get<std::string>()));
    else
      C.Lcoeffs.push_back(Int(c.get<long long>()));
  }
  if (j.contains("places")) {
    for (auto& p : j.at("places")) {
      int d = p.at("deg").get<int>();
      long long n = p.at("count").get<long long>();
      if ((int)C.place_counts.size() < d) C.place_counts.resize(d, 0);
      C.place_counts[d - 1] = n;
    }
  }
  if (j.contains("ell_table"))
    for (auto& e : j.at("ell_table"))
      C.ell_table[e.at("divisor").get<std::string>()] =
          e.at("ell").get<int>();
  C.validate();
  return C;
}

inline CurveData load_curve(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open curve file: " + path);
  json j;
  in >> j;
  return curve_from_json(j);
}

inline json classification_json(const Classification& cls) {
  const char* name = cls.A == cls.B   ? "A=B"
                     : cls.A < cls.B ? "A<B"
                                     : "A>B";
  return json{{"A", to_string(cls.A)},       {"B", to_string(cls.B)},
              {"case", name},                {"a", to_string(cls.a)},
              {"b", cls.b},                  {"a_second", to_string(cls.a_second)},
              {"eta_L", cls.eta_L},          {"c_L", cls.c_L},
              {"primitive", json{{"gamma", cls.primitive.gamma}, {"xi", cls.primitive.xi}}}};
}

inline json scaled_json(const ScaledConstant& c) {
  return json{{"value", to_string(c.value)}, {"log_exp", c.log_exp}};
}

}  // namespace hkzeta
