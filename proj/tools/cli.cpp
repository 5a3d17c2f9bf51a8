#include "cli.hpp"

#include <algorithm>
#include <set>

#include "belyi/acceptance.hpp"
#include "belyi/descent.hpp"

namespace belyi::cli {

namespace {

using CurvePtr = std::shared_ptr<const Curve>;

const std::set<std::string> kCommands{"genus",        "lspace",      "pushforward",   "parabolic", "verify-prop1",
                                      "verify-e18",   "verify-tower", "krull-schmidt", "descend",   "selftest"};

[[noreturn]] void schema(const std::string& what) { throw SchemaError(what); }

const Json& field(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) schema(where + ": missing \"" + key + "\"");
  return obj.at(key);
}

void only_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) schema(where + " must be an object");
  for (auto& [k, v] : obj.items())
    if (!allowed.count(k)) schema(where + ": unknown field \"" + k + "\"");
}

long integer(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) schema(where + " must be an integer");
  return v.get<long>();
}

std::string text(const Json& v, const std::string& where) {
  if (!v.is_string()) schema(where + " must be a string");
  return v.get<std::string>();
}

// ---- input ----

std::shared_ptr<const FieldTower> parse_field(const Json& spec) {
  if (!spec.contains("field")) return FieldTower::build(parse_qpoly("x"), {}, std::nullopt);
  const Json& f = spec.at("field");
  only_keys(f, {"base_min_poly", "transcendentals", "algebraic_ext"}, "field");
  const Json& mp = field(f, "base_min_poly", "field");
  if (!mp.is_array() || mp.empty()) schema("field.base_min_poly must be a nonempty integer list");
  std::vector<QQ> co;
  for (auto& c : mp) co.push_back(QQ(integer(c, "field.base_min_poly entry")));
  std::vector<std::string> ts;
  if (f.contains("transcendentals")) {
    if (!f.at("transcendentals").is_array()) schema("field.transcendentals must be a list of names");
    for (auto& t : f.at("transcendentals")) ts.push_back(text(t, "field.transcendentals entry"));
  }
  std::optional<std::string> ext;
  if (f.contains("algebraic_ext") && !f.at("algebraic_ext").is_null()) {
    const Json& g = f.at("algebraic_ext");
    if (!g.is_array() || g.size() < 2) schema("field.algebraic_ext must list at least two coefficients");
    std::string s;
    const size_t n = g.size() - 1;
    for (size_t i = 0; i <= n; ++i) {
      if (i) s += " + ";
      s += "(" + text(g[i], "field.algebraic_ext entry") + ")*u^" + std::to_string(n - i);
    }
    ext = s;
  }
  return FieldTower::build(qpoly_from_descending(co), ts, ext);
}

Place parse_point(const Curve& c, const Json& p, const std::string& where) {
  if (p.is_string()) {
    if (p.get<std::string>() != "infinity") schema(where + ": unknown point \"" + p.get<std::string>() + "\"");
    return Place::infinity();
  }
  if (!p.is_object()) schema(where + " must be \"infinity\" or an object");
  if (p.contains("branch")) {
    only_keys(p, {"branch", "index"}, where);
    const std::string b = text(p.at("branch"), where + ".branch");
    if (b != "0" && b != "1") schema(where + ".branch must be \"0\" or \"1\"");
    const long k = integer(field(p, "index", where), where + ".index");
    const size_t count = b == "0" ? c.places_over_zero().size() : c.places_over_one().size();
    require(k >= 0 && static_cast<size_t>(k) < count,
            "there are " + std::to_string(count) + " places over " + b + ", index " + std::to_string(k) + " is out of range");
    return b == "0" ? Place::zero(static_cast<int>(k)) : Place::one(static_cast<int>(k));
  }
  only_keys(p, {"x", "y"}, where);
  return c.make_place(parse_elem(c.field(), text(field(p, "x", where), where + ".x")),
                      parse_elem(c.field(), text(field(p, "y", where), where + ".y")));
}

Divisor parse_divisor(const Curve& c, const Json& d, const std::string& where) {
  if (!d.is_array()) schema(where + " must be a list of {point, coeff}");
  Divisor D;
  for (size_t i = 0; i < d.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    only_keys(d[i], {"point", "coeff"}, w);
    D.add(parse_point(c, field(d[i], "point", w), w + ".point"), integer(field(d[i], "coeff", w), w + ".coeff"));
  }
  return D;
}

struct Problem {
  std::string command;
  CurvePtr curve;                    // carries the bundle
  std::optional<TowerSpec> tower;
  std::vector<Divisor> bundle;
  std::optional<Divisor> divisor;
};

Problem parse_problem(const Json& spec, const Options& opt) {
  only_keys(spec, {"command", "field", "curve", "tower", "bundle", "divisor"}, "problem");
  Problem P;
  if (opt.command) P.command = *opt.command;
  else if (spec.contains("command")) P.command = text(spec.at("command"), "command");
  else schema("no command given");
  if (!kCommands.count(P.command)) schema("unknown command \"" + P.command + "\"");
  if (P.command == "selftest") return P;

  if (spec.contains("curve") == spec.contains("tower")) schema("exactly one of \"curve\" and \"tower\" is required");
  auto K = parse_field(spec);
  if (spec.contains("curve")) {
    const Json& c = spec.at("curve");
    only_keys(c, {"N", "a", "b"}, "curve");
    P.curve = Curve::build(static_cast<int>(integer(field(c, "N", "curve"), "curve.N")),
                           static_cast<int>(integer(field(c, "a", "curve"), "curve.a")),
                           static_cast<int>(integer(field(c, "b", "curve"), "curve.b")), K);
  } else {
    const Json& t = spec.at("tower");
    only_keys(t, {"N", "a", "b", "M"}, "tower");
    auto Y = Curve::build(static_cast<int>(integer(field(t, "N", "tower"), "tower.N")),
                          static_cast<int>(integer(field(t, "a", "tower"), "tower.a")),
                          static_cast<int>(integer(field(t, "b", "tower"), "tower.b")), K);
    P.tower = TowerSpec::build(Y, static_cast<int>(integer(field(t, "M", "tower"), "tower.M")));
    P.curve = P.tower->X;
  }
  if ((P.command == "verify-tower") != P.tower.has_value())
    schema(P.command == "verify-tower" ? "verify-tower needs a tower block" : P.command + " needs a curve block");
  if (spec.contains("bundle")) {
    const Json& b = spec.at("bundle");
    if (!b.is_array()) schema("bundle must be a list of divisors");
    for (size_t i = 0; i < b.size(); ++i) P.bundle.push_back(parse_divisor(*P.curve, b[i], "bundle[" + std::to_string(i) + "]"));
  }
  if (spec.contains("divisor")) P.divisor = parse_divisor(*P.curve, spec.at("divisor"), "divisor");
  const bool needs_bundle = P.command != "genus" && P.command != "lspace";
  if (needs_bundle && P.bundle.empty()) schema(P.command + " needs a nonempty bundle");
  if (P.command == "lspace" && !P.divisor) {
    if (P.bundle.size() != 1) schema("lspace needs a divisor (or a bundle with one divisor)");
    P.divisor = P.bundle.front();
  }
  return P;
}

// ---- output ----

Json point_json(const Place& p) {
  switch (p.kind) {
    case PlaceKind::Infinity: return "infinity";
    case PlaceKind::Zero: return {{"branch", "0"}, {"index", p.index}};
    case PlaceKind::One: return {{"branch", "1"}, {"index", p.index}};
    case PlaceKind::Generic: return {{"x", p.x.str()}, {"y", p.y.str()}};
  }
  return nullptr;
}

Json divisor_json(const Divisor& D) {
  Json out = Json::array();
  for (auto& [p, k] : D.terms()) out.push_back({{"point", point_json(p)}, {"coeff", k}});
  return out;
}

Json matrix_json(const KMatrix& m) {
  Json out = Json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    out.push_back(row);
  }
  return out;
}

std::string base_key(BasePoint y) {
  switch (y) {
    case BasePoint::Zero: return "0";
    case BasePoint::One: return "1";
    case BasePoint::Infinity: return "infinity";
  }
  return "";
}

Json weights_json(const ParabolicP1Bundle& W, BasePoint y) {
  Json out = Json::array();
  for (auto& w : W.weights(y)) out.push_back(weight_str(w));
  return out;
}

/// Weights at base points with nontrivial parabolic structure.
Json ramified_weights(const ParabolicP1Bundle& W) {
  Json out = Json::object();
  for (BasePoint y : kBasePoints)
    if (W.at(y).fiber.e > 1) out[base_key(y)] = weights_json(W, y);
  return out;
}

Json oracle_json(const OracleVerdict& v) {
  Json o{{"verdict", to_string(v.kind)}, {"tau", v.tau}, {"u_tau", v.u_tau}, {"field", v.field}, {"ell", v.ell}};
  if (v.kind == OracleVerdict::Kind::Descends) o["representative"] = divisor_json(v.representative);
  if (v.witness) o["function"] = v.witness->str();
  if (!v.note.empty()) o["note"] = v.note;
  return o;
}

// ---- commands ----

SplitBundle bundle_of(const Problem& P) { return SplitBundle{P.curve, P.bundle}; }

Json cmd_genus(const Problem& P) {
  const Curve& c = *P.curve;
  return {{"genus", c.genus()},
          {"ramification", {{"0", c.e0()}, {"1", c.e1()}, {"infinity", c.N()}}},
          {"places", {{"0", c.places_over_zero().size()}, {"1", c.places_over_one().size()}, {"infinity", 1}}}};
}

Json cmd_lspace(const Problem& P) {
  const RRSpace L(*P.curve, *P.divisor);
  Json basis = Json::array();
  for (auto& f : L.basis()) basis.push_back(f.str());
  return {{"divisor", divisor_json(*P.divisor)},
          {"degree", P.divisor->degree()},
          {"dimension", L.dim()},
          {"basis", basis},
          {"statistics", {{"unknowns", L.unknowns()}, {"constraints", L.constraints()}}}};
}

Json cmd_pushforward(const Problem& P, const Options& opt) {
  const SplitBundle E = bundle_of(P);
  const SplittingType T = pushforward_splitting_type(E);
  const ParabolicP1Bundle W = assemble_parabolic(E, opt.seed);
  Json profile = Json::array();
  for (auto& [m, h] : T.profile) profile.push_back({m, h});
  return {{"splitting", T.m}, {"weights", ramified_weights(W)}, {"profile", profile}, {"degree", E.degree()}};
}

Json cmd_parabolic(const Problem& P, const Options& opt) {
  const SplitBundle E = bundle_of(P);
  ParabolicP1Bundle W = assemble_parabolic(E, opt.seed);
  if (opt.corrupt_weight) W.points[0].flags[0].weights[1] = QQ(1, E.curve->N() + 1);
  Json sections = Json::array();
  for (auto& s : W.sections) {
    Json f = Json::array();
    for (auto& g : s.f) f.push_back(g.str());
    sections.push_back({{"m", s.m}, {"f", f}});
  }
  Json points = Json::object();
  for (BasePoint y : kBasePoints) {
    const ParabolicPoint& pt = W.at(y);
    Json flags = Json::array();
    for (auto& fl : pt.flags) {
      Json steps = Json::array();
      for (size_t k = 0; k < fl.weights.size(); ++k)
        steps.push_back({{"weight", weight_str(fl.weights[k])}, {"dimension", fl.E[k].rows()}, {"basis", matrix_json(fl.E[k])}});
      flags.push_back({{"place", point_json(fl.place)}, {"steps", steps}});
    }
    points[base_key(y)] = {{"multiplicity", pt.fiber.e},
                           {"weights", weights_json(W, y)},
                           {"fiber_matrix", matrix_json(pt.Sy)},
                           {"flags", flags}};
  }
  return {{"splitting", W.splitting}, {"sections", sections}, {"points", points}, {"violations", parabolic_violations(W)}};
}

Json cmd_prop1(const Problem& P, const Options& opt) { return {{"holds", verify_prop1(bundle_of(P), opt.seed)}}; }

Json cmd_e18(const Problem& P, const Options& opt) {
  const SplitBundle E = bundle_of(P);
  Json tr = Json::array();
  for (auto& D : translate_classes(E)) tr.push_back(divisor_json(D));
  return {{"holds", verify_e18(E, opt.seed)}, {"translates", tr}, {"pullback_degree", E.curve->N() * E.degree()}};
}

Json cmd_tower(const Problem& P, const Options& opt) {
  const TowerSpec& T = *P.tower;
  const Transversal tr = invariants_transversal(T);
  return {{"holds", verify_invariant_subbundle(T, bundle_of(P), opt.seed)},
          {"composition", T.check_composition()},
          {"degree_gamma", T.degree_gamma()},
          {"transversal", tr.S},
          {"epsilon", tr.epsilon}};
}

Json cmd_krull_schmidt(const Problem& P) {
  const EndAlgebra A(bundle_of(P));
  return {{"end_dimension", A.dim()}, {"algebra_check", A.check()}, {"indecomposable", indecomposable_test(A)}};
}

Json cmd_descend(const Problem& P, const Options& opt) {
  const SplitBundle E = bundle_of(P);
  const DescentVerdict v = descent_verdict(E, opt.max_tau, opt.seed);
  Json out{{"verdict", to_string(v.kind)},
           {"direct", to_string(v.direct)},
           {"agrees", v.agrees},
           {"pullback_matches", v.pullback_matches}};
  if (v.kind == DescentVerdict::Kind::DefinedOverF) {
    Json cert = Json::array();
    for (auto& D : v.certificate) cert.push_back(divisor_json(D));
    out["certificate"] = cert;
  }
  if (v.witness) out["witness"] = oracle_json(*v.witness);
  Json summands = Json::array();
  bool verified = true;
  for (size_t i = 0; i < v.summands.size(); ++i) {
    const OracleVerdict& s = v.summands[i];
    summands.push_back(oracle_json(s));
    // Witnesses on the input curve are re-checked: div f = D_i - representative.
    if (s.kind == OracleVerdict::Kind::Descends && s.witness && s.curve.get() == E.curve.get() && i < E.D.size())
      verified = verified && s.representative.is_t_free() && has_divisor(*E.curve, *s.witness, E.D[i] - s.representative);
  }
  out["summands"] = summands;
  out["certificate_verified"] = verified;
  if (!v.note.empty()) out["note"] = v.note;
  return out;
}

Json criterion_json(const CriterionResult& r) {
  return {{"id", r.id},
          {"name", r.name},
          {"pass", r.pass},
          {"checks", r.checks},
          {"failures", r.failures},
          {"time_limit_s", r.time_limit},
          {"within_limit", r.within_limit()}};
}

Json cmd_selftest(const Options& opt) {
  AcceptanceOptions a;
  a.seed = opt.seed;
  a.corrupt_weight = opt.corrupt_weight;
  Json criteria = Json::array(), again = Json::array();
  for (auto& r : run_criteria(a)) criteria.push_back(criterion_json(r));
  for (auto& r : run_criteria(a)) again.push_back(criterion_json(r));
  CriterionResult det;
  det.id = 10;
  det.name = "identical reports from identical runs";
  det.checks = 1;
  det.pass = criteria == again;
  if (!det.pass) det.failures.push_back("a second run produced a different report");
  criteria.push_back(criterion_json(det));
  bool pass = true;
  for (auto& c : criteria) pass = pass && c.at("pass").get<bool>() && c.at("within_limit").get<bool>();
  return {{"seed", opt.seed}, {"criteria", criteria}, {"pass", pass}};
}

Json dispatch(const Problem& P, const Options& opt) {
  const std::string& c = P.command;
  if (c == "genus") return cmd_genus(P);
  if (c == "lspace") return cmd_lspace(P);
  if (c == "pushforward") return cmd_pushforward(P, opt);
  if (c == "parabolic") return cmd_parabolic(P, opt);
  if (c == "verify-prop1") return cmd_prop1(P, opt);
  if (c == "verify-e18") return cmd_e18(P, opt);
  if (c == "verify-tower") return cmd_tower(P, opt);
  if (c == "krull-schmidt") return cmd_krull_schmidt(P);
  if (c == "descend") return cmd_descend(P, opt);
  return cmd_selftest(opt);
}

Json error_report(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

}  // namespace

Json run(const Json& spec, const Options& opt) {
  const Problem P = parse_problem(spec, opt);
  Json report{{"command", P.command}, {"result", dispatch(P, opt)}};
  if (P.curve) {
    report["curve"] = P.curve->describe();
    report["field"] = P.curve->field()->describe();
  }
  if (P.tower) report["tower"] = {{"N", P.tower->Y->N()}, {"M", P.tower->M}};
  if (!P.bundle.empty()) {
    Json b = Json::array();
    for (auto& D : P.bundle) b.push_back(divisor_json(D));
    report["bundle"] = b;
  }
  return report;
}

Outcome execute(const std::string& input, const Options& opt) {
  Outcome out;
  try {
    Json spec = input.find_first_not_of(" \t\r\n") == std::string::npos ? Json::object() : Json::parse(input);
    out.report = run(spec, opt);
    if (out.report.at("command") == "selftest" && !out.report.at("result").at("pass").get<bool>()) out.code = kFailed;
  } catch (const Json::exception& e) {
    out = {kSchema, error_report("schema", e.what())};
  } catch (const SchemaError& e) {
    out = {kSchema, error_report("schema", e.what())};
  } catch (const MathError& e) {
    out = {kMath, error_report("math", e.what())};
  } catch (const std::exception& e) {
    out = {kInternal, error_report("internal", e.what())};
  }
  return out;
}

}  // namespace belyi::cli
