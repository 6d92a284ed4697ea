#include "wpr/io.hpp"

#include <regex>

#include "wpr/errors.hpp"

namespace wpr::io {

json num(long v) { return std::to_string(v); }
json num(const mpz_class& v) { return v.get_str(); }

long to_long(const json& j, const std::string& what) {
  static const std::regex canonical("0|-?[1-9][0-9]{0,17}");
  if (!j.is_string() || !std::regex_match(j.get<std::string>(), canonical)) {
    throw ParseError(what + ": expected a decimal string");
  }
  return std::stol(j.get<std::string>());
}

namespace {

std::string tier_name(RingTier t) {
  switch (t) {
    case RingTier::Int: return "INT";
    case RingTier::IntMod: return "INT_MOD";
    case RingTier::PolyQuot: return "POLY_QUOT";
  }
  return "?";
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string text(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

bool flag(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_boolean()) throw ParseError(std::string("field '") + key + "' must be a boolean");
  return v.get<bool>();
}

const json& array(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array()) throw ParseError(std::string("field '") + key + "' must be an array");
  return v;
}

}  // namespace

json ring_to_json(const RingPresentation& r) {
  json j;
  j["tier"] = tier_name(r.tier());
  j["base"] = r.base().str();
  j["variables"] = r.variables();
  j["order"] = to_string(r.order());
  json ideal = json::array();
  for (const auto& g : r.ideal()) ideal.push_back(r.format(g));
  j["ideal"] = ideal;
  return j;
}

RingPresentation ring_from_json(const json& j) {
  const std::string tier = text(j, "tier");
  BaseCoefficients base = BaseCoefficients::parse(text(j, "base"));
  std::vector<std::string> vars;
  for (const auto& v : array(j, "variables")) {
    if (!v.is_string()) throw ParseError("variable names must be strings");
    vars.push_back(v.get<std::string>());
  }
  std::vector<std::string> ideal;
  for (const auto& g : array(j, "ideal")) {
    if (!g.is_string()) throw ParseError("ideal generators must be strings");
    ideal.push_back(g.get<std::string>());
  }
  MonomialOrder order = parse_monomial_order(text(j, "order"));
  RingPresentation r = RingPresentation::integers();
  if (tier == "INT" && base.kind == BaseKind::Int && vars.empty() && ideal.empty()) {
    r = RingPresentation::integers();
  } else if (tier == "INT_MOD" && base.kind == BaseKind::IntMod && vars.empty() && ideal.empty()) {
    r = RingPresentation::integers_mod(base.modulus);
  } else if (tier == "POLY_QUOT") {
    r = RingPresentation::polynomial(base, vars, order, ideal);
  } else {
    throw ParseError("inconsistent ring description");
  }
  if (ring_to_json(r) != j) throw ParseError("ring description is not canonical");
  return r;
}

json poly_to_json(const RingPresentation& r, const Poly& p) { return r.format(r.reduce(p)); }

Poly poly_from_json(const RingPresentation& r, const json& j) {
  if (!j.is_string()) throw ParseError("polynomials must be strings");
  Poly p = r.parse(j.get<std::string>());
  if (r.format(p) != j.get<std::string>()) throw ParseError("polynomial '" + j.get<std::string>() + "' is not in normal form");
  return p;
}

json polys_to_json(const RingPresentation& r, const std::vector<Poly>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(poly_to_json(r, p));
  return out;
}

std::vector<Poly> polys_from_json(const RingPresentation& r, const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of polynomials");
  std::vector<Poly> out;
  for (const auto& x : j) out.push_back(poly_from_json(r, x));
  return out;
}

json module_to_json(const ModulePresentation& m) {
  json rels = json::array();
  for (const auto& v : m.relations()) rels.push_back(polys_to_json(m.ring(), v));
  return {{"ring", ring_to_json(m.ring())}, {"rank", num(m.rank())}, {"relations", rels}};
}

ModulePresentation module_from_json(const json& j) {
  RingPresentation r = ring_from_json(field(j, "ring"));
  const long rank = to_long(field(j, "rank"), "rank");
  std::vector<Vector> rels;
  for (const auto& v : array(j, "relations")) {
    Vector x = polys_from_json(r, v);
    if (static_cast<long>(x.size()) != rank) throw ParseError("relation length differs from the rank");
    rels.push_back(std::move(x));
  }
  return {r, static_cast<int>(rank), std::move(rels)};
}

json size_to_json(const ModuleSize& s) { return s.str(); }

namespace {

json claim_to_json(const TorsionClaim& c) {
  return {{"ring", ring_to_json(c.ring)},
          {"element", poly_to_json(c.ring, c.element)},
          {"t", num(c.t)},
          {"witness", poly_to_json(c.ring, c.witness)},
          {"bound_form", c.bound_form}};
}

TorsionClaim claim_from_json(const json& j) {
  TorsionClaim c;
  c.ring = ring_from_json(field(j, "ring"));
  c.element = poly_from_json(c.ring, field(j, "element"));
  c.t = static_cast<int>(to_long(field(j, "t"), "t"));
  c.witness = poly_from_json(c.ring, field(j, "witness"));
  c.bound_form = flag(j, "bound_form");
  return c;
}

}  // namespace

json certificate_to_json(const WprCertificate& c) {
  const RingPresentation& r = c.ring;
  json degrees = json::array();
  for (const auto& d : c.degrees) {
    json w = json::array();
    for (int j : d.witnesses) w.push_back(num(j));
    degrees.push_back({{"degree", num(d.degree)}, {"witnesses", w}});
  }
  json torsion = json::array();
  for (const auto& t : c.torsion) torsion.push_back(claim_to_json(t));
  json charts = json::array();
  for (const auto& ch : c.charts) {
    json x = {{"s", poly_to_json(r, ch.s)}, {"generators", polys_to_json(r, ch.generators)}};
    x["local"] = ch.local ? certificate_to_json(*ch.local) : json(nullptr);
    x["torsion"] = ch.torsion ? claim_to_json(*ch.torsion) : json(nullptr);
    charts.push_back(x);
  }
  json prov = json::array();
  for (const auto& p : c.provenance) prov.push_back(certificate_to_json(p));
  return {{"method", to_string(c.method)},
          {"ring", ring_to_json(r)},
          {"sequence", polys_to_json(r, c.seq)},
          {"bound", num(c.bound)},
          {"i_max", num(c.i_max)},
          {"degrees", degrees},
          {"torsion", torsion},
          {"ideal", polys_to_json(r, c.ideal)},
          {"cover", polys_to_json(r, c.cover)},
          {"cover_witness", polys_to_json(r, c.cover_witness)},
          {"charts", charts},
          {"provenance", prov},
          {"prime", poly_to_json(r, c.prime)},
          {"declared_complete", c.declared_complete},
          {"label", c.label}};
}

WprCertificate certificate_from_json(const json& j) {
  WprCertificate c;
  c.method = parse_method(text(j, "method"));
  c.ring = ring_from_json(field(j, "ring"));
  const RingPresentation& r = c.ring;
  c.seq = polys_from_json(r, field(j, "sequence"));
  c.bound = static_cast<int>(to_long(field(j, "bound"), "bound"));
  c.i_max = static_cast<int>(to_long(field(j, "i_max"), "i_max"));
  for (const auto& d : array(j, "degrees")) {
    ProZeroCertificate p;
    p.degree = static_cast<int>(to_long(field(d, "degree"), "degree"));
    for (const auto& w : array(d, "witnesses")) p.witnesses.push_back(static_cast<int>(to_long(w, "witness")));
    p.i_max = static_cast<int>(p.witnesses.size()) - 1;
    p.bound = c.bound;
    p.determined = true;
    c.degrees.push_back(std::move(p));
  }
  for (const auto& t : array(j, "torsion")) c.torsion.push_back(claim_from_json(t));
  c.ideal = polys_from_json(r, field(j, "ideal"));
  c.cover = polys_from_json(r, field(j, "cover"));
  c.cover_witness = polys_from_json(r, field(j, "cover_witness"));
  for (const auto& x : array(j, "charts")) {
    ChartRecord ch;
    ch.s = poly_from_json(r, field(x, "s"));
    ch.generators = polys_from_json(r, field(x, "generators"));
    if (!field(x, "local").is_null()) ch.local = std::make_shared<WprCertificate>(certificate_from_json(x.at("local")));
    if (!field(x, "torsion").is_null()) ch.torsion = claim_from_json(x.at("torsion"));
    c.charts.push_back(std::move(ch));
  }
  for (const auto& p : array(j, "provenance")) c.provenance.push_back(certificate_from_json(p));
  c.prime = poly_from_json(r, field(j, "prime"));
  c.declared_complete = flag(j, "declared_complete");
  c.label = text(j, "label");
  if (certificate_to_json(c) != j) throw ParseError("certificate is not in canonical form");
  return c;
}

}  // namespace wpr::io
