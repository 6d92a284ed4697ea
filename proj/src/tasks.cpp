#include "wpr/tasks.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "wpr/errors.hpp"

namespace wpr::tasks {

using io::num;

namespace {

// --- manifest resolution ---------------------------------------------------------

const std::set<std::string> kKinds = {"wpr-check", "element-wpr", "quotient-wpr", "glue-wpr", "prism-wpr",
                                      "torsion-bound", "lemma54", "flatness", "gamma", "lambda",
                                      "towers", "compare", "verify", "explore"};

class Resolver {
 public:
  Resolver(json doc, std::string origin, Overrides o) : doc_(std::move(doc)), origin_(std::move(origin)), o_(o) {
    if (!doc_.is_object()) throw ParseError(origin_ + ": the manifest must be a JSON object");
    for (const auto& [k, v] : doc_.items()) {
      if (k != "rings" && k != "modules" && k != "sequences" && k != "prisms" && k != "tasks") {
        throw ParseError(origin_ + ": unknown section '" + k + "'");
      }
    }
  }

  std::vector<json> tasks() {
    std::vector<json> out;
    if (!doc_.contains("tasks") || !doc_["tasks"].is_array()) throw ParseError(origin_ + ": missing 'tasks' array");
    int index = 0;
    for (const auto& t : doc_["tasks"]) {
      std::string name = t.contains("name") && t["name"].is_string() ? t["name"].get<std::string>()
                                                                      : "task" + std::to_string(index);
      try {
        out.push_back(task(t, name));
      } catch (const Error& e) {
        throw ParseError(origin_ + ": task '" + name + "': " + e.what());
      }
      ++index;
    }
    return out;
  }

 private:
  const json& section(const char* name) {
    static const json empty = json::object();
    return doc_.contains(name) ? doc_[name] : empty;
  }

  RingPresentation ring(const json& v) {
    if (v.is_string()) {
      const std::string name = v.get<std::string>();
      if (auto it = rings_.find(name); it != rings_.end()) return it->second;
      if (!section("rings").contains(name)) throw ParseError("undefined ring '" + name + "'");
      if (!resolving_.insert(name).second) throw ParseError("ring '" + name + "' refers to itself");
      RingPresentation r = ring_literal(section("rings")[name]);
      resolving_.erase(name);
      rings_.emplace(name, r);
      return r;
    }
    return ring_literal(v);
  }

  RingPresentation ring_literal(const json& v) {
    if (!v.is_object()) throw ParseError("a ring must be a name or an object");
    if (v.contains("localize")) return localize(ring(v["localize"]), poly(ring(v["localize"]), v.at("at")));
    if (v.contains("quotient")) {
      RingPresentation base = ring(v["quotient"]);
      return quotient(base, polys(base, v.at("by")));
    }
    BaseCoefficients base = BaseCoefficients::parse(str(v, "base"));
    std::vector<std::string> vars = v.contains("variables") ? v["variables"].get<std::vector<std::string>>()
                                                            : std::vector<std::string>{};
    std::vector<std::string> ideal = v.contains("ideal") ? v["ideal"].get<std::vector<std::string>>()
                                                         : std::vector<std::string>{};
    MonomialOrder order = parse_monomial_order(v.contains("order") ? str(v, "order") : "degrevlex");
    if (vars.empty() && ideal.empty() && base.kind == BaseKind::Int) return RingPresentation::integers();
    if (vars.empty() && ideal.empty() && base.kind == BaseKind::IntMod) return RingPresentation::integers_mod(base.modulus);
    return RingPresentation::polynomial(base, vars, order, ideal);
  }

  static std::string str(const json& v, const char* key) {
    if (!v.contains(key) || !v[key].is_string()) throw ParseError(std::string("missing string field '") + key + "'");
    return v[key].get<std::string>();
  }

  static Poly poly(const RingPresentation& r, const json& v) {
    if (v.is_number_integer()) return r.constant(Coef(v.get<long>()));
    if (!v.is_string()) throw ParseError("polynomials must be strings");
    return r.parse(v.get<std::string>());
  }

  static std::vector<Poly> polys(const RingPresentation& r, const json& v) {
    if (!v.is_array()) throw ParseError("expected a list of polynomials");
    std::vector<Poly> out;
    for (const auto& x : v) out.push_back(poly(r, x));
    return out;
  }

  ModulePresentation module(const json& v) {
    if (v.is_string()) {
      const std::string name = v.get<std::string>();
      if (!section("modules").contains(name)) throw ParseError("undefined module '" + name + "'");
      return module(section("modules")[name]);
    }
    if (!v.is_object() || !v.contains("ring")) throw ParseError("a module needs a ring");
    RingPresentation r = ring(v["ring"]);
    if (v.contains("free")) return ModulePresentation::free(r, static_cast<int>(integer(v, "free", 0)));
    if (v.contains("cyclic")) return ModulePresentation::cyclic(r, polys(r, v["cyclic"]));
    const int rank = static_cast<int>(integer(v, "rank", 0));
    std::vector<Vector> rels;
    if (v.contains("relations")) {
      for (const auto& row : v["relations"]) {
        Vector x = polys(r, row);
        if (static_cast<int>(x.size()) != rank) throw ParseError("relation length differs from the rank");
        rels.push_back(std::move(x));
      }
    }
    return {r, rank, std::move(rels)};
  }

  // Sequence reference; `r` is the ring it must live in (nullopt: take the sequence's own ring).
  std::pair<RingPresentation, std::vector<Poly>> sequence(const json& v, std::optional<RingPresentation> r) {
    if (v.is_array()) {
      if (!r) throw ParseError("an inline sequence needs a ring");
      return {*r, polys(*r, v)};
    }
    if (!v.is_string()) throw ParseError("a sequence must be a name or a list");
    const std::string name = v.get<std::string>();
    if (!section("sequences").contains(name)) throw ParseError("undefined sequence '" + name + "'");
    const json& s = section("sequences")[name];
    RingPresentation own = ring(s.at("ring"));
    if (r && !r->same_as(own)) throw ParseError("sequence '" + name + "' lives over another ring");
    return {own, polys(own, s.at("elements"))};
  }

  static long integer(const json& v, const char* key, long min) {
    if (!v.contains(key) || !v[key].is_number_integer()) throw ParseError(std::string("missing integer field '") + key + "'");
    long x = v[key].get<long>();
    if (x < min) throw ParseError(std::string("field '") + key + "' must be at least " + std::to_string(min));
    return x;
  }

  json bound(const json& v) { return num(o_.bound ? *o_.bound : integer(v, "bound", 1)); }

  json task(const json& t, const std::string& name) {
    if (!t.is_object()) throw ParseError("a task must be an object");
    if (!t.contains("kind") || !t["kind"].is_string() || !kKinds.count(t["kind"].get<std::string>())) {
      throw ParseError("missing or unknown task kind");
    }
    const std::string kind = t["kind"];
    json out = {{"name", name}, {"kind", kind}};
    auto ring_of = [&]() -> std::optional<RingPresentation> {
      if (t.contains("ring")) return ring(t["ring"]);
      return std::nullopt;
    };
    auto put_ring = [&](const RingPresentation& r) { out["ring"] = io::ring_to_json(r); };
    auto put_polys = [&](const char* key, const RingPresentation& r, const std::vector<Poly>& ps) {
      out[key] = io::polys_to_json(r, ps);
    };
    auto need_ring = [&]() {
      auto r = ring_of();
      if (!r) throw ParseError("missing ring");
      return *r;
    };
    if (kind == "wpr-check") {
      auto [r, s] = sequence(t.at("sequence"), ring_of());
      put_ring(r);
      put_polys("sequence", r, s);
      out["bound"] = bound(t);
    } else if (kind == "element-wpr") {
      RingPresentation r = need_ring();
      put_ring(r);
      out["element"] = io::poly_to_json(r, poly(r, t.at("element")));
      out["bound"] = bound(t);
    } else if (kind == "quotient-wpr") {
      RingPresentation r = need_ring();
      put_ring(r);
      out["a"] = io::poly_to_json(r, poly(r, t.at("a")));
      out["b"] = io::poly_to_json(r, poly(r, t.at("b")));
      out["bound"] = bound(t);
    } else if (kind == "glue-wpr") {
      RingPresentation r = need_ring();
      put_ring(r);
      put_polys("cover", r, polys(r, t.at("cover")));
      json charts = json::array();
      for (const auto& c : t.at("charts")) charts.push_back(io::polys_to_json(r, polys(r, c)));
      out["charts"] = charts;
      put_polys("ideal", r, t.contains("ideal") ? polys(r, t["ideal"]) : std::vector<Poly>{});
      out["bound"] = bound(t);
    } else if (kind == "prism-wpr") {
      if (!t.contains("prism") || !t["prism"].is_string()) throw ParseError("missing prism reference");
      const std::string pname = t["prism"];
      if (!section("prisms").contains(pname)) throw ParseError("undefined prism '" + pname + "'");
      const json& p = section("prisms")[pname];
      RingPresentation r = ring(p.at("ring"));
      put_ring(r);
      put_polys("ideal", r, polys(r, p.at("ideal")));
      out["prime"] = io::poly_to_json(r, poly(r, p.at("prime")));
      json charts = json::array();
      for (const auto& c : p.at("charts")) {
        charts.push_back({{"s", io::poly_to_json(r, poly(r, c.at("s")))}, {"b", io::poly_to_json(r, poly(r, c.at("b")))}});
      }
      out["charts"] = charts;
      out["declared_complete"] = p.contains("declared_complete") && p["declared_complete"].get<bool>();
      out["bound"] = bound(t);
    } else if (kind == "torsion-bound") {
      ModulePresentation m = t.contains("module") ? module(t["module"]) : ModulePresentation::free(need_ring(), 1);
      out["module"] = io::module_to_json(m);
      out["element"] = io::poly_to_json(m.ring(), poly(m.ring(), t.at("element")));
      out["bound"] = bound(t);
    } else if (kind == "lemma54") {
      RingPresentation r = need_ring();
      put_ring(r);
      out["a"] = io::poly_to_json(r, poly(r, t.at("a")));
      out["b"] = io::poly_to_json(r, poly(r, t.at("b")));
      out["k_max"] = num(integer(t, "k_max", 0));
      out["bound"] = bound(t);
    } else if (kind == "verify") {
      if (!t.contains("certificate") || !t["certificate"].is_string()) throw ParseError("missing certificate path");
      std::filesystem::path p = t["certificate"].get<std::string>();
      if (p.is_relative()) p = std::filesystem::path(origin_).parent_path() / p;
      out["certificate"] = p.lexically_normal().string();
    } else if (kind == "explore") {
      RingPresentation r = need_ring();
      put_ring(r);
      put_polys("first", r, sequence(t.at("first"), r).second);
      put_polys("second", r, sequence(t.at("second"), r).second);
      out["bound"] = bound(t);
    } else {
      ModulePresentation m = t.contains("module") ? module(t["module"]) : ModulePresentation::free(need_ring(), 1);
      out["module"] = io::module_to_json(m);
      put_polys("sequence", m.ring(), sequence(t.at("sequence"), m.ring()).second);
      if (kind == "flatness") {
        out["q_max"] = num(integer(t, "q_max", 1));
        out["level"] = num(t.contains("level") ? integer(t, "level", 0) : 0);
      } else if (kind == "lambda") {
        out["precision"] = num(o_.precision ? *o_.precision : integer(t, "precision", 0));
      } else if (kind == "compare") {
        out["degree"] = num(integer(t, "degree", 0));
        out["bound"] = bound(t);
      } else {
        out["bound"] = bound(t);
      }
    }
    return out;
  }

  json doc_;
  std::string origin_;
  Overrides o_;
  std::map<std::string, RingPresentation> rings_;
  std::set<std::string> resolving_;
};

// --- execution ------------------------------------------------------------------

int param(const json& t, const char* key) { return static_cast<int>(io::to_long(t.at(key), key)); }

json sizes(const std::vector<ModuleSize>& s) {
  json out = json::array();
  for (const auto& x : s) out.push_back(io::size_to_json(x));
  return out;
}

json ints(const std::vector<int>& v) {
  json out = json::array();
  for (int x : v) out.push_back(num(x));
  return out;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s;
}

TaskOutcome wpr_outcome(const WprOutcome& o) {
  if (!o.certified()) {
    const auto& u = *o.undetermined;
    return {"undetermined", {{"undetermined", {{"stage", u.stage}, {"detail", u.detail}, {"bound", num(u.bound)}}}},
            "UNDETERMINED at " + u.stage + " (bound " + std::to_string(u.bound) + "): " + u.detail};
  }
  const auto& c = *o.certificate;
  std::string s = to_string(c.method);
  for (const auto& d : c.degrees) s += "; H^" + std::to_string(d.degree) + " j = [" + join(d.witnesses) + "]";
  if (!c.label.empty()) s += "; " + c.label;
  return {"certified", {{"certificate", io::certificate_to_json(c)}}, s};
}

TaskOutcome run_towers(const ModulePresentation& m, const std::vector<Poly>& s, int bound) {
  auto report = [](const TowerReport& r) {
    json out = json::array();
    for (const auto& d : r.degrees) {
      json w = json::array();
      for (const auto& [i, j] : d.witnesses) w.push_back({num(i), num(j)});
      out.push_back({{"degree", num(d.degree)},
                     {"verdict", to_string(d.verdict)},
                     {"level", num(d.level)},
                     {"profile", sizes(d.profile)},
                     {"witnesses", w}});
    }
    return out;
  };
  TowerReport torsion = torsion_tower(m, s, bound);
  TowerReport completion = completion_tower(m, s, bound);
  bool undetermined = false;
  std::string summary = "completion";
  for (const auto& d : completion.degrees) {
    undetermined |= d.verdict == TowerVerdict::Undetermined;
    summary += " H^" + std::to_string(d.degree) + " " + to_string(d.verdict);
  }
  summary += "; torsion";
  for (const auto& d : torsion.degrees) summary += " H^" + std::to_string(d.degree) + " " + to_string(d.verdict);
  return {undetermined ? "undetermined" : "determined", {{"torsion", report(torsion)}, {"completion", report(completion)}},
          summary};
}

TaskOutcome explore(const RingPresentation& r, const std::vector<Poly>& a, const std::vector<Poly>& b, int bound) {
  std::vector<Poly> sum = a, product;
  sum.insert(sum.end(), b.begin(), b.end());
  for (const auto& x : a) {
    for (const auto& y : b) product.push_back(r.mul(x, y));
  }
  json out = json::object();
  std::string summary;
  for (const auto& [label, s] : std::vector<std::pair<std::string, std::vector<Poly>>>{
           {"first", a}, {"second", b}, {"sum", sum}, {"product", product}}) {
    WprOutcome o = wpr_sequence_check(r, s, bound);
    json e = {{"sequence", io::polys_to_json(r, s)}, {"status", o.certified() ? "certified" : "undetermined"}};
    if (o.certified()) {
      json w = json::array();
      for (const auto& d : o.certificate->degrees) w.push_back(ints(d.witnesses));
      e["witnesses"] = w;
    }
    out[label] = e;
    summary += (summary.empty() ? "" : ", ") + label + " " + e["status"].get<std::string>();
  }
  return {"determined", out, summary + " (exploratory, nothing asserted)"};
}

TaskOutcome dispatch(const json& t) {
  const std::string kind = t.at("kind");
  if (kind == "verify") {
    auto f = verify_path(t.at("certificate"));
    json r = {{"ok", !f.has_value()}, {"failure", f ? *f : ""}};
    return {f ? "failed" : "determined", r, f ? "REJECTED: " + *f : "certificate replays"};
  }
  if (t.contains("module")) {
    ModulePresentation m = io::module_from_json(t["module"]);
    const RingPresentation& r = m.ring();
    if (kind == "torsion-bound") {
      TorsionBoundReport rep = torsion_bound(m, io::poly_from_json(r, t.at("element")), param(t, "bound"));
      json out = {{"tb", rep.tb ? num(*rep.tb) : json(nullptr)},
                  {"chain", sizes(rep.chain)},
                  {"generators", ints(rep.generators)},
                  {"verified_through", num(rep.verified_through)},
                  {"strict_witness", io::polys_to_json(r, rep.strict_witness)}};
      if (!rep.tb) return {"undetermined", out, "UNDETERMINED (bound " + std::to_string(rep.bound) + ")"};
      return {"determined", out, "tb = " + std::to_string(*rep.tb)};
    }
    std::vector<Poly> s = io::polys_from_json(r, t.at("sequence"));
    if (kind == "flatness") {
      FlatnessVerdict v = adic_flatness_at(m, s, param(t, "level"), param(t, "q_max"));
      json out = {{"verdict", v.str()}, {"flat", v.flat}, {"q_max", num(v.q_max)}, {"level", num(v.level)},
                  {"witness", v.witness}, {"witness_degree", num(v.witness_q)},
                  {"witness_size", v.witness_module.valid() ? io::size_to_json(v.witness_module.size()) : json("")}};
      return {"determined", out, v.str()};
    }
    if (kind == "gamma") {
      GammaResult g = gamma(m, s, param(t, "bound"));
      json out = {{"determined", g.determined}, {"stabilized_at", num(g.stabilized_at)}, {"chain", sizes(g.chain)}};
      if (!g.determined) return {"undetermined", out, "UNDETERMINED (bound " + std::to_string(g.bound) + ")"};
      Pruned p = prune(g.value.module);
      out["value"] = io::module_to_json(p.module);
      out["size"] = io::size_to_json(p.module.size());
      return {"determined", out, "Gamma = " + p.module.describe() + " (size " + p.module.size().str() + ")"};
    }
    if (kind == "lambda") {
      AdicSystem a = lambda_system(m, s, param(t, "precision"));
      json mods = json::array();
      for (const auto& x : a.modules) mods.push_back(io::module_to_json(x));
      json out = {{"sizes", sizes(a.sizes())}, {"modules", mods}, {"killed", a.killed}, {"bijective", a.bijective}};
      std::string sz;
      for (const auto& x : a.sizes()) sz += (sz.empty() ? "" : ",") + x.str();
      return {"determined", out, "levels [" + sz + "], compatibility maps bijective"};
    }
    if (kind == "towers") return run_towers(m, s, param(t, "bound"));
    if (kind == "compare") {
      ComparisonReport c = compare_idealistic_sequential(m, s, param(t, "degree"), param(t, "bound"));
      json iso = json::array();
      for (bool b : c.comparison_iso) iso.push_back(b);
      json out = {{"idealistic", sizes(c.idealistic)}, {"sequential", sizes(c.sequential)}, {"comparison_iso", iso},
                  {"determined", c.determined}, {"isomorphic", c.isomorphic}, {"level", num(c.level)}};
      if (!c.determined) return {"undetermined", out, "UNDETERMINED: a side did not stabilize"};
      out["size"] = io::size_to_json(c.value.size());
      if (!c.isomorphic) return {"failed", out, "MISMATCH at level " + std::to_string(c.level)};
      return {"determined", out, "both sides stabilize at level " + std::to_string(c.level) + ", isomorphic"};
    }
  }
  RingPresentation r = io::ring_from_json(t.at("ring"));
  auto p = [&](const char* key) { return io::poly_from_json(r, t.at(key)); };
  if (kind == "wpr-check") return wpr_outcome(wpr_sequence_check(r, io::polys_from_json(r, t.at("sequence")), param(t, "bound")));
  if (kind == "element-wpr") return wpr_outcome(element_wpr(r, p("element"), param(t, "bound")));
  if (kind == "quotient-wpr") return wpr_outcome(quotient_wpr_certify(r, p("a"), p("b"), param(t, "bound")));
  if (kind == "glue-wpr") {
    std::vector<std::vector<Poly>> charts;
    for (const auto& c : t.at("charts")) charts.push_back(io::polys_from_json(r, c));
    return wpr_outcome(glue_wpr(r, io::polys_from_json(r, t.at("cover")), charts, io::polys_from_json(r, t.at("ideal")),
                                param(t, "bound")));
  }
  if (kind == "prism-wpr") {
    PrismPresentation pr{r, io::polys_from_json(r, t.at("ideal")), p("prime"), {}, t.at("declared_complete").get<bool>()};
    for (const auto& c : t.at("charts")) pr.charts.emplace_back(io::poly_from_json(r, c.at("s")), io::poly_from_json(r, c.at("b")));
    return wpr_outcome(prism_wpr(pr, param(t, "bound")));
  }
  if (kind == "lemma54") {
    Lemma54Report l = lemma54_verify(r, p("a"), p("b"), param(t, "k_max"), param(t, "bound"));
    json tight = json::array();
    for (bool b : l.tight) tight.push_back(b);
    json out = {{"l", num(l.l)}, {"profile", ints(l.profile)}, {"tight", tight}, {"holds", l.holds}};
    std::string s = "l = " + std::to_string(l.l) + ", tb profile [" + join(l.profile) + "]";
    return {l.holds ? "determined" : "failed", out, s + (l.holds ? ", bound holds" : ", BOUND VIOLATED")};
  }
  if (kind == "explore") {
    return explore(r, io::polys_from_json(r, t.at("first")), io::polys_from_json(r, t.at("second")), param(t, "bound"));
  }
  throw ParseError("unknown task kind '" + kind + "'");
}

std::string expected_method(const std::string& kind) {
  if (kind == "wpr-check") return "DIRECT";
  if (kind == "element-wpr") return "ELEMENT_TB";
  if (kind == "quotient-wpr") return "QUOTIENT_THM";
  if (kind == "glue-wpr") return "GLUED";
  if (kind == "prism-wpr") return "PRISM";
  return "";
}

// The certificate answers exactly the task it is filed under.
std::optional<std::string> matches_task(const json& t, const WprCertificate& c) {
  const std::string kind = t.at("kind");
  if (to_string(c.method) != expected_method(kind)) return "certificate method does not match the task kind";
  if (io::ring_to_json(c.ring) != t.at("ring")) return "certificate ring differs from the task";
  if (num(c.bound) != t.at("bound")) return "certificate bound differs from the task";
  const RingPresentation& r = c.ring;
  json seq = io::polys_to_json(r, c.seq);
  if (kind == "wpr-check" && seq != t.at("sequence")) return "certificate sequence differs from the task";
  if (kind == "element-wpr" && seq != json::array({t.at("element")})) return "certificate element differs from the task";
  if (kind == "quotient-wpr" && seq != json::array({t.at("a"), t.at("b")})) return "certificate sequence differs from the task";
  if (kind == "glue-wpr") {
    json charts = json::array();
    for (const auto& ch : c.charts) charts.push_back(io::polys_to_json(r, ch.generators));
    if (io::polys_to_json(r, c.cover) != t.at("cover") || charts != t.at("charts") ||
        io::polys_to_json(r, c.ideal) != t.at("ideal")) {
      return "certificate charts differ from the task";
    }
  }
  if (kind == "prism-wpr") {
    json charts = json::array();
    for (const auto& ch : c.charts) {
      if (ch.generators.size() != 1) return "prism chart without a generator";
      charts.push_back({{"s", io::poly_to_json(r, ch.s)}, {"b", io::poly_to_json(r, ch.generators[0])}});
    }
    if (charts != t.at("charts") || io::polys_to_json(r, c.ideal) != t.at("ideal") ||
        io::poly_to_json(r, c.prime) != t.at("prime") || json(c.declared_complete) != t.at("declared_complete")) {
      return "certificate prism data differs from the task";
    }
  }
  return std::nullopt;
}

}  // namespace

Manifest parse_manifest(const std::string& text, const std::string& origin, const Overrides& overrides) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    size_t line = 1, col = 1;
    for (size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw ParseError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }
  try {
    Resolver res(std::move(doc), origin, overrides);
    return {origin, res.tasks()};
  } catch (const json::exception& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

Manifest load_manifest(const std::string& path, const Overrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open manifest");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str(), path, overrides);
}

TaskOutcome run_task(const json& task) {
  try {
    return dispatch(task);
  } catch (const PreconditionFailed& e) {
    return {"error", {{"error", {{"stage", e.stage()}, {"message", e.what()}}}}, std::string("PRECONDITION FAILED ") + e.what()};
  } catch (const Error& e) {
    return {"error", {{"error", {{"stage", "internal"}, {"message", e.what()}}}}, std::string("ERROR ") + e.what()};
  } catch (const json::exception& e) {
    return {"error", {{"error", {{"stage", "task"}, {"message", e.what()}}}}, std::string("ERROR ") + e.what()};
  }
}

int exit_code(const std::vector<TaskOutcome>& outcomes) {
  int code = 0;
  for (const auto& o : outcomes) {
    if (o.status == "failed" || o.status == "error") return 1;
    if (o.status == "undetermined") code = 2;
  }
  return code;
}

json certificate_file(const json& task, const TaskOutcome& outcome, const std::string& timestamp) {
  return {{"schema", kSchema},
          {"task", task},
          {"status", outcome.status},
          {"result", outcome.result},
          {"provenance", {{"tool", kTool}, {"timestamp", timestamp}}}};
}

std::string replay_region(const json& file) {
  json copy = file;
  if (copy.contains("provenance") && copy["provenance"].is_object()) copy["provenance"].erase("timestamp");
  return copy.dump();
}

std::optional<std::string> verify_file(const json& file) {
  try {
    if (!file.is_object() || !file.contains("schema")) return "not a certificate file";
    if (file["schema"] != kSchema) return "schema version mismatch: expected " + std::string(kSchema);
    for (const char* key : {"task", "status", "result", "provenance"}) {
      if (!file.contains(key)) return std::string("missing field '") + key + "'";
    }
    if (file.size() != 5) return "unexpected top-level fields";
    const json& prov = file["provenance"];
    if (!prov.is_object() || prov.size() != 2 || prov.value("tool", "") != kTool || !prov["timestamp"].is_string()) {
      return "malformed provenance";
    }
    const json& task = file["task"];
    const std::string status = file["status"];
    if (status == "certified") {
      const json& result = file["result"];
      if (!result.is_object() || result.size() != 1 || !result.contains("certificate")) return "malformed certificate result";
      WprCertificate c = io::certificate_from_json(result["certificate"]);
      if (auto m = matches_task(task, c)) return *m;
      if (auto f = verify_certificate(c)) return *f;
      return std::nullopt;
    }
    TaskOutcome again = run_task(task);
    if (again.status != status) return "status does not replay: recomputed " + again.status;
    if (again.result != file["result"]) return "result does not replay";
    return std::nullopt;
  } catch (const std::exception& e) {
    return std::string("unreadable certificate: ") + e.what();
  }
}

std::optional<std::string> verify_path(const std::string& path) {
  std::ifstream in(path);
  if (!in) return "cannot open " + path;
  json file;
  try {
    file = json::parse(in);
  } catch (const json::parse_error& e) {
    return std::string("not valid JSON: ") + e.what();
  }
  return verify_file(file);
}

}  // namespace wpr::tasks
