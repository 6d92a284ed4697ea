#include "doctest.h"
#include "wpr/errors.hpp"
#include "wpr/tasks.hpp"

using namespace wpr;
using namespace wpr::tasks;

namespace {

json run_one(const std::string& manifest) {
  Manifest m = parse_manifest(manifest, "inline.json");
  REQUIRE(m.tasks.size() == 1);
  TaskOutcome o = run_task(m.tasks[0]);
  return certificate_file(m.tasks[0], o, "2026-01-01T00:00:00Z");
}

const char* kQuotient = R"({
  // (Z/4)[u] with u, 2
  "rings": {"R": {"base": "ZZ/4", "variables": ["u"]}},
  "tasks": [{"name": "q", "kind": "quotient-wpr", "ring": "R", "a": "u", "b": "2", "bound": 12}]
})";

}  // namespace

TEST_CASE("integers travel as canonical decimal strings") {
  CHECK(io::num(-17) == json("-17"));
  CHECK(io::to_long(json("0"), "x") == 0);
  CHECK(io::to_long(json("-42"), "x") == -42);
  for (const char* bad : {"01", "-0", "+1", "1.0", "", " 1", "1234567890123456789"}) {
    CHECK_THROWS_AS(io::to_long(json(bad), "x"), ParseError);
  }
  CHECK_THROWS_AS(io::to_long(json(3), "x"), ParseError);
}

TEST_CASE("rings, modules and certificates round-trip") {
  for (const auto& r : {RingPresentation::integers(), RingPresentation::integers_mod(12),
                        RingPresentation::polynomial(BaseCoefficients::parse("QQ"), {"x", "y"},
                                                     parse_monomial_order("lex"), {"x^2-y"})}) {
    json j = io::ring_to_json(r);
    CHECK(io::ring_to_json(io::ring_from_json(j)) == j);
  }
  RingPresentation z4u = RingPresentation::polynomial(BaseCoefficients::parse("ZZ/4"), {"u"}, parse_monomial_order("degrevlex"),
                                                     std::vector<std::string>{});
  for (const auto& r : {localize(z4u, z4u.one()), localize(z4u, z4u.parse("u")), quotient(z4u, {z4u.parse("3*u-1")})}) {
    json j = io::ring_to_json(r);
    CHECK(io::ring_to_json(io::ring_from_json(j)) == j);
  }
  json bad = io::ring_to_json(RingPresentation::integers_mod(12));
  bad["tier"] = "INT";
  CHECK_THROWS_AS(io::ring_from_json(bad), ParseError);

  RingPresentation r = RingPresentation::polynomial(BaseCoefficients::parse("QQ"), {"x"}, parse_monomial_order("degrevlex"), {"x^3"});
  CHECK_THROWS_AS(io::poly_from_json(r, json("x^4")), ParseError);
  CHECK(io::poly_from_json(r, io::poly_to_json(r, r.parse("x^4+x"))) == r.parse("x"));

  ModulePresentation m(r, 2, {{r.parse("x"), r.parse("x^2")}});
  json mj = io::module_to_json(m);
  CHECK(io::module_to_json(io::module_from_json(mj)) == mj);

  json file = run_one(kQuotient);
  REQUIRE(file["status"] == "certified");
  json cert = file["result"]["certificate"];
  CHECK(io::certificate_to_json(io::certificate_from_json(cert)) == cert);
  json reordered = cert;
  reordered["sequence"] = json::array({"2", "u"});
  CHECK_FALSE(verify_file([&] { json f = file; f["result"]["certificate"] = reordered; return f; }()) == std::nullopt);
}

TEST_CASE("manifest syntax errors carry line and column") {
  try {
    parse_manifest("{\n  \"tasks\": [\n    {\"kind\": \"gamma\",, }\n  ]\n}", "m.json");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).rfind("m.json:3:", 0) == 0);
  }
}

TEST_CASE("manifest reference errors name the task") {
  const char* text = R"({"tasks": [{"name": "t1", "kind": "wpr-check", "ring": "nope", "sequence": ["x"], "bound": 4}]})";
  try {
    parse_manifest(text, "m.json");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    std::string msg = e.what();
    CHECK(msg.find("t1") != std::string::npos);
    CHECK(msg.find("undefined ring 'nope'") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_manifest(R"({"rings": {"A": {"quotient": "A", "by": []}},
      "tasks": [{"kind": "element-wpr", "ring": "A", "element": "1", "bound": 2}]})", "m.json"), ParseError);
  CHECK_THROWS_AS(parse_manifest(R"({"tasks": [{"kind": "frobnicate"}]})", "m.json"), ParseError);
  CHECK_THROWS_AS(parse_manifest(R"({"tasks": [], "extra": {}})", "m.json"), ParseError);
}

TEST_CASE("resolved tasks are self-contained and overridable") {
  Manifest m = parse_manifest(R"({
    "rings": {"Z": {"base": "ZZ"}, "Q": {"quotient": "Z", "by": ["12"]}},
    "modules": {"M": {"ring": "Q", "free": 1}},
    "sequences": {"s": {"ring": "Q", "elements": ["2"]}},
    "tasks": [{"kind": "gamma", "module": "M", "sequence": "s", "bound": 5},
              {"kind": "lambda", "module": "M", "sequence": "s", "precision": 3}]
  })", "m.json", Overrides{7, 2});
  REQUIRE(m.tasks.size() == 2);
  CHECK(m.tasks[0]["bound"] == "7");
  CHECK(m.tasks[1]["precision"] == "2");
  CHECK(m.tasks[0]["module"]["ring"]["base"] == "ZZ/12");
  CHECK(m.tasks[0]["name"] == "task0");
}

TEST_CASE("task outcomes and exit codes") {
  auto status = [](const std::string& text) { return run_one(text)["status"].get<std::string>(); };
  CHECK(status(kQuotient) == "certified");
  CHECK(status(R"({"tasks": [{"kind": "gamma", "module": {"ring": {"base": "ZZ/12"}, "free": 1},
                              "sequence": ["2"], "bound": 5}]})") == "determined");
  CHECK(status(R"({"tasks": [{"kind": "torsion-bound", "module": {"ring": {"base": "QQ", "variables": ["x"], "ideal": ["x^5"]}, "free": 1},
                              "element": "x", "bound": 3}]})") == "undetermined");
  CHECK(status(R"({"rings": {"R": {"base": "ZZ", "variables": ["u"], "ideal": ["16*u"]}},
                  "prisms": {"P": {"ring": "R", "ideal": ["u"], "prime": "2", "charts": [{"s": "1", "b": "u"}]}},
                  "tasks": [{"kind": "prism-wpr", "prism": "P", "bound": 6}]})") == "error");

  CHECK(exit_code({{"certified", {}, ""}, {"determined", {}, ""}}) == 0);
  CHECK(exit_code({{"certified", {}, ""}, {"undetermined", {}, ""}}) == 2);
  CHECK(exit_code({{"undetermined", {}, ""}, {"error", {}, ""}}) == 1);
  CHECK(exit_code({{"failed", {}, ""}}) == 1);
}

TEST_CASE("certificate files verify and reject tampering") {
  json file = run_one(kQuotient);
  CHECK(verify_file(file) == std::nullopt);

  json other = file;
  other["provenance"]["timestamp"] = "2030-01-01T00:00:00Z";
  CHECK(replay_region(other) == replay_region(file));
  CHECK(verify_file(other) == std::nullopt);

  json schema = file;
  schema["schema"] = "wprcert/2";
  CHECK(verify_file(schema)->find("schema") != std::string::npos);

  json task = file;
  task["task"]["b"] = "3";
  CHECK(verify_file(task) != std::nullopt);

  json witness = file;
  auto& w = witness["result"]["certificate"]["degrees"][0]["witnesses"];
  w[w.size() - 1] = "0";
  CHECK(verify_file(witness) != std::nullopt);

  json gamma = run_one(R"({"tasks": [{"kind": "gamma", "module": {"ring": {"base": "ZZ/12"}, "free": 1},
                                     "sequence": ["2"], "bound": 5}]})");
  CHECK(verify_file(gamma) == std::nullopt);
  json wrong = gamma;
  wrong["result"]["size"] = "2";
  CHECK(verify_file(wrong) != std::nullopt);
  wrong = gamma;
  wrong["status"] = "undetermined";
  CHECK(verify_file(wrong) != std::nullopt);
}
