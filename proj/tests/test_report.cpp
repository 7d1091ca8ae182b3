#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "summa/errors.hpp"
#include "summa/report.hpp"

using namespace summa;

namespace {

SpecDocument doc_with(const std::string& matrices, const std::string& tasks) {
  return parse_spec_document(R"({"ideals": [{"label": "fin", "kind": "fin"}],
    "sigmas": [{"label": "shift", "kind": "shift"}],
    "sequences": [{"label": "alt", "kind": "periodic", "block": ["1", "0"]},
                  {"label": "n", "kind": "linear"}],
    "matrices": [)" + matrices + R"(], "tasks": [)" + tasks + "]}",
                             ArithMode::Exact);
}

RunOptions serial() {
  RunOptions o;
  o.exec = Exec::Serial;
  return o;
}

}  // namespace

TEST_CASE("cesaro regularity reports M1-M4 Holds and exits 0") {
  auto doc = doc_with(R"({"label": "C", "kind": "cesaro"})",
                      R"({"id": "c", "task": "check-regular", "family": ["C"], "idealI": "fin", "idealJ": "fin"})");
  auto results = run_document(doc, serial());
  REQUIRE(results.size() == 1);
  CHECK(results[0].ok);
  CHECK_FALSE(results[0].any_fails);
  std::string text = emit_report(results, ArithMode::Exact, ReportFormat::Text);
  CHECK(text.find("M1–M4: Holds") != std::string::npos);
  CHECK(exit_code(results, true) == 0);
}

TEST_CASE("strict mode turns a failure witness into exit 1") {
  auto doc = doc_with(R"({"label": "I", "kind": "identity"}, {"label": "two", "kind": "scaled", "source": "I", "factor": 2})",
                      R"({"id": "r", "task": "check-regular", "family": ["two"], "idealI": "fin", "idealJ": "fin"})");
  auto results = run_document(doc, serial());
  CHECK(results[0].any_fails);
  CHECK(exit_code(results, false) == 0);
  CHECK(exit_code(results, true) == 1);
  std::string text = emit_report(results, ArithMode::Exact, ReportFormat::Text);
  CHECK(text.find("witness row-sum-deviation") != std::string::npos);

  ReplayOutcome o = replay(doc, results, "r/M3");
  CHECK(o.found);
  CHECK(o.reproduced);
  CHECK(o.replayed == Scalar(1));
  CHECK_FALSE(replay(doc, results, "r/M1").found);
  CHECK_THROWS_AS(replay(doc, results, "no-slash"), SchemaError);
}

TEST_CASE("runtime errors become exit 3 and are reported per task") {
  auto doc = doc_with(R"({"label": "L", "kind": "lower-ones"})",
                      R"({"id": "bad", "task": "uniform-limsup", "family": ["L"], "sequence": "alt", "ideal": "fin"},
                         {"id": "good", "task": "core", "sequence": "alt", "ideal": "fin"})");
  auto results = run_document(doc, serial());
  REQUIRE(results.size() == 2);
  CHECK_FALSE(results[0].ok);
  CHECK(results[0].error == ErrorKind::Precondition);
  CHECK(results[1].ok);
  CHECK(exit_code(results, false) == 3);
}

TEST_CASE("schema-class errors at run time take precedence with exit 2") {
  auto doc = doc_with(R"({"label": "C", "kind": "cesaro"})",
                      R"({"task": "core", "sequence": "alt", "ideal": "fin"})");
  RunOptions o = serial();
  o.flags.N = 0;
  auto results = run_document(doc, o);
  CHECK_FALSE(results[0].ok);
  CHECK(exit_code(results, false) == 2);
}

TEST_CASE("machine report has a schema version and no timing") {
  auto doc = doc_with(R"({"label": "C", "kind": "cesaro"})",
                      R"({"task": "sigma-limit", "sequence": "alt", "sigma": "shift", "ideal": "fin"})");
  auto results = run_document(doc, serial());
  Json j = Json::parse(emit_report(results, ArithMode::Exact, ReportFormat::Json));
  CHECK(j["schemaVersion"] == "1");
  CHECK(j["mode"] == "exact");
  CHECK(j["results"][0]["eta"] == "1/2");
  CHECK(j["results"][0]["verdict"] == "Holds");
  CHECK(j.dump().find("time") == std::string::npos);
}

TEST_CASE("empty task list gives an empty results array") {
  auto doc = doc_with(R"({"label": "C", "kind": "cesaro"})", "");
  auto results = run_document(doc, serial());
  Json j = Json::parse(emit_report(results, ArithMode::Exact, ReportFormat::Json));
  CHECK(j["results"].empty());
  CHECK(exit_code(results, true) == 0);
}

TEST_CASE("flags override task horizons") {
  auto doc = doc_with(R"({"label": "C", "kind": "cesaro"})",
                      R"({"task": "core", "sequence": "alt", "ideal": "fin", "horizon": {"N": 32}})");
  RunOptions o = serial();
  o.flags.N = 128;
  auto results = run_document(doc, o);
  CHECK(results[0].horizon.N == 128);
}

TEST_CASE("equivalence and limsup reports carry their rows") {
  auto doc = doc_with(R"({"label": "e", "kind": "unit-mass", "step": 2, "offset": 0},
                         {"label": "o", "kind": "unit-mass", "step": 2, "offset": 1})",
                      R"({"id": "eq", "task": "theorem-equivalence", "family": ["e", "o"], "sequence": "alt", "ideal": "fin"},
                         {"id": "ls", "task": "uniform-limsup", "family": ["e", "o"], "sequence": "alt", "ideal": "fin"})");
  auto results = run_document(doc, serial());
  std::string text = emit_report(results, ArithMode::Exact, ReportFormat::Text);
  CHECK(text.find("(i) FailsWithWitness") != std::string::npos);
  CHECK(text.find("(ii) FailsWithWitness") != std::string::npos);
  CHECK(text.find("(iii)") != std::string::npos);
  Json j = Json::parse(emit_report(results, ArithMode::Exact, ReportFormat::Json));
  CHECK(j["results"][0]["witnessSelection"]["period"] == Json::array({0, 1}));
  CHECK(j["results"][1]["lhs"] == "1");
  CHECK(j["results"][1]["adversarialRhs"] == "1");
}

TEST_CASE("serial and parallel runs give identical documents") {
  auto doc = doc_with(R"({"label": "C", "kind": "cesaro"}, {"label": "I", "kind": "identity"})",
                      R"({"task": "check-regular", "family": ["C", "I"], "idealI": "fin", "idealJ": "fin"},
                         {"task": "uniform-limsup", "family": ["C", "I"], "sequence": "alt", "ideal": "fin"},
                         {"task": "check-almost-regular", "matrix": "C", "sigma": "shift", "idealI": "fin",
                          "idealJ": "fin", "horizon": {"N": 32, "nuMax": 3}},
                         {"task": "group-norm-sandwich", "samples": 20})");
  RunOptions par;
  par.exec = Exec::Parallel;
  std::string a = emit_report(run_document(doc, serial()), ArithMode::Exact, ReportFormat::Json);
  std::string b = emit_report(run_document(doc, par), ArithMode::Exact, ReportFormat::Json);
  CHECK(a == b);
}

TEST_CASE("format names parse") {
  CHECK(parse_format("text") == ReportFormat::Text);
  CHECK(parse_format("json") == ReportFormat::Json);
  CHECK_THROWS_AS(parse_format("xml"), SchemaError);
}
