#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qacp/io.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace qacp;
using namespace qacp::testing;

namespace {

std::filesystem::path data_file(const std::string& name) {
  // tests run from the build tree; the data directory sits next to this file
  const std::filesystem::path here = std::filesystem::path(__FILE__).parent_path();
  return here / "data" / name;
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path.string();
}

}  // namespace

TEST_CASE("assessment document parsing") {
  SUBCASE("the full grammar") {
    const AssessmentDocument doc = parse_assessment_text(R"(
# comment line
atoms A B C D
option world_cap 18
option oracle_cap 10
assess "A & B & C" given "D" in [1/2, 1]
assess "B" given "A & C" = 0   # trailing comment
precise 1/2 0
solution 0 1 0 0
)");
    CHECK(doc.atoms.names == std::vector<std::string>{"A", "B", "C", "D"});
    CHECK(doc.world_cap == 18);
    CHECK(doc.oracle_cap == 10);
    REQUIRE(doc.entries.size() == 2);
    CHECK(doc.entries[0].lower == Rational(1, 2));
    CHECK(doc.entries[0].upper == Rational(1));
    CHECK(doc.entries[1].lower == doc.entries[1].upper);
    REQUIRE(doc.precise_override.has_value());
    CHECK(doc.precise_override->size() == 2);
    REQUIRE(doc.solution_overrides.count(0) == 1);
    CHECK(doc.solution_overrides.at(0).size() == 3);
  }
  SUBCASE("errors carry line numbers") {
    const auto expect_error = [](const std::string& text, const std::string& fragment) {
      try {
        parse_assessment_text(text);
        FAIL("expected InputError for: ", text);
      } catch (const InputError& e) {
        CHECK(std::string(e.what()).find(fragment) != std::string::npos);
      }
    };
    expect_error("atoms A\nassess \"A\" given \"TRUE\" = 1/0", "line 2");
    expect_error("atoms A\nfrobnicate", "unknown directive");
    expect_error("assess \"A\" given \"TRUE\" = 1", "missing atoms");
    expect_error("atoms A A\nassess \"A\" given \"TRUE\" = 1", "duplicate atom");
    expect_error("atoms A\nassess \"A\" given \"TRUE\" in [1/2 1]", "expected");
    expect_error("atoms A\nassess \"A\" given \"TRUE\" = 1\nprecise", "no values");
  }
  SUBCASE("documents convert to normalized assessments") {
    const AssessmentDocument doc = parse_assessment_file(data_file("example1.txt").string());
    const Assessment a = document_to_assessment(doc);
    const Example1 ex = make_example1();
    REQUIRE(a.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(a.family[i].consequent == ex.interval.family[i].consequent);
      CHECK(a.family[i].antecedent == ex.interval.family[i].antecedent);
      CHECK(a.bounds[i] == ex.interval.bounds[i]);
    }
  }
  SUBCASE("undeclared atoms in expressions surface as input errors downstream") {
    const AssessmentDocument doc =
        parse_assessment_text("atoms A\nassess \"B\" given \"TRUE\" = 1");
    CHECK_THROWS_AS(document_to_assessment(doc), UndeclaredAtomError);
  }
}

TEST_CASE("result documents round-trip through JSON") {
  const Example1 ex = make_example1();
  const CorrectionResult corr = correct_assessment(ex.interval);
  const Assessment precise = select_precise(ex.interval, ex.p0);
  const ConditionalProbabilityTable table = synthesize(precise.family, precise.precise_values());
  const VerificationReport report = verify_table(table, ex.interval);
  const nlohmann::json j = result_document(ex.interval, corr, precise, table, report);

  SUBCASE("the document carries the paper's values") {
    CHECK(j["table"] == nlohmann::json::array({"1/2", "0", "1/3"}));
    CHECK(j["precise"] == nlohmann::json::array({"1/2", "0", "1/3"}));
    CHECK(j["class_X"].size() == 5);
    CHECK(j["stages"].size() == 2);
    CHECK(j["report"]["all_pass"] == true);
    CHECK(j["corrected"]["intervals"][0] == nlohmann::json::array({"1/2", "1"}));
  }
  SUBCASE("serialization is deterministic") {
    const nlohmann::json j2 = result_document(ex.interval, corr, precise, table, report);
    CHECK(j.dump(2) == j2.dump(2));
  }
  SUBCASE("a rebuilt table passes verification again") {
    const StoredResult stored = result_from_json(j);
    CHECK(stored.precise == ex.p0);
    CHECK(stored.table.class_x.size() == 5);
    const VerificationReport again = verify_table(stored.table, stored.assessment);
    CHECK(again.all_pass());
  }
  SUBCASE("tampered worlds are rejected") {
    nlohmann::json bad = j;
    bad["family"][0]["antecedent"]["worlds"] = {0, 1};
    CHECK_THROWS_AS(result_from_json(bad), InputError);
  }
  SUBCASE("schema violations are rejected") {
    nlohmann::json bad = j;
    bad.erase("stages");
    CHECK_THROWS_AS(result_from_json(bad), InputError);
    nlohmann::json bad2 = j;
    bad2["stages"][0]["refined_masses"] = nlohmann::json::array({"1"});
    CHECK_THROWS_AS(result_from_json(bad2), InputError);
  }
}

TEST_CASE("check command") {
  std::ostringstream out, err;
  SUBCASE("accepts the Example 1 assessment") {
    const int code = cli_check(data_file("example1.txt").string(), out, err);
    CHECK(code == 0);
    CHECK(out.str().find("g-coherent") == 0);
    CHECK(out.str().find("\"levels\"") != std::string::npos);
  }
  SUBCASE("rejects an impossible assessment with exit 1") {
    const int code = cli_check(data_file("incoherent.txt").string(), out, err);
    CHECK(code == 1);
    CHECK(out.str().find("not g-coherent") == 0);
    CHECK(out.str().find("failing_subfamily") != std::string::npos);
  }
  SUBCASE("malformed rationals give exit 2") {
    const int code = cli_check(data_file("malformed.txt").string(), out, err);
    CHECK(code == 2);
    CHECK(err.str().find("malformed rational") != std::string::npos);
  }
  SUBCASE("missing files give exit 2") {
    CHECK(cli_check("/nonexistent/file.txt", out, err) == 2);
  }
}

TEST_CASE("correct command") {
  std::ostringstream out, err;
  SUBCASE("Example 1 comes back unchanged") {
    const int code = cli_correct(data_file("example1.txt").string(), out, err);
    REQUIRE(code == 0);
    const nlohmann::json j = nlohmann::json::parse(out.str());
    CHECK(j["corrected"]["intervals"] ==
          nlohmann::json::array({nlohmann::json::array({"1/2", "1"}),
                                 nlohmann::json::array({"0", "1/2"}),
                                 nlohmann::json::array({"1/3", "2/3"})}));
    CHECK(j["corrected"]["raw"] == j["corrected"]["intervals"]);
  }
  SUBCASE("a precise file is a fixed point") {
    const std::string path = temp_file("qacp_point.txt",
                                       "atoms A B\nassess \"A\" given \"TRUE\" = 1/2\n"
                                       "assess \"B\" given \"A\" = 1/3\n");
    const int code = cli_correct(path, out, err);
    REQUIRE(code == 0);
    const nlohmann::json j = nlohmann::json::parse(out.str());
    CHECK(j["corrected"]["intervals"] ==
          nlohmann::json::array({nlohmann::json::array({"1/2", "1/2"}),
                                 nlohmann::json::array({"1/3", "1/3"})}));
  }
  SUBCASE("widening to [0,1] everywhere recovers grid-valid intervals") {
    const std::string path = temp_file("qacp_wide.txt",
                                       "atoms A B C D\n"
                                       "assess \"A & B & C\" given \"D\" in [0, 1]\n"
                                       "assess \"B\" given \"A & C\" in [0, 1]\n"
                                       "assess \"C\" given \"A & B\" in [0, 1]\n");
    const int code = cli_correct(path, out, err);
    REQUIRE(code == 0);
    const nlohmann::json j = nlohmann::json::parse(out.str());
    // Unconstrained inputs stay unconstrained; validated against the grid
    // oracle through the library path.
    const Example1 ex = make_example1();
    Assessment wide = ex.interval;
    for (auto& b : wide.bounds) b = {Rational(0), Rational(1)};
    for (std::size_t j2 = 0; j2 < wide.size(); ++j2) {
      const Bounds got = propagate_bounds(wide, wide.family[j2]);
      CHECK(rational_to_string(got.low) ==
            j["corrected"]["intervals"][j2][0].get<std::string>());
      CHECK(rational_to_string(got.high) ==
            j["corrected"]["intervals"][j2][1].get<std::string>());
      CHECK(oracle_extension_g_coherent(wide, wide.family[j2], got.low));
      CHECK(oracle_extension_g_coherent(wide, wide.family[j2], got.high));
    }
  }
  SUBCASE("incoherent input gives exit 1") {
    CHECK(cli_correct(data_file("incoherent.txt").string(), out, err) == 1);
  }
}

TEST_CASE("bounds command") {
  std::ostringstream out, err;
  SUBCASE("self-target of a point entry returns the point") {
    const std::string path =
        temp_file("qacp_selfq.txt", "atoms A B\nassess \"A\" given \"B\" = 2/5\n");
    const int code = cli_bounds(path, "A", "B", out, err);
    REQUIRE(code == 0);
    CHECK(out.str() == "[2/5, 2/5]\n");
  }
  SUBCASE("Example 1 target B given A & C") {
    const int code =
        cli_bounds(data_file("example1.txt").string(), "B", "A & C", out, err);
    REQUIRE(code == 0);
    CHECK(out.str() == "[0, 1/2]\n");
  }
  SUBCASE("an empty assessment leaves any proper target vacuous") {
    const std::string path = temp_file("qacp_empty.txt", "atoms A B\n");
    const int code = cli_bounds(path, "B", "A", out, err);
    REQUIRE(code == 0);
    CHECK(out.str() == "[0, 1]\n");
  }
  SUBCASE("bad target expressions give exit 2") {
    CHECK(cli_bounds(data_file("example1.txt").string(), "A &", "D", out, err) == 2);
    CHECK(cli_bounds(data_file("example1.txt").string(), "A", "FALSE", out, err) == 2);
  }
  SUBCASE("synthesize refuses an empty assessment") {
    const std::string path = temp_file("qacp_empty2.txt", "atoms A\n");
    CHECK(cli_synthesize(path, {}, false, out, err) == 2);
  }
}

TEST_CASE("synthesize command") {
  std::ostringstream out, err;
  SUBCASE("Example 1 with the paper's precise override") {
    const int code = cli_synthesize(data_file("example1.txt").string(),
                                    std::string("1/2, 0, 1/3"), false, out, err);
    REQUIRE(code == 0);
    const nlohmann::json j = nlohmann::json::parse(out.str());
    CHECK(j["table"] == nlohmann::json::array({"1/2", "0", "1/3"}));
    CHECK(j["report"]["all_pass"] == true);
    CHECK(!j.contains("trace"));
  }
  SUBCASE("the precise line in the document is honored") {
    const int code =
        cli_synthesize(data_file("example1_precise.txt").string(), {}, false, out, err);
    REQUIRE(code == 0);
    const nlohmann::json j = nlohmann::json::parse(out.str());
    CHECK(j["precise"] == nlohmann::json::array({"1/2", "0", "1/3"}));
  }
  SUBCASE("--trace records the linear programs") {
    const int code = cli_synthesize(data_file("example1.txt").string(),
                                    std::string("1/2,0,1/3"), true, out, err);
    REQUIRE(code == 0);
    const nlohmann::json j = nlohmann::json::parse(out.str());
    REQUIRE(j.contains("trace"));
    CHECK(j["trace"].size() > 10);
    CHECK(j["trace"][0].contains("status"));
  }
  SUBCASE("byte-identical output on identical input") {
    std::ostringstream out2, err2;
    cli_synthesize(data_file("example1.txt").string(), std::string("1/2,0,1/3"), false, out,
                   err);
    cli_synthesize(data_file("example1.txt").string(), std::string("1/2,0,1/3"), false, out2,
                   err2);
    CHECK(out.str() == out2.str());
  }
  SUBCASE("an invalid precise override names the failing part") {
    const int code = cli_synthesize(data_file("example1.txt").string(),
                                    std::string("1/4, 0, 1/3"), false, out, err);
    CHECK(code == 1);
    CHECK(err.str().find("invalid override") != std::string::npos);
    CHECK(err.str().find("failing subset") != std::string::npos);
  }
  SUBCASE("a single-entry precise file yields one stage") {
    const std::string path =
        temp_file("qacp_single.txt", "atoms A\nassess \"A\" given \"TRUE\" = 1/2\n");
    const int code = cli_synthesize(path, {}, false, out, err);
    REQUIRE(code == 0);
    const nlohmann::json j = nlohmann::json::parse(out.str());
    CHECK(j["stages"].size() == 1);
  }
  SUBCASE("a stage witness override is applied") {
    const std::string path = temp_file(
        "qacp_witness.txt",
        "atoms A B C D\n"
        "assess \"A & B & C\" given \"D\" in [1/2, 1]\n"
        "assess \"B\" given \"A & C\" in [0, 1/2]\n"
        "assess \"C\" given \"A & B\" in [1/3, 2/3]\n"
        "precise 1/2 0 1/3\n"
        "solution 1 1/3 1/3 1/3 0 0 0\n");
    const int code = cli_synthesize(path, {}, false, out, err);
    REQUIRE(code == 0);
    const nlohmann::json j = nlohmann::json::parse(out.str());
    CHECK(j["stages"][1]["solution"] ==
          nlohmann::json::array({"1/3", "1/3", "1/3", "0", "0", "0"}));
    CHECK(j["report"]["all_pass"] == true);
  }
  SUBCASE("a bad stage witness gives exit 1") {
    const std::string path = temp_file(
        "qacp_badwitness.txt",
        "atoms A B C D\n"
        "assess \"A & B & C\" given \"D\" in [1/2, 1]\n"
        "assess \"B\" given \"A & C\" in [0, 1/2]\n"
        "assess \"C\" given \"A & B\" in [1/3, 2/3]\n"
        "precise 1/2 0 1/3\n"
        "solution 0 1 0 0 0 0 0 0 0\n");
    CHECK(cli_synthesize(path, {}, false, out, err) == 1);
  }
}

TEST_CASE("verify command round trip") {
  std::ostringstream out, err;
  const int scode = cli_synthesize(data_file("example1.txt").string(),
                                   std::string("1/2, 0, 1/3"), false, out, err);
  REQUIRE(scode == 0);
  const std::string result_path = temp_file("qacp_result.json", out.str());

  SUBCASE("a stored result re-verifies") {
    std::ostringstream vout, verr;
    const int code = cli_verify(result_path, 12, vout, verr);
    CHECK(code == 0);
    const nlohmann::json report = nlohmann::json::parse(vout.str());
    CHECK(report["all_pass"] == true);
  }
  SUBCASE("a perturbed mass is caught with exit 1") {
    nlohmann::json j = nlohmann::json::parse(out.str());
    j["stages"][1]["refined_masses"][2] = "1/4";
    const std::string bad_path = temp_file("qacp_bad_result.json", j.dump(2));
    std::ostringstream vout, verr;
    const int code = cli_verify(bad_path, 12, vout, verr);
    CHECK(code == 1);
    const nlohmann::json report = nlohmann::json::parse(vout.str());
    CHECK(report["all_pass"] == false);
  }
  SUBCASE("garbage JSON gives exit 2") {
    const std::string bad_path = temp_file("qacp_garbage.json", "{ not json");
    std::ostringstream vout, verr;
    CHECK(cli_verify(bad_path, 12, vout, verr) == 2);
  }
}

TEST_CASE("random pipeline results survive the file round trip") {
  std::mt19937_64 rng(5150);
  for (int iter = 0; iter < 10; ++iter) {
    InstanceOptions opts;
    opts.max_events = 3;
    const Assessment a = random_gcoherent_assessment(rng, opts);
    const CorrectionResult corr = correct_assessment(a);
    const Assessment precise = select_precise(a);
    const ConditionalProbabilityTable table =
        synthesize(precise.family, precise.precise_values());
    const VerificationReport report = verify_table(table, a);
    REQUIRE(report.all_pass());
    const nlohmann::json j = result_document(a, corr, precise, table, report);
    const StoredResult stored = result_from_json(j);
    const VerificationReport again = verify_table(stored.table, stored.assessment);
    CHECK(again.all_pass());
    CHECK(result_document(stored.assessment, corr, precise, stored.table, again).dump() ==
          j.dump());
  }
}
