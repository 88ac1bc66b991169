#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qacp/verify.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace qacp;
using namespace qacp::testing;

namespace {

ConditionalProbabilityTable example1_table() {
  const Example1 ex = make_example1();
  return synthesize(ex.interval.family, ex.p0);
}

}  // namespace

TEST_CASE("the Example 1 table passes every check") {
  const Example1 ex = make_example1();
  const ConditionalProbabilityTable t = example1_table();
  const VerificationReport report = verify_table(t, ex.interval);
  CHECK(report.axiom_i.pass);
  CHECK(report.axiom_ii.pass);
  CHECK(report.axiom_iii.pass);
  CHECK(report.quasi_additive.pass);
  CHECK(report.coherent.pass);
  CHECK(report.consistent.pass);
  CHECK(report.cardinality_bound.pass);
  CHECK(t.class_x.size() == 5);
}

TEST_CASE("axiom checks catch injected faults") {
  const Example1 ex = make_example1();

  SUBCASE("mass placed on ABCD breaks the cross-stage product rule") {
    ConditionalProbabilityTable t = example1_table();
    const int cell = t.base.find(ex.event("A & B & C & D"));
    REQUIRE(cell >= 0);
    t.refined[0][cell] += Rational(1, 7);
    // P(D | D|AC|AB) becomes 1/8, but stage 1 still answers P(ABC|D) = 1/2,
    // so the chained product disagrees with the direct mass ratio.
    const AxiomResults axioms = check_axioms(t);
    CHECK_FALSE(axioms.iii.pass);
    const VerificationReport report = verify_table(t, ex.interval);
    CHECK_FALSE(report.all_pass());
  }
  SUBCASE("a negative mass fails axiom (i)") {
    ConditionalProbabilityTable t = example1_table();
    t.refined[0][0] = Rational(-1, 4);
    const AxiomResults axioms = check_axioms(t);
    CHECK_FALSE(axioms.i.pass);
    CHECK(axioms.i.detail.find("negative") != std::string::npos);
  }
  SUBCASE("cross-stage product rule instances reduce to zero equals zero") {
    // H = D | AC | AB is owned by stage 0 and D by stage 1 with D inside H,
    // so both sides of the product rule must vanish exactly.
    const ConditionalProbabilityTable t = example1_table();
    const Event h = ex.event("D | A & C | A & B");
    const Event d = ex.event("D");
    REQUIRE(t.class_x[t.find_conditioning(h)].owner == 0);
    REQUIRE(t.class_x[t.find_conditioning(d)].owner == 1);
    REQUIRE(d.is_subset_of(h));
    const Rational p_d_given_h = *query(t, d, h);
    CHECK(p_d_given_h == 0);
    const Event e2 = ex.event("A & B & C");
    CHECK(*query(t, e2 & d, h) == 0);
    CHECK(*query(t, e2 & d, h) == *query(t, e2, d) * p_d_given_h);
    const AxiomResults axioms = check_axioms(t);
    CHECK(axioms.iii.pass);
  }
}

TEST_CASE("quasi-additivity") {
  const Example1 ex = make_example1();

  SUBCASE("the merged class passes") {
    CHECK(check_quasi_additive(example1_table()).pass);
  }
  SUBCASE("dropping the top conditioning event breaks the pair (AC, D)") {
    ConditionalProbabilityTable t = example1_table();
    const int top = t.find_conditioning(ex.event("D | A & C | A & B"));
    REQUIRE(top >= 0);
    t.class_x.erase(t.class_x.begin() + top);
    const CheckResult qa = check_quasi_additive(t);
    CHECK_FALSE(qa.pass);
    CHECK(qa.detail.find("A & C") != std::string::npos);
    CHECK(qa.detail.find("D") != std::string::npos);
  }
  SUBCASE("an unconditional table with a positive event is quasi-additive") {
    const AtomList atoms = make_atoms(2);
    const Event a = extension(parse_event("A", atoms), 2);
    const ConditionalProbabilityTable t =
        synthesize({make_conditional(a, full_event(2), "A", "TRUE")}, {Rational(1, 2)});
    CHECK(check_quasi_additive(t).pass);
  }
  SUBCASE("a class of the shape {H, TRUE} with positive H-mass passes") {
    const AtomList atoms = make_atoms(2);
    const Event a = extension(parse_event("A", atoms), 2);
    const Event b = extension(parse_event("B", atoms), 2);
    const ConditionalProbabilityTable t =
        synthesize({make_conditional(b, a, "B", "A"),
                    make_conditional(a, full_event(2), "A", "TRUE")},
                   {Rational(1, 2), Rational(1, 2)});
    REQUIRE(t.stages.size() == 1);
    REQUIRE(t.class_x.size() == 2);
    CHECK(t.class_x[0].event.worlds == a);
    CHECK(t.class_x[1].event.worlds == full_event(2));
    CHECK(check_quasi_additive(t).pass);
  }
}

TEST_CASE("the coherence oracle sweeps every subfamily") {
  const Example1 ex = make_example1();

  SUBCASE("the Example 1 restriction passes all seven subsets") {
    CHECK(check_coherence_oracle(ex.interval.family, ex.p0).pass);
  }
  SUBCASE("an impossible point value is caught at the singleton") {
    const AtomList atoms = make_atoms(1);
    const CheckResult res = check_coherence_oracle(
        {make_conditional(full_event(1), full_event(1), "TRUE", "TRUE")}, {Rational(0)});
    CHECK_FALSE(res.pass);
    CHECK(res.detail.find("{0}") != std::string::npos);
  }
  SUBCASE("subfamilies sampled from the merged table are coherent") {
    const ConditionalProbabilityTable t = example1_table();
    std::mt19937_64 rng(12);
    for (int iter = 0; iter < 10; ++iter) {
      std::vector<AssessmentEntry> entries;
      const std::size_t size = 2 + rng() % 3;
      for (std::size_t k = 0; k < size; ++k) {
        const auto& member = t.class_x[rng() % t.class_x.size()];
        const auto& cell = t.base.constituents[rng() % t.base.constituents.size()];
        const auto value = query(t, cell.worlds, member.event.worlds);
        REQUIRE(value.has_value());
        entries.push_back(AssessmentEntry{
            make_conditional(cell.worlds, member.event.worlds, cell.signature_string(),
                             member.event.text),
            *value, *value});
      }
      const Assessment sampled = normalize_assessment(ex.atoms, std::move(entries));
      CHECK(check_coherence_oracle(sampled.family, sampled.precise_values()).pass);
    }
  }
  SUBCASE("the cap guards the exponential sweep") {
    const ConditionalProbabilityTable t = example1_table();
    CHECK_THROWS_AS(check_coherence_oracle(t.family(), t.precise(), 2), OracleCapError);
  }
}

TEST_CASE("consistency against the input intervals") {
  const Example1 ex = make_example1();

  SUBCASE("the pipeline output is consistent") {
    CHECK(check_consistency(example1_table(), ex.interval).pass);
  }
  SUBCASE("a perturbed value is caught with its index") {
    ConditionalProbabilityTable t = example1_table();
    // Push P(B|AC) from 0 to 3/4: move the mass of AB^cCD^c onto ABCD^c.
    const int from = t.base.find(ex.event("A & ~B & C & ~D"));
    const int to = t.base.find(ex.event("A & B & C & ~D"));
    REQUIRE(from >= 0);
    REQUIRE(to >= 0);
    t.refined[0][to] = Rational(3, 4);
    t.refined[0][from] = Rational(1, 4);
    const CheckResult res = check_consistency(t, ex.interval);
    CHECK_FALSE(res.pass);
    CHECK(res.detail.find("entry 1") != std::string::npos);
    CHECK(res.detail.find("3/4") != std::string::npos);
  }
  SUBCASE("a missing antecedent is reported") {
    ConditionalProbabilityTable t = example1_table();
    t.class_x.erase(t.class_x.begin());  // drop AC
    const CheckResult res = check_consistency(t, ex.interval);
    CHECK_FALSE(res.pass);
    CHECK(res.detail.find("outside the conditioning class") != std::string::npos);
  }
}

TEST_CASE("cardinality bound") {
  const ConditionalProbabilityTable t = example1_table();
  CHECK(check_cardinality(t, 3).pass);
  const CheckResult tight = check_cardinality(t, 2);
  CHECK_FALSE(tight.pass);
  CHECK(tight.detail.find("5") != std::string::npos);
}

TEST_CASE("every value-changing single-mass perturbation is caught") {
  const Example1 ex = make_example1();
  const ConditionalProbabilityTable clean = example1_table();
  const VerifyOptions options;

  for (std::size_t r = 0; r < clean.refined.size(); ++r) {
    for (std::size_t c = 0; c < clean.refined[r].size(); ++c) {
      ConditionalProbabilityTable t = clean;
      t.refined[r][c] += Rational(1, 7);
      // Does any defined table value change?
      bool value_changed = false;
      for (const auto& member : t.class_x) {
        if (static_cast<std::size_t>(member.owner) != r) continue;
        for (const auto& cell : t.base.constituents) {
          const auto before = query(clean, cell.worlds, member.event.worlds);
          const auto after = query(t, cell.worlds, member.event.worlds);
          if (before != after) {
            value_changed = true;
            break;
          }
        }
        if (value_changed) break;
      }
      if (value_changed) {
        const VerificationReport report = verify_table(t, ex.interval, options);
        CAPTURE(r);
        CAPTURE(c);
        CHECK_FALSE(report.all_pass());
      }
    }
  }
}

TEST_CASE("random pipeline outputs pass the full report") {
  std::mt19937_64 rng(909);
  for (int iter = 0; iter < 25; ++iter) {
    InstanceOptions opts;
    opts.max_events = 4;
    const Assessment a = random_gcoherent_assessment(rng, opts);
    const Assessment p = select_precise(a);
    const ConditionalProbabilityTable t = synthesize(p.family, p.precise_values());
    const VerificationReport report = verify_table(t, a);
    CAPTURE(iter);
    CHECK(report.all_pass());
  }
}
