#pragma once

#include <cstdint>
#include <string>

#include "qacp/construction.hpp"

namespace qacp {

struct CheckResult {
  bool pass = true;
  std::string detail;  // a concrete, re-checkable counterexample on failure
};

struct VerifyOptions {
  std::size_t oracle_cap = 12;       // max family size for the subset sweep
  std::size_t exhaustive_cells = 10; // full-algebra checks up to this many constituents
  int samples = 1000;                // random pairs per conditioning event above that
  std::uint64_t seed = 20120924;
};

struct AxiomResults {
  CheckResult i;    // finite additivity of every P(.|H)
  CheckResult ii;   // P(H|H) = 1
  CheckResult iii;  // product rule whenever H and E1H both condition
};

/// Checks the three conditional-probability axioms on the algebra generated
/// by the base constituents: exhaustively when the partition is small,
/// otherwise on all singleton pairs plus seeded random unions.
AxiomResults check_axioms(const ConditionalProbabilityTable& table,
                          const VerifyOptions& options = {});

/// For every pair H1, H2 of conditioning events, searches the class for a K
/// containing their disjunction with P(H1|K) + P(H2|K) > 0.
CheckResult check_quasi_additive(const ConditionalProbabilityTable& table);

/// Brute-force coherence of a precise assessment: solvability of the system
/// of every non-empty subfamily. Throws OracleCapError when the family is
/// larger than `cap`.
CheckResult check_coherence_oracle(const std::vector<ConditionalEvent>& family,
                                   const std::vector<Rational>& precise, std::size_t cap = 12);

/// Every input entry must be answerable by the table and fall inside its
/// interval.
CheckResult check_consistency(const ConditionalProbabilityTable& table,
                              const Assessment& original);

/// |X| is at most twice the family size.
CheckResult check_cardinality(const ConditionalProbabilityTable& table, std::size_t family_size);

struct VerificationReport {
  CheckResult axiom_i;
  CheckResult axiom_ii;
  CheckResult axiom_iii;
  CheckResult quasi_additive;
  CheckResult coherent;
  CheckResult consistent;
  CheckResult cardinality_bound;

  bool all_pass() const {
    return axiom_i.pass && axiom_ii.pass && axiom_iii.pass && quasi_additive.pass &&
           coherent.pass && consistent.pass && cardinality_bound.pass;
  }
};

VerificationReport verify_table(const ConditionalProbabilityTable& table,
                                const Assessment& original, const VerifyOptions& options = {});

}  // namespace qacp
