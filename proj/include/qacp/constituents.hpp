#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qacp/events.hpp"

namespace qacp {

/// A conditional event E|H: true when EH holds, false when E^cH holds, void
/// when H^c holds. The antecedent must be possible (H != empty).
struct ConditionalEvent {
  Event consequent;  // E
  Event antecedent;  // H
  std::string consequent_text;
  std::string antecedent_text;

  /// Semantic key: two conditional events are the same entity iff their
  /// (EH, H) extensions agree.
  Event true_part() const { return consequent & antecedent; }
  std::string display() const { return consequent_text + " | " + antecedent_text; }
};

ConditionalEvent make_conditional(Event consequent, Event antecedent, std::string consequent_text,
                                  std::string antecedent_text);

/// One non-impossible conjunction of the family: per conditional event i the
/// digit picks E_iH_i (1), E_i^cH_i (0) or H_i^c (2).
struct Constituent {
  std::vector<std::uint8_t> signature;  // one digit per family member
  Event worlds;                         // non-empty

  /// Ternary value of the signature: sum of signature[i] * 3^i.
  std::uint64_t ternary_rank() const;
  /// Digits in family order, e.g. "020".
  std::string signature_string() const;
};

/// The constituent partition of a family of conditional events, ordered by
/// ascending ternary rank. Pairwise disjoint, union is the sure event.
struct ConstituentSet {
  std::vector<ConditionalEvent> family;
  std::vector<Constituent> constituents;
  Event union_antecedent;  // disjunction of the antecedents

  std::size_t world_count() const { return union_antecedent.size(); }
  /// Index of the constituent whose worlds equal `e`, or -1.
  int find(const Event& e) const;
};

/// Builds the partition by enumerating worlds. Throws EmptyAntecedentError
/// naming the offending member, or StructureError on an empty family.
ConstituentSet build_constituents(std::vector<ConditionalEvent> family);

/// Indices of the constituents contained in `event` (ascending).
std::vector<int> constituents_of(const Event& event, const ConstituentSet& cs);

/// For `sub` built from a subfamily of c0's family: the index of the unique
/// constituent of `sub` containing c0's worlds. Throws StructureError if no
/// or multiple parents exist.
int parent_constituent(const Constituent& c0, const ConstituentSet& sub);

}  // namespace qacp
