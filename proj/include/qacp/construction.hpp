#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qacp/assessment.hpp"

namespace qacp {

/// One step of the zero-layer construction: the stage system's solution, the
/// split of the conditioning events into zero and positive mass, and the
/// stage's quasi-additive class.
struct Stage {
  int index = 0;
  std::vector<ConditionalEvent> family;  // F_i
  std::vector<Rational> precise;         // values of the members
  std::vector<int> origin;               // indices into the pipeline's input family
  ConstituentSet constituent_set;        // C_i
  std::vector<Rational> solution;        // over the constituents of C_i
  std::vector<LabeledEvent> antecedents_zero;      // D_i^z
  std::vector<LabeledEvent> antecedents_positive;  // D_i^+
  std::vector<LabeledEvent> conditioning_class;    // X_i = D_i^+ plus the union antecedent
  std::vector<int> family_zero;      // indices into family with zero-mass antecedents
  std::vector<int> family_positive;  // the complement

  /// Aggregated solution mass of an event.
  Rational phi(const Event& e) const { return mass_of(e, constituent_set, solution); }
  /// Stage table value; requires phi(h) > 0 (true for every member of the
  /// conditioning class).
  Rational table(const Event& e, const Event& h) const;
};

/// Solves the stage system for a precise coherent assessment with the
/// max-support solution over the antecedent masses (so the positive set is
/// the largest possible), or with the supplied witness. Throws
/// InfeasibleSystemError when the system has no solution (an upstream
/// coherence bug) and OverrideError when a supplied witness does not solve
/// the system exactly.
Stage build_stage(std::vector<ConditionalEvent> family, std::vector<Rational> precise, int index,
                  const std::vector<Rational>* witness_override = nullptr);

/// Stage-index-keyed witness overrides.
using StageWitnessOverrides = std::map<int, std::vector<Rational>>;

/// Runs stages on the zero part until it is empty. The positive parts across
/// stages partition the input family; the sequence is strictly decreasing.
std::vector<Stage> zero_layer_sequence(std::vector<ConditionalEvent> family,
                                       std::vector<Rational> precise,
                                       const StageWitnessOverrides* overrides = nullptr);

/// Masses over the base constituents: the dense counterpart of a map from
/// constituent to nonnegative rational.
using MassFunction = std::vector<Rational>;

/// Pushes a stage's solution down to the base partition, splitting each
/// stage constituent's mass uniformly among its base children. Preserves the
/// aggregated mass of every event in the stage algebra.
MassFunction extend_stage(const Stage& stage, const ConstituentSet& base);

/// The merged conditional probability: per-stage refined masses over the base
/// constituents plus the union of the stage conditioning classes, each member
/// owned by the stage that produced it.
struct ConditionalProbabilityTable {
  struct ClassMember {
    LabeledEvent event;
    int owner = 0;
  };

  ConstituentSet base;  // C_0
  std::vector<Stage> stages;
  std::vector<MassFunction> refined;  // one per stage, over base constituents
  std::vector<ClassMember> class_x;

  const std::vector<ConditionalEvent>& family() const { return stages.front().family; }
  const std::vector<Rational>& precise() const { return stages.front().precise; }

  /// Index into class_x of the member whose worlds equal `h`, or -1.
  int find_conditioning(const Event& h) const;
  /// Aggregated refined mass of an event at a stage.
  Rational phi(int stage, const Event& e) const { return mass_of(e, base, refined[stage]); }
};

/// Merges the stages. Throws StructureError when stage classes overlap
/// (duplicate owner) or the impossible cross-stage containment shows up.
ConditionalProbabilityTable merge(std::vector<Stage> stages, ConstituentSet base);

/// The merged table's value for E|H, or nullopt when H is outside the
/// quasi-additive class.
std::optional<Rational> query(const ConditionalProbabilityTable& table, const Event& consequent,
                              const Event& antecedent);

/// Full pipeline for a precise coherent assessment: zero-layer sequence plus
/// merge. The family must be normalized.
ConditionalProbabilityTable synthesize(std::vector<ConditionalEvent> family,
                                       std::vector<Rational> precise,
                                       const StageWitnessOverrides* overrides = nullptr);

}  // namespace qacp
