#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qacp/constituents.hpp"
#include "qacp/rational.hpp"
#include "qacp/simplex.hpp"

namespace qacp {

/// Interval-valued probability assessment on a family of conditional events.
/// Families are normalized: no two entries share the (EH, H) semantic key and
/// no entry is the complement of another on the same antecedent.
struct Assessment {
  AtomList atoms;
  std::vector<ConditionalEvent> family;
  std::vector<std::pair<Rational, Rational>> bounds;  // [a_i, b_i]

  std::size_t size() const { return family.size(); }
  bool is_precise() const;
  std::vector<Rational> precise_values() const;  // requires is_precise()
  Assessment restricted(const std::vector<int>& indices) const;
};

struct AssessmentEntry {
  ConditionalEvent event;
  Rational lower;
  Rational upper;
};

/// Validates bounds, deduplicates entries with equal (EH, H) keys by
/// intersecting their intervals, and folds E^c|H entries onto E|H with the
/// interval [1-b, 1-a]. Throws BoundsError when an intersection is empty or a
/// bound is outside [0, 1].
Assessment normalize_assessment(AtomList atoms, std::vector<AssessmentEntry> entries);

/// The distinct antecedents of a family, in first-occurrence order.
std::vector<LabeledEvent> distinct_antecedents(const std::vector<ConditionalEvent>& family);

/// How a constituent system is normalized.
struct Normalization {
  enum class Mode { OnUnion, OnEvent, None };
  Mode mode = Mode::OnUnion;
  Event event;  // OnEvent only

  static Normalization on_union() { return {Mode::OnUnion, {}}; }
  static Normalization on_event(Event e) { return {Mode::OnEvent, std::move(e)}; }
  static Normalization none() { return {Mode::None, {}}; }
};

/// One variable per constituent of `cs`. Per family entry: the mass of EH
/// bounded by a_i and b_i times the mass of H (homogeneous rows, equalities
/// when a_i = b_i). OnUnion appends the two unit-sum rows of the starred
/// system form; OnEvent pins the mass of one event to 1. Throws
/// StructureError if some family entry is missing from cs's family.
LinearProgram build_system(const std::vector<ConditionalEvent>& family,
                           const std::vector<std::pair<Rational, Rational>>& bounds,
                           const ConstituentSet& cs, const Normalization& norm);
LinearProgram build_system(const Assessment& a, const ConstituentSet& cs,
                           const Normalization& norm);

/// Coefficient vector selecting the constituents contained in `event`.
std::vector<Rational> mass_coefficients(const Event& event, const ConstituentSet& cs);

/// Mass of `event` under a vector over cs's constituents.
Rational mass_of(const Event& event, const ConstituentSet& cs,
                 const std::vector<Rational>& masses);

/// Partition of the distinct antecedents into those whose mass is zero in
/// every solution of the union-normalized system and those attaining positive
/// mass in some solution.
struct ZeroSet {
  std::vector<LabeledEvent> forced_zero;       // I_0
  std::vector<LabeledEvent> positive_capable;  // Gamma_0
};

/// Throws InfeasibleSystemError when the union-normalized system of `a` is
/// infeasible.
ZeroSet compute_zero_set(const Assessment& a);

struct GCoherenceLevel {
  std::vector<int> members;            // indices into the original family
  std::vector<std::string> signatures; // constituents of this level's system
  std::vector<Rational> witness;       // max-support solution
};

struct GCoherenceVerdict {
  bool g_coherent = false;
  std::vector<GCoherenceLevel> levels;     // filled on success
  std::vector<int> failing_subfamily;      // filled on failure
};

/// Level-wise check: solve the union-normalized system; on infeasibility the
/// current subfamily is the counterexample; otherwise recurse on the entries
/// whose antecedents are forced to zero mass.
GCoherenceVerdict check_g_coherence(const Assessment& a);

struct Bounds {
  Rational low;   // p_o
  Rational high;  // p^o

  bool contains(const Rational& p) const { return low <= p && p <= high; }
};

std::optional<Bounds> intersect(const Bounds& x, const Bounds& y);

/// Exact interval of values for target's probability that keep the augmented
/// assessment g-coherent. Throws NotGCoherentError when `a` itself is not
/// g-coherent, EmptyAntecedentError for an impossible target antecedent.
Bounds propagate_bounds(const Assessment& a, const ConditionalEvent& target);

struct CorrectionResult {
  Assessment corrected;
  std::vector<Bounds> raw;  // propagated bounds before intersecting the input
};

/// Least-committal correction: every interval replaced by its propagated
/// bounds intersected with the input interval.
CorrectionResult correct_assessment(const Assessment& a);

/// Collapses the assessment to a precise one, fixing entries left to right at
/// the midpoint of their current propagated range. With `override_values`,
/// validates the given point vector instead (consistency with the input
/// intervals and coherence); throws OverrideError when validation fails.
Assessment select_precise(const Assessment& a,
                          const std::optional<std::vector<Rational>>& override_values = {});

namespace detail {
/// propagate_bounds without the upfront g-coherence check (callers guarantee
/// the precondition).
Bounds propagate_bounds_unchecked(const Assessment& a, const ConditionalEvent& target);
}  // namespace detail

}  // namespace qacp
