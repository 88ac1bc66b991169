#include "qacp/construction.hpp"

#include <algorithm>

namespace qacp {

Rational Stage::table(const Event& e, const Event& h) const {
  const Rational denom = phi(h);
  if (denom.is_zero()) {
    throw StructureError("stage table queried at a zero-mass conditioning event");
  }
  return phi(e & h) / denom;
}

namespace {

std::string union_text(const std::vector<LabeledEvent>& antecedents) {
  std::string out;
  for (const auto& le : antecedents) {
    if (!out.empty()) out += " | ";
    out += le.text;
  }
  return out;
}

bool contains_event(const std::vector<LabeledEvent>& set, const Event& e) {
  for (const auto& le : set) {
    if (le.worlds == e) return true;
  }
  return false;
}

}  // namespace

Stage build_stage(std::vector<ConditionalEvent> family, std::vector<Rational> precise, int index,
                  const std::vector<Rational>* witness_override) {
  if (family.size() != precise.size()) {
    throw StructureError("build_stage: family/value size mismatch");
  }
  Stage s;
  s.index = index;
  s.family = std::move(family);
  s.precise = std::move(precise);
  s.constituent_set = build_constituents(s.family);

  std::vector<std::pair<Rational, Rational>> bounds;
  bounds.reserve(s.precise.size());
  for (const Rational& p : s.precise) bounds.emplace_back(p, p);
  const LinearProgram lp =
      build_system(s.family, bounds, s.constituent_set, Normalization::on_union());

  const auto antecedents = distinct_antecedents(s.family);
  std::vector<std::vector<Rational>> tracked;
  tracked.reserve(antecedents.size());
  for (const auto& h : antecedents) {
    tracked.push_back(mass_coefficients(h.worlds, s.constituent_set));
  }

  std::vector<bool> flags(antecedents.size(), false);
  if (witness_override != nullptr) {
    if (!lp_satisfies(lp, *witness_override)) {
      throw OverrideError("stage " + std::to_string(index) +
                          " witness override does not solve the stage system");
    }
    s.solution = *witness_override;
    for (std::size_t k = 0; k < tracked.size(); ++k) {
      flags[k] = dot(tracked[k], s.solution) > 0;
    }
  } else {
    auto [witness, support] = max_support_solution(lp, tracked);
    s.solution = std::move(witness);
    flags = std::move(support);
  }

  for (std::size_t k = 0; k < antecedents.size(); ++k) {
    (flags[k] ? s.antecedents_positive : s.antecedents_zero).push_back(antecedents[k]);
  }
  if (s.antecedents_positive.empty()) {
    throw StructureError("stage " + std::to_string(index) +
                         ": no conditioning event has positive mass");
  }

  s.conditioning_class = s.antecedents_positive;
  if (!contains_event(s.conditioning_class, s.constituent_set.union_antecedent)) {
    s.conditioning_class.push_back(
        LabeledEvent{s.constituent_set.union_antecedent, union_text(antecedents)});
  }

  for (std::size_t j = 0; j < s.family.size(); ++j) {
    if (contains_event(s.antecedents_zero, s.family[j].antecedent)) {
      s.family_zero.push_back(static_cast<int>(j));
    } else {
      s.family_positive.push_back(static_cast<int>(j));
    }
  }
  return s;
}

std::vector<Stage> zero_layer_sequence(std::vector<ConditionalEvent> family,
                                       std::vector<Rational> precise,
                                       const StageWitnessOverrides* overrides) {
  std::vector<Stage> stages;
  std::vector<int> origin(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) origin[i] = static_cast<int>(i);

  while (!family.empty()) {
    const int index = static_cast<int>(stages.size());
    const std::vector<Rational>* witness = nullptr;
    if (overrides != nullptr) {
      if (auto it = overrides->find(index); it != overrides->end()) witness = &it->second;
    }
    Stage s = build_stage(std::move(family), std::move(precise), index, witness);
    s.origin = origin;

    std::vector<ConditionalEvent> next_family;
    std::vector<Rational> next_precise;
    std::vector<int> next_origin;
    for (int j : s.family_zero) {
      next_family.push_back(s.family[j]);
      next_precise.push_back(s.precise[j]);
      next_origin.push_back(origin[j]);
    }
    if (next_family.size() >= s.family.size()) {
      throw StructureError("zero-layer sequence failed to strictly decrease");
    }
    stages.push_back(std::move(s));
    family = std::move(next_family);
    precise = std::move(next_precise);
    origin = std::move(next_origin);
  }
  return stages;
}

MassFunction extend_stage(const Stage& stage, const ConstituentSet& base) {
  if (base.world_count() != stage.constituent_set.world_count()) {
    throw StructureError("extend_stage: mismatched world spaces");
  }
  const std::size_t n_base = base.constituents.size();
  std::vector<int> parent(n_base);
  std::vector<long> child_count(stage.constituent_set.constituents.size(), 0);
  for (std::size_t j = 0; j < n_base; ++j) {
    parent[j] = parent_constituent(base.constituents[j], stage.constituent_set);
    ++child_count[parent[j]];
  }
  MassFunction mu(n_base, Rational(0));
  for (std::size_t j = 0; j < n_base; ++j) {
    const Rational& m = stage.solution[parent[j]];
    if (!m.is_zero()) mu[j] = m / child_count[parent[j]];
  }
  return mu;
}

int ConditionalProbabilityTable::find_conditioning(const Event& h) const {
  for (std::size_t i = 0; i < class_x.size(); ++i) {
    if (class_x[i].event.worlds == h) return static_cast<int>(i);
  }
  return -1;
}

ConditionalProbabilityTable merge(std::vector<Stage> stages, ConstituentSet base) {
  if (stages.empty()) {
    throw StructureError("merge: empty stage sequence");
  }
  ConditionalProbabilityTable t;
  t.base = std::move(base);
  for (const Stage& s : stages) {
    t.refined.push_back(extend_stage(s, t.base));
    for (const LabeledEvent& le : s.conditioning_class) {
      const int existing = t.find_conditioning(le.worlds);
      if (existing >= 0) {
        throw StructureError("merge: conditioning event '" + le.text + "' owned by both stage " +
                             std::to_string(t.class_x[existing].owner) + " and stage " +
                             std::to_string(s.index));
      }
      t.class_x.push_back(ConditionalProbabilityTable::ClassMember{le, s.index});
    }
  }
  // A later-stage conditioning event can never contain an earlier-stage one.
  for (const auto& later : t.class_x) {
    for (const auto& earlier : t.class_x) {
      if (earlier.owner < later.owner && earlier.event.worlds.is_subset_of(later.event.worlds)) {
        throw StructureError("merge: stage-" + std::to_string(earlier.owner) +
                             " conditioning event '" + earlier.event.text +
                             "' lies inside stage-" + std::to_string(later.owner) + " event '" +
                             later.event.text + "'");
      }
    }
  }
  for (const ConditionalEvent& ce : stages.front().family) {
    if (t.find_conditioning(ce.antecedent) < 0) {
      throw StructureError("merge: antecedent of '" + ce.display() +
                           "' missing from the conditioning class");
    }
  }
  t.stages = std::move(stages);
  return t;
}

std::optional<Rational> query(const ConditionalProbabilityTable& table, const Event& consequent,
                              const Event& antecedent) {
  const int member = table.find_conditioning(antecedent);
  if (member < 0) return std::nullopt;
  const int owner = table.class_x[member].owner;
  const Rational denom = table.phi(owner, antecedent);
  if (denom <= 0) {
    throw StructureError("query: conditioning event with nonpositive owner mass");
  }
  return table.phi(owner, consequent & antecedent) / denom;
}

ConditionalProbabilityTable synthesize(std::vector<ConditionalEvent> family,
                                       std::vector<Rational> precise,
                                       const StageWitnessOverrides* overrides) {
  std::vector<Stage> stages = zero_layer_sequence(std::move(family), std::move(precise), overrides);
  ConstituentSet base = stages.front().constituent_set;
  return merge(std::move(stages), std::move(base));
}

}  // namespace qacp
