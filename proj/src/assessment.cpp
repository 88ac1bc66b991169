#include "qacp/assessment.hpp"

#include <algorithm>
#include <map>

namespace qacp {

bool Assessment::is_precise() const {
  for (const auto& [lo, hi] : bounds) {
    if (lo != hi) return false;
  }
  return true;
}

std::vector<Rational> Assessment::precise_values() const {
  std::vector<Rational> out;
  out.reserve(bounds.size());
  for (const auto& [lo, hi] : bounds) {
    if (lo != hi) throw StructureError("precise_values on an imprecise assessment");
    out.push_back(lo);
  }
  return out;
}

Assessment Assessment::restricted(const std::vector<int>& indices) const {
  Assessment out;
  out.atoms = atoms;
  for (int i : indices) {
    out.family.push_back(family[i]);
    out.bounds.push_back(bounds[i]);
  }
  return out;
}

Assessment normalize_assessment(AtomList atoms, std::vector<AssessmentEntry> entries) {
  Assessment a;
  a.atoms = std::move(atoms);
  // Key: (EH, H) world sets. A complement entry E^c|H folds onto E|H with the
  // interval mapped through p -> 1-p.
  std::map<std::pair<Event, Event>, std::size_t> seen;
  for (auto& e : entries) {
    if (e.lower < 0 || e.upper > 1 || e.lower > e.upper) {
      throw BoundsError("bounds [" + rational_to_string(e.lower) + ", " +
                        rational_to_string(e.upper) + "] for '" + e.event.display() +
                        "' violate 0 <= a <= b <= 1");
    }
    if (e.event.antecedent.none()) {
      throw EmptyAntecedentError("impossible antecedent in '" + e.event.display() + "'");
    }
    const Event eh = e.event.true_part();
    const Event complement_part = e.event.antecedent - eh;
    Rational lo = e.lower;
    Rational hi = e.upper;
    std::size_t target;
    if (auto it = seen.find({eh, e.event.antecedent}); it != seen.end()) {
      target = it->second;
    } else if (auto itc = seen.find({complement_part, e.event.antecedent}); itc != seen.end()) {
      target = itc->second;
      std::swap(lo, hi);
      lo = 1 - lo;
      hi = 1 - hi;
    } else {
      seen.emplace(std::make_pair(eh, e.event.antecedent), a.family.size());
      a.family.push_back(std::move(e.event));
      a.bounds.emplace_back(std::move(lo), std::move(hi));
      continue;
    }
    auto& [cur_lo, cur_hi] = a.bounds[target];
    cur_lo = std::max(cur_lo, lo);
    cur_hi = std::min(cur_hi, hi);
    if (cur_lo > cur_hi) {
      throw BoundsError("conflicting bounds for '" + a.family[target].display() +
                        "': interval intersection is empty");
    }
  }
  return a;
}

std::vector<LabeledEvent> distinct_antecedents(const std::vector<ConditionalEvent>& family) {
  std::vector<LabeledEvent> out;
  for (const auto& ce : family) {
    bool found = false;
    for (const auto& known : out) {
      if (known.worlds == ce.antecedent) {
        found = true;
        break;
      }
    }
    if (!found) out.push_back(LabeledEvent{ce.antecedent, ce.antecedent_text});
  }
  return out;
}

std::vector<Rational> mass_coefficients(const Event& event, const ConstituentSet& cs) {
  std::vector<Rational> coeffs(cs.constituents.size(), Rational(0));
  for (int c : constituents_of(event, cs)) coeffs[c] = 1;
  return coeffs;
}

Rational mass_of(const Event& event, const ConstituentSet& cs,
                 const std::vector<Rational>& masses) {
  if (masses.size() != cs.constituents.size()) {
    throw StructureError("mass_of: vector does not match constituent count");
  }
  Rational acc = 0;
  for (int c : constituents_of(event, cs)) acc += masses[c];
  return acc;
}

LinearProgram build_system(const std::vector<ConditionalEvent>& family,
                           const std::vector<std::pair<Rational, Rational>>& bounds,
                           const ConstituentSet& cs, const Normalization& norm) {
  if (family.size() != bounds.size()) {
    throw StructureError("build_system: family/bounds size mismatch");
  }
  for (const auto& ce : family) {
    bool present = false;
    for (const auto& member : cs.family) {
      if (member.antecedent == ce.antecedent && member.true_part() == ce.true_part()) {
        present = true;
        break;
      }
    }
    if (!present) {
      throw StructureError("build_system: family entry '" + ce.display() +
                           "' is not part of the constituent set's family");
    }
  }

  LinearProgram lp;
  lp.var_names.reserve(cs.constituents.size());
  for (const auto& c : cs.constituents) lp.var_names.push_back(c.signature_string());

  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto ehs = constituents_of(family[i].true_part(), cs);
    const auto hs = constituents_of(family[i].antecedent, cs);
    const auto& [a, b] = bounds[i];
    auto row = [&](const Rational& p) {
      std::vector<Rational> coeffs(cs.constituents.size(), Rational(0));
      for (int c : ehs) coeffs[c] += 1;
      for (int c : hs) coeffs[c] -= p;
      return coeffs;
    };
    if (a == b) {
      lp.add(row(a), LinearProgram::Rel::Eq, Rational(0));
    } else {
      lp.add(row(b), LinearProgram::Rel::Le, Rational(0));
      lp.add(row(a), LinearProgram::Rel::Ge, Rational(0));
    }
  }

  switch (norm.mode) {
    case Normalization::Mode::OnUnion:
      lp.add(mass_coefficients(cs.union_antecedent, cs), LinearProgram::Rel::Eq, Rational(1));
      lp.add(std::vector<Rational>(cs.constituents.size(), Rational(1)), LinearProgram::Rel::Eq,
             Rational(1));
      break;
    case Normalization::Mode::OnEvent:
      lp.add(mass_coefficients(norm.event, cs), LinearProgram::Rel::Eq, Rational(1));
      break;
    case Normalization::Mode::None:
      break;
  }
  return lp;
}

LinearProgram build_system(const Assessment& a, const ConstituentSet& cs,
                           const Normalization& norm) {
  return build_system(a.family, a.bounds, cs, norm);
}

namespace {

// Zero set plus the max-support witness over the union-normalized system.
struct ZeroSetWitness {
  ZeroSet zs;
  std::vector<Rational> witness;
  std::vector<std::string> signatures;
  bool feasible = false;
};

ZeroSetWitness zero_set_with_witness(const std::vector<ConditionalEvent>& family,
                                     const std::vector<std::pair<Rational, Rational>>& bounds) {
  ZeroSetWitness out;
  const ConstituentSet cs = build_constituents(family);
  const LinearProgram lp = build_system(family, bounds, cs, Normalization::on_union());
  if (!solve_feasibility(lp).is_feasible()) {
    return out;
  }
  out.feasible = true;
  const auto antecedents = distinct_antecedents(family);
  std::vector<std::vector<Rational>> tracked;
  tracked.reserve(antecedents.size());
  for (const auto& h : antecedents) tracked.push_back(mass_coefficients(h.worlds, cs));
  auto [witness, flags] = max_support_solution(lp, tracked);
  for (std::size_t k = 0; k < antecedents.size(); ++k) {
    (flags[k] ? out.zs.positive_capable : out.zs.forced_zero).push_back(antecedents[k]);
  }
  if (out.zs.positive_capable.empty()) {
    throw StructureError("zero set computation: no antecedent attains positive mass");
  }
  out.witness = std::move(witness);
  for (const auto& c : cs.constituents) out.signatures.push_back(c.signature_string());
  return out;
}

bool event_in(const Event& e, const std::vector<LabeledEvent>& set) {
  for (const auto& le : set) {
    if (le.worlds == e) return true;
  }
  return false;
}

}  // namespace

ZeroSet compute_zero_set(const Assessment& a) {
  ZeroSetWitness out = zero_set_with_witness(a.family, a.bounds);
  if (!out.feasible) {
    throw InfeasibleSystemError("zero set requested for an infeasible system");
  }
  return std::move(out.zs);
}

GCoherenceVerdict check_g_coherence(const Assessment& a) {
  GCoherenceVerdict verdict;
  std::vector<int> current(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) current[i] = static_cast<int>(i);

  while (!current.empty()) {
    const Assessment sub = a.restricted(current);
    ZeroSetWitness level = zero_set_with_witness(sub.family, sub.bounds);
    if (!level.feasible) {
      verdict.g_coherent = false;
      verdict.failing_subfamily = current;
      return verdict;
    }
    verdict.levels.push_back(
        GCoherenceLevel{current, std::move(level.signatures), std::move(level.witness)});
    if (level.zs.forced_zero.empty()) {
      verdict.g_coherent = true;
      return verdict;
    }
    std::vector<int> next;
    for (std::size_t j = 0; j < sub.family.size(); ++j) {
      if (event_in(sub.family[j].antecedent, level.zs.forced_zero)) {
        next.push_back(current[j]);
      }
    }
    if (next.size() >= current.size()) {
      throw StructureError("g-coherence recursion failed to shrink the subfamily");
    }
    current = std::move(next);
  }
  verdict.g_coherent = true;
  return verdict;
}

std::optional<Bounds> intersect(const Bounds& x, const Bounds& y) {
  Bounds out{std::max(x.low, y.low), std::min(x.high, y.high)};
  if (out.low > out.high) return std::nullopt;
  return out;
}

namespace detail {

Bounds propagate_bounds_unchecked(const Assessment& a, const ConditionalEvent& target) {
  if (target.antecedent.none()) {
    throw EmptyAntecedentError("propagation target has an impossible antecedent");
  }
  std::vector<int> current(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) current[i] = static_cast<int>(i);

  for (;;) {
    if (current.empty()) {
      const Event eh = target.true_part();
      if (eh.none()) return Bounds{Rational(0), Rational(0)};
      if (eh == target.antecedent) return Bounds{Rational(1), Rational(1)};
      return Bounds{Rational(0), Rational(1)};
    }
    const Assessment sub = a.restricted(current);
    std::vector<ConditionalEvent> augmented = sub.family;
    augmented.push_back(target);
    const ConstituentSet cs = build_constituents(std::move(augmented));

    // Voiding system: the subfamily's constraints with mass pinned on its own
    // antecedent union and none on the target's antecedent. When it is
    // infeasible, every relevant solution gives the target positive mass and
    // the range at this level is exact. When it is feasible, this level (and
    // every subfamily touching an antecedent that can stay positive while the
    // target is voided) imposes no constraint on the target's value: descend
    // into the part whose antecedents are zero across all voiding solutions.
    Event own_union(sub.family.front().antecedent.size());
    for (const auto& ce : sub.family) own_union |= ce.antecedent;
    LinearProgram voiding =
        build_system(sub.family, sub.bounds, cs, Normalization::on_event(own_union));
    voiding.add(mass_coefficients(target.antecedent, cs), LinearProgram::Rel::Eq, Rational(0));

    if (!solve_feasibility(voiding).is_feasible()) {
      const LinearProgram lp =
          build_system(sub.family, sub.bounds, cs, Normalization::on_event(target.antecedent));
      if (!solve_feasibility(lp).is_feasible()) {
        throw InfeasibleSystemError("bound propagation on a non-g-coherent assessment");
      }
      const auto objective = mass_coefficients(target.true_part(), cs);
      const LpOutcome lo = optimize(lp, objective, Direction::Min);
      const LpOutcome hi = optimize(lp, objective, Direction::Max);
      if (lo.status != LpOutcome::Status::Optimal || hi.status != LpOutcome::Status::Optimal) {
        throw StructureError("bound propagation: objective did not optimize");
      }
      return Bounds{lo.value, hi.value};
    }

    std::vector<int> next;
    const auto antecedents = distinct_antecedents(sub.family);
    std::vector<bool> forced(antecedents.size(), false);
    for (std::size_t k = 0; k < antecedents.size(); ++k) {
      const LpOutcome best =
          optimize(voiding, mass_coefficients(antecedents[k].worlds, cs), Direction::Max);
      if (best.status != LpOutcome::Status::Optimal) {
        throw StructureError("bound propagation: voiding system did not optimize");
      }
      forced[k] = best.value.is_zero();
    }
    for (std::size_t j = 0; j < sub.family.size(); ++j) {
      for (std::size_t k = 0; k < antecedents.size(); ++k) {
        if (forced[k] && sub.family[j].antecedent == antecedents[k].worlds) {
          next.push_back(current[j]);
          break;
        }
      }
    }
    if (next.size() >= current.size()) {
      throw StructureError("bound propagation failed to shrink the subfamily");
    }
    current = std::move(next);
  }
}

}  // namespace detail

Bounds propagate_bounds(const Assessment& a, const ConditionalEvent& target) {
  GCoherenceVerdict verdict = check_g_coherence(a);
  if (!verdict.g_coherent) {
    throw NotGCoherentError("assessment is not g-coherent", verdict.failing_subfamily);
  }
  return detail::propagate_bounds_unchecked(a, target);
}

CorrectionResult correct_assessment(const Assessment& a) {
  GCoherenceVerdict verdict = check_g_coherence(a);
  if (!verdict.g_coherent) {
    throw NotGCoherentError("assessment is not g-coherent", verdict.failing_subfamily);
  }
  CorrectionResult out;
  out.corrected = a;
  out.raw.reserve(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    const Bounds raw = detail::propagate_bounds_unchecked(a, a.family[j]);
    const auto tightened = intersect(raw, Bounds{a.bounds[j].first, a.bounds[j].second});
    if (!tightened) {
      throw StructureError("correction produced an empty interval at index " + std::to_string(j));
    }
    out.corrected.bounds[j] = {tightened->low, tightened->high};
    out.raw.push_back(raw);
  }
  return out;
}

Assessment select_precise(const Assessment& a,
                          const std::optional<std::vector<Rational>>& override_values) {
  if (override_values) {
    if (override_values->size() != a.size()) {
      throw OverrideError("precise override has " + std::to_string(override_values->size()) +
                          " values for " + std::to_string(a.size()) + " events");
    }
    Assessment point = a;
    for (std::size_t j = 0; j < a.size(); ++j) {
      const Rational& p = (*override_values)[j];
      if (p < a.bounds[j].first || p > a.bounds[j].second) {
        throw OverrideError("precise override value " + rational_to_string(p) +
                                " falls outside the interval of '" + a.family[j].display() + "'",
                            {static_cast<int>(j)});
      }
      point.bounds[j] = {p, p};
    }
    GCoherenceVerdict verdict = check_g_coherence(point);
    if (!verdict.g_coherent) {
      throw OverrideError("precise override is not coherent", verdict.failing_subfamily);
    }
    return point;
  }

  Assessment working = correct_assessment(a).corrected;
  for (std::size_t j = 0; j < working.size(); ++j) {
    const Bounds range = detail::propagate_bounds_unchecked(working, working.family[j]);
    const auto usable =
        intersect(range, Bounds{working.bounds[j].first, working.bounds[j].second});
    if (!usable) {
      throw StructureError("precise selection produced an empty range at index " +
                           std::to_string(j));
    }
    const Rational mid = (usable->low + usable->high) / 2;
    working.bounds[j] = {mid, mid};
  }
  return working;
}

}  // namespace qacp
