#include "qacp/verify.hpp"

#include <random>

namespace qacp {

namespace {

// Events of the algebra generated by the base constituents, as bitsets over
// constituent indices. All class members are unions of constituents, so every
// probability the table defines is a ratio of mass sums over such bitsets.
using CellMask = boost::dynamic_bitset<>;

struct TableView {
  const ConditionalProbabilityTable* table;
  std::size_t n_cells;
  std::vector<CellMask> member_cover;  // per class member

  explicit TableView(const ConditionalProbabilityTable& t)
      : table(&t), n_cells(t.base.constituents.size()) {
    member_cover.reserve(t.class_x.size());
    for (const auto& member : t.class_x) {
      CellMask cover(n_cells);
      for (int c : constituents_of(member.event.worlds, t.base)) cover.set(c);
      member_cover.push_back(std::move(cover));
    }
  }

  Rational phi(int stage, const CellMask& mask) const {
    Rational acc = 0;
    const MassFunction& m = table->refined[stage];
    for (std::size_t c = mask.find_first(); c != CellMask::npos; c = mask.find_next(c)) {
      acc += m[c];
    }
    return acc;
  }

  std::string mask_text(const CellMask& mask) const {
    std::string s = "{";
    bool first = true;
    for (std::size_t c = mask.find_first(); c != CellMask::npos; c = mask.find_next(c)) {
      if (!first) s += ",";
      s += table->base.constituents[c].signature_string();
      first = false;
    }
    return s + "}";
  }
};

std::vector<std::pair<CellMask, CellMask>> disjoint_pairs(const TableView& view,
                                                          const VerifyOptions& options) {
  std::vector<std::pair<CellMask, CellMask>> pairs;
  const std::size_t k = view.n_cells;
  if (k <= options.exhaustive_cells && k < 20) {
    // All ordered pairs of disjoint cell unions: each cell goes to the first
    // event, the second, or neither.
    const std::size_t total = std::size_t{1} << k;
    for (std::size_t m1 = 0; m1 < total; ++m1) {
      const std::size_t comp = ~m1 & (total - 1);
      std::size_t m2 = comp;
      for (;;) {
        CellMask a(k, static_cast<unsigned long>(m1));
        CellMask b(k, static_cast<unsigned long>(m2));
        pairs.emplace_back(std::move(a), std::move(b));
        if (m2 == 0) break;
        m2 = (m2 - 1) & comp;
      }
    }
    return pairs;
  }
  // Singleton pairs, then seeded random splits.
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      CellMask a(k), b(k);
      a.set(i);
      b.set(j);
      pairs.emplace_back(std::move(a), std::move(b));
    }
  }
  std::mt19937_64 rng(options.seed);
  for (int s = 0; s < options.samples; ++s) {
    CellMask a(k), b(k);
    for (std::size_t c = 0; c < k; ++c) {
      switch (rng() % 3) {
        case 0:
          a.set(c);
          break;
        case 1:
          b.set(c);
          break;
        default:
          break;
      }
    }
    pairs.emplace_back(std::move(a), std::move(b));
  }
  return pairs;
}

std::vector<CellMask> sample_events(const TableView& view, const VerifyOptions& options) {
  std::vector<CellMask> events;
  const std::size_t k = view.n_cells;
  if (k <= options.exhaustive_cells && k < 20) {
    const std::size_t total = std::size_t{1} << k;
    for (std::size_t m = 0; m < total; ++m) {
      events.emplace_back(k, static_cast<unsigned long>(m));
    }
    return events;
  }
  for (std::size_t i = 0; i < k; ++i) {
    CellMask a(k);
    a.set(i);
    events.push_back(std::move(a));
  }
  events.emplace_back(k);         // empty
  CellMask full(k);
  full.set();
  events.push_back(std::move(full));
  std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ull);
  for (int s = 0; s < options.samples; ++s) {
    CellMask a(k);
    for (std::size_t c = 0; c < k; ++c) {
      if (rng() & 1) a.set(c);
    }
    events.push_back(std::move(a));
  }
  return events;
}

}  // namespace

AxiomResults check_axioms(const ConditionalProbabilityTable& table, const VerifyOptions& options) {
  AxiomResults out;
  const TableView view(table);

  for (std::size_t r = 0; r < table.refined.size(); ++r) {
    for (std::size_t c = 0; c < table.refined[r].size(); ++c) {
      if (table.refined[r][c] < 0) {
        out.i = {false, "negative mass at stage " + std::to_string(r) + ", constituent " +
                            table.base.constituents[c].signature_string()};
        break;
      }
    }
  }

  const auto pairs = disjoint_pairs(view, options);
  for (std::size_t m = 0; m < table.class_x.size() && out.i.pass; ++m) {
    const int owner = table.class_x[m].owner;
    const CellMask& h = view.member_cover[m];
    const Rational denom = view.phi(owner, h);
    const std::string htext = table.class_x[m].event.text;
    if (denom <= 0) {
      out.i = {false, "P(.|" + htext + ") undefined: conditioning mass " +
                          rational_to_string(denom)};
      break;
    }
    // P(Omega|H) = 1 and P(H|H) = 1 coincide here since H covers h exactly.
    if (view.phi(owner, h) / denom != 1) {
      out.i = {false, "P(TRUE|" + htext + ") != 1"};
      break;
    }
    for (const auto& [e1, e2] : pairs) {
      const Rational p1 = view.phi(owner, e1 & h);
      const Rational p2 = view.phi(owner, e2 & h);
      const Rational pu = view.phi(owner, (e1 | e2) & h);
      if (pu != p1 + p2) {
        out.i = {false, "additivity fails for H=" + htext + ", E1=" + view.mask_text(e1) +
                            ", E2=" + view.mask_text(e2)};
        break;
      }
      if (p1 < 0 || p2 < 0) {
        out.i = {false, "negative conditional mass for H=" + htext};
        break;
      }
    }
  }

  for (std::size_t m = 0; m < table.class_x.size(); ++m) {
    const int owner = table.class_x[m].owner;
    const CellMask& h = view.member_cover[m];
    const Rational denom = view.phi(owner, h);
    if (denom <= 0 || view.phi(owner, h) / denom != 1) {
      out.ii = {false, "P(H|H) != 1 for H=" + table.class_x[m].event.text};
      break;
    }
  }

  const auto events = sample_events(view, options);
  for (std::size_t m = 0; m < table.class_x.size() && out.iii.pass; ++m) {
    const int r = table.class_x[m].owner;
    const CellMask& h = view.member_cover[m];
    const Rational ph = view.phi(r, h);
    if (ph <= 0) {
      out.iii = {false, "zero conditioning mass for H=" + table.class_x[m].event.text};
      break;
    }
    for (std::size_t km = 0; km < table.class_x.size() && out.iii.pass; ++km) {
      const CellMask& k = view.member_cover[km];
      if (!k.is_subset_of(h)) continue;  // E1H must equal a class member
      const int s = table.class_x[km].owner;
      const Rational pk = view.phi(s, k);
      if (pk <= 0) {
        out.iii = {false, "zero conditioning mass for E1H=" + table.class_x[km].event.text};
        break;
      }
      CellMask outside = h;
      outside.flip();
      const CellMask e1_variants[2] = {k, k | outside};
      const Rational p_e1_given_h = view.phi(r, k) / ph;
      for (const CellMask& e1 : e1_variants) {
        for (const CellMask& e2 : events) {
          const Rational lhs = view.phi(r, e1 & e2 & h) / ph;
          const Rational rhs = (view.phi(s, e2 & k) / pk) * p_e1_given_h;
          if (lhs != rhs) {
            out.iii = {false, "product rule fails for H=" + table.class_x[m].event.text +
                                  ", E1H=" + table.class_x[km].event.text +
                                  ", E2=" + view.mask_text(e2)};
            break;
          }
        }
        if (!out.iii.pass) break;
      }
    }
  }
  return out;
}

CheckResult check_quasi_additive(const ConditionalProbabilityTable& table) {
  const TableView view(table);
  for (std::size_t i = 0; i < table.class_x.size(); ++i) {
    for (std::size_t j = i; j < table.class_x.size(); ++j) {
      const Event disjunction = table.class_x[i].event.worlds | table.class_x[j].event.worlds;
      bool found = false;
      for (std::size_t km = 0; km < table.class_x.size() && !found; ++km) {
        if (!disjunction.is_subset_of(table.class_x[km].event.worlds)) continue;
        const int owner = table.class_x[km].owner;
        const CellMask& k = view.member_cover[km];
        const Rational denom = view.phi(owner, k);
        if (denom <= 0) continue;
        const Rational p1 = view.phi(owner, view.member_cover[i] & k);
        const Rational p2 = view.phi(owner, view.member_cover[j] & k);
        if (p1 + p2 > 0) found = true;
      }
      if (!found) {
        return {false, "no witness K for the pair (" + table.class_x[i].event.text + ", " +
                           table.class_x[j].event.text + ")"};
      }
    }
  }
  return {};
}

CheckResult check_coherence_oracle(const std::vector<ConditionalEvent>& family,
                                   const std::vector<Rational>& precise, std::size_t cap) {
  if (family.size() != precise.size()) {
    throw StructureError("coherence oracle: family/value size mismatch");
  }
  if (family.size() > cap) {
    throw OracleCapError("coherence oracle limited to " + std::to_string(cap) +
                         " events, got " + std::to_string(family.size()));
  }
  const std::uint32_t total = std::uint32_t{1} << family.size();
  for (std::uint32_t subset = 1; subset < total; ++subset) {
    std::vector<ConditionalEvent> sub_family;
    std::vector<std::pair<Rational, Rational>> sub_bounds;
    std::string members;
    for (std::size_t i = 0; i < family.size(); ++i) {
      if ((subset >> i) & 1u) {
        sub_family.push_back(family[i]);
        sub_bounds.emplace_back(precise[i], precise[i]);
        if (!members.empty()) members += ",";
        members += std::to_string(i);
      }
    }
    const ConstituentSet cs = build_constituents(sub_family);
    const LinearProgram lp = build_system(sub_family, sub_bounds, cs, Normalization::on_union());
    if (!solve_feasibility(lp).is_feasible()) {
      return {false, "system of subfamily {" + members + "} is unsolvable"};
    }
  }
  return {};
}

CheckResult check_consistency(const ConditionalProbabilityTable& table,
                              const Assessment& original) {
  const auto& declared = table.precise();
  for (std::size_t i = 0; i < original.size(); ++i) {
    const auto value = query(table, original.family[i].consequent, original.family[i].antecedent);
    if (!value) {
      return {false, "antecedent of entry " + std::to_string(i) + " ('" +
                         original.family[i].display() + "') is outside the conditioning class"};
    }
    if (*value < original.bounds[i].first || *value > original.bounds[i].second) {
      return {false, "entry " + std::to_string(i) + " ('" + original.family[i].display() +
                         "') has value " + rational_to_string(*value) + " outside [" +
                         rational_to_string(original.bounds[i].first) + ", " +
                         rational_to_string(original.bounds[i].second) + "]"};
    }
    // The restriction must also agree with the table's own declared values.
    if (i < declared.size() && *value != declared[i]) {
      return {false, "entry " + std::to_string(i) + " ('" + original.family[i].display() +
                         "') has value " + rational_to_string(*value) +
                         " but the table declares " + rational_to_string(declared[i])};
    }
  }
  return {};
}

CheckResult check_cardinality(const ConditionalProbabilityTable& table, std::size_t family_size) {
  if (table.class_x.size() > 2 * family_size) {
    return {false, "|X| = " + std::to_string(table.class_x.size()) + " exceeds 2n = " +
                       std::to_string(2 * family_size)};
  }
  return {};
}

VerificationReport verify_table(const ConditionalProbabilityTable& table,
                                const Assessment& original, const VerifyOptions& options) {
  VerificationReport report;
  const AxiomResults axioms = check_axioms(table, options);
  report.axiom_i = axioms.i;
  report.axiom_ii = axioms.ii;
  report.axiom_iii = axioms.iii;
  report.quasi_additive = check_quasi_additive(table);
  report.coherent = check_coherence_oracle(table.family(), table.precise(), options.oracle_cap);
  report.consistent = check_consistency(table, original);
  report.cardinality_bound = check_cardinality(table, original.size());
  return report;
}

}  // namespace qacp
