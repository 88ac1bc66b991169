#include "qacp/constituents.hpp"

#include <algorithm>
#include <map>

namespace qacp {

ConditionalEvent make_conditional(Event consequent, Event antecedent, std::string consequent_text,
                                  std::string antecedent_text) {
  if (consequent.size() != antecedent.size()) {
    throw StructureError("conditional event over mismatched world spaces");
  }
  if (antecedent.none()) {
    throw EmptyAntecedentError("impossible antecedent in conditional event '" + consequent_text +
                               " | " + antecedent_text + "'");
  }
  return ConditionalEvent{std::move(consequent), std::move(antecedent), std::move(consequent_text),
                          std::move(antecedent_text)};
}

std::uint64_t Constituent::ternary_rank() const {
  std::uint64_t r = 0;
  std::uint64_t pow = 1;
  for (std::uint8_t d : signature) {
    r += d * pow;
    pow *= 3;
  }
  return r;
}

std::string Constituent::signature_string() const {
  std::string s;
  s.reserve(signature.size());
  for (std::uint8_t d : signature) s.push_back(static_cast<char>('0' + d));
  return s;
}

int ConstituentSet::find(const Event& e) const {
  for (std::size_t i = 0; i < constituents.size(); ++i) {
    if (constituents[i].worlds == e) return static_cast<int>(i);
  }
  return -1;
}

ConstituentSet build_constituents(std::vector<ConditionalEvent> family) {
  if (family.empty()) {
    throw StructureError("cannot build constituents of an empty family");
  }
  const std::size_t n_worlds = family.front().antecedent.size();
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].antecedent.size() != n_worlds || family[i].consequent.size() != n_worlds) {
      throw StructureError("family members over mismatched world spaces");
    }
    if (family[i].antecedent.none()) {
      throw EmptyAntecedentError("impossible antecedent at family index " + std::to_string(i) +
                                 " ('" + family[i].display() + "')");
    }
  }
  if (family.size() > 39) {
    // 3^40 overflows the 64-bit ternary rank.
    throw StructureError("family too large for ternary signatures: " +
                         std::to_string(family.size()));
  }

  // Group worlds by their digit pattern across the family.
  std::map<std::uint64_t, Constituent> groups;
  for (std::size_t w = 0; w < n_worlds; ++w) {
    std::uint64_t rank = 0;
    std::uint64_t pow = 1;
    std::vector<std::uint8_t> digits(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
      std::uint8_t d;
      if (!family[i].antecedent.test(w)) {
        d = 2;
      } else if (family[i].consequent.test(w)) {
        d = 1;
      } else {
        d = 0;
      }
      digits[i] = d;
      rank += d * pow;
      pow *= 3;
    }
    auto it = groups.find(rank);
    if (it == groups.end()) {
      Constituent c;
      c.signature = std::move(digits);
      c.worlds = Event(n_worlds);
      c.worlds.set(w);
      groups.emplace(rank, std::move(c));
    } else {
      it->second.worlds.set(w);
    }
  }

  ConstituentSet cs;
  cs.union_antecedent = Event(n_worlds);
  for (const ConditionalEvent& ce : family) cs.union_antecedent |= ce.antecedent;
  cs.family = std::move(family);
  cs.constituents.reserve(groups.size());
  for (auto& [rank, c] : groups) cs.constituents.push_back(std::move(c));
  return cs;
}

std::vector<int> constituents_of(const Event& event, const ConstituentSet& cs) {
  std::vector<int> out;
  for (std::size_t i = 0; i < cs.constituents.size(); ++i) {
    if (cs.constituents[i].worlds.is_subset_of(event)) out.push_back(static_cast<int>(i));
  }
  return out;
}

int parent_constituent(const Constituent& c0, const ConstituentSet& sub) {
  if (c0.worlds.none()) {
    throw StructureError("parent_constituent: empty child constituent");
  }
  int parent = -1;
  for (std::size_t i = 0; i < sub.constituents.size(); ++i) {
    if (c0.worlds.is_subset_of(sub.constituents[i].worlds)) {
      if (parent >= 0) {
        throw StructureError("parent_constituent: multiple parents for signature " +
                             c0.signature_string());
      }
      parent = static_cast<int>(i);
    }
  }
  if (parent < 0) {
    throw StructureError("parent_constituent: no parent for signature " + c0.signature_string());
  }
  return parent;
}

}  // namespace qacp
