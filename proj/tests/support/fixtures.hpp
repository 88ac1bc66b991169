#pragma once

#include <string>

#include "qacp/assessment.hpp"

namespace qacp::testing {

// The running three-event family {ABC|D, B|AC, C|AB} over atoms A, B, C, D,
// with the interval assessment ([1/2,1], [0,1/2], [1/3,2/3]) and the precise
// choice (1/2, 0, 1/3).
struct Example1 {
  AtomList atoms;
  Assessment interval;
  std::vector<Rational> p0;

  Event event(const std::string& text) const {
    return extension(parse_event(text, atoms), atoms.size());
  }
  ConditionalEvent cond(const std::string& consequent, const std::string& antecedent) const {
    return make_conditional(event(consequent), event(antecedent), consequent, antecedent);
  }
  Assessment precise_assessment() const {
    Assessment p = interval;
    for (std::size_t i = 0; i < p.size(); ++i) p.bounds[i] = {p0[i], p0[i]};
    return p;
  }
};

inline Example1 make_example1() {
  Example1 ex;
  ex.atoms.names = {"A", "B", "C", "D"};
  std::vector<AssessmentEntry> entries;
  const auto add = [&](const std::string& e, const std::string& h, const Rational& lo,
                       const Rational& hi) {
    entries.push_back(AssessmentEntry{
        make_conditional(extension(parse_event(e, ex.atoms), 4),
                         extension(parse_event(h, ex.atoms), 4), e, h),
        lo, hi});
  };
  add("A & B & C", "D", Rational(1, 2), Rational(1));
  add("B", "A & C", Rational(0), Rational(1, 2));
  add("C", "A & B", Rational(1, 3), Rational(2, 3));
  ex.interval = normalize_assessment(ex.atoms, std::move(entries));
  ex.p0 = {Rational(1, 2), Rational(0), Rational(1, 3)};
  return ex;
}

}  // namespace qacp::testing
