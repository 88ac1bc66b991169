#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qacp/errors.hpp"

namespace qacp {

/// An event is the set of atomic worlds where it holds: one bit per world,
/// where bit j of a world's index gives the truth value of atom j. Set
/// operations on events are exactly the bitset operations.
using Event = boost::dynamic_bitset<>;

/// An event together with the expression text it was built from (or a
/// synthesized text for derived events such as unions of antecedents).
struct LabeledEvent {
  Event worlds;
  std::string text;
};

/// Declared atom names, in declaration order. Atom j corresponds to bit j of
/// a world index.
struct AtomList {
  std::vector<std::string> names;

  int index_of(std::string_view name) const;
  std::size_t size() const { return names.size(); }
};

/// Identifier rule: letters, digits, underscore; must start with a letter.
bool valid_atom_name(std::string_view name);

inline constexpr std::size_t kDefaultWorldCap = 20;

/// Parse tree of an event expression.
/// Grammar: expr := or ; or := and ('|' and)* ; and := unary ('&' unary)* ;
///          unary := '~' unary | '(' expr ')' | 'TRUE' | 'FALSE' | atom.
struct EventExpr {
  enum class Kind { True, False, Atom, Not, And, Or };
  Kind kind = Kind::False;
  int atom = -1;                    // Kind::Atom only
  std::vector<EventExpr> children;  // Not: exactly 1; And/Or: at least 2
};

/// Throws ParseError (with position) or UndeclaredAtomError.
EventExpr parse_event(std::string_view text, const AtomList& atoms);

/// Standard propositional semantics; bit j of `world` is the truth of atom j.
bool evaluate(const EventExpr& expr, std::size_t world);

/// The set of all worlds satisfying `expr`, by enumerating 2^m worlds.
/// Throws WorldCapError when m exceeds `world_cap`.
Event extension(const EventExpr& expr, std::size_t atom_count,
                std::size_t world_cap = kDefaultWorldCap);

/// Renders the parse tree back to grammar-conforming text.
std::string format_expr(const EventExpr& expr, const AtomList& atoms);

Event full_event(std::size_t atom_count);
Event empty_event(std::size_t atom_count);

/// Sorted list of world indices, for serialization.
std::vector<std::size_t> world_indices(const Event& e);

}  // namespace qacp
