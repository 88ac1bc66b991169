#include "qacp/events.hpp"

#include <cctype>

namespace qacp {

int AtomList::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<int>(i);
  }
  return -1;
}

bool valid_atom_name(std::string_view name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

namespace {

// Recursive-descent parser. '~' binds tightest, then '&', then '|'.
class Parser {
 public:
  Parser(std::string_view text, const AtomList& atoms) : text_(text), atoms_(atoms) {}

  EventExpr parse() {
    EventExpr e = parse_or();
    skip_ws();
    if (pos_ != text_.size()) {
      throw ParseError("unexpected trailing input", pos_);
    }
    return e;
  }

 private:
  std::string_view text_;
  const AtomList& atoms_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  EventExpr parse_or() {
    EventExpr first = parse_and();
    std::vector<EventExpr> terms;
    while (eat('|')) {
      if (terms.empty()) terms.push_back(std::move(first));
      terms.push_back(parse_and());
    }
    if (terms.empty()) return first;
    EventExpr e;
    e.kind = EventExpr::Kind::Or;
    e.children = std::move(terms);
    return e;
  }

  EventExpr parse_and() {
    EventExpr first = parse_unary();
    std::vector<EventExpr> terms;
    while (eat('&')) {
      if (terms.empty()) terms.push_back(std::move(first));
      terms.push_back(parse_unary());
    }
    if (terms.empty()) return first;
    EventExpr e;
    e.kind = EventExpr::Kind::And;
    e.children = std::move(terms);
    return e;
  }

  EventExpr parse_unary() {
    skip_ws();
    if (pos_ >= text_.size()) {
      throw ParseError("unexpected end of expression", pos_);
    }
    if (eat('~')) {
      EventExpr e;
      e.kind = EventExpr::Kind::Not;
      e.children.push_back(parse_unary());
      return e;
    }
    if (eat('(')) {
      EventExpr e = parse_or();
      if (!eat(')')) {
        throw ParseError("expected ')'", pos_);
      }
      return e;
    }
    return parse_word();
  }

  EventExpr parse_word() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (pos_ == start) {
      throw ParseError(std::string("unexpected character '") +
                           (pos_ < text_.size() ? std::string(1, text_[pos_]) : "<eof>") + "'",
                       pos_);
    }
    const std::string_view word = text_.substr(start, pos_ - start);
    EventExpr e;
    if (word == "TRUE") {
      e.kind = EventExpr::Kind::True;
      return e;
    }
    if (word == "FALSE") {
      e.kind = EventExpr::Kind::False;
      return e;
    }
    if (!valid_atom_name(word)) {
      throw ParseError("invalid atom name '" + std::string(word) + "'", start);
    }
    const int idx = atoms_.index_of(word);
    if (idx < 0) {
      throw UndeclaredAtomError(std::string(word));
    }
    e.kind = EventExpr::Kind::Atom;
    e.atom = idx;
    return e;
  }
};

}  // namespace

EventExpr parse_event(std::string_view text, const AtomList& atoms) {
  return Parser(text, atoms).parse();
}

bool evaluate(const EventExpr& expr, std::size_t world) {
  switch (expr.kind) {
    case EventExpr::Kind::True:
      return true;
    case EventExpr::Kind::False:
      return false;
    case EventExpr::Kind::Atom:
      return (world >> expr.atom) & 1u;
    case EventExpr::Kind::Not:
      return !evaluate(expr.children[0], world);
    case EventExpr::Kind::And:
      for (const EventExpr& c : expr.children) {
        if (!evaluate(c, world)) return false;
      }
      return true;
    case EventExpr::Kind::Or:
      for (const EventExpr& c : expr.children) {
        if (evaluate(c, world)) return true;
      }
      return false;
  }
  return false;
}

Event extension(const EventExpr& expr, std::size_t atom_count, std::size_t world_cap) {
  if (atom_count > world_cap) {
    throw WorldCapError(atom_count, world_cap);
  }
  const std::size_t n_worlds = std::size_t{1} << atom_count;
  Event e(n_worlds);
  for (std::size_t w = 0; w < n_worlds; ++w) {
    if (evaluate(expr, w)) e.set(w);
  }
  return e;
}

namespace {

void format_rec(const EventExpr& expr, const AtomList& atoms, int parent_level, std::string& out) {
  // Levels: Or = 0, And = 1, unary = 2. Parenthesize when binding looser than context.
  switch (expr.kind) {
    case EventExpr::Kind::True:
      out += "TRUE";
      return;
    case EventExpr::Kind::False:
      out += "FALSE";
      return;
    case EventExpr::Kind::Atom:
      out += atoms.names[expr.atom];
      return;
    case EventExpr::Kind::Not:
      out += "~";
      format_rec(expr.children[0], atoms, 2, out);
      return;
    case EventExpr::Kind::And:
    case EventExpr::Kind::Or: {
      const int level = expr.kind == EventExpr::Kind::And ? 1 : 0;
      const bool need_parens = level < parent_level;
      if (need_parens) out += "(";
      const char* sep = expr.kind == EventExpr::Kind::And ? " & " : " | ";
      for (std::size_t i = 0; i < expr.children.size(); ++i) {
        if (i > 0) out += sep;
        format_rec(expr.children[i], atoms, level + 1, out);
      }
      if (need_parens) out += ")";
      return;
    }
  }
}

}  // namespace

std::string format_expr(const EventExpr& expr, const AtomList& atoms) {
  std::string out;
  format_rec(expr, atoms, 0, out);
  return out;
}

Event full_event(std::size_t atom_count) {
  Event e(std::size_t{1} << atom_count);
  e.set();
  return e;
}

Event empty_event(std::size_t atom_count) { return Event(std::size_t{1} << atom_count); }

std::vector<std::size_t> world_indices(const Event& e) {
  std::vector<std::size_t> out;
  out.reserve(e.count());
  for (std::size_t w = e.find_first(); w != Event::npos; w = e.find_next(w)) {
    out.push_back(w);
  }
  return out;
}

}  // namespace qacp
