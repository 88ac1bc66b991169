#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qacp {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Event-expression syntax error; `position` is a 0-based offset into the text.
struct ParseError : Error {
  std::size_t position;
  ParseError(const std::string& what, std::size_t pos) : Error(what), position(pos) {}
};

/// An expression referenced an atom that is not declared in the instance.
struct UndeclaredAtomError : Error {
  std::string atom;
  explicit UndeclaredAtomError(const std::string& name)
      : Error("undeclared atom: " + name), atom(name) {}
};

/// World enumeration would exceed the configured cap.
struct WorldCapError : Error {
  std::size_t atom_count;
  std::size_t cap;
  WorldCapError(std::size_t m, std::size_t c)
      : Error("atom count " + std::to_string(m) + " exceeds world cap " + std::to_string(c)),
        atom_count(m),
        cap(c) {}
};

/// A conditional event was given an impossible antecedent.
struct EmptyAntecedentError : Error {
  explicit EmptyAntecedentError(const std::string& what) : Error(what) {}
};

/// Invalid or conflicting probability bounds.
struct BoundsError : Error {
  explicit BoundsError(const std::string& what) : Error(what) {}
};

/// Internal structural invariant violated (indicates a caller or library bug).
struct StructureError : Error {
  explicit StructureError(const std::string& what) : Error(what) {}
};

/// A linear system that must be solvable turned out infeasible.
struct InfeasibleSystemError : Error {
  explicit InfeasibleSystemError(const std::string& what) : Error(what) {}
};

/// The assessment is not g-coherent; `failing` holds the indices (into the
/// normalized family) of a subfamily whose system is infeasible.
struct NotGCoherentError : Error {
  std::vector<int> failing;
  NotGCoherentError(const std::string& what, std::vector<int> subfamily)
      : Error(what), failing(std::move(subfamily)) {}
};

/// A user-supplied precise vector or stage witness failed validation.
struct OverrideError : Error {
  std::vector<int> failing;
  explicit OverrideError(const std::string& what, std::vector<int> subfamily = {})
      : Error(what), failing(std::move(subfamily)) {}
};

/// The brute-force coherence oracle was asked to sweep too many subsets.
struct OracleCapError : Error {
  explicit OracleCapError(const std::string& what) : Error(what) {}
};

/// Malformed input document (assessment file, result file, CLI argument).
struct InputError : Error {
  explicit InputError(const std::string& what) : Error(what) {}
};

}  // namespace qacp
