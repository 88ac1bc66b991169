#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qacp/construction.hpp"
#include "qacp/verify.hpp"

namespace qacp {

/// Parsed assessment file: atom declarations, assessed entries, and options.
struct AssessmentDocument {
  AtomList atoms;

  struct Entry {
    std::string consequent_text;
    std::string antecedent_text;
    Rational lower;
    Rational upper;
  };
  std::vector<Entry> entries;

  std::size_t world_cap = kDefaultWorldCap;
  std::size_t oracle_cap = 12;
  std::optional<std::vector<Rational>> precise_override;
  StageWitnessOverrides solution_overrides;
};

/// Line-oriented format:
///   # comment
///   atoms A B C D
///   option world_cap 20
///   option oracle_cap 12
///   assess "<expr>" given "<expr>" in [<rat>, <rat>]
///   assess "<expr>" given "<expr>" = <rat>
///   precise <rat> <rat> ...
///   solution <stage> <rat> <rat> ...
/// Throws InputError with a line reference.
AssessmentDocument parse_assessment_text(std::string_view text);
AssessmentDocument parse_assessment_file(const std::string& path);

/// Extends the entry expressions and normalizes the family.
Assessment document_to_assessment(const AssessmentDocument& doc);

nlohmann::json event_to_json(const LabeledEvent& e);
nlohmann::json bounds_to_json(const Rational& lower, const Rational& upper);

/// The synthesize result document. Top-level keys: atoms, family, assessment,
/// corrected, precise, stages, class_X, table, report (plus trace with
/// --trace).
nlohmann::json result_document(const Assessment& input, const CorrectionResult& correction,
                               const Assessment& precise, const ConditionalProbabilityTable& table,
                               const VerificationReport& report,
                               const std::vector<LpTraceEntry>* trace = nullptr);

nlohmann::json report_to_json(const VerificationReport& report);

/// Rebuilds the pieces cmd_verify needs from a stored result document. The
/// family is re-extended from its expression texts; stored world lists must
/// match. Stored masses and class members are taken verbatim so that the
/// checks exercise the stored numbers. Throws InputError on schema problems.
struct StoredResult {
  Assessment assessment;
  std::vector<Rational> precise;
  ConditionalProbabilityTable table;
};
StoredResult result_from_json(const nlohmann::json& j);

// Command entry points; each returns the process exit code
// (0 = success, 1 = negative verdict or failed validation, 2 = input error).
int cli_check(const std::string& path, std::ostream& out, std::ostream& err);
int cli_correct(const std::string& path, std::ostream& out, std::ostream& err);
int cli_bounds(const std::string& path, const std::string& event_text,
               const std::string& given_text, std::ostream& out, std::ostream& err);
int cli_synthesize(const std::string& path, const std::optional<std::string>& precise_csv,
                   bool trace, std::ostream& out, std::ostream& err);
int cli_verify(const std::string& result_path, std::size_t oracle_cap, std::ostream& out,
               std::ostream& err);

}  // namespace qacp
