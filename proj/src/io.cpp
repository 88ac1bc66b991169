#include "qacp/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace qacp {

namespace {

struct Token {
  std::string text;
  bool quoted = false;
};

// Splits a line into bare words, quoted strings, and single punctuation
// tokens for [ ] , = so the assess grammar can be matched token-wise.
std::vector<Token> tokenize_line(std::string_view line, int line_no) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') break;
    if (c == '"') {
      const std::size_t close = line.find('"', i + 1);
      if (close == std::string_view::npos) {
        throw InputError("line " + std::to_string(line_no) + ": unterminated quote");
      }
      tokens.push_back(Token{std::string(line.substr(i + 1, close - i - 1)), true});
      i = close + 1;
      continue;
    }
    if (c == '[' || c == ']' || c == ',' || c == '=') {
      tokens.push_back(Token{std::string(1, c), false});
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) &&
           line[j] != '[' && line[j] != ']' && line[j] != ',' && line[j] != '"' &&
           line[j] != '=' && line[j] != '#') {
      ++j;
    }
    tokens.push_back(Token{std::string(line.substr(i, j - i)), false});
    i = j;
  }
  return tokens;
}

Rational require_rational(const Token& t, int line_no) {
  const auto r = parse_rational(t.text);
  if (!r) {
    throw InputError("line " + std::to_string(line_no) + ": malformed rational '" + t.text + "'");
  }
  return *r;
}

}  // namespace

AssessmentDocument parse_assessment_text(std::string_view text) {
  AssessmentDocument doc;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool atoms_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokenize_line(line, line_no);
    if (tokens.empty()) continue;
    const std::string& head = tokens[0].text;
    const auto fail = [&](const std::string& msg) -> void {
      throw InputError("line " + std::to_string(line_no) + ": " + msg);
    };

    if (head == "atoms" && !tokens[0].quoted) {
      if (atoms_seen) fail("duplicate atoms declaration");
      if (tokens.size() < 2) fail("atoms line declares no atoms");
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (!valid_atom_name(tokens[i].text)) fail("invalid atom name '" + tokens[i].text + "'");
        if (doc.atoms.index_of(tokens[i].text) >= 0) {
          fail("duplicate atom '" + tokens[i].text + "'");
        }
        doc.atoms.names.push_back(tokens[i].text);
      }
      atoms_seen = true;
    } else if (head == "option" && !tokens[0].quoted) {
      if (tokens.size() != 3) fail("option lines take a name and a value");
      const auto value = parse_rational(tokens[2].text);
      if (!value || denominator(*value) != 1 || *value < 1) {
        fail("option value must be a positive integer");
      }
      const auto n = static_cast<std::size_t>(numerator(*value).convert_to<unsigned long>());
      if (tokens[1].text == "world_cap") {
        doc.world_cap = n;
      } else if (tokens[1].text == "oracle_cap") {
        doc.oracle_cap = n;
      } else {
        fail("unknown option '" + tokens[1].text + "'");
      }
    } else if (head == "assess" && !tokens[0].quoted) {
      // assess "<E>" given "<H>" in [a, b]   |   assess "<E>" given "<H>" = p
      if (tokens.size() < 5 || !tokens[1].quoted || tokens[2].text != "given" ||
          !tokens[3].quoted) {
        fail("expected: assess \"<expr>\" given \"<expr>\" in [a, b] (or = p)");
      }
      AssessmentDocument::Entry e;
      e.consequent_text = tokens[1].text;
      e.antecedent_text = tokens[3].text;
      if (tokens[4].text == "=" && tokens.size() == 6) {
        e.lower = e.upper = require_rational(tokens[5], line_no);
      } else if (tokens[4].text == "in" && tokens.size() == 10 && tokens[5].text == "[" &&
                 tokens[7].text == "," && tokens[9].text == "]") {
        e.lower = require_rational(tokens[6], line_no);
        e.upper = require_rational(tokens[8], line_no);
      } else {
        fail("expected: assess \"<expr>\" given \"<expr>\" in [a, b] (or = p)");
      }
      doc.entries.push_back(std::move(e));
    } else if (head == "precise" && !tokens[0].quoted) {
      if (doc.precise_override) fail("duplicate precise line");
      std::vector<Rational> values;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        values.push_back(require_rational(tokens[i], line_no));
      }
      if (values.empty()) fail("precise line lists no values");
      doc.precise_override = std::move(values);
    } else if (head == "solution" && !tokens[0].quoted) {
      if (tokens.size() < 3) fail("solution lines take a stage index and values");
      const auto idx = parse_rational(tokens[1].text);
      if (!idx || denominator(*idx) != 1 || *idx < 0) fail("bad stage index");
      const int stage = numerator(*idx).convert_to<int>();
      if (doc.solution_overrides.count(stage) != 0) {
        fail("duplicate solution line for stage " + std::to_string(stage));
      }
      std::vector<Rational> values;
      for (std::size_t i = 2; i < tokens.size(); ++i) {
        values.push_back(require_rational(tokens[i], line_no));
      }
      doc.solution_overrides.emplace(stage, std::move(values));
    } else {
      fail("unknown directive '" + head + "'");
    }
  }
  if (!atoms_seen) throw InputError("missing atoms declaration");
  return doc;
}

AssessmentDocument parse_assessment_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_assessment_text(buffer.str());
}

Assessment document_to_assessment(const AssessmentDocument& doc) {
  std::vector<AssessmentEntry> entries;
  entries.reserve(doc.entries.size());
  for (const auto& e : doc.entries) {
    const EventExpr ce = parse_event(e.consequent_text, doc.atoms);
    const EventExpr ae = parse_event(e.antecedent_text, doc.atoms);
    AssessmentEntry entry{
        make_conditional(extension(ce, doc.atoms.size(), doc.world_cap),
                         extension(ae, doc.atoms.size(), doc.world_cap), e.consequent_text,
                         e.antecedent_text),
        e.lower, e.upper};
    entries.push_back(std::move(entry));
  }
  return normalize_assessment(doc.atoms, std::move(entries));
}

nlohmann::json event_to_json(const LabeledEvent& e) {
  nlohmann::json j;
  j["text"] = e.text;
  j["worlds"] = world_indices(e.worlds);
  return j;
}

nlohmann::json bounds_to_json(const Rational& lower, const Rational& upper) {
  return nlohmann::json::array({rational_to_string(lower), rational_to_string(upper)});
}

namespace {

nlohmann::json rationals_to_json(const std::vector<Rational>& values) {
  nlohmann::json j = nlohmann::json::array();
  for (const Rational& v : values) j.push_back(rational_to_string(v));
  return j;
}

nlohmann::json labeled_events_to_json(const std::vector<LabeledEvent>& events) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& e : events) j.push_back(event_to_json(e));
  return j;
}

nlohmann::json check_to_json(const CheckResult& c) {
  nlohmann::json j;
  j["pass"] = c.pass;
  j["detail"] = c.detail;
  return j;
}

Rational json_rational(const nlohmann::json& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where + ": rationals are stored as strings");
  const auto r = parse_rational(j.get<std::string>());
  if (!r) throw InputError(where + ": malformed rational '" + j.get<std::string>() + "'");
  return *r;
}

std::vector<Rational> json_rationals(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  std::vector<Rational> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(json_rational(v, where));
  return out;
}

Event json_event_worlds(const nlohmann::json& j, std::size_t n_worlds, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array of world indices");
  Event e(n_worlds);
  for (const auto& w : j) {
    if (!w.is_number_unsigned() || w.get<std::size_t>() >= n_worlds) {
      throw InputError(where + ": world index out of range");
    }
    e.set(w.get<std::size_t>());
  }
  return e;
}

std::vector<LabeledEvent> json_labeled_events(const nlohmann::json& j, std::size_t n_worlds,
                                              const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array of events");
  std::vector<LabeledEvent> out;
  for (const auto& je : j) {
    out.push_back(LabeledEvent{json_event_worlds(je.at("worlds"), n_worlds, where),
                               je.at("text").get<std::string>()});
  }
  return out;
}

}  // namespace

nlohmann::json report_to_json(const VerificationReport& report) {
  nlohmann::json j;
  j["axiom_i"] = check_to_json(report.axiom_i);
  j["axiom_ii"] = check_to_json(report.axiom_ii);
  j["axiom_iii"] = check_to_json(report.axiom_iii);
  j["quasi_additive"] = check_to_json(report.quasi_additive);
  j["coherent"] = check_to_json(report.coherent);
  j["consistent"] = check_to_json(report.consistent);
  j["cardinality_bound"] = check_to_json(report.cardinality_bound);
  j["all_pass"] = report.all_pass();
  return j;
}

nlohmann::json result_document(const Assessment& input, const CorrectionResult& correction,
                               const Assessment& precise, const ConditionalProbabilityTable& table,
                               const VerificationReport& report,
                               const std::vector<LpTraceEntry>* trace) {
  nlohmann::json j;
  j["atoms"] = input.atoms.names;

  nlohmann::json family = nlohmann::json::array();
  for (const auto& ce : input.family) {
    nlohmann::json entry;
    entry["consequent"] = event_to_json(LabeledEvent{ce.consequent, ce.consequent_text});
    entry["antecedent"] = event_to_json(LabeledEvent{ce.antecedent, ce.antecedent_text});
    family.push_back(std::move(entry));
  }
  j["family"] = std::move(family);

  nlohmann::json assessment = nlohmann::json::array();
  for (const auto& [lo, hi] : input.bounds) assessment.push_back(bounds_to_json(lo, hi));
  j["assessment"] = std::move(assessment);

  nlohmann::json corrected;
  nlohmann::json intervals = nlohmann::json::array();
  for (const auto& [lo, hi] : correction.corrected.bounds) {
    intervals.push_back(bounds_to_json(lo, hi));
  }
  nlohmann::json raw = nlohmann::json::array();
  for (const Bounds& b : correction.raw) raw.push_back(bounds_to_json(b.low, b.high));
  corrected["intervals"] = std::move(intervals);
  corrected["raw"] = std::move(raw);
  j["corrected"] = std::move(corrected);

  j["precise"] = rationals_to_json(precise.precise_values());

  nlohmann::json stages = nlohmann::json::array();
  for (std::size_t s = 0; s < table.stages.size(); ++s) {
    const Stage& st = table.stages[s];
    nlohmann::json js;
    js["index"] = st.index;
    js["members"] = st.origin;
    js["precise"] = rationals_to_json(st.precise);
    nlohmann::json cons = nlohmann::json::array();
    for (const auto& c : st.constituent_set.constituents) {
      nlohmann::json jc;
      jc["signature"] = c.signature_string();
      jc["rank"] = c.ternary_rank();
      jc["worlds"] = world_indices(c.worlds);
      cons.push_back(std::move(jc));
    }
    js["constituents"] = std::move(cons);
    js["solution"] = rationals_to_json(st.solution);
    js["antecedents_zero"] = labeled_events_to_json(st.antecedents_zero);
    js["antecedents_positive"] = labeled_events_to_json(st.antecedents_positive);
    js["class"] = labeled_events_to_json(st.conditioning_class);
    js["refined_masses"] = rationals_to_json(table.refined[s]);
    stages.push_back(std::move(js));
  }
  j["stages"] = std::move(stages);

  nlohmann::json class_x = nlohmann::json::array();
  for (const auto& member : table.class_x) {
    nlohmann::json jm;
    jm["event"] = event_to_json(member.event);
    jm["owner"] = member.owner;
    class_x.push_back(std::move(jm));
  }
  j["class_X"] = std::move(class_x);

  nlohmann::json values = nlohmann::json::array();
  for (const auto& ce : input.family) {
    const auto v = query(table, ce.consequent, ce.antecedent);
    values.push_back(v ? rational_to_string(*v) : "undefined");
  }
  j["table"] = std::move(values);

  j["report"] = report_to_json(report);

  if (trace != nullptr) {
    nlohmann::json jt = nlohmann::json::array();
    for (const auto& e : *trace) {
      nlohmann::json je;
      je["context"] = e.context;
      je["vars"] = e.vars;
      je["constraints"] = e.constraints;
      je["status"] = e.status;
      if (!e.value.empty()) je["value"] = e.value;
      je["pivots"] = e.pivots;
      jt.push_back(std::move(je));
    }
    j["trace"] = std::move(jt);
  }
  return j;
}

StoredResult result_from_json(const nlohmann::json& j) {
  for (const char* key :
       {"atoms", "family", "assessment", "precise", "stages", "class_X", "table"}) {
    if (!j.contains(key)) throw InputError(std::string("result document missing key '") + key + "'");
  }
  StoredResult out;
  for (const auto& name : j["atoms"]) {
    if (!name.is_string() || !valid_atom_name(name.get<std::string>())) {
      throw InputError("bad atom list in result document");
    }
    out.assessment.atoms.names.push_back(name.get<std::string>());
  }
  const std::size_t n_worlds = std::size_t{1} << out.assessment.atoms.size();

  for (std::size_t i = 0; i < j["family"].size(); ++i) {
    const auto& entry = j["family"][i];
    const std::string etext = entry.at("consequent").at("text").get<std::string>();
    const std::string htext = entry.at("antecedent").at("text").get<std::string>();
    const Event e = extension(parse_event(etext, out.assessment.atoms),
                              out.assessment.atoms.size(), out.assessment.atoms.size());
    const Event h = extension(parse_event(htext, out.assessment.atoms),
                              out.assessment.atoms.size(), out.assessment.atoms.size());
    const Event stored_e =
        json_event_worlds(entry.at("consequent").at("worlds"), n_worlds, "family consequent");
    const Event stored_h =
        json_event_worlds(entry.at("antecedent").at("worlds"), n_worlds, "family antecedent");
    if (stored_e != e || stored_h != h) {
      throw InputError("stored worlds of family entry " + std::to_string(i) +
                       " do not match its expressions");
    }
    out.assessment.family.push_back(make_conditional(e, h, etext, htext));
  }
  for (const auto& b : j["assessment"]) {
    if (!b.is_array() || b.size() != 2) throw InputError("bad assessment interval");
    out.assessment.bounds.emplace_back(json_rational(b[0], "assessment"),
                                       json_rational(b[1], "assessment"));
  }
  if (out.assessment.bounds.size() != out.assessment.family.size()) {
    throw InputError("family/assessment length mismatch");
  }
  out.precise = json_rationals(j["precise"], "precise");
  if (out.precise.size() != out.assessment.family.size()) {
    throw InputError("family/precise length mismatch");
  }

  out.table.base = build_constituents(out.assessment.family);
  if (j["stages"].empty()) throw InputError("result document has no stages");
  for (const auto& js : j["stages"]) {
    Stage st;
    st.index = static_cast<int>(out.table.stages.size());
    for (const auto& m : js.at("members")) {
      const int idx = m.get<int>();
      if (idx < 0 || static_cast<std::size_t>(idx) >= out.assessment.family.size()) {
        throw InputError("stage member index out of range");
      }
      st.origin.push_back(idx);
      st.family.push_back(out.assessment.family[idx]);
    }
    if (st.family.empty()) throw InputError("stage with no members");
    st.precise = json_rationals(js.at("precise"), "stage precise");
    if (st.precise.size() != st.family.size()) throw InputError("stage precise length mismatch");
    st.constituent_set = build_constituents(st.family);
    st.solution = json_rationals(js.at("solution"), "stage solution");
    if (st.solution.size() != st.constituent_set.constituents.size()) {
      throw InputError("stage solution length mismatch");
    }
    st.antecedents_zero = json_labeled_events(js.at("antecedents_zero"), n_worlds, "stage");
    st.antecedents_positive =
        json_labeled_events(js.at("antecedents_positive"), n_worlds, "stage");
    st.conditioning_class = json_labeled_events(js.at("class"), n_worlds, "stage");
    for (std::size_t j2 = 0; j2 < st.family.size(); ++j2) {
      bool zero = false;
      for (const auto& le : st.antecedents_zero) {
        if (le.worlds == st.family[j2].antecedent) {
          zero = true;
          break;
        }
      }
      (zero ? st.family_zero : st.family_positive).push_back(static_cast<int>(j2));
    }
    MassFunction refined = json_rationals(js.at("refined_masses"), "refined_masses");
    if (refined.size() != out.table.base.constituents.size()) {
      throw InputError("refined mass vector length mismatch");
    }
    out.table.refined.push_back(std::move(refined));
    out.table.stages.push_back(std::move(st));
  }

  for (const auto& jm : j["class_X"]) {
    const int owner = jm.at("owner").get<int>();
    if (owner < 0 || static_cast<std::size_t>(owner) >= out.table.stages.size()) {
      throw InputError("class_X owner out of range");
    }
    LabeledEvent le{json_event_worlds(jm.at("event").at("worlds"), n_worlds, "class_X"),
                    jm.at("event").at("text").get<std::string>()};
    out.table.class_x.push_back(ConditionalProbabilityTable::ClassMember{std::move(le), owner});
  }
  if (out.table.class_x.empty()) throw InputError("empty conditioning class");
  return out;
}

namespace {

int input_error(std::ostream& err, const std::string& what) {
  err << "error: " << what << "\n";
  return 2;
}

}  // namespace

int cli_check(const std::string& path, std::ostream& out, std::ostream& err) {
  try {
    const Assessment a = document_to_assessment(parse_assessment_file(path));
    const GCoherenceVerdict verdict = check_g_coherence(a);
    nlohmann::json j;
    if (verdict.g_coherent) {
      out << "g-coherent\n";
      nlohmann::json levels = nlohmann::json::array();
      for (const auto& level : verdict.levels) {
        nlohmann::json jl;
        jl["members"] = level.members;
        jl["constituents"] = level.signatures;
        jl["witness"] = rationals_to_json(level.witness);
        levels.push_back(std::move(jl));
      }
      j["verdict"] = "g-coherent";
      j["levels"] = std::move(levels);
      out << j.dump(2) << "\n";
      return 0;
    }
    out << "not g-coherent\n";
    j["verdict"] = "not g-coherent";
    j["failing_subfamily"] = verdict.failing_subfamily;
    out << j.dump(2) << "\n";
    return 1;
  } catch (const Error& e) {
    return input_error(err, e.what());
  }
}

int cli_correct(const std::string& path, std::ostream& out, std::ostream& err) {
  try {
    const Assessment a = document_to_assessment(parse_assessment_file(path));
    const CorrectionResult corr = correct_assessment(a);
    nlohmann::json j;
    j["atoms"] = a.atoms.names;
    nlohmann::json family = nlohmann::json::array();
    for (const auto& ce : a.family) {
      nlohmann::json entry;
      entry["consequent"] = event_to_json(LabeledEvent{ce.consequent, ce.consequent_text});
      entry["antecedent"] = event_to_json(LabeledEvent{ce.antecedent, ce.antecedent_text});
      family.push_back(std::move(entry));
    }
    j["family"] = std::move(family);
    nlohmann::json assessment = nlohmann::json::array();
    for (const auto& [lo, hi] : a.bounds) assessment.push_back(bounds_to_json(lo, hi));
    j["assessment"] = std::move(assessment);
    nlohmann::json intervals = nlohmann::json::array();
    for (const auto& [lo, hi] : corr.corrected.bounds) intervals.push_back(bounds_to_json(lo, hi));
    nlohmann::json raw = nlohmann::json::array();
    for (const Bounds& b : corr.raw) raw.push_back(bounds_to_json(b.low, b.high));
    j["corrected"] = {{"intervals", std::move(intervals)}, {"raw", std::move(raw)}};
    out << j.dump(2) << "\n";
    return 0;
  } catch (const NotGCoherentError& e) {
    err << "not g-coherent: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    return input_error(err, e.what());
  }
}

int cli_bounds(const std::string& path, const std::string& event_text,
               const std::string& given_text, std::ostream& out, std::ostream& err) {
  try {
    const AssessmentDocument doc = parse_assessment_file(path);
    const Assessment a = document_to_assessment(doc);
    const ConditionalEvent target = make_conditional(
        extension(parse_event(event_text, doc.atoms), doc.atoms.size(), doc.world_cap),
        extension(parse_event(given_text, doc.atoms), doc.atoms.size(), doc.world_cap),
        event_text, given_text);
    const Bounds b = propagate_bounds(a, target);
    out << "[" << rational_to_string(b.low) << ", " << rational_to_string(b.high) << "]\n";
    return 0;
  } catch (const NotGCoherentError& e) {
    err << "not g-coherent: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    return input_error(err, e.what());
  }
}

namespace {

std::vector<Rational> parse_precise_csv(const std::string& csv) {
  std::vector<Rational> values;
  std::string token;
  std::istringstream in(csv);
  while (std::getline(in, token, ',')) {
    std::string trimmed;
    for (char c : token) {
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    }
    if (trimmed.empty()) continue;
    const auto r = parse_rational(trimmed);
    if (!r) throw InputError("malformed rational '" + trimmed + "' in --precise");
    values.push_back(*r);
  }
  if (values.empty()) throw InputError("--precise lists no values");
  return values;
}

}  // namespace

int cli_synthesize(const std::string& path, const std::optional<std::string>& precise_csv,
                   bool trace, std::ostream& out, std::ostream& err) {
  std::vector<LpTraceEntry> trace_entries;
  try {
    const AssessmentDocument doc = parse_assessment_file(path);
    const Assessment a = document_to_assessment(doc);
    if (a.family.empty()) throw InputError("nothing to synthesize: no assess lines");
    std::optional<std::vector<Rational>> override_values = doc.precise_override;
    if (precise_csv) override_values = parse_precise_csv(*precise_csv);

    LpTraceScope scope(trace ? &trace_entries : nullptr);
    lp_trace_context("correction");
    const CorrectionResult corr = correct_assessment(a);
    lp_trace_context("precise selection");
    const Assessment precise = select_precise(a, override_values);
    lp_trace_context("zero-layer stages");
    const ConditionalProbabilityTable table =
        synthesize(precise.family, precise.precise_values(),
                   doc.solution_overrides.empty() ? nullptr : &doc.solution_overrides);
    lp_trace_context("verification");
    VerifyOptions options;
    options.oracle_cap = doc.oracle_cap;
    const VerificationReport report = verify_table(table, a, options);
    const nlohmann::json j = result_document(a, corr, precise, table, report,
                                             trace ? &trace_entries : nullptr);
    out << j.dump(2) << "\n";
    return report.all_pass() ? 0 : 1;
  } catch (const NotGCoherentError& e) {
    err << "not g-coherent: " << e.what() << "\n";
    return 1;
  } catch (const OverrideError& e) {
    err << "invalid override: " << e.what();
    if (!e.failing.empty()) {
      err << " (failing subset:";
      for (int i : e.failing) err << " " << i;
      err << ")";
    }
    err << "\n";
    return 1;
  } catch (const Error& e) {
    return input_error(err, e.what());
  }
}

int cli_verify(const std::string& result_path, std::size_t oracle_cap, std::ostream& out,
               std::ostream& err) {
  try {
    std::ifstream in(result_path);
    if (!in) throw InputError("cannot open '" + result_path + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("bad JSON: ") + e.what());
    }
    const StoredResult stored = result_from_json(j);
    VerifyOptions options;
    options.oracle_cap = oracle_cap;
    const VerificationReport report = verify_table(stored.table, stored.assessment, options);
    out << report_to_json(report).dump(2) << "\n";
    return report.all_pass() ? 0 : 1;
  } catch (const Error& e) {
    return input_error(err, e.what());
  }
}

}  // namespace qacp
