#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hopfdiag/diagram.hpp"
#include "hopfdiag/term.hpp"

namespace hopfdiag {

enum class TheoryId { HR, HBB, HBB_ALT, ALGBAR };

std::string theory_name(TheoryId id);
std::optional<TheoryId> theory_by_name(std::string_view name);

// Axiom: part of the presentation. Derived: provable from the axioms, with
// a proof script in the corpus or a literature pointer. Reconstructed:
// a reading of a table that is not available textually; usable in proofs
// only once it carries at least one oracle validation record.
enum class RuleStatus { Axiom, Derived, Reconstructed };

struct RewriteRule {
  std::string name;
  TermPtr lhs_term, rhs_term;
  Diagram lhs, rhs;
  RuleStatus status = RuleStatus::Axiom;
  std::string script;                     // corpus proof backing a derived rule
  std::string note;                       // free-form provenance note
  std::vector<std::string> validated_in;  // models where both sides were checked equal
  std::set<std::string> tags;
};

struct RuleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Theory {
  TheoryId id = TheoryId::HR;
  std::string name;
  std::set<GenId> gens;
  MacroTable macros;
  std::vector<RewriteRule> rules;
  std::vector<std::string> slots;  // named rules with no available statement

  // Bound to this object's macro table; rebuild after copying a Theory.
  Signature sig() const { return Signature{gens, &macros}; }
  const RewriteRule* find_rule(const std::string& rule_name) const;
};

// Loads a built-in theory, merging any extra rule files on top (later files
// win on name collision). Rule files use the line grammar
//   rule NAME [status k=v ...] : TERM = TERM
//   macro NAME : TERM
//   slot NAME
// with '#' comments.
Theory load_theory(TheoryId id, const std::vector<std::string>& extra_files = {});

// Parses rules from text into th (replacing same-named rules).
void merge_rules_text(Theory& th, const std::string& text, const std::string& origin);

// The inductive adjoint action morphism; arity (1+n, n).
TermPtr build_alpha(int n);

struct Evidence {
  enum class Kind { Script, Oracle } kind = Kind::Oracle;
  std::string detail;
  bool validated = false;  // set by the validator that produced the evidence
};

// Returns a copy of th with the rule added (status Derived/Reconstructed per
// the evidence kind). Throws RuleError if the evidence was not validated or
// the rule is ill-typed.
Theory register_derived(const Theory& th, RewriteRule rule, const Evidence& ev);

namespace detail {
// Embedded copies of the data/ tree; HOPFDIAG_DATA_DIR overrides per file.
const std::map<std::string, std::string_view>& embedded_data();
std::string load_data_file(const std::string& rel_path);
std::vector<std::string> list_data_files(const std::string& prefix,
                                         const std::string& suffix);
}  // namespace detail

}  // namespace hopfdiag
