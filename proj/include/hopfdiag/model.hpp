#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hopfdiag/diagram.hpp"
#include "hopfdiag/matrix.hpp"
#include "hopfdiag/theory.hpp"

namespace hopfdiag {

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite group as a multiplication table; identity and inverses inferred.
struct GroupTable {
  std::string name;
  int order = 1;
  std::vector<std::vector<int>> mul;
  int identity = 0;
  std::vector<int> inverse;

  static GroupTable trivial();
  static GroupTable z2();
  static GroupTable z3();
  static GroupTable s3();
  // File format: first line n, then n rows of n 0-based indices.
  static GroupTable from_text(const std::string& text, const std::string& name);

  bool abelian() const;
  void validate();
};

// Exact structure-constant model of the ribbon Hopf symbols. `failing`
// holds the names of presentation rules that do not hold as matrix
// identities; theory tags are granted when nothing from that theory fails.
struct HopfModel {
  std::string name;
  int dim = 0;
  std::map<GenId, SpMat> maps;
  std::set<std::string> failing;
  std::set<std::string> theory_tags;

  bool interprets(GenId g) const { return maps.count(g) != 0; }
  // True when every rule used by a proof holds in this model.
  bool compatible_with(const std::vector<std::string>& rules) const {
    for (const auto& r : rules)
      if (failing.count(r)) return false;
    return true;
  }
};

// Group algebra k[G]: cocommutative, triangular, unimodular; satisfies the
// full ribbon presentation with identity ribbon and trivial copairing.
HopfModel group_algebra(const GroupTable& g);

// Function algebra k^G: commutative; for nonabelian G the comultiplication
// compatibility of the ribbon fails while everything else holds.
HopfModel function_algebra(const GroupTable& g);

// trivial | z2 | z3 | s3 | fun-s3 | fun-z3
HopfModel builtin_model(const std::string& name);
std::vector<std::string> builtin_model_names();

enum class EvalMode { Serial, Parallel };

// Functorial evaluation of a canonical diagram: composition multiplies,
// the product is a Kronecker product, identities are identity matrices.
// Serial builds layer matrices and multiplies them (the reference path);
// Parallel pushes each domain basis column through the layers with the
// worker pool. Both produce identical exact matrices.
SpMat evaluate(const Diagram& d, const HopfModel& m, EvalMode mode = EvalMode::Parallel);
SpMat evaluate(const TermPtr& t, const HopfModel& m, EvalMode mode = EvalMode::Parallel);

struct RuleCheck {
  bool holds = false;
  SpMat::Entry witness;  // meaningful when !holds
};
RuleCheck check_rule_in_model(const RewriteRule& rule, const HopfModel& m,
                              EvalMode mode = EvalMode::Parallel);

// Oracle evidence for register_derived: validated when both rule sides
// evaluate equal in every listed model.
Evidence oracle_evidence(const RewriteRule& rule,
                         const std::vector<const HopfModel*>& models);

}  // namespace hopfdiag
