#pragma once

#include <optional>

#include "hopfdiag/model.hpp"
#include "hopfdiag/report.hpp"
#include "hopfdiag/rewrite.hpp"

namespace hopfdiag {

// Every presentation rule checked as an exact matrix identity in each
// listed group-algebra model.
Report axioms_suite(const std::vector<std::string>& models = {"trivial", "z2", "z3",
                                                              "s3"});

// The function-algebra probe: every rule holds except the ribbon
// comultiplication compatibility, which fails with an exact witness.
Report independence_suite(const std::string& model = "fun-s3");

struct GammaOptions {
  SearchBudget budget{10, 64, 32};
  std::vector<std::string> oracle_models{"z3", "s3"};
  bool allow_search = true;
};

// Well-definedness of the translation: per source axiom, the strongest of
// rule coincidence, corpus script, bounded search, and model equality.
Report gamma_suite(const GammaOptions& opts = {});

struct AltOptions {
  SearchBudget budget{12, 64, 32};
};

// The alternative presentation: its two new axioms hold in every shipped
// model, the theory loads and type-checks, and the proof corpus
// re-validates under it.
Report alt_axioms_suite(const AltOptions& opts = {});

// Adjoint action: arities of the inductive family, intertwining-schema
// instances checked exactly, and the copairing instance against the
// invariance axiom.
Report adjoint_suite();

Report run_suite(const std::string& name);

// The shipped proof corpus (path stem -> parsed script).
std::vector<std::pair<std::string, ProofScript>> load_corpus();

// Cached built-in theories (loaded once per process).
const Theory& suite_theory(TheoryId id);

// Cached built-in models.
const HopfModel& suite_model(const std::string& name);

}  // namespace hopfdiag
