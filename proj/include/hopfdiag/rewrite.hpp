#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hopfdiag/diagram.hpp"
#include "hopfdiag/theory.hpp"

namespace hopfdiag {

enum class Dir { Fwd, Bwd };
inline const char* dir_name(Dir d) { return d == Dir::Fwd ? "fwd" : "bwd"; }

// An occurrence of a rule side in a host diagram. For patterns with boxes,
// (layer, offset) anchors the first matched box in canonical order and
// `boxes` lists the matched host boxes (firing-order indices) in the
// pattern's canonical box order. For box-free patterns (identity sides)
// `layer` is the boundary index below which the pattern sits and `offset`
// the wire offset within that cross-section.
struct Position {
  int layer = 0;
  int offset = 0;
  std::vector<int> boxes;
  bool insertion = false;

  friend bool operator==(const Position&, const Position&) = default;
};

struct StalePosition : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All convex occurrences of `pattern` in `host` up to interchange. Matching
// runs on the dependency graph of the canonical form, so layer placement
// artifacts cannot hide occurrences; each reported occurrence is isolatable
// (the matched region can be staged as a contiguous block).
std::vector<Position> find_matches(const Diagram& host, const Diagram& pattern);

// Replaces the matched occurrence of the rule side selected by `dir` with
// the opposite side and re-canonicalizes. Throws StalePosition if pos is
// not a current match.
Diagram apply_rule(const Diagram& host, const RewriteRule& rule, Dir dir,
                   const Position& pos);

struct ProofStep {
  std::string rule;
  Dir dir = Dir::Fwd;
  int layer = 0;
  int offset = 0;
};

struct ProofScript {
  std::string theory;
  TermPtr start, goal;
  std::vector<ProofStep> steps;
};

// File format: 'theory:'/'start:'/'goal:' headers then one step per line,
// "RULE fwd|bwd LAYER:OFFSET". '#' starts a comment. A position written as
// '?' is a wildcard: the checker rejects it, but resolve_script can
// elaborate it to a concrete anchor.
ProofScript parse_proof_script(const std::string& text, const MacroTable* macros);
std::string format_proof_script(const ProofScript& s);

// Elaborates wildcard positions by depth-first search over the available
// matches of each step; returns the first fully anchored script that
// reaches the goal, in deterministic match order.
std::optional<ProofScript> resolve_script(const ProofScript& s, const Theory& th);

struct CheckResult {
  bool accepted = false;
  int failed_step = -1;  // 0-based; -1 when accepted or malformed
  std::string reason;
  Diagram state;  // diagram at failure (or final state when accepted)
  std::vector<std::string> rules_used;
};

CheckResult check_proof(const ProofScript& script, const Theory& th);

struct SearchBudget {
  int max_steps = 6;       // per side
  int max_frontier = 512;  // states kept per side and depth
  int max_diagram = 40;    // box-count cap on explored states
};

struct SearchStats {
  int expanded = 0;
  int depth_a = 0, depth_b = 0;
};

// Bidirectional breadth-first search for a rewrite path from a to b over
// th's rules. Deterministic for a fixed budget and rule order; a returned
// script always replays through check_proof. Frontier expansion uses the
// parallel workers when available but matches the serial result exactly.
std::optional<ProofScript> search_equal(const TermPtr& a, const TermPtr& b,
                                        const Theory& th, const SearchBudget& budget,
                                        SearchStats* stats = nullptr,
                                        bool parallel = true);

// Instance of the intertwining schema for F : n -> m, as a session rule
//   F . alpha[n] = alpha[m] . (id[1] * F)
// with Derived status (theorem-backed for every morphism of the theory).
RewriteRule q14_tactic(const TermPtr& f, int n, const Theory& th);

// Script evidence for register_derived: validated when the checker accepts
// the script and its endpoints are exactly the rule's two sides.
Evidence script_evidence(const ProofScript& script, const Theory& th,
                         const RewriteRule& rule);

}  // namespace hopfdiag
