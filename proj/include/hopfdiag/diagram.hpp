#pragma once

#include <string>
#include <vector>

#include "hopfdiag/rational.hpp"
#include "hopfdiag/term.hpp"

namespace hopfdiag {

// One slot of a layer: a passing wire or a generator box. Wiring is implied
// by adjacency; the outputs of layer k feed the inputs of layer k+1 in
// left-to-right order.
struct Cell {
  int gen = -1;  // -1 = wire, otherwise a GenId
  bool is_wire() const { return gen < 0; }
  GenId gen_id() const { return static_cast<GenId>(gen); }
  friend bool operator==(const Cell&, const Cell&) = default;
};

// Canonical layered string diagram. Every box sits in the earliest layer
// its dependencies allow; within a layer boxes are ordered by leftmost
// input column. Closed sub-diagrams (arity 0 -> 0 components) are hoisted
// to the left edge in a sorted order, so structurally congruent terms map
// to identical Diagram values and equality is a plain structural compare.
struct Diagram {
  int dom = 0;
  std::vector<std::vector<Cell>> layers;

  int cod() const;
  int box_count() const;
  std::vector<int> boundary_widths() const;  // layers.size()+1 cross-sections
  std::string key() const;
  friend bool operator==(const Diagram&, const Diagram&) = default;
};

// A diagram as a firing sequence: each step consumes `gen`'s inputs at
// `offset` in the running cross-section and splices in its outputs.
struct Step {
  GenId g;
  int offset = 0;
};
struct StepSeq {
  int dom = 0;
  std::vector<Step> steps;
};

StepSeq term_to_steps(const TermPtr& t);  // t macro-free and well-typed
Diagram canonicalize_steps(const StepSeq& seq);

// Typechecks against sig, expands macros, and builds the canonical form.
Diagram canonicalize(const TermPtr& t, const Signature& sig);

StepSeq diagram_to_steps(const Diagram& d);
TermPtr diagram_to_term(const Diagram& d);

namespace detail {

// Simulation of a step sequence with exact horizontal coordinates. Wires
// never cross, so each wire carries a rational position consistent across
// every cross-section it is alive in; box spans are position hulls and
// drive both the interchange-aware layering and convex-match staging.
struct SimWire {
  Rat pos;
  int producer = -1, prod_slot = 0;  // -1: diagram input
  int consumer = -1, cons_slot = 0;  // -1: diagram output
};
struct SimStep {
  GenId g;
  std::vector<int> in, out;
  Rat lo, hi;   // horizontal span (hull of touched positions)
  Rat xkey;     // leftmost input position, or insertion point for 0-input
  bool point = false;
};
struct Sim {
  int dom = 0;
  std::vector<SimStep> steps;
  std::vector<SimWire> wires;
  std::vector<int> dom_wires, cod_wires;
  // adj[i][j] != 0 means step i must fire before step j (data or placement).
  std::vector<std::vector<char>> adj;
};

Sim simulate(const StepSeq& seq);

// Replays a subset of a Sim's steps by wire identity, in any order that
// respects the dependency relation.
class Replayer {
 public:
  Replayer(const Sim& sim, std::vector<int> initial_wires);
  // Fires a step; returns false if its inputs are not a contiguous live run.
  bool fire(int step_index, Step* emitted = nullptr);
  const std::vector<int>& cross_section() const { return cs_; }
  int find_index(int wire) const;

 private:
  const Sim& sim_;
  std::vector<int> cs_;
};

}  // namespace detail

}  // namespace hopfdiag
