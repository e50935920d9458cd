#include "hopfdiag/diagram.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <sstream>
#include <stdexcept>

namespace hopfdiag {

int Diagram::cod() const {
  int w = dom;
  for (const auto& layer : layers)
    for (const Cell& c : layer)
      if (!c.is_wire()) w += gen_info(c.gen_id()).cod - gen_info(c.gen_id()).dom;
  return w;
}

int Diagram::box_count() const {
  int n = 0;
  for (const auto& layer : layers)
    for (const Cell& c : layer)
      if (!c.is_wire()) ++n;
  return n;
}

std::vector<int> Diagram::boundary_widths() const {
  std::vector<int> w{dom};
  int cur = dom;
  for (const auto& layer : layers) {
    for (const Cell& c : layer)
      if (!c.is_wire()) cur += gen_info(c.gen_id()).cod - gen_info(c.gen_id()).dom;
    w.push_back(cur);
  }
  return w;
}

std::string Diagram::key() const {
  std::ostringstream os;
  os << 'd' << dom;
  for (const auto& layer : layers) {
    os << ';';
    for (const Cell& c : layer) os << (c.is_wire() ? -1 : c.gen) << ',';
  }
  return os.str();
}

namespace {

Arity raw_arity(const TermPtr& t) {
  switch (t->kind()) {
    case Term::Kind::Id:
      return {t->id_width(), t->id_width()};
    case Term::Kind::Gen: {
      const GenInfo& gi = gen_info(t->gen_id());
      return {gi.dom, gi.cod};
    }
    case Term::Kind::Comp: {
      Arity f = raw_arity(t->after()), g = raw_arity(t->before());
      return {g.dom, f.cod};
    }
    case Term::Kind::Tensor: {
      Arity l = raw_arity(t->left()), r = raw_arity(t->right());
      return {l.dom + r.dom, l.cod + r.cod};
    }
    case Term::Kind::Macro:
      throw std::logic_error("macro node in a macro-free context");
  }
  throw std::logic_error("corrupt term");
}

void collect_steps(const TermPtr& t, int shift, std::vector<Step>& out) {
  switch (t->kind()) {
    case Term::Kind::Id:
      return;
    case Term::Kind::Gen:
      out.push_back({t->gen_id(), shift});
      return;
    case Term::Kind::Comp:
      collect_steps(t->before(), shift, out);
      collect_steps(t->after(), shift, out);
      return;
    case Term::Kind::Tensor:
      collect_steps(t->left(), shift, out);
      collect_steps(t->right(), shift + raw_arity(t->left()).cod, out);
      return;
    case Term::Kind::Macro:
      throw std::logic_error("macro node in a macro-free context");
  }
}

}  // namespace

StepSeq term_to_steps(const TermPtr& t) {
  StepSeq seq;
  seq.dom = raw_arity(t).dom;
  collect_steps(t, 0, seq.steps);
  return seq;
}

namespace detail {

namespace {

Rat half(const Rat& a, const Rat& b) { return (a + b) * Rat(1, 2); }

}  // namespace

Sim simulate(const StepSeq& seq) {
  Sim sim;
  sim.dom = seq.dom;
  std::vector<int> cs;
  bool have_frontier = seq.dom > 0;
  Rat fr_lo(1), fr_hi(seq.dom);
  auto rat_less = [](const Rat& a, const Rat& b) { return a.less(b); };
  std::set<Rat, decltype(rat_less)> used(rat_less);
  for (int i = 0; i < seq.dom; ++i) {
    sim.wires.push_back({Rat(i + 1), -1, i, -1, 0});
    cs.push_back(i);
    sim.dom_wires.push_back(i);
    used.insert(Rat(i + 1));
  }

  // Coordinates created inside a gap must not coincide with any coordinate
  // ever used: a revived dead position would couple unrelated steps (or
  // hide a genuine conflict) in the placement analysis.
  auto freshen = [&](Rat x, const Rat& toward) {
    while (used.count(x)) x = half(x, toward);
    used.insert(x);
    return x;
  };

  auto fresh_wire = [&](const Rat& pos, int producer, int slot) {
    sim.wires.push_back({pos, producer, slot, -1, 0});
    used.insert(pos);
    if (!have_frontier) {
      fr_lo = fr_hi = pos;
      have_frontier = true;
    } else {
      if (pos.less(fr_lo)) fr_lo = pos;
      if (fr_hi.less(pos)) fr_hi = pos;
    }
    return static_cast<int>(sim.wires.size()) - 1;
  };

  for (std::size_t si = 0; si < seq.steps.size(); ++si) {
    const Step& st = seq.steps[si];
    const GenInfo& gi = gen_info(st.g);
    if (st.offset < 0 || st.offset + gi.dom > static_cast<int>(cs.size()))
      throw std::logic_error("step offset out of range");

    SimStep ss;
    ss.g = st.g;
    for (int k = 0; k < gi.dom; ++k) {
      int w = cs[st.offset + k];
      sim.wires[w].consumer = static_cast<int>(si);
      sim.wires[w].cons_slot = k;
      ss.in.push_back(w);
    }

    bool has_left = st.offset > 0;
    bool has_right = st.offset + gi.dom < static_cast<int>(cs.size());
    Rat leftp = has_left ? sim.wires[cs[st.offset - 1]].pos : Rat(0);
    Rat rightp = has_right ? sim.wires[cs[st.offset + gi.dom]].pos : Rat(0);

    std::vector<Rat> outpos;
    auto spread_window = [&](const Rat& wlo, const Rat& whi) {
      // Ascending fresh coordinates strictly inside (wlo, whi).
      Rat prev = wlo;
      for (int k = 0; k < gi.cod; ++k) {
        Rat x = wlo + (whi - wlo) * Rat(k + 1, gi.cod + 1);
        if (!prev.less(x)) x = half(prev, whi);
        x = freshen(x, prev);
        outpos.push_back(x);
        prev = x;
      }
    };
    if (gi.dom == 0) {
      // Insertions hug their live neighbors; leaping over a dead region
      // would remember the firing order in the coordinates.
      Rat x;
      if (!have_frontier) x = Rat(0);
      else if (!has_left && !has_right) x = fr_lo - Rat(1);
      else if (!has_left) x = freshen(rightp - Rat(1), rightp);
      else if (!has_right) x = freshen(leftp + Rat(1), leftp);
      else x = freshen(half(leftp, rightp), leftp);
      ss.xkey = x;
      if (gi.cod == 1) {
        outpos.push_back(x);
      } else {
        Rat wlo = has_left ? half(leftp, x) : x - Rat(1, 2);
        Rat whi = has_right ? half(x, rightp) : x + Rat(1, 2);
        spread_window(wlo, whi);
      }
      ss.lo = ss.hi = x;
      for (const Rat& p : outpos) {
        if (p.less(ss.lo)) ss.lo = p;
        if (ss.hi.less(p)) ss.hi = p;
      }
      ss.point = outpos.size() <= 1;
    } else {
      Rat p_l = sim.wires[ss.in.front()].pos;
      Rat p_r = sim.wires[ss.in.back()].pos;
      ss.xkey = p_l;
      if (gi.dom >= 2) {
        // Outputs live inside the input hull; the end slots deliberately
        // reuse this box's own boundary coordinates.
        if (gi.cod == 1) outpos.push_back(freshen(half(p_l, p_r), p_l));
        else
          for (int k = 0; k < gi.cod; ++k) {
            Rat x = p_l + (p_r - p_l) * Rat(k, gi.cod - 1);
            if (k > 0 && k < gi.cod - 1) x = freshen(x, outpos.back());
            outpos.push_back(x);
          }
      } else {
        if (gi.cod == 1) outpos.push_back(p_l);  // the strand continues
        else if (gi.cod >= 2) {
          Rat wlo = has_left ? half(leftp, p_l) : p_l - Rat(1, 2);
          Rat whi = has_right ? half(p_l, rightp) : p_l + Rat(1, 2);
          spread_window(wlo, whi);
        }
      }
      ss.lo = p_l;
      ss.hi = p_r;
      for (const Rat& p : outpos) {
        if (p.less(ss.lo)) ss.lo = p;
        if (ss.hi.less(p)) ss.hi = p;
      }
      ss.point = !(ss.lo.less(ss.hi));
    }

    std::vector<int> repl;
    for (int k = 0; k < gi.cod; ++k) {
      int w = fresh_wire(outpos[k], static_cast<int>(si), k);
      ss.out.push_back(w);
      repl.push_back(w);
    }
    cs.erase(cs.begin() + st.offset, cs.begin() + st.offset + gi.dom);
    cs.insert(cs.begin() + st.offset, repl.begin(), repl.end());
    sim.steps.push_back(std::move(ss));
  }
  sim.cod_wires = cs;

  // Dependency relation: data edges through wires plus placement edges
  // where horizontal spans genuinely overlap (touching spans commute).
  std::size_t n = sim.steps.size();
  sim.adj.assign(n, std::vector<char>(n, 0));
  for (const SimWire& w : sim.wires)
    if (w.producer >= 0 && w.consumer >= 0) sim.adj[w.producer][w.consumer] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const SimStep& a = sim.steps[i];
      const SimStep& b = sim.steps[j];
      bool edge;
      if (a.point && b.point)
        edge = a.lo == b.lo;
      else
        edge = a.lo.less(b.hi) && b.lo.less(a.hi);
      if (edge) sim.adj[i][j] = 1;
    }
  }
  return sim;
}

Replayer::Replayer(const Sim& sim, std::vector<int> initial_wires)
    : sim_(sim), cs_(std::move(initial_wires)) {}

int Replayer::find_index(int wire) const {
  for (std::size_t i = 0; i < cs_.size(); ++i)
    if (cs_[i] == wire) return static_cast<int>(i);
  return -1;
}

bool Replayer::fire(int step_index, Step* emitted) {
  const SimStep& ss = sim_.steps[step_index];
  int idx;
  if (ss.in.empty()) {
    // Insert by position: wires at or left of the insertion point stay left.
    idx = 0;
    while (idx < static_cast<int>(cs_.size()) &&
           !ss.xkey.less(sim_.wires[cs_[idx]].pos))
      ++idx;
  } else {
    idx = find_index(ss.in.front());
    if (idx < 0 || idx + ss.in.size() > cs_.size()) return false;
    for (std::size_t k = 0; k < ss.in.size(); ++k)
      if (cs_[idx + k] != ss.in[k]) return false;
  }
  if (emitted) *emitted = Step{ss.g, idx};
  cs_.erase(cs_.begin() + idx, cs_.begin() + idx + ss.in.size());
  cs_.insert(cs_.begin() + idx, ss.out.begin(), ss.out.end());
  return true;
}

}  // namespace detail

namespace {

using detail::Replayer;
using detail::Sim;
using detail::SimStep;

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

// Canonical layering of a step subset that has no extractable closed parts.
Diagram layer_steps(const Sim& sim, const std::vector<int>& order, int dom,
                    const std::vector<int>& initial_wires) {
  std::size_t n = order.size();
  if (n == 0) return Diagram{dom, {}};

  // Earliest layer per step (longest path over the dependency relation,
  // restricted to the chosen subset).
  std::vector<int> layer(sim.steps.size(), 0);
  int max_layer = 0;
  for (std::size_t oi = 0; oi < n; ++oi) {
    int j = order[oi];
    int l = 1;
    for (std::size_t ok = 0; ok < oi; ++ok) {
      int i = order[ok];
      if (sim.adj[i][j]) l = std::max(l, layer[i] + 1);
    }
    layer[j] = l;
    max_layer = std::max(max_layer, l);
  }

  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end(), [&](int a, int b) {
    if (layer[a] != layer[b]) return layer[a] < layer[b];
    const Rat& xa = sim.steps[a].xkey;
    const Rat& xb = sim.steps[b].xkey;
    if (xa != xb) return xa.less(xb);
    return a < b;
  });

  Diagram out;
  out.dom = dom;
  Replayer rp(sim, initial_wires);
  std::size_t at = 0;
  for (int l = 1; l <= max_layer; ++l) {
    std::size_t end = at;
    while (end < n && layer[sorted[end]] == l) ++end;

    struct Act {
      int idx;
      Rat xkey;
      int step;
    };
    std::vector<Act> acts;
    const std::vector<int>& cs = rp.cross_section();
    for (std::size_t k = at; k < end; ++k) {
      int s = sorted[k];
      const SimStep& ss = sim.steps[s];
      int idx;
      if (ss.in.empty()) {
        idx = 0;
        while (idx < static_cast<int>(cs.size()) &&
               !ss.xkey.less(sim.wires[cs[idx]].pos))
          ++idx;
      } else {
        idx = rp.find_index(ss.in.front());
        if (idx < 0) throw std::logic_error("canonical replay lost a wire");
      }
      acts.push_back({idx, ss.xkey, s});
    }
    std::sort(acts.begin(), acts.end(), [](const Act& a, const Act& b) {
      if (a.idx != b.idx) return a.idx < b.idx;
      if (a.xkey != b.xkey) return a.xkey.less(b.xkey);
      return a.step < b.step;
    });

    std::vector<Cell> cells;
    int cur = 0;
    for (const Act& a : acts) {
      for (; cur < a.idx; ++cur) cells.push_back(Cell{});
      cells.push_back(Cell{static_cast<int>(sim.steps[a.step].g)});
      cur = a.idx + static_cast<int>(sim.steps[a.step].in.size());
    }
    for (; cur < static_cast<int>(cs.size()); ++cur) cells.push_back(Cell{});

    for (const Act& a : acts)
      if (!rp.fire(a.step)) throw std::logic_error("canonical replay misfired");

    out.layers.push_back(std::move(cells));
    at = end;
  }
  return out;
}

}  // namespace

namespace {

// Layout of a single inseparable piece. Coordinates inherited from the
// firing order can bake in one of several congruent interleavings (a
// strand born where another died remembers when it fired), so the layout
// is re-simulated in its own canonical order until it stabilizes.
Diagram fixpoint_layout(StepSeq seq) {
  for (int round = 0;; ++round) {
    Sim sim = detail::simulate(seq);
    std::size_t n = sim.steps.size();
    if (n == 0) return Diagram{seq.dom, {}};

    std::vector<int> layer(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      int l = 1;
      for (std::size_t i = 0; i < j; ++i)
        if (sim.adj[i][j]) l = std::max(l, layer[i] + 1);
      layer[j] = l;
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (layer[a] != layer[b]) return layer[a] < layer[b];
      const Rat& xa = sim.steps[a].xkey;
      const Rat& xb = sim.steps[b].xkey;
      if (xa != xb) return xa.less(xb);
      return a < b;
    });

    bool stable = true;
    for (std::size_t i = 0; i < n; ++i)
      if (order[i] != static_cast<int>(i)) stable = false;
    if (stable || round >= 4) {
      std::vector<int> all(n);
      std::iota(all.begin(), all.end(), 0);
      return layer_steps(sim, all, seq.dom, sim.dom_wires);
    }

    Replayer rp(sim, sim.dom_wires);
    StepSeq next;
    next.dom = seq.dom;
    for (int s : order) {
      Step emitted;
      if (!rp.fire(s, &emitted)) throw std::logic_error("normalization replay misfired");
      next.steps.push_back(emitted);
    }
    seq = std::move(next);
  }
}

}  // namespace

Diagram canonicalize_steps(const StepSeq& seq0) {
  Sim sim = detail::simulate(seq0);
  std::size_t n = sim.steps.size();
  if (n == 0) return Diagram{seq0.dom, {}};

  // Decompose into inseparable clusters. Pieces join a cluster when they
  // share a wire, when one dies inside another's input mouth (it is pinned
  // there), or when their codomain footprints interleave (a strand threads
  // a fork). What remains is ordered purely by boundary data, which is the
  // layout freedom the structural laws leave open.
  Dsu dsu(static_cast<int>(n));
  for (const auto& w : sim.wires)
    if (w.producer >= 0 && w.consumer >= 0) dsu.unite(w.producer, w.consumer);
  for (std::size_t t = 0; t < n; ++t) {
    const auto& st = sim.steps[t];
    if (st.in.size() < 2) continue;
    const Rat& lo = sim.wires[st.in.front()].pos;
    const Rat& hi = sim.wires[st.in.back()].pos;
    for (std::size_t s = 0; s < n; ++s) {
      if (dsu.find(static_cast<int>(s)) == dsu.find(static_cast<int>(t))) continue;
      bool inside = false;
      for (const auto& wires : {sim.steps[s].in, sim.steps[s].out})
        for (int w : wires)
          if (lo.less(sim.wires[w].pos) && sim.wires[w].pos.less(hi)) inside = true;
      if (inside) dsu.unite(static_cast<int>(s), static_cast<int>(t));
    }
  }

  std::vector<int> dom_slot(sim.wires.size(), -1), cod_slot(sim.wires.size(), -1);
  for (std::size_t k = 0; k < sim.dom_wires.size(); ++k)
    dom_slot[sim.dom_wires[k]] = static_cast<int>(k);
  for (std::size_t k = 0; k < sim.cod_wires.size(); ++k)
    cod_slot[sim.cod_wires[k]] = static_cast<int>(k);

  struct Cluster {
    std::vector<int> steps;
    std::vector<int> dom_wires;
    int min_dom = -1, max_dom = -1;
    int min_cod = -1, max_cod = -1;
    Diagram diagram;
    std::string key;

    void absorb(Cluster&& other) {
      steps.insert(steps.end(), other.steps.begin(), other.steps.end());
      std::sort(steps.begin(), steps.end());
      dom_wires.insert(dom_wires.end(), other.dom_wires.begin(), other.dom_wires.end());
      auto join = [](int& mine, int& mx, int omn, int omx) {
        if (omn < 0) return;
        if (mine < 0 || omn < mine) mine = omn;
        if (omx > mx) mx = omx;
      };
      join(min_dom, max_dom, other.min_dom, other.max_dom);
      join(min_cod, max_cod, other.min_cod, other.max_cod);
    }
  };

  std::map<int, Cluster> grouped;
  for (std::size_t i = 0; i < n; ++i)
    grouped[dsu.find(static_cast<int>(i))].steps.push_back(static_cast<int>(i));
  std::vector<Cluster> clusters;
  for (auto& [root, c] : grouped) clusters.push_back(std::move(c));
  for (int w : sim.dom_wires) {
    if (sim.wires[w].consumer >= 0) continue;
    Cluster c;  // a strand passing straight through
    c.dom_wires = {w};
    c.min_dom = c.max_dom = dom_slot[w];
    c.min_cod = c.max_cod = cod_slot[w];
    c.diagram = Diagram{1, {}};
    clusters.push_back(std::move(c));
  }
  for (Cluster& c : clusters) {
    for (int s : c.steps) {
      for (int w : sim.steps[s].in)
        if (dom_slot[w] >= 0) {
          c.dom_wires.push_back(w);
          if (c.min_dom < 0 || dom_slot[w] < c.min_dom) c.min_dom = dom_slot[w];
          if (dom_slot[w] > c.max_dom) c.max_dom = dom_slot[w];
        }
      for (int w : sim.steps[s].out)
        if (cod_slot[w] >= 0) {
          if (c.min_cod < 0 || cod_slot[w] < c.min_cod) c.min_cod = cod_slot[w];
          if (cod_slot[w] > c.max_cod) c.max_cod = cod_slot[w];
        }
    }
    std::sort(c.dom_wires.begin(), c.dom_wires.end(),
              [&](int a, int b) { return dom_slot[a] < dom_slot[b]; });
  }

  // Interval-intersection unions (footprint nesting).
  auto intersects = [](int a0, int a1, int b0, int b1) {
    return a0 >= 0 && b0 >= 0 && a0 <= b1 && b0 <= a1;
  };
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t i = 0; i < clusters.size() && !merged; ++i)
      for (std::size_t j = i + 1; j < clusters.size() && !merged; ++j) {
        const Cluster& a = clusters[i];
        const Cluster& b = clusters[j];
        if (intersects(a.min_cod, a.max_cod, b.min_cod, b.max_cod) ||
            intersects(a.min_dom, a.max_dom, b.min_dom, b.max_dom)) {
          clusters[i].absorb(std::move(clusters[j]));
          clusters.erase(clusters.begin() + j);
          merged = true;
        }
      }
  }

  if (clusters.size() == 1 && clusters[0].steps.size() == n) {
    StepSeq seq = seq0;
    return fixpoint_layout(std::move(seq));
  }

  auto sub_canonical = [&](const Cluster& c) {
    std::vector<int> doms = c.dom_wires;
    std::sort(doms.begin(), doms.end(),
              [&](int a, int b) { return dom_slot[a] < dom_slot[b]; });
    Replayer rp(sim, doms);
    StepSeq sub;
    sub.dom = static_cast<int>(doms.size());
    for (int s : c.steps) {
      Step emitted;
      if (!rp.fire(s, &emitted)) throw std::logic_error("cluster replay misfired");
      sub.steps.push_back(emitted);
    }
    return canonicalize_steps(sub);
  };

  std::vector<Cluster> closed, anchored;
  for (Cluster& c : clusters) {
    if (!c.steps.empty() || c.diagram.dom == 0) c.diagram = sub_canonical(c);
    c.key = c.diagram.key();
    if (c.min_dom < 0 && c.min_cod < 0) closed.push_back(std::move(c));
    else anchored.push_back(std::move(c));
  }
  std::sort(closed.begin(), closed.end(),
            [](const Cluster& a, const Cluster& b) { return a.key < b.key; });

  // Boundary footprints of distinct clusters are now disjoint intervals;
  // interval precedence gives a partial order and ties (a dying piece next
  // to a born piece) are resolved deterministically.
  std::size_t m = anchored.size();
  std::vector<std::vector<char>> before(m, std::vector<char>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const Cluster& a = anchored[i];
      const Cluster& b = anchored[j];
      if (a.min_dom >= 0 && b.min_dom >= 0 && a.max_dom < b.min_dom) before[i][j] = 1;
      if (a.min_cod >= 0 && b.min_cod >= 0 && a.max_cod < b.min_cod) before[i][j] = 1;
    }
  std::vector<int> order;
  std::vector<char> done(m, 0);
  auto tie_key = [&](std::size_t i) {
    const Cluster& c = anchored[i];
    return std::tuple<int, int, std::string>(c.min_dom >= 0 ? c.min_dom : INT32_MAX,
                                             c.min_cod >= 0 ? c.min_cod : INT32_MAX,
                                             c.key);
  };
  for (std::size_t round = 0; round < m; ++round) {
    int pick = -1;
    for (std::size_t i = 0; i < m; ++i) {
      if (done[i]) continue;
      bool ready = true;
      for (std::size_t j = 0; j < m; ++j)
        if (!done[j] && before[j][i]) ready = false;
      if (!ready) continue;
      if (pick < 0 || tie_key(i) < tie_key(static_cast<std::size_t>(pick)))
        pick = static_cast<int>(i);
    }
    if (pick < 0) {
      // Should be unreachable; lay everything out globally rather than fail.
      StepSeq seq = seq0;
      return fixpoint_layout(std::move(seq));
    }
    done[pick] = 1;
    order.push_back(pick);
  }

  Diagram out;
  out.dom = seq0.dom;
  std::size_t max_layers = 0;
  for (const Cluster& c : closed) max_layers = std::max(max_layers, c.diagram.layers.size());
  for (const Cluster& c : anchored)
    max_layers = std::max(max_layers, c.diagram.layers.size());
  for (std::size_t l = 0; l < max_layers; ++l) {
    std::vector<Cell> cells;
    for (const Cluster& c : closed)
      if (l < c.diagram.layers.size())
        cells.insert(cells.end(), c.diagram.layers[l].begin(), c.diagram.layers[l].end());
    for (int idx : order) {
      const Diagram& d = anchored[idx].diagram;
      if (l < d.layers.size())
        cells.insert(cells.end(), d.layers[l].begin(), d.layers[l].end());
      else
        cells.insert(cells.end(), d.cod(), Cell{});
    }
    out.layers.push_back(std::move(cells));
  }
  return out;
}

Diagram canonicalize(const TermPtr& t, const Signature& sig) {
  typecheck(t, sig);
  TermPtr expanded = sig.macros ? expand_macros(t, *sig.macros) : t;
  return canonicalize_steps(term_to_steps(expanded));
}

StepSeq diagram_to_steps(const Diagram& d) {
  StepSeq seq;
  seq.dom = d.dom;
  for (const auto& layer : d.layers) {
    int col = 0, delta = 0;
    for (const Cell& c : layer) {
      if (c.is_wire()) {
        ++col;
        continue;
      }
      const GenInfo& gi = gen_info(c.gen_id());
      seq.steps.push_back({c.gen_id(), col + delta});
      delta += gi.cod - gi.dom;
      col += gi.dom;
    }
  }
  return seq;
}

TermPtr diagram_to_term(const Diagram& d) {
  if (d.layers.empty()) return Term::id(d.dom);
  TermPtr acc;
  for (const auto& layer : d.layers) {
    TermPtr lt;
    int wires = 0;
    auto flush = [&]() {
      if (wires > 0) {
        TermPtr w = Term::id(wires);
        lt = lt ? Term::tensor(lt, w) : w;
        wires = 0;
      }
    };
    for (const Cell& c : layer) {
      if (c.is_wire()) {
        ++wires;
        continue;
      }
      flush();
      TermPtr g = Term::gen(c.gen_id());
      lt = lt ? Term::tensor(lt, g) : g;
    }
    flush();
    if (!lt) lt = Term::id(0);
    acc = acc ? Term::comp(lt, acc) : lt;
  }
  return acc;
}

}  // namespace hopfdiag
