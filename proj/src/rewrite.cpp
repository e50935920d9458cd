#include "hopfdiag/rewrite.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hopfdiag {

namespace {

using detail::Replayer;
using detail::Sim;

struct Graph {
  int dom = 0;
  Sim sim;
  std::vector<std::pair<int, int>> anchors;  // per box: (layer, input column)
  std::vector<int> widths;
};

Graph build_graph(const Diagram& d) {
  Graph g;
  g.dom = d.dom;
  g.sim = detail::simulate(diagram_to_steps(d));
  g.widths = d.boundary_widths();
  for (std::size_t l = 0; l < d.layers.size(); ++l) {
    int col = 0;
    for (const Cell& c : d.layers[l]) {
      if (c.is_wire()) {
        ++col;
        continue;
      }
      g.anchors.push_back({static_cast<int>(l), col});
      col += gen_info(c.gen_id()).dom;
    }
  }
  return g;
}

struct Staging {
  std::vector<int> past, block, rest;
  std::vector<int> block_dom;  // wire ids, left to right at block start
  std::vector<int> block_cod;  // wire ids, left to right at block end
  int base = 0;                // cross-section column of the block
};

struct Match {
  Position pos;
  Staging st;      // empty for insertion matches
  int width = 0;   // identity-pattern width (insertion matches)
};

// Convexity, isolation and structure check for a candidate box set. Returns
// the staging needed to splice a replacement in, or nullopt if the set is
// not an occurrence of `pattern` up to interchange.
std::optional<Staging> validate_match(const Graph& host, const Diagram& pattern,
                                      const std::vector<int>& box_set) {
  const Sim& sim = host.sim;
  std::size_t n = sim.steps.size();
  std::vector<char> in_b(n, 0);
  for (int b : box_set) in_b[b] = 1;

  // Ancestors and descendants of the block under the dependency relation.
  std::vector<char> anc(n, 0), desc(n, 0);
  for (int i = static_cast<int>(n) - 1; i >= 0; --i) {
    if (in_b[i]) { anc[i] = 1; continue; }
    for (std::size_t j = i + 1; j < n; ++j)
      if (sim.adj[i][j] && anc[j]) { anc[i] = 1; break; }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (in_b[j]) { desc[j] = 1; continue; }
    for (std::size_t i = 0; i < j; ++i)
      if (sim.adj[i][j] && desc[i]) { desc[j] = 1; break; }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!in_b[i] && anc[i] && desc[i]) return std::nullopt;  // not convex

  Staging st;
  for (std::size_t i = 0; i < n; ++i) {
    if (in_b[i]) st.block.push_back(static_cast<int>(i));
    else if (anc[i]) st.past.push_back(static_cast<int>(i));
    else st.rest.push_back(static_cast<int>(i));
  }

  // Horizontal span and touched-wire set of the block.
  Rat lo, hi;
  bool first = true;
  std::set<int> touched;
  for (int b : st.block) {
    const auto& ss = sim.steps[b];
    if (first) { lo = ss.lo; hi = ss.hi; first = false; }
    else {
      if (ss.lo.less(lo)) lo = ss.lo;
      if (hi.less(ss.hi)) hi = ss.hi;
    }
    for (int w : ss.in) touched.insert(w);
    for (int w : ss.out) touched.insert(w);
  }

  Replayer rp(sim, sim.dom_wires);
  for (int s : st.past)
    if (!rp.fire(s)) return std::nullopt;

  auto pure = [&](const std::vector<int>& cs) {
    for (int w : cs) {
      if (touched.count(w)) continue;
      const Rat& p = sim.wires[w].pos;
      if (lo.less(p) && p.less(hi)) return false;  // foreign strand inside
    }
    return true;
  };
  if (!pure(rp.cross_section())) return std::nullopt;

  for (int w : rp.cross_section())
    if (touched.count(w)) st.block_dom.push_back(w);
  st.base = 0;
  if (!st.block_dom.empty()) {
    st.base = rp.find_index(st.block_dom.front());
  } else {
    for (int w : rp.cross_section())
      if (sim.wires[w].pos.less(lo)) ++st.base;
  }

  for (int b : st.block) {
    if (!rp.fire(b)) return std::nullopt;
    if (!pure(rp.cross_section())) return std::nullopt;
  }
  for (int w : rp.cross_section())
    if (touched.count(w)) st.block_cod.push_back(w);

  // The block replayed standalone must reproduce the pattern exactly,
  // including the boundary order.
  Replayer blk(sim, st.block_dom);
  StepSeq sub;
  sub.dom = static_cast<int>(st.block_dom.size());
  for (int b : st.block) {
    Step emitted;
    if (!blk.fire(b, &emitted)) return std::nullopt;
    sub.steps.push_back(emitted);
  }
  if (!(canonicalize_steps(sub) == pattern)) return std::nullopt;
  return st;
}

void enumerate_embeddings(const Graph& host, const Graph& pat,
                          std::vector<int>& map, std::vector<char>& used,
                          std::vector<std::vector<int>>& out) {
  std::size_t pb = map.size();
  if (pb == pat.sim.steps.size()) {
    out.push_back(map);
    return;
  }
  const auto& ps = pat.sim.steps[pb];
  for (std::size_t hb = 0; hb < host.sim.steps.size(); ++hb) {
    if (used[hb]) continue;
    const auto& hs = host.sim.steps[hb];
    if (hs.g != ps.g) continue;
    bool ok = true;
    for (std::size_t k = 0; k < ps.in.size() && ok; ++k) {
      const auto& pw = pat.sim.wires[ps.in[k]];
      const auto& hw = host.sim.wires[hs.in[k]];
      if (pw.producer >= 0) {
        // Producers fire before consumers, so the producer is already mapped.
        ok = hw.producer == map[pw.producer] && hw.prod_slot == pw.prod_slot;
      }
    }
    if (!ok) continue;
    map.push_back(static_cast<int>(hb));
    used[hb] = 1;
    enumerate_embeddings(host, pat, map, used, out);
    used[hb] = 0;
    map.pop_back();
  }
}

std::vector<Match> matches_staged(const Graph& hg, const Diagram& pattern) {
  std::vector<Match> out;
  if (pattern.box_count() == 0) {
    int w = pattern.dom;
    for (std::size_t b = 0; b < hg.widths.size(); ++b)
      for (int o = 0; o + w <= hg.widths[b]; ++o) {
        Match m;
        m.pos = Position{static_cast<int>(b), o, {}, true};
        m.width = w;
        out.push_back(std::move(m));
      }
    return out;
  }
  if (pattern.box_count() > static_cast<int>(hg.sim.steps.size())) return out;

  Graph pg = build_graph(pattern);
  std::vector<std::vector<int>> embeddings;
  std::vector<int> map;
  std::vector<char> used(hg.sim.steps.size(), 0);
  enumerate_embeddings(hg, pg, map, used, embeddings);

  std::set<std::vector<int>> seen;
  for (const auto& emb : embeddings) {
    std::vector<int> boxes = emb;
    std::sort(boxes.begin(), boxes.end());
    if (!seen.insert(boxes).second) continue;
    auto st = validate_match(hg, pattern, boxes);
    if (!st) continue;
    Match m;
    auto [layer, offset] = hg.anchors[boxes.front()];
    m.pos = Position{layer, offset, boxes, false};
    m.st = std::move(*st);
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(), [](const Match& a, const Match& b) {
    if (a.pos.layer != b.pos.layer) return a.pos.layer < b.pos.layer;
    if (a.pos.offset != b.pos.offset) return a.pos.offset < b.pos.offset;
    return a.pos.boxes < b.pos.boxes;
  });
  return out;
}

// Boxes are numbered in firing order, so the boxes of layers [0, b) form a
// prefix of the canonical step list.
int steps_below_boundary(const Graph& g, int boundary) {
  int k = 0;
  for (const auto& [layer, col] : g.anchors)
    if (layer < boundary) ++k;
  return k;
}

Diagram splice_staged(const Graph& hg, const Diagram& repl, const Match& m) {
  StepSeq out;
  out.dom = hg.dom;
  std::vector<int> rest;
  std::vector<int> spliced_cs;
  int base = 0;

  Replayer rp(hg.sim, hg.sim.dom_wires);
  if (m.pos.insertion) {
    int k = steps_below_boundary(hg, m.pos.layer);
    for (int s = 0; s < k; ++s) {
      Step emitted;
      if (!rp.fire(s, &emitted)) throw std::logic_error("boundary replay failed");
      out.steps.push_back(emitted);
    }
    for (std::size_t s = k; s < hg.sim.steps.size(); ++s)
      rest.push_back(static_cast<int>(s));
    base = m.pos.offset;
    spliced_cs = rp.cross_section();  // the run doubles as dom and cod
  } else {
    const Staging& st = m.st;
    rest = st.rest;
    base = st.base;
    for (int s : st.past) {
      Step emitted;
      rp.fire(s, &emitted);
      out.steps.push_back(emitted);
    }
    spliced_cs = rp.cross_section();
    spliced_cs.erase(spliced_cs.begin() + base,
                     spliced_cs.begin() + base + st.block_dom.size());
    spliced_cs.insert(spliced_cs.begin() + base, st.block_cod.begin(),
                      st.block_cod.end());
  }

  StepSeq rsteps = diagram_to_steps(repl);
  for (const Step& s : rsteps.steps) out.steps.push_back({s.g, s.offset + base});

  // Continue with the remaining host steps on the spliced cross-section;
  // the replacement has the same boundary arity, so the context stays
  // valid and offsets are recomputed by wire identity.
  Replayer cont(hg.sim, spliced_cs);
  for (int s : rest) {
    Step emitted;
    if (!cont.fire(s, &emitted))
      throw std::logic_error("replacement broke the host context");
    out.steps.push_back(emitted);
  }
  return canonicalize_steps(out);
}

const Match* locate(const std::vector<Match>& ms, const Position& pos) {
  for (const Match& m : ms)
    if (m.pos == pos) return &m;
  return nullptr;
}

}  // namespace

std::vector<Position> find_matches(const Diagram& host, const Diagram& pattern) {
  Graph hg = build_graph(host);
  std::vector<Position> out;
  for (const Match& m : matches_staged(hg, pattern)) out.push_back(m.pos);
  return out;
}

Diagram apply_rule(const Diagram& host, const RewriteRule& rule, Dir dir,
                   const Position& pos) {
  const Diagram& pattern = dir == Dir::Fwd ? rule.lhs : rule.rhs;
  const Diagram& repl = dir == Dir::Fwd ? rule.rhs : rule.lhs;
  Graph hg = build_graph(host);
  std::vector<Match> ms = matches_staged(hg, pattern);
  const Match* m = locate(ms, pos);
  if (!m) throw StalePosition("position is not a current match of rule " + rule.name);
  return splice_staged(hg, repl, *m);
}

ProofScript parse_proof_script(const std::string& text, const MacroTable* macros) {
  ProofScript sc;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& m) {
    throw ParseError("proof script: " + m, lineno, 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = line;
    if (auto h = s.find('#'); h != std::string::npos) s = s.substr(0, h);
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::size_t e = s.find_last_not_of(" \t\r");
    s = s.substr(b, e - b + 1);
    if (s.rfind("theory:", 0) == 0) {
      sc.theory = s.substr(7);
      sc.theory.erase(0, sc.theory.find_first_not_of(' '));
      continue;
    }
    if (s.rfind("start:", 0) == 0) {
      sc.start = parse(s.substr(6), macros);
      continue;
    }
    if (s.rfind("goal:", 0) == 0) {
      sc.goal = parse(s.substr(5), macros);
      continue;
    }
    std::istringstream ls(s);
    ProofStep step;
    std::string dir, at;
    if (!(ls >> step.rule >> dir >> at)) fail("bad step line '" + s + "'");
    if (dir == "fwd") step.dir = Dir::Fwd;
    else if (dir == "bwd") step.dir = Dir::Bwd;
    else fail("direction must be fwd or bwd");
    if (at == "?") {
      step.layer = step.offset = -1;
    } else {
      std::size_t colon = at.find(':');
      if (colon == std::string::npos) fail("position must be LAYER:OFFSET or '?'");
      try {
        step.layer = std::stoi(at.substr(0, colon));
        step.offset = std::stoi(at.substr(colon + 1));
      } catch (...) {
        fail("position must be LAYER:OFFSET or '?'");
      }
    }
    sc.steps.push_back(step);
  }
  if (!sc.start || !sc.goal) fail("missing start: or goal: header");
  if (sc.theory.empty()) fail("missing theory: header");
  return sc;
}

std::string format_proof_script(const ProofScript& s) {
  std::ostringstream os;
  os << "theory: " << s.theory << "\n";
  os << "start: " << print(s.start) << "\n";
  os << "goal: " << print(s.goal) << "\n";
  for (const ProofStep& st : s.steps) {
    os << st.rule << " " << dir_name(st.dir) << " ";
    if (st.layer < 0) os << "?";
    else os << st.layer << ":" << st.offset;
    os << "\n";
  }
  return os.str();
}

CheckResult check_proof(const ProofScript& script, const Theory& th) {
  CheckResult res;
  Signature sig = th.sig();
  Diagram cur = canonicalize(script.start, sig);
  Diagram goal = canonicalize(script.goal, sig);
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    const ProofStep& st = script.steps[i];
    const RewriteRule* rule = th.find_rule(st.rule);
    if (!rule) {
      res.failed_step = static_cast<int>(i);
      res.reason = "unknown rule '" + st.rule + "'";
      res.state = cur;
      return res;
    }
    if (rule->status == RuleStatus::Reconstructed && rule->validated_in.empty()) {
      res.failed_step = static_cast<int>(i);
      res.reason = "reconstructed rule '" + st.rule + "' has no validation record";
      res.state = cur;
      return res;
    }
    const Diagram& pattern = st.dir == Dir::Fwd ? rule->lhs : rule->rhs;
    const Diagram& repl = st.dir == Dir::Fwd ? rule->rhs : rule->lhs;
    Graph hg = build_graph(cur);
    std::vector<Match> ms = matches_staged(hg, pattern);
    const Match* hit = nullptr;
    for (const Match& m : ms)
      if (m.pos.layer == st.layer && m.pos.offset == st.offset) {
        hit = &m;
        break;
      }
    if (!hit) {
      std::ostringstream os;
      os << "no match of " << st.rule << " (" << dir_name(st.dir) << ") at "
         << st.layer << ":" << st.offset << "; candidates:";
      for (const Match& m : ms) os << " " << m.pos.layer << ":" << m.pos.offset;
      res.failed_step = static_cast<int>(i);
      res.reason = os.str();
      res.state = cur;
      return res;
    }
    cur = splice_staged(hg, repl, *hit);
    res.rules_used.push_back(st.rule);
  }
  if (!(cur == goal)) {
    res.failed_step = static_cast<int>(script.steps.size());
    res.reason = "final diagram differs from the goal";
    res.state = cur;
    return res;
  }
  res.accepted = true;
  res.state = cur;
  return res;
}

namespace {

bool resolve_rec(const ProofScript& s, const Theory& th, std::size_t i,
                 const Diagram& cur, const Diagram& goal,
                 std::vector<ProofStep>& out) {
  if (i == s.steps.size()) return cur == goal;
  const ProofStep& st = s.steps[i];
  const RewriteRule* rule = th.find_rule(st.rule);
  if (!rule) return false;
  const Diagram& pattern = st.dir == Dir::Fwd ? rule->lhs : rule->rhs;
  const Diagram& repl = st.dir == Dir::Fwd ? rule->rhs : rule->lhs;
  Graph hg = build_graph(cur);
  for (const Match& m : matches_staged(hg, pattern)) {
    if (st.layer >= 0 && (m.pos.layer != st.layer || m.pos.offset != st.offset))
      continue;
    Diagram next = splice_staged(hg, repl, m);
    out.push_back(ProofStep{st.rule, st.dir, m.pos.layer, m.pos.offset});
    if (resolve_rec(s, th, i + 1, next, goal, out)) return true;
    out.pop_back();
  }
  return false;
}

}  // namespace

std::optional<ProofScript> resolve_script(const ProofScript& s, const Theory& th) {
  Signature sig = th.sig();
  Diagram cur = canonicalize(s.start, sig);
  Diagram goal = canonicalize(s.goal, sig);
  std::vector<ProofStep> out;
  if (!resolve_rec(s, th, 0, cur, goal, out)) return std::nullopt;
  ProofScript r = s;
  r.steps = out;
  return r;
}

namespace {

struct SearchNode {
  Diagram d;
  int parent = -1;
  ProofStep step;
};

struct Side {
  std::vector<SearchNode> nodes;
  std::map<std::string, int> visited;
  std::vector<int> frontier;
};

struct Child {
  Diagram d;
  std::string k;
  int parent;
  ProofStep step;
  int size;
};

std::vector<Child> expand_one(const Diagram& host, int parent, const Theory& th,
                              const SearchBudget& budget) {
  std::vector<Child> out;
  Graph hg = build_graph(host);
  for (const RewriteRule& rule : th.rules) {
    if (rule.status == RuleStatus::Reconstructed && rule.validated_in.empty()) continue;
    for (Dir dir : {Dir::Fwd, Dir::Bwd}) {
      const Diagram& pattern = dir == Dir::Fwd ? rule.lhs : rule.rhs;
      const Diagram& repl = dir == Dir::Fwd ? rule.rhs : rule.lhs;
      if (repl.box_count() + host.box_count() - pattern.box_count() > budget.max_diagram)
        continue;
      for (const Match& m : matches_staged(hg, pattern)) {
        Diagram child = splice_staged(hg, repl, m);
        if (child.box_count() > budget.max_diagram) continue;
        ProofStep st{rule.name, dir, m.pos.layer, m.pos.offset};
        out.push_back(Child{child, child.key(), parent, st, child.box_count()});
      }
    }
  }
  return out;
}

// Expands one breadth level. Parallel workers split the frontier; results
// are concatenated in frontier order so the outcome matches a serial run.
bool expand_level(Side& side, const Theory& th, const SearchBudget& budget,
                  bool parallel, SearchStats* stats) {
  std::vector<std::vector<Child>> per(side.frontier.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (std::size_t i = 0; i < side.frontier.size(); ++i) {
    int idx = side.frontier[i];
    per[i] = expand_one(side.nodes[idx].d, idx, th, budget);
  }
  (void)parallel;

  std::vector<Child> all;
  for (auto& v : per) {
    if (stats) stats->expanded += static_cast<int>(v.size());
    all.insert(all.end(), std::make_move_iterator(v.begin()),
               std::make_move_iterator(v.end()));
  }
  std::stable_sort(all.begin(), all.end(), [](const Child& a, const Child& b) {
    if (a.size != b.size) return a.size < b.size;
    if (a.step.rule != b.step.rule) return a.step.rule < b.step.rule;
    if (a.step.layer != b.step.layer) return a.step.layer < b.step.layer;
    if (a.step.offset != b.step.offset) return a.step.offset < b.step.offset;
    return a.k < b.k;
  });

  side.frontier.clear();
  for (Child& c : all) {
    if (static_cast<int>(side.frontier.size()) >= budget.max_frontier) break;
    if (side.visited.count(c.k)) continue;
    side.nodes.push_back(SearchNode{std::move(c.d), c.parent, c.step});
    int id = static_cast<int>(side.nodes.size()) - 1;
    side.visited.emplace(std::move(c.k), id);
    side.frontier.push_back(id);
  }
  return !side.frontier.empty();
}

std::vector<ProofStep> path_from_root(const Side& side, int idx) {
  std::vector<ProofStep> steps;
  for (int cur = idx; side.nodes[cur].parent >= 0; cur = side.nodes[cur].parent)
    steps.push_back(side.nodes[cur].step);
  std::reverse(steps.begin(), steps.end());
  return steps;
}

// Reverses the goal-side path into forward steps: each recorded edge is
// replayed backwards by locating the match whose application restores the
// parent diagram.
std::vector<ProofStep> reverse_path(const Side& side, int idx, const Theory& th) {
  std::vector<ProofStep> steps;
  int cur = idx;
  while (side.nodes[cur].parent >= 0) {
    const SearchNode& node = side.nodes[cur];
    const RewriteRule* rule = th.find_rule(node.step.rule);
    Dir rdir = node.step.dir == Dir::Fwd ? Dir::Bwd : Dir::Fwd;
    const Diagram& pattern = rdir == Dir::Fwd ? rule->lhs : rule->rhs;
    const Diagram& repl = rdir == Dir::Fwd ? rule->rhs : rule->lhs;
    const Diagram& want = side.nodes[node.parent].d;
    Graph hg = build_graph(node.d);
    bool found = false;
    for (const Match& m : matches_staged(hg, pattern)) {
      if (splice_staged(hg, repl, m) == want) {
        steps.push_back(ProofStep{node.step.rule, rdir, m.pos.layer, m.pos.offset});
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("search path reversal failed");
    cur = node.parent;
  }
  return steps;
}

}  // namespace

std::optional<ProofScript> search_equal(const TermPtr& a, const TermPtr& b,
                                        const Theory& th, const SearchBudget& budget,
                                        SearchStats* stats, bool parallel) {
  Signature sig = th.sig();
  Arity aa = typecheck(a, sig);
  Arity ab = typecheck(b, sig);
  if (!(aa == ab))
    throw TypeError("search_equal needs equal arities: (" + std::to_string(aa.dom) + "," +
                        std::to_string(aa.cod) + ") vs (" + std::to_string(ab.dom) + "," +
                        std::to_string(ab.cod) + ")",
                    "");

  ProofScript sc;
  sc.theory = th.name;
  sc.start = a;
  sc.goal = b;

  Side A, B;
  A.nodes.push_back({canonicalize(a, sig), -1, {}});
  B.nodes.push_back({canonicalize(b, sig), -1, {}});
  A.visited[A.nodes[0].d.key()] = 0;
  B.visited[B.nodes[0].d.key()] = 0;
  A.frontier = {0};
  B.frontier = {0};

  if (A.nodes[0].d == B.nodes[0].d) return sc;  // empty script

  auto meet = [&](int a_idx, int b_idx) {
    sc.steps = path_from_root(A, a_idx);
    std::vector<ProofStep> back = reverse_path(B, b_idx, th);
    sc.steps.insert(sc.steps.end(), back.begin(), back.end());
    return sc;
  };

  bool a_live = true, b_live = true;
  int da = 0, db = 0;
  while ((a_live && da < budget.max_steps) || (b_live && db < budget.max_steps)) {
    bool pick_a;
    if (a_live && da < budget.max_steps && b_live && db < budget.max_steps)
      pick_a = A.frontier.size() <= B.frontier.size();
    else
      pick_a = a_live && da < budget.max_steps;

    Side& side = pick_a ? A : B;
    Side& other = pick_a ? B : A;
    bool live = expand_level(side, th, budget, parallel, stats);
    if (pick_a) { a_live = live; ++da; }
    else { b_live = live; ++db; }
    if (stats) {
      stats->depth_a = da;
      stats->depth_b = db;
    }
    for (int idx : side.frontier) {
      auto it = other.visited.find(side.nodes[idx].d.key());
      if (it != other.visited.end())
        return pick_a ? meet(idx, it->second) : meet(it->second, idx);
    }
  }
  return std::nullopt;
}

RewriteRule q14_tactic(const TermPtr& f, int n, const Theory& th) {
  Signature sig = th.sig();
  Arity fa = typecheck(f, sig);
  if (fa.dom != n)
    throw TypeError("q14 instance expects F with domain " + std::to_string(n) +
                        ", found " + std::to_string(fa.dom),
                    "");
  int m = fa.cod;
  RewriteRule rule;
  rule.name = "q14(" + print(f) + "," + std::to_string(n) + ")";
  rule.lhs_term = Term::comp(f, build_alpha(n));
  rule.rhs_term = Term::comp(build_alpha(m), Term::tensor(Term::id(1), f));
  rule.status = RuleStatus::Derived;
  rule.note = "intertwining-schema instance";
  rule.tags.insert(th.name);
  rule.lhs = canonicalize(rule.lhs_term, sig);
  rule.rhs = canonicalize(rule.rhs_term, sig);
  return rule;
}

Evidence script_evidence(const ProofScript& script, const Theory& th,
                         const RewriteRule& rule) {
  Evidence ev;
  ev.kind = Evidence::Kind::Script;
  ev.detail = "script";
  Signature sig = th.sig();
  Diagram sl = canonicalize(script.start, sig);
  Diagram sg = canonicalize(script.goal, sig);
  Diagram rl = canonicalize(rule.lhs_term, sig);
  Diagram rr = canonicalize(rule.rhs_term, sig);
  bool endpoints = (sl == rl && sg == rr) || (sl == rr && sg == rl);
  ev.validated = endpoints && check_proof(script, th).accepted;
  if (!endpoints) ev.detail = "script endpoints do not match the rule";
  return ev;
}

}  // namespace hopfdiag
