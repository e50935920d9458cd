#include "hopfdiag/model.hpp"

#include <algorithm>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hopfdiag {

namespace {

GroupTable cyclic(int n, const std::string& name) {
  GroupTable g;
  g.name = name;
  g.order = n;
  g.mul.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.mul[a][b] = (a + b) % n;
  g.validate();
  return g;
}

}  // namespace

GroupTable GroupTable::trivial() { return cyclic(1, "trivial"); }
GroupTable GroupTable::z2() { return cyclic(2, "z2"); }
GroupTable GroupTable::z3() { return cyclic(3, "z3"); }

GroupTable GroupTable::s3() {
  // Permutations of {0,1,2}: e, (01), (02), (12), (012), (021).
  const int perms[6][3] = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0},
                           {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  auto index_of = [&](const int p[3]) {
    for (int i = 0; i < 6; ++i)
      if (perms[i][0] == p[0] && perms[i][1] == p[1] && perms[i][2] == p[2]) return i;
    return -1;
  };
  GroupTable g;
  g.name = "s3";
  g.order = 6;
  g.mul.assign(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      int comp[3];  // (a.b)(x) = a(b(x))
      for (int x = 0; x < 3; ++x) comp[x] = perms[a][perms[b][x]];
      g.mul[a][b] = index_of(comp);
    }
  g.validate();
  return g;
}

GroupTable GroupTable::from_text(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  GroupTable g;
  g.name = name;
  if (!(in >> g.order) || g.order <= 0) throw ModelError("group file: bad order");
  g.mul.assign(g.order, std::vector<int>(g.order));
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b) {
      if (!(in >> g.mul[a][b]) || g.mul[a][b] < 0 || g.mul[a][b] >= g.order)
        throw ModelError("group file: bad entry at row " + std::to_string(a));
    }
  g.validate();
  return g;
}

bool GroupTable::abelian() const {
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      if (mul[a][b] != mul[b][a]) return false;
  return true;
}

void GroupTable::validate() {
  identity = -1;
  for (int e = 0; e < order; ++e) {
    bool ok = true;
    for (int a = 0; a < order && ok; ++a) ok = mul[e][a] == a && mul[a][e] == a;
    if (ok) { identity = e; break; }
  }
  if (identity < 0) throw ModelError("group table has no identity");
  inverse.assign(order, -1);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b)
      if (mul[a][b] == identity && mul[b][a] == identity) { inverse[a] = b; break; }
    if (inverse[a] < 0) throw ModelError("group element without inverse");
  }
  // Associativity
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      for (int c = 0; c < order; ++c)
        if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
          throw ModelError("group table is not associative");
}

namespace {

SpMat transposition(int d) {
  SpMat m(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) m.set(b * d + a, a * d + b, Rat(1));
  return m;
}

const Theory& cached_theory(TheoryId id) {
  static const Theory hr = load_theory(TheoryId::HR);
  static const Theory hbb = load_theory(TheoryId::HBB);
  return id == TheoryId::HR ? hr : hbb;
}

// Fills failing/theory_tags by exact-checking every rule of the base
// presentations against the model.
void tag_model(HopfModel& m) {
  std::map<std::string, bool> checked;
  for (TheoryId id : {TheoryId::HR, TheoryId::HBB}) {
    const Theory& th = cached_theory(id);
    bool all = true;
    for (const RewriteRule& r : th.rules) {
      auto it = checked.find(r.name);
      bool holds =
          it != checked.end() ? it->second : check_rule_in_model(r, m).holds;
      checked[r.name] = holds;
      if (!holds) {
        m.failing.insert(r.name);
        all = false;
      }
    }
    if (all) m.theory_tags.insert(theory_name(id));
  }
}

}  // namespace

HopfModel group_algebra(const GroupTable& g) {
  const int d = g.order;
  HopfModel m;
  m.name = g.name;
  m.dim = d;

  SpMat mul(d, d * d), cop(d * d, d), unit(d, 1), cou(1, d), ant(d, d);
  SpMat intg(d, 1), cointg(1, d), cpr(d * d, 1);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) mul.set(g.mul[a][b], a * d + b, Rat(1));
  for (int a = 0; a < d; ++a) cop.set(a * d + a, a, Rat(1));
  unit.set(g.identity, 0, Rat(1));
  for (int a = 0; a < d; ++a) cou.set(0, a, Rat(1));
  for (int a = 0; a < d; ++a) ant.set(g.inverse[a], a, Rat(1));
  for (int a = 0; a < d; ++a) intg.set(a, 0, Rat(1));
  cointg.set(0, g.identity, Rat(1));
  cpr.set(g.identity * d + g.identity, 0, Rat(1));

  m.maps[GenId::Mul] = mul;
  m.maps[GenId::Cop] = cop;
  m.maps[GenId::Unit] = unit;
  m.maps[GenId::Cou] = cou;
  m.maps[GenId::Ant] = ant;
  m.maps[GenId::AntInv] = ant;  // S is an involution on group elements
  m.maps[GenId::Br] = transposition(d);
  m.maps[GenId::BrInv] = transposition(d);
  m.maps[GenId::Intg] = intg;
  m.maps[GenId::Cointg] = cointg;
  m.maps[GenId::Rib] = SpMat::identity(d);
  m.maps[GenId::RibInv] = SpMat::identity(d);
  m.maps[GenId::Cpr] = cpr;

  tag_model(m);
  return m;
}

HopfModel function_algebra(const GroupTable& g) {
  const int d = g.order;
  HopfModel m;
  m.name = "fun-" + g.name;
  m.dim = d;

  SpMat mul(d, d * d), cop(d * d, d), unit(d, 1), cou(1, d), ant(d, d);
  SpMat intg(d, 1), cointg(1, d), cpr(d * d, 1);
  for (int a = 0; a < d; ++a) mul.set(a, a * d + a, Rat(1));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) cop.set(a * d + b, g.mul[a][b], Rat(1));
  for (int a = 0; a < d; ++a) unit.set(a, 0, Rat(1));
  cou.set(0, g.identity, Rat(1));
  for (int a = 0; a < d; ++a) ant.set(g.inverse[a], a, Rat(1));
  intg.set(g.identity, 0, Rat(1));
  for (int a = 0; a < d; ++a) cointg.set(0, a, Rat(1));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) cpr.set(a * d + b, 0, Rat(1));

  m.maps[GenId::Mul] = mul;
  m.maps[GenId::Cop] = cop;
  m.maps[GenId::Unit] = unit;
  m.maps[GenId::Cou] = cou;
  m.maps[GenId::Ant] = ant;
  m.maps[GenId::AntInv] = ant;
  m.maps[GenId::Br] = transposition(d);
  m.maps[GenId::BrInv] = transposition(d);
  m.maps[GenId::Intg] = intg;
  m.maps[GenId::Cointg] = cointg;
  m.maps[GenId::Rib] = SpMat::identity(d);
  m.maps[GenId::RibInv] = SpMat::identity(d);
  m.maps[GenId::Cpr] = cpr;

  tag_model(m);
  return m;
}

HopfModel builtin_model(const std::string& name) {
  if (name == "trivial") return group_algebra(GroupTable::trivial());
  if (name == "z2") return group_algebra(GroupTable::z2());
  if (name == "z3") return group_algebra(GroupTable::z3());
  if (name == "s3") return group_algebra(GroupTable::s3());
  if (name == "fun-s3") return function_algebra(GroupTable::s3());
  if (name == "fun-z3") return function_algebra(GroupTable::z3());
  throw ModelError("unknown model '" + name + "'");
}

std::vector<std::string> builtin_model_names() {
  return {"trivial", "z2", "z3", "s3", "fun-s3", "fun-z3"};
}

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

const SpMat& cell_matrix(const Cell& c, const HopfModel& m, const SpMat& wire) {
  if (c.is_wire()) return wire;
  auto it = m.maps.find(c.gen_id());
  if (it == m.maps.end())
    throw ModelError(std::string("generator '") + gen_info(c.gen_id()).name +
                     "' is not interpreted by model " + m.name);
  return it->second;
}

SpMat evaluate_serial(const Diagram& d, const HopfModel& m) {
  const SpMat wire = SpMat::identity(m.dim);
  SpMat total = SpMat::identity(static_cast<int>(ipow(m.dim, d.dom)));
  for (const auto& layer : d.layers) {
    SpMat lm = SpMat::identity(1);
    for (const Cell& c : layer) lm = SpMat::kron(lm, cell_matrix(c, m, wire));
    total = lm * total;
  }
  return total;
}

// One layer applied to a sparse column: decompose each live index into
// per-cell sub-indices, combine the matching matrix columns.
struct LayerKernel {
  struct CellOp {
    const SpMat* mat = nullptr;  // null = wire block
    long long in_size = 1, out_size = 1;
  };
  std::vector<CellOp> cells;
  long long out_total = 1;

  LayerKernel(const std::vector<Cell>& layer, const HopfModel& m) {
    for (const Cell& c : layer) {
      CellOp op;
      if (c.is_wire()) {
        op.in_size = op.out_size = m.dim;
      } else {
        auto it = m.maps.find(c.gen_id());
        if (it == m.maps.end())
          throw ModelError(std::string("generator '") + gen_info(c.gen_id()).name +
                           "' is not interpreted by model " + m.name);
        op.mat = &it->second;
        op.in_size = it->second.cols();
        op.out_size = it->second.rows();
      }
      out_total *= op.out_size;
      cells.push_back(op);
    }
  }

  void apply(const std::vector<std::pair<long long, Rat>>& in,
             std::vector<std::pair<long long, Rat>>& out) const {
    std::map<long long, Rat> acc;
    std::vector<long long> sub(cells.size());
    for (const auto& [idx, val] : in) {
      long long rem = idx;
      for (int c = static_cast<int>(cells.size()) - 1; c >= 0; --c) {
        sub[c] = rem % cells[c].in_size;
        rem /= cells[c].in_size;
      }
      // Cartesian walk over the nonzeros of each cell column.
      struct Piece {
        const SpMat::Col* col = nullptr;
        long long fixed = 0;  // wire passthrough index
      };
      std::vector<Piece> pieces(cells.size());
      bool dead = false;
      for (std::size_t c = 0; c < cells.size() && !dead; ++c) {
        if (!cells[c].mat) {
          pieces[c].fixed = sub[c];
        } else {
          pieces[c].col = &cells[c].mat->column(static_cast<int>(sub[c]));
          if (pieces[c].col->empty()) dead = true;
        }
      }
      if (dead) continue;
      std::vector<std::size_t> pick(cells.size(), 0);
      while (true) {
        long long out_idx = 0;
        Rat coeff = val;
        for (std::size_t c = 0; c < cells.size(); ++c) {
          long long row;
          if (!pieces[c].col) {
            row = pieces[c].fixed;
          } else {
            const auto& e = (*pieces[c].col)[pick[c]];
            row = e.first;
            coeff = coeff * e.second;
          }
          out_idx = out_idx * cells[c].out_size + row;
        }
        acc[out_idx] += coeff;
        // advance the mixed-radix pick
        int c = static_cast<int>(cells.size()) - 1;
        for (; c >= 0; --c) {
          if (!pieces[c].col) continue;
          if (++pick[c] < pieces[c].col->size()) break;
          pick[c] = 0;
        }
        if (c < 0) break;
      }
    }
    out.clear();
    for (const auto& [idx, v] : acc)
      if (!v.is_zero()) out.emplace_back(idx, v);
  }
};

SpMat evaluate_parallel(const Diagram& d, const HopfModel& m) {
  std::vector<LayerKernel> kernels;
  kernels.reserve(d.layers.size());
  for (const auto& layer : d.layers) kernels.emplace_back(layer, m);

  long long dom_size = ipow(m.dim, d.dom);
  long long cod_size = ipow(m.dim, d.cod());
  SpMat out(static_cast<int>(cod_size), static_cast<int>(dom_size));

  std::vector<SpMat::Col> cols(dom_size);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long long j = 0; j < dom_size; ++j) {
    std::vector<std::pair<long long, Rat>> cur{{j, Rat(1)}}, next;
    for (const LayerKernel& k : kernels) {
      k.apply(cur, next);
      cur.swap(next);
    }
    SpMat::Col col;
    for (const auto& [idx, v] : cur) col.emplace_back(static_cast<int>(idx), v);
    cols[j] = std::move(col);
  }
  for (long long j = 0; j < dom_size; ++j) out.column_mut(static_cast<int>(j)) = std::move(cols[j]);
  return out;
}

}  // namespace

SpMat evaluate(const Diagram& d, const HopfModel& m, EvalMode mode) {
  return mode == EvalMode::Serial ? evaluate_serial(d, m) : evaluate_parallel(d, m);
}

SpMat evaluate(const TermPtr& t, const HopfModel& m, EvalMode mode) {
  Signature sig;
  for (const auto& [g, mat] : m.maps) sig.gens.insert(g);
  return evaluate(canonicalize(t, sig), m, mode);
}

RuleCheck check_rule_in_model(const RewriteRule& rule, const HopfModel& m, EvalMode mode) {
  SpMat l = evaluate(rule.lhs, m, mode);
  SpMat r = evaluate(rule.rhs, m, mode);
  RuleCheck rc;
  auto diff = SpMat::max_diff(l, r);
  rc.holds = !diff.has_value();
  if (diff) rc.witness = *diff;
  return rc;
}

Evidence oracle_evidence(const RewriteRule& rule,
                         const std::vector<const HopfModel*>& models) {
  Evidence ev;
  ev.kind = Evidence::Kind::Oracle;
  bool ok = !models.empty();
  std::string names;
  for (const HopfModel* m : models) {
    if (!names.empty()) names += ",";
    names += m->name;
    if (!check_rule_in_model(rule, *m).holds) ok = false;
  }
  ev.detail = names;
  ev.validated = ok;
  return ev;
}

}  // namespace hopfdiag
