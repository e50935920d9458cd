#include <doctest.h>

#include <functional>
#include <random>

#include "hopfdiag/diagram.hpp"
#include "hopfdiag/rewrite.hpp"
#include "hopfdiag/theory.hpp"

using namespace hopfdiag;

namespace {

const Theory& hr() {
  static Theory th = load_theory(TheoryId::HR);
  return th;
}
TermPtr P(const std::string& s) { return parse(s, &hr().macros); }
Diagram C(const std::string& s) { return canonicalize(P(s), hr().sig()); }

// --- random well-typed terms -------------------------------------------------

struct Gen {
  std::mt19937 rng;
  explicit Gen(unsigned seed) : rng(seed) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  TermPtr term(int depth) {
    if (depth <= 0) return leaf();
    switch (pick(4)) {
      case 0: return leaf();
      case 1: {  // tensor
        return Term::tensor(term(depth - 1), term(depth - 1));
      }
      default: {  // composition: generate f, then g with cod(g) == dom(f)
        TermPtr f = term(depth - 1);
        Signature sig = hr().sig();
        int need = typecheck(f, sig).dom;
        return Term::comp(f, coterm(need, depth - 1));
      }
    }
  }

  // A random term with prescribed codomain width.
  TermPtr coterm(int cod, int depth) {
    if (depth <= 0 || pick(3) == 0) return Term::id(cod);
    // split cod into a tensor, or postcompose a generator with matching cod
    if (cod > 0 && pick(2) == 0) {
      int left = pick(cod + 1);
      return Term::tensor(coterm(left, depth - 1), coterm(cod - left, depth - 1));
    }
    std::vector<GenId> cands;
    for (int i = 0; i < kGenCount; ++i) {
      GenId g = static_cast<GenId>(i);
      if (!hr().gens.count(g)) continue;
      if (gen_info(g).cod <= cod) cands.push_back(g);
    }
    if (cands.empty()) return Term::id(cod);
    GenId g = cands[pick(static_cast<int>(cands.size()))];
    int pad_left = pick(cod - gen_info(g).cod + 1);
    int pad_right = cod - gen_info(g).cod - pad_left;
    TermPtr row = Term::tensor(Term::tensor(Term::id(pad_left), Term::gen(g)),
                               Term::id(pad_right));
    int need = pad_left + gen_info(g).dom + pad_right;
    return Term::comp(row, coterm(need, depth - 1));
  }

  TermPtr leaf() {
    std::vector<GenId> gens(hr().gens.begin(), hr().gens.end());
    switch (pick(3)) {
      case 0: return Term::id(pick(3));
      default: return Term::gen(gens[pick(static_cast<int>(gens.size()))]);
    }
  }
};

// --- structural-law mutations -------------------------------------------------

using Mutator = TermPtr (*)(const TermPtr&, std::mt19937&);

TermPtr rewrite_random_node(const TermPtr& t, std::mt19937& rng,
                            TermPtr (*local)(const TermPtr&, std::mt19937&));

// Applies one random structural rewrite somewhere in the tree.
TermPtr mutate(const TermPtr& t, std::mt19937& rng) {
  auto local = [](const TermPtr& n, std::mt19937& rng2) -> TermPtr {
    std::uniform_int_distribution<int> d(0, 8);
    switch (d(rng2)) {
      case 0:  // comp re-association
        if (n->kind() == Term::Kind::Comp && n->before()->kind() == Term::Kind::Comp)
          return Term::comp(Term::comp(n->after(), n->before()->after()),
                            n->before()->before());
        if (n->kind() == Term::Kind::Comp && n->after()->kind() == Term::Kind::Comp)
          return Term::comp(n->after()->after(),
                            Term::comp(n->after()->before(), n->before()));
        break;
      case 1:  // tensor re-association
        if (n->kind() == Term::Kind::Tensor && n->right()->kind() == Term::Kind::Tensor)
          return Term::tensor(Term::tensor(n->left(), n->right()->left()),
                              n->right()->right());
        if (n->kind() == Term::Kind::Tensor && n->left()->kind() == Term::Kind::Tensor)
          return Term::tensor(n->left()->left(),
                              Term::tensor(n->left()->right(), n->right()));
        break;
      case 2: {  // identity insertion (composition)
        Arity a = typecheck(n, Signature{hr().gens, nullptr});
        return Term::comp(n, Term::id(a.dom));
      }
      case 3: {  // identity insertion (unit object)
        return Term::tensor(n, Term::id(0));
      }
      case 4: {  // interchange: (f2.f1) x (g2.g1) <-> (f2 x g2).(f1 x g1)
        if (n->kind() == Term::Kind::Tensor &&
            n->left()->kind() == Term::Kind::Comp &&
            n->right()->kind() == Term::Kind::Comp)
          return Term::comp(Term::tensor(n->left()->after(), n->right()->after()),
                            Term::tensor(n->left()->before(), n->right()->before()));
        if (n->kind() == Term::Kind::Comp &&
            n->after()->kind() == Term::Kind::Tensor &&
            n->before()->kind() == Term::Kind::Tensor) {
          Signature sig{hr().gens, nullptr};
          Arity al = typecheck(n->after()->left(), sig);
          Arity bl = typecheck(n->before()->left(), sig);
          if (al.dom == bl.cod)
            return Term::tensor(Term::comp(n->after()->left(), n->before()->left()),
                                Term::comp(n->after()->right(), n->before()->right()));
        }
        break;
      }
      case 5: {  // identity removal
        if (n->kind() == Term::Kind::Comp && n->before()->kind() == Term::Kind::Id)
          return n->after();
        if (n->kind() == Term::Kind::Comp && n->after()->kind() == Term::Kind::Id)
          return n->before();
        break;
      }
      case 6: {  // split an identity
        if (n->kind() == Term::Kind::Id && n->id_width() >= 1) {
          std::uniform_int_distribution<int> s(0, n->id_width());
          int k = s(rng2);
          return Term::tensor(Term::id(k), Term::id(n->id_width() - k));
        }
        break;
      }
      case 7: {  // slide a floating closed factor across the product
        Signature plain{hr().gens, nullptr};
        if (n->kind() == Term::Kind::Tensor) {
          Arity l = typecheck(n->left(), plain);
          Arity r = typecheck(n->right(), plain);
          if ((l.dom == 0 && l.cod == 0) || (r.dom == 0 && r.cod == 0))
            return Term::tensor(n->right(), n->left());
        }
        break;
      }
      case 8: {  // zero-width interface: A . C <-> A * C <-> C * A
        Signature plain{hr().gens, nullptr};
        if (n->kind() == Term::Kind::Comp) {
          Arity a = typecheck(n->after(), plain);
          if (a.dom == 0)  // the interface is the unit object
            return Term::tensor(n->after(), n->before());
        }
        if (n->kind() == Term::Kind::Tensor) {
          Arity l = typecheck(n->left(), plain);
          Arity r = typecheck(n->right(), plain);
          if (l.dom == 0 && r.cod == 0) return Term::comp(n->left(), n->right());
        }
        break;
      }
    }
    return nullptr;
  };
  return rewrite_random_node(t, rng, local);
}

TermPtr rewrite_random_node(const TermPtr& t, std::mt19937& rng,
                            TermPtr (*local)(const TermPtr&, std::mt19937&)) {
  // Collect nodes, try the local rewrite at a random one; keep the term
  // unchanged if nothing applies there.
  std::vector<const Term*> nodes;
  std::function<void(const TermPtr&)> walk = [&](const TermPtr& n) {
    nodes.push_back(n.get());
    if (n->kind() == Term::Kind::Comp || n->kind() == Term::Kind::Tensor) {
      walk(n->left());
      walk(n->right());
    }
  };
  walk(t);
  const Term* target = nodes[std::uniform_int_distribution<std::size_t>(
      0, nodes.size() - 1)(rng)];
  std::function<TermPtr(const TermPtr&)> rebuild = [&](const TermPtr& n) -> TermPtr {
    if (n.get() == target) {
      TermPtr r = local(n, rng);
      return r ? r : n;
    }
    if (n->kind() == Term::Kind::Comp)
      return Term::comp(rebuild(n->after()), rebuild(n->before()));
    if (n->kind() == Term::Kind::Tensor)
      return Term::tensor(rebuild(n->left()), rebuild(n->right()));
    return n;
  };
  return rebuild(t);
}

}  // namespace

TEST_CASE("canonical form absorbs the structural laws") {
  // The interchange example: both arrangements give the identical diagram.
  CHECK(C("(mul * id[1]) . (id[2] * ant)") == C("mul * ant"));
  CHECK(C("(id[1] * ant) . (mul * id[1])") == C("mul * ant"));
}

TEST_CASE("identity and unit-object normalization") {
  CHECK(C("cop * id[0]") == C("cop"));
  CHECK(C("id[0] * cop") == C("cop"));
  CHECK(C("cop . id[1]") == C("cop"));
  Diagram d = C("id[3]");
  CHECK(d.box_count() == 0);
  CHECK(d.dom == 3);
  CHECK(d.cod() == 3);
  CHECK(d.layers.empty());
}

TEST_CASE("typing preservation under canonicalization") {
  Signature sig = hr().sig();
  for (const char* s : {"mu", "rho_l . mul", "alpha[2]", "(cou * id[1]) . cop"}) {
    TermPtr t = P(s);
    Arity a = typecheck(t, sig);
    Diagram d = canonicalize(t, sig);
    CHECK(d.dom == a.dom);
    CHECK(d.cod() == a.cod);
  }
}

TEST_CASE("canonicalization is idempotent through the term view") {
  Signature sig = hr().sig();
  for (const char* s :
       {"mu", "alpha[2]", "cpr . cou", "(mul * mul) . (id[1] * cpr * id[1])",
        "cointg . intg", "(cointg . intg) * mul"}) {
    Diagram d = canonicalize(P(s), sig);
    CHECK(canonicalize(diagram_to_term(d), sig) == d);
  }
}

TEST_CASE("floating closed components are hoisted deterministically") {
  // All three expressions denote the same diagram.
  Diagram a = C("(rib_inv . rib_inv . unit) . (cou . unit)");
  Diagram b = C("(cou . unit) * (rib_inv . rib_inv . unit)");
  Diagram c = C("(rib_inv . rib_inv . unit) * (cou . unit)");
  CHECK(a == b);
  CHECK(b == c);
}

TEST_CASE("structural confluence on random terms") {
  Signature plain{hr().gens, nullptr};
  std::mt19937 seed_rng(20240811);
  int done = 0;
  while (done < 1000) {
    Gen g(seed_rng());
    TermPtr t = g.term(4);
    Arity a = typecheck(t, plain);
    if (a.dom > 6 || a.cod > 6) continue;  // keep the workload desk-scale
    Diagram base = canonicalize(t, plain);
    TermPtr mutated = t;
    for (int k = 0; k < 10; ++k) mutated = mutate(mutated, g.rng);
    Arity ma = typecheck(mutated, plain);
    REQUIRE(ma.dom == a.dom);
    REQUIRE(ma.cod == a.cod);
    CHECK(canonicalize(mutated, plain) == base);
    ++done;
  }
}

TEST_CASE("round trip through printing on random terms") {
  Signature plain{hr().gens, nullptr};
  std::mt19937 seed_rng(987123);
  for (int i = 0; i < 200; ++i) {
    Gen g(seed_rng());
    TermPtr t = g.term(3);
    TermPtr back = parse(print(t), &hr().macros);
    CHECK(canonicalize(back, hr().sig()) == canonicalize(t, plain));
  }
}

TEST_CASE("block braidings cancel against their formal inverses") {
  // After cancelling the elementary braiding against its inverse, the
  // composite of a block braiding with its mirrored inverse family is the
  // identity diagram.
  const Theory& th = hr();
  const RewriteRule* b1 = th.find_rule("b1");
  const RewriteRule* b1p = th.find_rule("b1p");
  REQUIRE(b1);
  REQUIRE(b1p);
  Signature sig = th.sig();
  for (int m = 0; m <= 4; ++m) {
    for (int n = 0; m + n <= 4; ++n) {
      TermPtr fwd = braiding_family(m, n);
      TermPtr bwd = formal_inverse(fwd);
      Diagram d = canonicalize(Term::comp(bwd, fwd), sig);
      // cancel with the braid-inverse pair only
      bool progress = true;
      while (progress) {
        progress = false;
        for (const RewriteRule* r : {b1, b1p}) {
          auto ms = find_matches(d, r->lhs);
          if (!ms.empty()) {
            d = apply_rule(d, *r, Dir::Fwd, ms.front());
            progress = true;
            break;
          }
        }
      }
      INFO("m=", m, " n=", n);
      CHECK(d == canonicalize(Term::id(m + n), sig));
    }
  }
}
