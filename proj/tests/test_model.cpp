#include <doctest.h>

#include <random>

#include "hopfdiag/model.hpp"
#include "hopfdiag/suites.hpp"

using namespace hopfdiag;

namespace {
TermPtr P(const std::string& s) {
  return parse(s, &suite_theory(TheoryId::HR).macros);
}
Diagram C(const std::string& s) {
  const Theory& th = suite_theory(TheoryId::HR);
  return canonicalize(P(s), th.sig());
}
}  // namespace

TEST_CASE("group tables validate") {
  GroupTable s3 = GroupTable::s3();
  CHECK(s3.order == 6);
  CHECK_FALSE(s3.abelian());
  CHECK(GroupTable::z3().abelian());
  GroupTable bad;
  bad.order = 2;
  bad.mul = {{0, 0}, {0, 0}};
  CHECK_THROWS_AS(bad.validate(), ModelError);
  CHECK_THROWS_AS(GroupTable::from_text("2\n0 1\n1 2\n", "x"), ModelError);
  GroupTable z2 = GroupTable::from_text("2\n0 1\n1 0\n", "file-z2");
  CHECK(z2.identity == 0);
}

TEST_CASE("trivial evaluations") {
  const HopfModel& z2 = suite_model("z2");
  SpMat one = evaluate(C("cou . unit"), z2);
  CHECK(one.rows() == 1);
  CHECK(one.cols() == 1);
  CHECK(one.at(0, 0) == Rat(1));

  // counit-comultiplication cancellation is the identity matrix
  SpMat id2 = evaluate(C("(cou * id[1]) . cop"), z2);
  CHECK(id2 == SpMat::identity(2));

  // the integral pair pairs to 1
  SpMat pair = evaluate(C("cointg . intg"), z2);
  CHECK(pair.at(0, 0) == Rat(1));
}

TEST_CASE("copairing of the group algebra is the unit square") {
  const HopfModel& s3 = suite_model("s3");
  SpMat sigma = evaluate(C("cpr"), s3);
  CHECK(sigma.rows() == 36);
  CHECK(sigma.cols() == 1);
  CHECK(sigma.nnz() == 1);  // e (x) e
  CHECK(sigma.at(0, 0) == Rat(1));
}

TEST_CASE("model tags") {
  CHECK(suite_model("s3").theory_tags.count("hr"));
  CHECK(!suite_model("s3").theory_tags.count("hbb"));
  CHECK(suite_model("trivial").theory_tags.count("hbb"));
  CHECK(!suite_model("fun-s3").theory_tags.count("hr"));
  CHECK(suite_model("fun-s3").failing.count("r8"));
  CHECK(suite_model("fun-z3").theory_tags.count("hr"));
}

TEST_CASE("selfduality fails in a group algebra") {
  const Theory& hbb = suite_theory(TheoryId::HBB);
  const RewriteRule* d = hbb.find_rule("d");
  REQUIRE(d);
  RuleCheck rc = check_rule_in_model(*d, suite_model("z2"));
  CHECK_FALSE(rc.holds);
}

TEST_CASE("uninterpreted generators are reported") {
  const HopfModel& s3 = suite_model("s3");
  const Theory& algbar = suite_theory(TheoryId::ALGBAR);
  TermPtr wp = parse("wp", &algbar.macros);
  CHECK_THROWS_AS(evaluate(wp, s3), TypeError);  // not in the model's signature
}

TEST_CASE("functoriality of evaluation on random pairs") {
  const HopfModel& z2 = suite_model("z2");
  const Theory& hr = suite_theory(TheoryId::HR);
  Signature sig = hr.sig();
  std::mt19937 rng(5150);
  std::vector<GenId> gens(hr.gens.begin(), hr.gens.end());
  auto random_term = [&](auto&& self, int depth) -> TermPtr {
    std::uniform_int_distribution<int> d(0, 3);
    if (depth == 0 || d(rng) == 0) {
      std::uniform_int_distribution<int> pick(0, static_cast<int>(gens.size()));
      int k = pick(rng);
      if (k == static_cast<int>(gens.size())) return Term::id(1);
      return Term::gen(gens[k]);
    }
    TermPtr l = self(self, depth - 1);
    TermPtr r = self(self, depth - 1);
    return Term::tensor(l, r);
  };
  int done = 0;
  while (done < 500) {
    TermPtr f = random_term(random_term, 2);
    TermPtr g = random_term(random_term, 2);
    Arity fa = typecheck(f, sig), ga = typecheck(g, sig);
    if (fa.dom > 5 || fa.cod > 5 || ga.dom > 5 || ga.cod > 5) continue;
    // tensor law
    SpMat lhs = evaluate(canonicalize(Term::tensor(f, g), sig), z2);
    SpMat rhs = SpMat::kron(evaluate(canonicalize(f, sig), z2),
                            evaluate(canonicalize(g, sig), z2));
    CHECK(lhs == rhs);
    // composition law (when composable)
    if (ga.cod == fa.dom) {
      SpMat c = evaluate(canonicalize(Term::comp(f, g), sig), z2);
      SpMat m = evaluate(canonicalize(f, sig), z2) * evaluate(canonicalize(g, sig), z2);
      CHECK(c == m);
    }
    ++done;
  }
}

TEST_CASE("braiding family evaluates to the block transposition") {
  const HopfModel& z2 = suite_model("z2");
  const Theory& hr = suite_theory(TheoryId::HR);
  Signature sig = hr.sig();
  SpMat got = evaluate(canonicalize(braiding_family(1, 2), sig), z2);
  // moves strand 1 past strands 2,3: e_{a,b,c} -> e_{b,c,a}
  int d = 2;
  SpMat want(8, 8);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        want.set((b * d + c) * d + a, (a * d + b) * d + c, Rat(1));
  CHECK(got == want);
}

TEST_CASE("oracle evidence validates rules") {
  const Theory& hr = suite_theory(TheoryId::HR);
  const RewriteRule* a1 = hr.find_rule("a1");
  const HopfModel& z3 = suite_model("z3");
  const HopfModel& s3 = suite_model("s3");
  Evidence ev = oracle_evidence(*a1, {&z3, &s3});
  CHECK(ev.validated);
  CHECK(ev.detail == "z3,s3");

  // A false statement is rejected.
  RewriteRule fake = *a1;
  fake.name = "fake";
  fake.rhs_term = parse("br . cop", &hr.macros);
  fake.rhs = canonicalize(fake.rhs_term, hr.sig());
  Evidence bad = oracle_evidence(fake, {&s3});
  CHECK_FALSE(bad.validated);
  CHECK_THROWS_AS(register_derived(hr, fake, bad), RuleError);
}
