#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "hopfdiag/rewrite.hpp"
#include "hopfdiag/theory.hpp"

using namespace hopfdiag;

TEST_CASE("built-in theories load and type-check") {
  Theory hr = load_theory(TheoryId::HR);
  CHECK(hr.gens.size() == 13);
  CHECK(hr.find_rule("a1"));
  CHECK(hr.find_rule("r9"));
  CHECK(hr.find_rule("i3"));
  CHECK(hr.slots == std::vector<std::string>{"q7p", "q8"});

  Theory hbb = load_theory(TheoryId::HBB);
  CHECK(hbb.gens == hr.gens);
  CHECK(hbb.find_rule("d"));
  CHECK(hbb.find_rule("n"));
  CHECK(hbb.rules.size() == hr.rules.size() + 6);

  Theory algbar = load_theory(TheoryId::ALGBAR);
  CHECK(algbar.gens.size() == 12);
  CHECK(!algbar.gens.count(GenId::Intg));
  CHECK(!algbar.gens.count(GenId::Rib));
  CHECK(algbar.gens.count(GenId::Wp));
  CHECK(algbar.find_rule("h12"));
}

TEST_CASE("every rule has equal arities on both sides") {
  for (TheoryId id : {TheoryId::HR, TheoryId::HBB, TheoryId::HBB_ALT, TheoryId::ALGBAR}) {
    Theory th = load_theory(id);
    Signature sig = th.sig();
    for (const RewriteRule& r : th.rules) {
      Arity l = typecheck(r.lhs_term, sig);
      Arity rr = typecheck(r.rhs_term, sig);
      CHECK(l == rr);
      CHECK(r.lhs.dom == r.rhs.dom);
      CHECK(r.lhs.cod() == r.rhs.cod());
    }
  }
}

TEST_CASE("alias coherence of the quotient relations") {
  Theory hbb = load_theory(TheoryId::HBB);
  Signature sig = hbb.sig();
  const RewriteRule* d = hbb.find_rule("d");
  REQUIRE(d);
  Arity a = typecheck(d->lhs_term, sig);
  CHECK(a.dom == 0);
  CHECK(a.cod == 1);
  const RewriteRule* n = hbb.find_rule("n");
  REQUIRE(n);
  a = typecheck(n->lhs_term, sig);
  CHECK(a.dom == 0);
  CHECK(a.cod == 0);
}

TEST_CASE("ribbon-braiding compatibility types at (2,2) after expansion") {
  Theory hr = load_theory(TheoryId::HR);
  const RewriteRule* r9 = hr.find_rule("r9");
  REQUIRE(r9);
  Arity a = typecheck(r9->lhs_term, hr.sig());
  CHECK(a.dom == 2);
  CHECK(a.cod == 2);
}

TEST_CASE("the alternative presentation swaps the ribbon compatibility pair") {
  Theory alt = load_theory(TheoryId::HBB_ALT);
  const RewriteRule* q = alt.find_rule("q");
  REQUIRE(q);
  CHECK(q->status == RuleStatus::Axiom);
  const RewriteRule* r8 = alt.find_rule("r8");
  REQUIRE(r8);
  CHECK(r8->status == RuleStatus::Derived);
  const RewriteRule* h10 = alt.find_rule("h10");
  REQUIRE(h10);
  CHECK(h10->status == RuleStatus::Axiom);
}

TEST_CASE("ill-typed user rules are rejected with the rule name") {
  Theory hr = load_theory(TheoryId::HR);
  CHECK_THROWS_AS(merge_rules_text(hr, "rule bad [axiom] : mul = cop", "user"),
                  RuleError);
  try {
    merge_rules_text(hr, "rule bad [axiom] : mul = cop", "user");
  } catch (const RuleError& e) {
    CHECK(std::string(e.what()).find("bad") != std::string::npos);
  }
}

TEST_CASE("user rule files merge on top by name") {
  Theory hr = load_theory(TheoryId::HR);
  std::size_t before = hr.rules.size();
  merge_rules_text(hr, "rule extra [reconstructed validated=trivial] : ant . ant_inv = id[1]",
                   "user");
  CHECK(hr.rules.size() == before + 1);
  merge_rules_text(hr, "rule extra [axiom] : ant_inv . ant = id[1]", "user");
  CHECK(hr.rules.size() == before + 1);
  CHECK(hr.find_rule("extra")->status == RuleStatus::Axiom);
}

TEST_CASE("script evidence registers a derived rule") {
  Theory hr = load_theory(TheoryId::HR);
  RewriteRule lemma;
  lemma.name = "h5_lemma";
  lemma.lhs_term = expand_macros(parse("cop . rib_inv . unit", &hr.macros), hr.macros);
  lemma.rhs_term =
      expand_macros(parse("(rib_inv * rib_inv) . cpr", &hr.macros), hr.macros);

  std::string text = detail::load_data_file("proofs/lemma_h5.proof");
  ProofScript script = parse_proof_script(text, &hr.macros);
  Evidence ev = script_evidence(script, hr, lemma);
  CHECK(ev.validated);
  Theory grown = register_derived(hr, lemma, ev);
  const RewriteRule* got = grown.find_rule("h5_lemma");
  REQUIRE(got);
  CHECK(got->status == RuleStatus::Derived);

  // Evidence against mismatched endpoints is rejected.
  RewriteRule other = lemma;
  other.rhs_term = expand_macros(parse("cpr", &hr.macros), hr.macros);
  Evidence bad = script_evidence(script, hr, other);
  CHECK_FALSE(bad.validated);
  CHECK_THROWS_AS(register_derived(hr, other, bad), RuleError);
}

TEST_CASE("braiding-sign variant file swaps the conjugation law") {
  Theory alt = load_theory(TheoryId::HBB_ALT);
  Diagram before = alt.find_rule("h10")->lhs;
  merge_rules_text(alt, detail::load_data_file("theories/variants/h10_signs.rules"),
                   "variant");
  const RewriteRule* h10 = alt.find_rule("h10");
  REQUIRE(h10);
  CHECK(h10->status == RuleStatus::Reconstructed);
  CHECK_FALSE(h10->lhs == before);
}

TEST_CASE("data directory override") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "hopfdiag_data_test";
  fs::create_directories(dir / "theories");
  {
    std::ofstream out(dir / "theories" / "hbb.rules");
    out << "rule d [axiom] : (lam * id[1]) . cpr = Lam\n";
  }
  setenv("HOPFDIAG_DATA_DIR", dir.c_str(), 1);
  Theory hbb = load_theory(TheoryId::HBB);
  unsetenv("HOPFDIAG_DATA_DIR");
  CHECK(hbb.find_rule("d"));
  CHECK_FALSE(hbb.find_rule("n"));  // the override file dropped it
  Theory builtin = load_theory(TheoryId::HBB);
  CHECK(builtin.find_rule("n"));
}
