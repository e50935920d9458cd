#include <doctest.h>

#include "hopfdiag/model.hpp"
#include "hopfdiag/suites.hpp"

using namespace hopfdiag;

// The parallel kernels must agree exactly with the serial reference.
TEST_CASE("serial and parallel evaluation agree on every presentation rule") {
  const Theory& hr = suite_theory(TheoryId::HR);
  for (const std::string& mname : {"z3", "s3", "fun-s3"}) {
    const HopfModel& m = suite_model(mname);
    for (const RewriteRule& r : hr.rules) {
      SpMat s = evaluate(r.lhs, m, EvalMode::Serial);
      SpMat p = evaluate(r.lhs, m, EvalMode::Parallel);
      INFO(r.name, " lhs in ", mname);
      CHECK(s == p);
    }
  }
}

TEST_CASE("serial and parallel evaluation agree on wide layers") {
  const Theory& hr = suite_theory(TheoryId::HR);
  const RewriteRule* r9 = hr.find_rule("r9");
  REQUIRE(r9);
  const HopfModel& s3 = suite_model("s3");
  CHECK(evaluate(r9->lhs, s3, EvalMode::Serial) ==
        evaluate(r9->lhs, s3, EvalMode::Parallel));
  CHECK(evaluate(r9->rhs, s3, EvalMode::Serial) ==
        evaluate(r9->rhs, s3, EvalMode::Parallel));
}
