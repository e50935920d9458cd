// Compares the serial reference evaluator against the parallel kernel on
// the presentation-checking workload, and the two search drivers on a
// medium equality query. Results must agree exactly; only time may differ.
#include <chrono>
#include <iostream>

#include "hopfdiag/model.hpp"
#include "hopfdiag/rewrite.hpp"
#include "hopfdiag/suites.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace hopfdiag;

namespace {

template <typename F>
double timed(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "threads: 1 (built without OpenMP)\n";
#endif

  const Theory& hr = suite_theory(TheoryId::HR);
  std::vector<std::string> models = {"s3", "fun-s3"};

  std::cout << "\nrule evaluation over the full presentation (" << hr.rules.size()
            << " rules x " << models.size() << " models)\n";
  for (EvalMode mode : {EvalMode::Serial, EvalMode::Parallel}) {
    double t = timed([&] {
      for (const std::string& mn : models) {
        const HopfModel& m = suite_model(mn);
        for (const RewriteRule& r : hr.rules) {
          SpMat l = evaluate(r.lhs, m, mode);
          SpMat r2 = evaluate(r.rhs, m, mode);
          (void)SpMat::max_diff(l, r2);
        }
      }
    });
    std::cout << (mode == EvalMode::Serial ? "  serial  : " : "  parallel: ") << t
              << " s\n";
  }

  std::cout << "\nwide-layer evaluation (ribbon-braiding compatibility in s3)\n";
  const RewriteRule* r9 = hr.find_rule("r9");
  const HopfModel& s3 = suite_model("s3");
  for (EvalMode mode : {EvalMode::Serial, EvalMode::Parallel}) {
    double t = timed([&] {
      for (int i = 0; i < 10; ++i) (void)evaluate(r9->lhs, s3, mode);
    });
    std::cout << (mode == EvalMode::Serial ? "  serial  : " : "  parallel: ") << t
              << " s (10 iterations)\n";
  }

  std::cout << "\nequality search (counit absorption, budget 4)\n";
  TermPtr a = parse("mul . ((rib_inv . unit) * (rib . unit))", &hr.macros);
  TermPtr b = parse("unit", &hr.macros);
  for (bool parallel : {false, true}) {
    SearchStats stats;
    SearchBudget budget{4, 2000, 24};
    double t = timed([&] { (void)search_equal(a, b, hr, budget, &stats, parallel); });
    std::cout << (parallel ? "  parallel: " : "  serial  : ") << t << " s ("
              << stats.expanded << " states)\n";
  }
  return 0;
}
