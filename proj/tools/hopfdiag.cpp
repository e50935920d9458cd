#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hopfdiag/gamma.hpp"
#include "hopfdiag/model.hpp"
#include "hopfdiag/render.hpp"
#include "hopfdiag/rewrite.hpp"
#include "hopfdiag/suites.hpp"

using namespace hopfdiag;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Theory theory_for(const std::string& name, const std::vector<std::string>& extra) {
  auto id = theory_by_name(name);
  if (!id) throw std::runtime_error("unknown theory '" + name + "'");
  return load_theory(*id, extra);
}

std::string peek_theory(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("theory:", 0) == 0) {
      std::string t = line.substr(7);
      t.erase(0, t.find_first_not_of(' '));
      std::size_t e = t.find_last_not_of(" \t\r");
      return e == std::string::npos ? t : t.substr(0, e + 1);
    }
  return "hr";
}

HopfModel model_for(const std::string& name_or_path) {
  for (const std::string& b : builtin_model_names())
    if (name_or_path == b) return builtin_model(name_or_path);
  if (name_or_path.rfind("fun:", 0) == 0) {
    GroupTable g = GroupTable::from_text(slurp(name_or_path.substr(4)), name_or_path.substr(4));
    return function_algebra(g);
  }
  GroupTable g = GroupTable::from_text(slurp(name_or_path), name_or_path);
  return group_algebra(g);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diagrammatic calculus for ribbon Hopf algebra presentations"};
  app.require_subcommand(1);

  std::string theory = "hr";
  std::vector<std::string> rule_files;
  app.add_option("--theory", theory, "hr|hbb|hbb-alt|algbar")->capture_default_str();
  app.add_option("--rules", rule_files, "extra rule files merged on top");

  // check FILE
  std::string check_file;
  CLI::App* c_check = app.add_subcommand("check", "validate a rule or proof file");
  c_check->add_option("file", check_file)->required();

  // normalize TERM
  std::string norm_term;
  CLI::App* c_norm = app.add_subcommand("normalize", "print the canonical form of a term");
  c_norm->add_option("term", norm_term)->required();

  // eq A B
  std::string eq_a, eq_b;
  SearchBudget budget;
  bool eq_serial = false;
  CLI::App* c_eq = app.add_subcommand("eq", "search for a rewrite path between two terms");
  c_eq->add_option("a", eq_a)->required();
  c_eq->add_option("b", eq_b)->required();
  c_eq->add_option("--max-steps", budget.max_steps, "steps per side")->capture_default_str();
  c_eq->add_option("--max-size", budget.max_diagram, "box-count cap")->capture_default_str();
  c_eq->add_option("--max-frontier", budget.max_frontier, "frontier cap")->capture_default_str();
  c_eq->add_flag("--serial", eq_serial, "disable parallel frontier expansion");

  // prove FILE
  std::string prove_file;
  CLI::App* c_prove = app.add_subcommand("prove", "replay and check a proof script");
  c_prove->add_option("file", prove_file)->required();

  // eval TERM --model M
  std::string eval_term, eval_model = "s3";
  bool eval_serial = false;
  CLI::App* c_eval = app.add_subcommand("eval", "evaluate a term in an exact model");
  c_eval->add_option("term", eval_term)->required();
  c_eval->add_option("--model", eval_model, "trivial|z2|z3|s3|fun-s3|fun-z3|FILE|fun:FILE")
      ->capture_default_str();
  c_eval->add_flag("--serial", eval_serial, "use the serial reference evaluator");

  // suite NAME
  std::string suite_name;
  bool suite_json = false, suite_timings = false;
  std::vector<std::string> suite_models;
  CLI::App* c_suite = app.add_subcommand("suite", "run a verification suite");
  c_suite->add_option("name", suite_name, "axioms|independence|gamma|alt-axioms|adjoint")
      ->required();
  c_suite->add_flag("--json", suite_json, "machine-readable output");
  c_suite->add_flag("--timings", suite_timings, "include timings (not byte-stable)");
  c_suite->add_option("--model", suite_models, "models for the axioms suite");

  // translate TERM
  std::string tr_term;
  CLI::App* c_tr = app.add_subcommand("translate", "apply the translation functor");
  c_tr->add_option("term", tr_term)->required();

  // render TERM
  std::string render_term, render_fmt = "text", render_out;
  CLI::App* c_render = app.add_subcommand("render", "render the canonical diagram");
  c_render->add_option("term", render_term)->required();
  c_render->add_option("--format", render_fmt, "svg|text")->capture_default_str();
  c_render->add_option("-o,--out", render_out, "output file (default stdout)");

  // fix-script FILE
  std::string fix_file, fix_out;
  CLI::App* c_fix = app.add_subcommand("fix-script",
                                       "resolve '?' positions in a proof script");
  c_fix->add_option("file", fix_file)->required();
  c_fix->add_option("-o,--out", fix_out, "write the resolved script here");

  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_check) {
      if (check_file.size() > 6 &&
          check_file.compare(check_file.size() - 6, 6, ".proof") == 0) {
        std::string text = slurp(check_file);
        Theory th = theory_for(peek_theory(text), rule_files);
        ProofScript sc = parse_proof_script(text, &th.macros);
        CheckResult res = check_proof(sc, th);
        if (res.accepted) {
          std::cout << "accepted\n";
          return 0;
        }
        std::cout << "rejected at step " << res.failed_step << ": " << res.reason << "\n";
        return 1;
      }
      Theory th = theory_for(theory, {});
      merge_rules_text(th, slurp(check_file), check_file);
      std::cout << "ok: " << th.rules.size() << " rules type-checked\n";
      return 0;
    }

    if (*c_norm) {
      Theory th = theory_for(theory, rule_files);
      Diagram d = canonicalize(parse(norm_term, &th.macros), th.sig());
      std::cout << print(diagram_to_term(d)) << "\n";
      return 0;
    }

    if (*c_eq) {
      Theory th = theory_for(theory, rule_files);
      TermPtr a = parse(eq_a, &th.macros);
      TermPtr b = parse(eq_b, &th.macros);
      SearchStats stats;
      auto found = search_equal(a, b, th, budget, &stats, !eq_serial);
      if (!found) {
        std::cout << "NOT FOUND within budget (expanded " << stats.expanded
                  << " states)\n";
        return 1;
      }
      std::cout << format_proof_script(*found);
      return 0;
    }

    if (*c_prove) {
      std::string text = slurp(prove_file);
      Theory th = theory_for(peek_theory(text), rule_files);
      ProofScript sc = parse_proof_script(text, &th.macros);
      CheckResult res = check_proof(sc, th);
      if (res.accepted) {
        std::cout << "Accepted\n";
        return 0;
      }
      std::cout << "Rejected at step " << res.failed_step << ": " << res.reason << "\n";
      return 1;
    }

    if (*c_eval) {
      HopfModel m = model_for(eval_model);
      Signature sig;
      for (const auto& [g, mat] : m.maps) sig.gens.insert(g);
      Theory th = theory_for(theory, rule_files);
      TermPtr t = expand_macros(parse(eval_term, &th.macros), th.macros);
      SpMat out = evaluate(canonicalize(t, sig), m,
                           eval_serial ? EvalMode::Serial : EvalMode::Parallel);
      std::cout << out.rows() << "x" << out.cols() << "\n" << out.to_text();
      return 0;
    }

    if (*c_suite) {
      Report rep;
      if (suite_name == "axioms" && !suite_models.empty())
        rep = axioms_suite(suite_models);
      else if (suite_name == "independence" && !suite_models.empty())
        rep = independence_suite(suite_models.front());
      else
        rep = run_suite(suite_name);
      std::cout << (suite_json ? rep.json(suite_timings) : rep.text(suite_timings));
      return rep.ok() ? 0 : 1;
    }

    if (*c_tr) {
      Theory algbar = theory_for("algbar", {});
      TermPtr t = expand_macros(parse(tr_term, &algbar.macros), algbar.macros);
      typecheck(t, algbar.sig());
      std::cout << print(gamma_translate(t)) << "\n";
      return 0;
    }

    if (*c_render) {
      Theory th = theory_for(theory, rule_files);
      Diagram d = canonicalize(parse(render_term, &th.macros), th.sig());
      std::string out = render_fmt == "svg" ? render_svg(d) : render_text(d);
      if (render_out.empty()) {
        std::cout << out;
      } else {
        std::ofstream f(render_out);
        f << out;
      }
      return 0;
    }

    if (*c_fix) {
      std::string text = slurp(fix_file);
      Theory th = theory_for(peek_theory(text), rule_files);
      ProofScript sc = parse_proof_script(text, &th.macros);
      auto fixed = resolve_script(sc, th);
      if (!fixed) {
        std::cout << "no resolution found\n";
        return 1;
      }
      std::string out = format_proof_script(*fixed);
      if (fix_out.empty()) {
        std::cout << out;
      } else {
        std::ofstream f(fix_out);
        f << out;
      }
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    std::cerr << "term grammar: term := prod ( \".\" prod )* ; prod := atom ( \"*\" atom )* ;\n"
              << "              atom := \"id\" \"[\" NAT \"]\" | IDENT | IDENT \"[\" NAT \"]\" | \"(\" term \")\"\n";
    return 2;
  } catch (const TypeError& e) {
    std::cerr << "type error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
