#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hopfdiag {

// The fixed generator universe. Theories pick subsets; arities never vary.
//
//   cop      comultiplication   1 -> 2
//   cou      counit             1 -> 0
//   mul      multiplication     2 -> 1
//   unit     unit               0 -> 1
//   ant      antipode           1 -> 1
//   ant_inv  inverse antipode   1 -> 1
//   br       braiding           2 -> 2
//   br_inv   inverse braiding   2 -> 2
//   intg     integral           0 -> 1
//   cointg   cointegral         1 -> 0
//   rib      ribbon             1 -> 1
//   rib_inv  inverse ribbon     1 -> 1
//   cpr      copairing          0 -> 2
//   pr       pairing            2 -> 0
//   wp       ribbon element     0 -> 1
//   wm       inverse element    0 -> 1
enum class GenId : int {
  Cop, Cou, Mul, Unit, Ant, AntInv, Br, BrInv,
  Intg, Cointg, Rib, RibInv, Cpr, Pr, Wp, Wm,
};
inline constexpr int kGenCount = 16;

struct GenInfo {
  const char* name;
  int dom;
  int cod;
};

const GenInfo& gen_info(GenId g);
std::optional<GenId> gen_by_name(std::string_view name);

struct Arity {
  int dom = 0;
  int cod = 0;
  friend bool operator==(const Arity&, const Arity&) = default;
};

class Term;
using TermPtr = std::shared_ptr<const Term>;

// Immutable morphism expression. `comp(f, g)` is f after g (g drawn below);
// `tensor(f, g)` puts f left of g. Macro nodes are placeholders resolved by
// expand_macros against a theory's macro table.
class Term {
 public:
  enum class Kind { Id, Gen, Comp, Tensor, Macro };

  static TermPtr id(int width);
  static TermPtr gen(GenId g);
  static TermPtr comp(TermPtr after, TermPtr before);
  static TermPtr tensor(TermPtr left, TermPtr right);
  static TermPtr macro(std::string name, std::optional<int> arg = std::nullopt);

  Kind kind() const { return kind_; }
  int id_width() const { return width_; }
  GenId gen_id() const { return gen_; }
  const TermPtr& after() const { return a_; }
  const TermPtr& before() const { return b_; }
  const TermPtr& left() const { return a_; }
  const TermPtr& right() const { return b_; }
  const std::string& macro_name() const { return name_; }
  std::optional<int> macro_arg() const { return arg_; }

 private:
  Kind kind_ = Kind::Id;
  int width_ = 0;
  GenId gen_ = GenId::Cop;
  TermPtr a_, b_;
  std::string name_;
  std::optional<int> arg_;
};

struct ParseError : std::runtime_error {
  int line, column;
  ParseError(const std::string& msg, int l, int c)
      : std::runtime_error(msg + " at " + std::to_string(l) + ":" + std::to_string(c)),
        line(l), column(c) {}
};

struct TypeError : std::runtime_error {
  std::string path;  // comp/tensor trail down to the offending node
  TypeError(const std::string& msg, std::string p)
      : std::runtime_error(p.empty() ? msg : msg + " (at " + p + ")"), path(std::move(p)) {}
};

// A parameterized macro expander: arg is the optional [n] suffix.
using MacroFn = std::function<TermPtr(std::optional<int>)>;
using MacroTable = std::map<std::string, MacroFn>;

struct Signature {
  std::set<GenId> gens;
  const MacroTable* macros = nullptr;  // optional; used by typecheck of Macro nodes

  bool contains(GenId g) const { return gens.count(g) != 0; }
};

// Returns (dom, cod) or throws TypeError naming the offending subterm.
Arity typecheck(const TermPtr& t, const Signature& sig);

// Parses the term grammar:
//   term := prod ( "." prod )* ;   prod := atom ( "*" atom )*
//   atom := "id" "[" NAT "]" | IDENT | IDENT "[" NAT "]" | "(" term ")"
// "." composes right-to-left (f . g means f after g); "*" is the monoidal
// product. Identifiers are generator names or macro names from `macros`.
TermPtr parse(std::string_view src, const MacroTable* macros = nullptr);

// Fully parenthesized text; parse(print(t)) is structurally congruent to t.
std::string print(const TermPtr& t);

// Replaces macro nodes by their expansions (recursively).
TermPtr expand_macros(const TermPtr& t, const MacroTable& macros);

// Block braiding moving the first m strands past the last n, built from the
// elementary braiding; (m,0) and (0,n) are identities, (1,1) is br.
TermPtr braiding_family(int m, int n);

// Formal inverse: reverses compositions and swaps each generator with its
// inverse partner (br <-> br_inv, ant <-> ant_inv, rib <-> rib_inv). Only
// defined for terms built from invertible generators and identities.
TermPtr formal_inverse(const TermPtr& t);

}  // namespace hopfdiag
