#include "hopfdiag/term.hpp"

#include <array>
#include <cctype>
#include <sstream>

namespace hopfdiag {

namespace {

constexpr std::array<GenInfo, kGenCount> kGens = {{
    {"cop", 1, 2},   {"cou", 1, 0},    {"mul", 2, 1},    {"unit", 0, 1},
    {"ant", 1, 1},   {"ant_inv", 1, 1}, {"br", 2, 2},    {"br_inv", 2, 2},
    {"intg", 0, 1},  {"cointg", 1, 0}, {"rib", 1, 1},    {"rib_inv", 1, 1},
    {"cpr", 0, 2},   {"pr", 2, 0},     {"wp", 0, 1},     {"wm", 0, 1},
}};

}  // namespace

const GenInfo& gen_info(GenId g) { return kGens[static_cast<int>(g)]; }

std::optional<GenId> gen_by_name(std::string_view name) {
  for (int i = 0; i < kGenCount; ++i)
    if (name == kGens[i].name) return static_cast<GenId>(i);
  return std::nullopt;
}

TermPtr Term::id(int width) {
  auto t = std::make_shared<Term>();
  t->kind_ = Kind::Id;
  t->width_ = width;
  return t;
}

TermPtr Term::gen(GenId g) {
  auto t = std::make_shared<Term>();
  t->kind_ = Kind::Gen;
  t->gen_ = g;
  return t;
}

TermPtr Term::comp(TermPtr after, TermPtr before) {
  auto t = std::make_shared<Term>();
  t->kind_ = Kind::Comp;
  t->a_ = std::move(after);
  t->b_ = std::move(before);
  return t;
}

TermPtr Term::tensor(TermPtr left, TermPtr right) {
  auto t = std::make_shared<Term>();
  t->kind_ = Kind::Tensor;
  t->a_ = std::move(left);
  t->b_ = std::move(right);
  return t;
}

TermPtr Term::macro(std::string name, std::optional<int> arg) {
  auto t = std::make_shared<Term>();
  t->kind_ = Kind::Macro;
  t->name_ = std::move(name);
  t->arg_ = arg;
  return t;
}

namespace {

Arity typecheck_rec(const TermPtr& t, const Signature& sig, const std::string& path) {
  switch (t->kind()) {
    case Term::Kind::Id:
      if (t->id_width() < 0) throw TypeError("negative identity width", path);
      return {t->id_width(), t->id_width()};
    case Term::Kind::Gen: {
      const GenInfo& gi = gen_info(t->gen_id());
      if (!sig.contains(t->gen_id()))
        throw TypeError(std::string("unknown generator '") + gi.name + "' in this theory", path);
      return {gi.dom, gi.cod};
    }
    case Term::Kind::Comp: {
      Arity f = typecheck_rec(t->after(), sig, path + ".after");
      Arity g = typecheck_rec(t->before(), sig, path + ".before");
      if (g.cod != f.dom)
        throw TypeError("composition mismatch: expected " + std::to_string(f.dom) +
                            " inputs, found " + std::to_string(g.cod),
                        path);
      return {g.dom, f.cod};
    }
    case Term::Kind::Tensor: {
      Arity l = typecheck_rec(t->left(), sig, path + ".left");
      Arity r = typecheck_rec(t->right(), sig, path + ".right");
      return {l.dom + r.dom, l.cod + r.cod};
    }
    case Term::Kind::Macro: {
      if (!sig.macros || !sig.macros->count(t->macro_name()))
        throw TypeError("unknown macro '" + t->macro_name() + "'", path);
      TermPtr body = sig.macros->at(t->macro_name())(t->macro_arg());
      return typecheck_rec(body, sig, path);
    }
  }
  throw TypeError("corrupt term", path);
}

}  // namespace

Arity typecheck(const TermPtr& t, const Signature& sig) {
  return typecheck_rec(t, sig, "");
}

namespace {

struct Parser {
  std::string_view src;
  std::size_t pos = 0;
  int line = 1, col = 1;
  const MacroTable* macros;

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) advance();
  }
  void advance() {
    if (src[pos] == '\n') { ++line; col = 1; } else { ++col; }
    ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) { advance(); return true; }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line, col); }

  int nat() {
    skip_ws();
    if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
      fail("expected a natural number");
    long v = 0;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
      v = v * 10 + (src[pos] - '0');
      if (v > 1'000'000) fail("number too large");
      advance();
    }
    return static_cast<int>(v);
  }

  std::string ident() {
    skip_ws();
    std::string s;
    while (pos < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
      s += src[pos];
      advance();
    }
    if (s.empty()) fail("expected an identifier");
    return s;
  }

  TermPtr atom() {
    skip_ws();
    if (pos >= src.size()) fail("unexpected end of input");
    if (eat('(')) {
      TermPtr t = term();
      if (!eat(')')) fail("expected ')'");
      return t;
    }
    std::string name = ident();
    std::optional<int> arg;
    if (eat('[')) {
      arg = nat();
      if (!eat(']')) fail("expected ']'");
    }
    if (name == "id") {
      if (!arg) fail("id needs a width, e.g. id[1]");
      return Term::id(*arg);
    }
    if (auto g = gen_by_name(name)) {
      if (arg) fail("generator '" + name + "' takes no parameter");
      return Term::gen(*g);
    }
    if (macros && macros->count(name)) return Term::macro(name, arg);
    fail("unknown identifier '" + name + "'");
  }

  TermPtr prod() {
    TermPtr t = atom();
    while (eat('*')) t = Term::tensor(t, atom());
    return t;
  }

  TermPtr term() {
    TermPtr t = prod();
    while (eat('.')) t = Term::comp(t, prod());
    return t;
  }

  TermPtr run() {
    TermPtr t = term();
    skip_ws();
    if (pos != src.size()) fail("trailing input");
    return t;
  }
};

void print_rec(const TermPtr& t, std::ostringstream& os, bool outer) {
  switch (t->kind()) {
    case Term::Kind::Id:
      os << "id[" << t->id_width() << "]";
      return;
    case Term::Kind::Gen:
      os << gen_info(t->gen_id()).name;
      return;
    case Term::Kind::Macro:
      os << t->macro_name();
      if (t->macro_arg()) os << "[" << *t->macro_arg() << "]";
      return;
    case Term::Kind::Comp:
      if (!outer) os << "(";
      print_rec(t->after(), os, false);
      os << " . ";
      print_rec(t->before(), os, false);
      if (!outer) os << ")";
      return;
    case Term::Kind::Tensor:
      if (!outer) os << "(";
      print_rec(t->left(), os, false);
      os << " * ";
      print_rec(t->right(), os, false);
      if (!outer) os << ")";
      return;
  }
}

}  // namespace

TermPtr parse(std::string_view src, const MacroTable* macros) {
  Parser p{src, 0, 1, 1, macros};
  return p.run();
}

std::string print(const TermPtr& t) {
  std::ostringstream os;
  print_rec(t, os, true);
  return os.str();
}

TermPtr expand_macros(const TermPtr& t, const MacroTable& macros) {
  switch (t->kind()) {
    case Term::Kind::Id:
    case Term::Kind::Gen:
      return t;
    case Term::Kind::Comp:
      return Term::comp(expand_macros(t->after(), macros), expand_macros(t->before(), macros));
    case Term::Kind::Tensor:
      return Term::tensor(expand_macros(t->left(), macros), expand_macros(t->right(), macros));
    case Term::Kind::Macro: {
      auto it = macros.find(t->macro_name());
      if (it == macros.end()) throw TypeError("unknown macro '" + t->macro_name() + "'", "");
      return expand_macros(it->second(t->macro_arg()), macros);
    }
  }
  throw TypeError("corrupt term", "");
}

TermPtr braiding_family(int m, int n) {
  if (m < 0 || n < 0) throw std::invalid_argument("braiding_family needs m, n >= 0");
  if (m == 0) return Term::id(n);
  if (n == 0) return Term::id(m);
  if (m == 1 && n == 1) return Term::gen(GenId::Br);
  if (m == 1) {
    // gamma_{1,n} = (id_{n-1} x gamma) . (gamma_{1,n-1} x id)
    return Term::comp(Term::tensor(Term::id(n - 1), Term::gen(GenId::Br)),
                      Term::tensor(braiding_family(1, n - 1), Term::id(1)));
  }
  // gamma_{m,n} = (gamma_{1,n} x id_{m-1}) . (id x gamma_{m-1,n})
  return Term::comp(Term::tensor(braiding_family(1, n), Term::id(m - 1)),
                    Term::tensor(Term::id(1), braiding_family(m - 1, n)));
}

TermPtr formal_inverse(const TermPtr& t) {
  switch (t->kind()) {
    case Term::Kind::Id:
      return t;
    case Term::Kind::Gen:
      switch (t->gen_id()) {
        case GenId::Br: return Term::gen(GenId::BrInv);
        case GenId::BrInv: return Term::gen(GenId::Br);
        case GenId::Ant: return Term::gen(GenId::AntInv);
        case GenId::AntInv: return Term::gen(GenId::Ant);
        case GenId::Rib: return Term::gen(GenId::RibInv);
        case GenId::RibInv: return Term::gen(GenId::Rib);
        default:
          throw std::invalid_argument(std::string("generator '") +
                                      gen_info(t->gen_id()).name + "' has no formal inverse");
      }
    case Term::Kind::Comp:
      return Term::comp(formal_inverse(t->before()), formal_inverse(t->after()));
    case Term::Kind::Tensor:
      return Term::tensor(formal_inverse(t->left()), formal_inverse(t->right()));
    case Term::Kind::Macro:
      throw std::invalid_argument("expand macros before taking a formal inverse");
  }
  throw std::invalid_argument("corrupt term");
}

}  // namespace hopfdiag
