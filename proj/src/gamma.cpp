#include "hopfdiag/gamma.hpp"

namespace hopfdiag {

TermPtr gamma_translate(const TermPtr& t) {
  switch (t->kind()) {
    case Term::Kind::Id:
      return t;
    case Term::Kind::Gen:
      switch (t->gen_id()) {
        case GenId::Wp:
          return Term::comp(Term::gen(GenId::RibInv), Term::gen(GenId::Unit));
        case GenId::Wm:
          return Term::comp(Term::gen(GenId::Rib), Term::gen(GenId::Unit));
        case GenId::Pr:
          // The default pairing: both legs fed through the integral pair.
          return parse("(cointg * cointg) . (mul * mul) . (id[1] * cpr * ant)");
        case GenId::Intg:
        case GenId::Cointg:
        case GenId::Rib:
        case GenId::RibInv:
          throw TypeError(std::string("generator '") + gen_info(t->gen_id()).name +
                              "' is not part of the source presentation",
                          "");
        default:
          return t;
      }
    case Term::Kind::Comp:
      return Term::comp(gamma_translate(t->after()), gamma_translate(t->before()));
    case Term::Kind::Tensor:
      return Term::tensor(gamma_translate(t->left()), gamma_translate(t->right()));
    case Term::Kind::Macro:
      throw TypeError("expand macros before translating", "");
  }
  throw TypeError("corrupt term", "");
}

}  // namespace hopfdiag
