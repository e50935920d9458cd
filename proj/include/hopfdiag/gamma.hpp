#pragma once

#include "hopfdiag/term.hpp"

namespace hopfdiag {

// Structure-preserving translation from the ribbon-element presentation
// into the selfdual ribbon presentation: the Hopf symbols and the copairing
// are fixed, the pairing becomes its integral-pair expression, and the
// ribbon elements become the (inverse) ribbon morphism applied to the unit.
TermPtr gamma_translate(const TermPtr& t);

}  // namespace hopfdiag
