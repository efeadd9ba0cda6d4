#ifndef BIMODAL_SUBSTITUTE_HPP
#define BIMODAL_SUBSTITUTE_HPP

#include "bimodal/formula.hpp"

namespace bimodal {

// Capture-avoiding substitution of term t for free occurrences of the
// variable named `var`. Bound variables are renamed fresh when they would
// capture a variable of t. Throws std::invalid_argument on sort mismatch.
FormulaRef substitute(const FormulaRef& f, const std::string& var, const Term& t);

}  // namespace bimodal

#endif
