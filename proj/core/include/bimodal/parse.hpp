#ifndef BIMODAL_PARSE_HPP
#define BIMODAL_PARSE_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "bimodal/formula.hpp"
#include "bimodal/signature.hpp"

namespace bimodal {

struct ParseError : std::runtime_error {
  size_t pos;      // byte offset into the input
  size_t line;     // 1-based
  size_t column;   // 1-based
  ParseError(std::string msg, size_t pos, size_t line, size_t column)
      : std::runtime_error(std::move(msg)), pos(pos), line(line), column(column) {}
};

// Parses against a fixed signature. Unknown predicates, arity and sort
// mismatches are rejected with position info. Identifiers in term position
// resolve to constants when declared, otherwise to variables whose sort
// follows the doubled-final-letter rule.
//
// Derived notation expanded during parsing:
//   t in u    ->  existsp W (Set(W, u) & t pc W)        (needs designated Set)
//   xx pcq yy ->  forall z (z pc xx -> z pc yy)
FormulaRef parseFormula(std::string_view text, const Signature& sig);

// Same grammar, but undeclared symbols are added to `sig` on first use:
// an applied identifier becomes a predicate (argument sorts inferred from the
// argument shapes); `in` auto-declares Set.
FormulaRef parseFormulaInfer(std::string_view text, Signature& sig);

// Term-only entry point (used for schema instantiation arguments).
Term parseTerm(std::string_view text, const Signature& sig);

}  // namespace bimodal

#endif
