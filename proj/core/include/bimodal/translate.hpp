#ifndef BIMODAL_TRANSLATE_HPP
#define BIMODAL_TRANSLATE_HPP

#include <stdexcept>
#include <string>

#include "bimodal/formula.hpp"

namespace bimodal {

struct TranslateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Goedel translation g : L -> L^D. Atoms, implications, negations and
// universals go under []D; disjunction, conjunction and existentials are
// homomorphic. Plural quantifiers mirror the singular clauses.
FormulaRef godel(const FormulaRef& f);

// Potentialist translation : L -> L^G. Replaces each quantifier with its
// modalized counterpart ([]G forall, <>G exists); everything else unchanged.
FormulaRef potentialist(const FormulaRef& f);

// Simplified composite translation : L -> L^BM. Like g with D-boxes, except
// the existential quantifier becomes <>G exists.
FormulaRef star(const FormulaRef& f);

// Extended Goedel translation : L^G -> L^BM. Connectives and quantifiers as
// g with D-modality; <>G phi -> <>G phi^g and []G phi -> []D phi^g.
FormulaRef extendedGodel(const FormulaRef& f);

// Extended potentialist translation : L^D -> L^BM. Quantifiers modalized
// with G; []D and <>D are kept, applied to the translated body.
FormulaRef extendedPotentialist(const FormulaRef& f);

// Reverse translation for plural bimodal formulas, anchored at a plural
// variable that must not occur in f. G-modalities become quantifiers over
// super-pluralities of the anchor, []D keeps a single residual box (written
// as []D in the output), singular quantifiers are relativized to pc the
// anchor and plural quantifiers to inclusion in the anchor.
FormulaRef reverseTranslate(const FormulaRef& f, const std::string& anchor);

// Optional simplifier: collapses doubled identical modalities and drops
// relativized plural quantifiers whose bound variable does not occur in the
// body (their inclusion guards always have a witness, the anchor itself).
FormulaRef normalize(const FormulaRef& f);

}  // namespace bimodal

#endif
