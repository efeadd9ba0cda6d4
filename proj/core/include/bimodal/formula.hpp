#ifndef BIMODAL_FORMULA_HPP
#define BIMODAL_FORMULA_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bimodal/signature.hpp"

namespace bimodal {

enum class TermKind { Var, Const, PluralVar };

struct Term {
  TermKind kind = TermKind::Var;
  std::string name;

  Sort sort() const { return kind == TermKind::PluralVar ? Sort::Plural : Sort::Singular; }
  bool operator==(const Term& o) const { return kind == o.kind && name == o.name; }
};

Term singularVar(std::string name);
Term constant(std::string name);
Term pluralVar(std::string name);

// An identifier names a plural variable iff its final two characters are the
// same letter ("xx", "aa", ...).
bool isPluralName(std::string_view name);

enum class Conn : uint8_t {
  Atom, Eq, Prec,          // atomic
  Not, And, Or, Implies,   // connectives
  BoxD, DiaD, BoxG, DiaG,  // modalities
  ForallS, ExistsS,        // singular quantifiers
  ForallP, ExistsP,        // plural quantifiers
};

class Formula;
using FormulaRef = std::shared_ptr<const Formula>;

// Immutable syntax tree spanning all four languages (non-modal, D-only,
// G-only, bimodal). Built through the static factories, which enforce sorts.
class Formula {
 public:
  Conn kind;
  std::string pred;        // Atom
  std::vector<Term> args;  // Atom; Eq and Prec use args[0], args[1]
  std::string var;         // quantifiers
  FormulaRef lhs, rhs;     // unary connectives use lhs only

  static FormulaRef atom(std::string pred, std::vector<Term> args);
  static FormulaRef eq(Term a, Term b);
  static FormulaRef prec(Term element, Term plurality);
  static FormulaRef neg(FormulaRef f);
  static FormulaRef conj(FormulaRef a, FormulaRef b);
  static FormulaRef disj(FormulaRef a, FormulaRef b);
  static FormulaRef implies(FormulaRef a, FormulaRef b);
  // (a -> b) & (b -> a); the concrete syntax has no biconditional.
  static FormulaRef iff(FormulaRef a, FormulaRef b);
  static FormulaRef boxD(FormulaRef f);
  static FormulaRef diaD(FormulaRef f);
  static FormulaRef boxG(FormulaRef f);
  static FormulaRef diaG(FormulaRef f);
  static FormulaRef forallS(std::string v, FormulaRef body);
  static FormulaRef existsS(std::string v, FormulaRef body);
  static FormulaRef forallP(std::string v, FormulaRef body);
  static FormulaRef existsP(std::string v, FormulaRef body);
  static FormulaRef modal(Conn k, FormulaRef f);
  static FormulaRef quant(Conn k, std::string v, FormulaRef body);

  bool isAtomic() const { return kind == Conn::Atom || kind == Conn::Eq || kind == Conn::Prec; }
  bool isQuantifier() const {
    return kind == Conn::ForallS || kind == Conn::ExistsS || kind == Conn::ForallP ||
           kind == Conn::ExistsP;
  }
  bool isModal() const {
    return kind == Conn::BoxD || kind == Conn::DiaD || kind == Conn::BoxG || kind == Conn::DiaG;
  }
  bool isBinary() const {
    return kind == Conn::And || kind == Conn::Or || kind == Conn::Implies;
  }

  Formula() = default;  // prefer the factories; they enforce the sort rules
};

// xx <= yy, expanded per its definition: forall z (z pc xx -> z pc yy).
// `freshHint` seeds the choice of the bound variable.
FormulaRef pluralIncluded(const Term& xx, const Term& yy, std::string_view freshHint = "z");

enum class Language { L, LD, LG, LBM };

// Smallest of the four languages containing f.
Language classify(const FormulaRef& f);
std::string languageName(Language lang);

using VarSet = std::set<std::pair<std::string, Sort>>;
VarSet freeVars(const FormulaRef& f);
bool occurs(const FormulaRef& f, std::string_view name);

// Node count / tree height (atoms have depth 0).
int formulaSize(const FormulaRef& f);
int formulaDepth(const FormulaRef& f);

bool alphaEqual(const FormulaRef& a, const FormulaRef& b);
// Structural equality and hashing (exact names, no alpha).
bool structEqual(const FormulaRef& a, const FormulaRef& b);
size_t structHash(const FormulaRef& f);

std::string render(const FormulaRef& f);
std::string render(const Term& t);

// A name not occurring (bound or free) in any of the given formulas, obtained
// from `base` by appending primes.
std::string freshVarName(std::string base, const std::vector<FormulaRef>& avoid,
                         const std::vector<std::string>& alsoAvoid = {});

}  // namespace bimodal

#endif
