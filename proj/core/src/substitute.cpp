#include "bimodal/substitute.hpp"

#include <stdexcept>

namespace bimodal {

namespace {

FormulaRef subst(const FormulaRef& f, const std::string& var, const Term& t) {
  if (!f) return f;
  switch (f->kind) {
    case Conn::Atom: case Conn::Eq: case Conn::Prec: {
      bool touched = false;
      std::vector<Term> args = f->args;
      for (auto& a : args) {
        if (a.kind != TermKind::Const && a.name == var) {
          if (a.sort() != t.sort())
            throw std::invalid_argument("substitute: sort mismatch at " + a.name);
          a = t;
          touched = true;
        }
      }
      if (!touched) return f;
      if (f->kind == Conn::Atom) return Formula::atom(f->pred, std::move(args));
      if (f->kind == Conn::Eq) return Formula::eq(args[0], args[1]);
      return Formula::prec(args[0], args[1]);
    }
    case Conn::ForallS: case Conn::ExistsS: case Conn::ForallP: case Conn::ExistsP: {
      if (f->var == var) return f;  // occurrences below are bound
      if (t.kind != TermKind::Const && f->var == t.name) {
        // Rename the binder to avoid capturing t.
        std::string fresh = freshVarName(f->var, {f->lhs}, {var, t.name});
        Term freshTerm = isPluralName(fresh) ? pluralVar(fresh) : singularVar(fresh);
        FormulaRef renamed = subst(f->lhs, f->var, freshTerm);
        return Formula::quant(f->kind, fresh, subst(renamed, var, t));
      }
      FormulaRef body = subst(f->lhs, var, t);
      if (body == f->lhs) return f;
      return Formula::quant(f->kind, f->var, std::move(body));
    }
    default: {
      FormulaRef l = subst(f->lhs, var, t);
      FormulaRef r = subst(f->rhs, var, t);
      if (l == f->lhs && r == f->rhs) return f;
      Formula copy;
      copy.kind = f->kind;
      copy.lhs = std::move(l);
      copy.rhs = std::move(r);
      // Rebuild through the public factories to keep invariants in one place.
      switch (f->kind) {
        case Conn::Not: return Formula::neg(copy.lhs);
        case Conn::And: return Formula::conj(copy.lhs, copy.rhs);
        case Conn::Or: return Formula::disj(copy.lhs, copy.rhs);
        case Conn::Implies: return Formula::implies(copy.lhs, copy.rhs);
        case Conn::BoxD: return Formula::boxD(copy.lhs);
        case Conn::DiaD: return Formula::diaD(copy.lhs);
        case Conn::BoxG: return Formula::boxG(copy.lhs);
        case Conn::DiaG: return Formula::diaG(copy.lhs);
        default: throw std::logic_error("substitute: unhandled connective");
      }
    }
  }
}

}  // namespace

FormulaRef substitute(const FormulaRef& f, const std::string& var, const Term& t) {
  if (isPluralName(var) != (t.sort() == Sort::Plural))
    throw std::invalid_argument("substitute: sort of term does not match variable " + var);
  return subst(f, var, t);
}

}  // namespace bimodal
