#include "bimodal/translate.hpp"

#include <functional>

namespace bimodal {

namespace {

void requireLanguage(const FormulaRef& f, Language wanted, const char* op) {
  Language got = classify(f);
  bool ok;
  switch (wanted) {
    case Language::L: ok = got == Language::L; break;
    case Language::LD: ok = got == Language::L || got == Language::LD; break;
    case Language::LG: ok = got == Language::L || got == Language::LG; break;
    default: ok = true; break;
  }
  if (!ok)
    throw TranslateError(std::string(op) + ": input must be in " + languageName(wanted) +
                         ", got a formula in " + languageName(got));
}

}  // namespace

FormulaRef godel(const FormulaRef& f) {
  requireLanguage(f, Language::L, "godel");
  std::function<FormulaRef(const FormulaRef&)> g = [&](const FormulaRef& x) -> FormulaRef {
    switch (x->kind) {
      case Conn::Atom: case Conn::Eq: case Conn::Prec:
        return Formula::boxD(x);
      case Conn::And: return Formula::conj(g(x->lhs), g(x->rhs));
      case Conn::Or: return Formula::disj(g(x->lhs), g(x->rhs));
      case Conn::Implies: return Formula::boxD(Formula::implies(g(x->lhs), g(x->rhs)));
      case Conn::Not: return Formula::boxD(Formula::neg(g(x->lhs)));
      case Conn::ExistsS: case Conn::ExistsP:
        return Formula::quant(x->kind, x->var, g(x->lhs));
      case Conn::ForallS: case Conn::ForallP:
        return Formula::boxD(Formula::quant(x->kind, x->var, g(x->lhs)));
      default:
        throw TranslateError("godel: modal operator in input");
    }
  };
  return g(f);
}

FormulaRef potentialist(const FormulaRef& f) {
  requireLanguage(f, Language::L, "potentialist");
  std::function<FormulaRef(const FormulaRef&)> p = [&](const FormulaRef& x) -> FormulaRef {
    switch (x->kind) {
      case Conn::Atom: case Conn::Eq: case Conn::Prec:
        return x;
      case Conn::Not: return Formula::neg(p(x->lhs));
      case Conn::And: return Formula::conj(p(x->lhs), p(x->rhs));
      case Conn::Or: return Formula::disj(p(x->lhs), p(x->rhs));
      case Conn::Implies: return Formula::implies(p(x->lhs), p(x->rhs));
      case Conn::ForallS: case Conn::ForallP:
        return Formula::boxG(Formula::quant(x->kind, x->var, p(x->lhs)));
      case Conn::ExistsS: case Conn::ExistsP:
        return Formula::diaG(Formula::quant(x->kind, x->var, p(x->lhs)));
      default:
        throw TranslateError("potentialist: modal operator in input");
    }
  };
  return p(f);
}

FormulaRef star(const FormulaRef& f) {
  requireLanguage(f, Language::L, "star");
  std::function<FormulaRef(const FormulaRef&)> s = [&](const FormulaRef& x) -> FormulaRef {
    switch (x->kind) {
      case Conn::Atom: case Conn::Eq: case Conn::Prec:
        return Formula::boxD(x);
      case Conn::And: return Formula::conj(s(x->lhs), s(x->rhs));
      case Conn::Or: return Formula::disj(s(x->lhs), s(x->rhs));
      case Conn::Implies: return Formula::boxD(Formula::implies(s(x->lhs), s(x->rhs)));
      case Conn::Not: return Formula::boxD(Formula::neg(s(x->lhs)));
      case Conn::ExistsS: case Conn::ExistsP:
        return Formula::diaG(Formula::quant(x->kind, x->var, s(x->lhs)));
      case Conn::ForallS: case Conn::ForallP:
        return Formula::boxD(Formula::quant(x->kind, x->var, s(x->lhs)));
      default:
        throw TranslateError("star: modal operator in input");
    }
  };
  return s(f);
}

FormulaRef extendedGodel(const FormulaRef& f) {
  requireLanguage(f, Language::LG, "extended godel");
  std::function<FormulaRef(const FormulaRef&)> g = [&](const FormulaRef& x) -> FormulaRef {
    switch (x->kind) {
      case Conn::Atom: case Conn::Eq: case Conn::Prec:
        return Formula::boxD(x);
      case Conn::And: return Formula::conj(g(x->lhs), g(x->rhs));
      case Conn::Or: return Formula::disj(g(x->lhs), g(x->rhs));
      case Conn::Implies: return Formula::boxD(Formula::implies(g(x->lhs), g(x->rhs)));
      case Conn::Not: return Formula::boxD(Formula::neg(g(x->lhs)));
      case Conn::ExistsS: case Conn::ExistsP:
        return Formula::quant(x->kind, x->var, g(x->lhs));
      case Conn::ForallS: case Conn::ForallP:
        return Formula::boxD(Formula::quant(x->kind, x->var, g(x->lhs)));
      case Conn::DiaG: return Formula::diaG(g(x->lhs));
      case Conn::BoxG: return Formula::boxD(g(x->lhs));
      default:
        throw TranslateError("extended godel: D-modality in input");
    }
  };
  return g(f);
}

FormulaRef extendedPotentialist(const FormulaRef& f) {
  requireLanguage(f, Language::LD, "extended potentialist");
  std::function<FormulaRef(const FormulaRef&)> p = [&](const FormulaRef& x) -> FormulaRef {
    switch (x->kind) {
      case Conn::Atom: case Conn::Eq: case Conn::Prec:
        return x;
      case Conn::Not: return Formula::neg(p(x->lhs));
      case Conn::And: return Formula::conj(p(x->lhs), p(x->rhs));
      case Conn::Or: return Formula::disj(p(x->lhs), p(x->rhs));
      case Conn::Implies: return Formula::implies(p(x->lhs), p(x->rhs));
      case Conn::ForallS: case Conn::ForallP:
        return Formula::boxG(Formula::quant(x->kind, x->var, p(x->lhs)));
      case Conn::ExistsS: case Conn::ExistsP:
        return Formula::diaG(Formula::quant(x->kind, x->var, p(x->lhs)));
      case Conn::BoxD: return Formula::boxD(p(x->lhs));
      case Conn::DiaD: return Formula::diaD(p(x->lhs));
      default:
        throw TranslateError("extended potentialist: G-modality in input");
    }
  };
  return p(f);
}

namespace {

// Fresh super-plurality variables for the reverse translation: yy, yyy, ...
std::string reverseFresh(const FormulaRef& whole, const std::string& anchor, int& counter) {
  std::string base = "yy";
  for (int i = 0; i < counter; ++i) base += 'y';
  ++counter;
  return freshVarName(base, {whole}, {anchor});
}

}  // namespace

FormulaRef reverseTranslate(const FormulaRef& f, const std::string& anchor) {
  if (!isPluralName(anchor))
    throw TranslateError("reverse: anchor must be a plural variable");
  if (occurs(f, anchor))
    throw TranslateError("reverse: anchor " + anchor + " occurs in the formula");
  int counter = 0;
  std::function<FormulaRef(const FormulaRef&, const std::string&)> rev =
      [&](const FormulaRef& x, const std::string& at) -> FormulaRef {
    Term anchorTerm = pluralVar(at);
    switch (x->kind) {
      case Conn::Atom: case Conn::Eq: case Conn::Prec:
        return x;
      case Conn::Not: return Formula::neg(rev(x->lhs, at));
      case Conn::And: return Formula::conj(rev(x->lhs, at), rev(x->rhs, at));
      case Conn::Or: return Formula::disj(rev(x->lhs, at), rev(x->rhs, at));
      case Conn::Implies: return Formula::implies(rev(x->lhs, at), rev(x->rhs, at));
      case Conn::ExistsS:
        return Formula::existsS(
            x->var, Formula::conj(Formula::prec(singularVar(x->var), anchorTerm),
                                  rev(x->lhs, at)));
      case Conn::ForallS:
        return Formula::forallS(
            x->var, Formula::implies(Formula::prec(singularVar(x->var), anchorTerm),
                                     rev(x->lhs, at)));
      case Conn::ExistsP:
        return Formula::existsP(
            x->var, Formula::conj(pluralIncluded(pluralVar(x->var), anchorTerm),
                                  rev(x->lhs, at)));
      case Conn::ForallP:
        return Formula::forallP(
            x->var, Formula::implies(pluralIncluded(pluralVar(x->var), anchorTerm),
                                     rev(x->lhs, at)));
      case Conn::BoxG: {
        std::string yy = reverseFresh(f, anchor, counter);
        return Formula::forallP(
            yy, Formula::implies(pluralIncluded(anchorTerm, pluralVar(yy)),
                                 rev(x->lhs, yy)));
      }
      case Conn::DiaG: {
        std::string yy = reverseFresh(f, anchor, counter);
        return Formula::existsP(
            yy, Formula::conj(pluralIncluded(anchorTerm, pluralVar(yy)),
                              rev(x->lhs, yy)));
      }
      case Conn::BoxD: {
        std::string yy = reverseFresh(f, anchor, counter);
        return Formula::boxD(Formula::forallP(
            yy, Formula::implies(pluralIncluded(anchorTerm, pluralVar(yy)),
                                 rev(x->lhs, yy))));
      }
      case Conn::DiaD: {
        // Dual of the []D clause.
        std::string yy = reverseFresh(f, anchor, counter);
        return Formula::diaD(Formula::existsP(
            yy, Formula::conj(pluralIncluded(anchorTerm, pluralVar(yy)),
                              rev(x->lhs, yy))));
      }
    }
    throw TranslateError("reverse: unhandled connective");
  };
  return rev(f, anchor);
}

namespace {

// Recognizes the expanded form of aa pcq bb: forall z (z pc aa -> z pc bb).
bool isInclusionGuard(const FormulaRef& g, std::string* left, std::string* right) {
  if (!g || g->kind != Conn::ForallS) return false;
  const FormulaRef& body = g->lhs;
  if (!body || body->kind != Conn::Implies) return false;
  const FormulaRef &a = body->lhs, &b = body->rhs;
  if (!a || !b || a->kind != Conn::Prec || b->kind != Conn::Prec) return false;
  if (a->args[0].kind != TermKind::Var || a->args[0].name != g->var) return false;
  if (b->args[0].kind != TermKind::Var || b->args[0].name != g->var) return false;
  if (a->args[1].name == g->var || b->args[1].name == g->var) return false;
  *left = a->args[1].name;
  *right = b->args[1].name;
  return true;
}

FormulaRef normalizeOnce(const FormulaRef& f, bool* changed) {
  if (!f) return f;
  if (f->isAtomic()) return f;
  FormulaRef l = normalizeOnce(f->lhs, changed);
  FormulaRef r = normalizeOnce(f->rhs, changed);

  if (f->isModal() && l->kind == f->kind) {
    *changed = true;
    return l;  // [][] -> [], <><> -> <> for the same modality
  }

  // Plural quantifier relativized by an inclusion guard mentioning the bound
  // variable, with a body that does not use it: the guard is satisfiable
  // (inclusion is reflexive), so the quantifier is vacuous.
  if (f->kind == Conn::ForallP && l->kind == Conn::Implies) {
    std::string a, b;
    if (isInclusionGuard(l->lhs, &a, &b) && (a == f->var || b == f->var) &&
        !occurs(l->rhs, f->var)) {
      *changed = true;
      return l->rhs;
    }
  }
  if (f->kind == Conn::ExistsP && l->kind == Conn::And) {
    std::string a, b;
    if (isInclusionGuard(l->lhs, &a, &b) && (a == f->var || b == f->var) &&
        !occurs(l->rhs, f->var)) {
      *changed = true;
      return l->rhs;
    }
  }

  if (l == f->lhs && r == f->rhs) return f;
  *changed = true;
  if (f->isQuantifier()) return Formula::quant(f->kind, f->var, l);
  if (f->isModal()) return Formula::modal(f->kind, l);
  switch (f->kind) {
    case Conn::Not: return Formula::neg(l);
    case Conn::And: return Formula::conj(l, r);
    case Conn::Or: return Formula::disj(l, r);
    case Conn::Implies: return Formula::implies(l, r);
    default: return f;
  }
}

}  // namespace

FormulaRef normalize(const FormulaRef& f) {
  FormulaRef cur = f;
  for (int i = 0; i < 64; ++i) {
    bool changed = false;
    FormulaRef next = normalizeOnce(cur, &changed);
    if (!changed) return next;
    cur = next;
  }
  return cur;
}

}  // namespace bimodal
