#include "bimodal/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace bimodal {

Term singularVar(std::string name) { return Term{TermKind::Var, std::move(name)}; }
Term constant(std::string name) { return Term{TermKind::Const, std::move(name)}; }
Term pluralVar(std::string name) { return Term{TermKind::PluralVar, std::move(name)}; }

bool isPluralName(std::string_view name) {
  if (name.size() < 2) return false;
  char a = name[name.size() - 2], b = name[name.size() - 1];
  return a == b && std::isalpha(static_cast<unsigned char>(a));
}

FormulaRef makeFormula(Formula&& f) {
  return std::make_shared<const Formula>(std::move(f));
}

static void requireSingular(const Term& t, const char* where) {
  if (t.sort() != Sort::Singular)
    throw std::invalid_argument(std::string(where) + ": expected singular term, got " + t.name);
}

FormulaRef Formula::atom(std::string pred, std::vector<Term> args) {
  Formula f;
  f.kind = Conn::Atom;
  f.pred = std::move(pred);
  f.args = std::move(args);
  return makeFormula(std::move(f));
}

FormulaRef Formula::eq(Term a, Term b) {
  requireSingular(a, "=");
  requireSingular(b, "=");
  Formula f;
  f.kind = Conn::Eq;
  f.args = {std::move(a), std::move(b)};
  return makeFormula(std::move(f));
}

FormulaRef Formula::prec(Term element, Term plurality) {
  requireSingular(element, "pc");
  if (plurality.kind != TermKind::PluralVar)
    throw std::invalid_argument("pc: expected plural variable, got " + plurality.name);
  Formula f;
  f.kind = Conn::Prec;
  f.args = {std::move(element), std::move(plurality)};
  return makeFormula(std::move(f));
}

static FormulaRef unary(Conn k, FormulaRef a) {
  Formula f;
  f.kind = k;
  f.lhs = std::move(a);
  return makeFormula(std::move(f));
}

static FormulaRef binary(Conn k, FormulaRef a, FormulaRef b) {
  Formula f;
  f.kind = k;
  f.lhs = std::move(a);
  f.rhs = std::move(b);
  return makeFormula(std::move(f));
}

FormulaRef Formula::neg(FormulaRef f) { return unary(Conn::Not, std::move(f)); }
FormulaRef Formula::conj(FormulaRef a, FormulaRef b) { return binary(Conn::And, std::move(a), std::move(b)); }
FormulaRef Formula::disj(FormulaRef a, FormulaRef b) { return binary(Conn::Or, std::move(a), std::move(b)); }
FormulaRef Formula::implies(FormulaRef a, FormulaRef b) { return binary(Conn::Implies, std::move(a), std::move(b)); }
FormulaRef Formula::iff(FormulaRef a, FormulaRef b) {
  return conj(implies(a, b), implies(b, a));
}
FormulaRef Formula::boxD(FormulaRef f) { return unary(Conn::BoxD, std::move(f)); }
FormulaRef Formula::diaD(FormulaRef f) { return unary(Conn::DiaD, std::move(f)); }
FormulaRef Formula::boxG(FormulaRef f) { return unary(Conn::BoxG, std::move(f)); }
FormulaRef Formula::diaG(FormulaRef f) { return unary(Conn::DiaG, std::move(f)); }

FormulaRef Formula::modal(Conn k, FormulaRef f) {
  switch (k) {
    case Conn::BoxD: case Conn::DiaD: case Conn::BoxG: case Conn::DiaG:
      return unary(k, std::move(f));
    default:
      throw std::invalid_argument("modal: not a modality");
  }
}

static FormulaRef quantified(Conn k, std::string v, FormulaRef body) {
  bool pluralKind = (k == Conn::ForallP || k == Conn::ExistsP);
  if (pluralKind != isPluralName(v))
    throw std::invalid_argument("quantifier sort mismatch for variable " + v);
  Formula f;
  f.kind = k;
  f.var = std::move(v);
  f.lhs = std::move(body);
  return makeFormula(std::move(f));
}

FormulaRef Formula::forallS(std::string v, FormulaRef body) { return quantified(Conn::ForallS, std::move(v), std::move(body)); }
FormulaRef Formula::existsS(std::string v, FormulaRef body) { return quantified(Conn::ExistsS, std::move(v), std::move(body)); }
FormulaRef Formula::forallP(std::string v, FormulaRef body) { return quantified(Conn::ForallP, std::move(v), std::move(body)); }
FormulaRef Formula::existsP(std::string v, FormulaRef body) { return quantified(Conn::ExistsP, std::move(v), std::move(body)); }

FormulaRef Formula::quant(Conn k, std::string v, FormulaRef body) {
  return quantified(k, std::move(v), std::move(body));
}

FormulaRef pluralIncluded(const Term& xx, const Term& yy, std::string_view freshHint) {
  std::string z(freshHint);
  while (z == xx.name || z == yy.name) z += "'";
  Term zt = singularVar(z);
  return Formula::forallS(z, Formula::implies(Formula::prec(zt, xx), Formula::prec(zt, yy)));
}

Language classify(const FormulaRef& f) {
  bool hasD = false, hasG = false;
  std::function<void(const FormulaRef&)> walk = [&](const FormulaRef& g) {
    if (!g) return;
    if (g->kind == Conn::BoxD || g->kind == Conn::DiaD) hasD = true;
    if (g->kind == Conn::BoxG || g->kind == Conn::DiaG) hasG = true;
    walk(g->lhs);
    walk(g->rhs);
  };
  walk(f);
  if (hasD && hasG) return Language::LBM;
  if (hasD) return Language::LD;
  if (hasG) return Language::LG;
  return Language::L;
}

std::string languageName(Language lang) {
  switch (lang) {
    case Language::L: return "L";
    case Language::LD: return "L^D";
    case Language::LG: return "L^G";
    case Language::LBM: return "L^BM";
  }
  return "?";
}

static void collectFree(const FormulaRef& f, std::vector<std::string>& bound, VarSet& out) {
  if (!f) return;
  auto termFree = [&](const Term& t) {
    if (t.kind == TermKind::Const) return;
    if (std::find(bound.rbegin(), bound.rend(), t.name) == bound.rend())
      out.insert({t.name, t.sort()});
  };
  if (f->isAtomic()) {
    for (const auto& t : f->args) termFree(t);
    return;
  }
  if (f->isQuantifier()) {
    bound.push_back(f->var);
    collectFree(f->lhs, bound, out);
    bound.pop_back();
    return;
  }
  collectFree(f->lhs, bound, out);
  collectFree(f->rhs, bound, out);
}

VarSet freeVars(const FormulaRef& f) {
  VarSet out;
  std::vector<std::string> bound;
  collectFree(f, bound, out);
  return out;
}

bool occurs(const FormulaRef& f, std::string_view name) {
  if (!f) return false;
  if (f->isAtomic()) {
    for (const auto& t : f->args)
      if (t.name == name) return true;
    return false;
  }
  if (f->isQuantifier() && f->var == name) return true;
  return occurs(f->lhs, name) || occurs(f->rhs, name);
}

int formulaSize(const FormulaRef& f) {
  if (!f) return 0;
  return 1 + formulaSize(f->lhs) + formulaSize(f->rhs);
}

int formulaDepth(const FormulaRef& f) {
  if (!f) return -1;
  if (f->isAtomic()) return 0;
  return 1 + std::max(formulaDepth(f->lhs), formulaDepth(f->rhs));
}

namespace {

// Alpha-equivalence via parallel scope stacks.
bool alphaEq(const FormulaRef& a, const FormulaRef& b, std::vector<std::string>& sa,
             std::vector<std::string>& sb) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  auto termEq = [&](const Term& x, const Term& y) {
    if (x.kind != y.kind) return false;
    if (x.kind == TermKind::Const) return x.name == y.name;
    // Bound occurrences must refer to the same binder position; free ones
    // must agree by name.
    for (size_t i = sa.size(); i-- > 0;) {
      bool ba = sa[i] == x.name, bb = sb[i] == y.name;
      if (ba || bb) return ba && bb;
    }
    return x.name == y.name;
  };
  if (a->isAtomic()) {
    if (a->pred != b->pred || a->args.size() != b->args.size()) return false;
    for (size_t i = 0; i < a->args.size(); ++i)
      if (!termEq(a->args[i], b->args[i])) return false;
    return true;
  }
  if (a->isQuantifier()) {
    sa.push_back(a->var);
    sb.push_back(b->var);
    bool r = alphaEq(a->lhs, b->lhs, sa, sb);
    sa.pop_back();
    sb.pop_back();
    return r;
  }
  return alphaEq(a->lhs, b->lhs, sa, sb) && alphaEq(a->rhs, b->rhs, sa, sb);
}

}  // namespace

bool alphaEqual(const FormulaRef& a, const FormulaRef& b) {
  std::vector<std::string> sa, sb;
  return alphaEq(a, b, sa, sb);
}

bool structEqual(const FormulaRef& a, const FormulaRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->pred != b->pred || a->var != b->var) return false;
  if (a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!(a->args[i] == b->args[i])) return false;
  return structEqual(a->lhs, b->lhs) && structEqual(a->rhs, b->rhs);
}

size_t structHash(const FormulaRef& f) {
  if (!f) return 0x9e3779b9;
  size_t h = std::hash<int>()(static_cast<int>(f->kind));
  auto mix = [&](size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  mix(std::hash<std::string>()(f->pred));
  mix(std::hash<std::string>()(f->var));
  for (const auto& t : f->args) {
    mix(std::hash<int>()(static_cast<int>(t.kind)));
    mix(std::hash<std::string>()(t.name));
  }
  mix(structHash(f->lhs));
  mix(structHash(f->rhs));
  return h;
}

std::string render(const Term& t) { return t.name; }

namespace {

// Precedence levels: implies < or < and < unary (modalities, negation,
// quantifiers) < atoms. Implication is right-associative.
enum Prec { PImplies = 0, POr = 1, PAnd = 2, PUnary = 3 };

int precOf(const FormulaRef& f) {
  switch (f->kind) {
    case Conn::Implies: return PImplies;
    case Conn::Or: return POr;
    case Conn::And: return PAnd;
    default: return PUnary;
  }
}

void renderInto(const FormulaRef& f, std::ostringstream& os, int minPrec) {
  int p = precOf(f);
  bool paren = p < minPrec;
  if (paren) os << "(";
  switch (f->kind) {
    case Conn::Atom:
      os << f->pred;
      if (!f->args.empty()) {
        os << "(";
        for (size_t i = 0; i < f->args.size(); ++i) {
          if (i) os << ", ";
          os << f->args[i].name;
        }
        os << ")";
      }
      break;
    case Conn::Eq:
      os << f->args[0].name << " = " << f->args[1].name;
      break;
    case Conn::Prec:
      os << f->args[0].name << " pc " << f->args[1].name;
      break;
    case Conn::Not:
      os << "~";
      renderInto(f->lhs, os, PUnary);
      break;
    case Conn::And:
      // '&' parses left-associatively; parenthesize a nested And on the right.
      renderInto(f->lhs, os, PAnd);
      os << " & ";
      renderInto(f->rhs, os, PAnd + 1);
      break;
    case Conn::Or:
      renderInto(f->lhs, os, POr);
      os << " | ";
      renderInto(f->rhs, os, POr + 1);
      break;
    case Conn::Implies:
      // '->' parses right-associatively; parenthesize an Implies on the left.
      renderInto(f->lhs, os, PImplies + 1);
      os << " -> ";
      renderInto(f->rhs, os, PImplies);
      break;
    case Conn::BoxD: os << "[]D "; renderInto(f->lhs, os, PUnary); break;
    case Conn::DiaD: os << "<>D "; renderInto(f->lhs, os, PUnary); break;
    case Conn::BoxG: os << "[]G "; renderInto(f->lhs, os, PUnary); break;
    case Conn::DiaG: os << "<>G "; renderInto(f->lhs, os, PUnary); break;
    case Conn::ForallS: os << "forall " << f->var << " "; renderInto(f->lhs, os, PUnary); break;
    case Conn::ExistsS: os << "exists " << f->var << " "; renderInto(f->lhs, os, PUnary); break;
    case Conn::ForallP: os << "forallp " << f->var << " "; renderInto(f->lhs, os, PUnary); break;
    case Conn::ExistsP: os << "existsp " << f->var << " "; renderInto(f->lhs, os, PUnary); break;
  }
  if (paren) os << ")";
}

}  // namespace

std::string render(const FormulaRef& f) {
  std::ostringstream os;
  renderInto(f, os, PImplies);
  return os.str();
}

std::string freshVarName(std::string base, const std::vector<FormulaRef>& avoid,
                         const std::vector<std::string>& alsoAvoid) {
  auto clashes = [&](const std::string& n) {
    for (const auto& f : avoid)
      if (occurs(f, n)) return true;
    for (const auto& s : alsoAvoid)
      if (s == n) return true;
    return false;
  };
  // Freshening preserves the plural/singular shape of the final letters:
  // singular names gain primes, plural names repeat the doubled letter.
  bool plural = isPluralName(base);
  std::string n = base;
  while (clashes(n)) {
    if (plural)
      n += n[n.size() - 1];  // xx -> xxx keeps the doubled tail
    else
      n += "'";
  }
  return n;
}

}  // namespace bimodal
