#include "bimodal/eval.hpp"

namespace bimodal {

namespace {

Value resolve(const Model& m, const Env& env, const Term& t) {
  if (t.kind == TermKind::Const) {
    int idx = m.individualIndex(t.name);
    if (idx < 0) throw EvalError("unknown constant " + t.name);
    return Value::singular(static_cast<uint8_t>(idx));
  }
  const Value* v = env.lookup(t.name);
  if (!v) throw EvalError("assignment does not cover variable " + t.name);
  if ((t.sort() == Sort::Plural) != (v->sort == Sort::Plural))
    throw EvalError("assignment sort mismatch for " + t.name);
  return *v;
}

bool atomHolds(const Model& m, int w, Env& env, const FormulaRef& f) {
  switch (f->kind) {
    case Conn::Eq: {
      Value a = resolve(m, env, f->args[0]);
      Value b = resolve(m, env, f->args[1]);
      return a.ind == b.ind;
    }
    case Conn::Prec: {
      Value a = resolve(m, env, f->args[0]);
      Value p = resolve(m, env, f->args[1]);
      return (p.mask >> a.ind) & 1;
    }
    case Conn::Atom: {
      const PredDecl* decl = m.sig.findPred(f->pred);
      if (!decl) throw EvalError("unknown predicate " + f->pred);
      if (decl->argSorts.size() != f->args.size())
        throw EvalError("arity mismatch for " + f->pred);
      uint64_t tuple = 0;
      for (size_t i = 0; i < f->args.size(); ++i) {
        Value v = resolve(m, env, f->args[i]);
        if (decl->argSorts[i] == Sort::Plural) {
          // Plural arguments are read against the current domain.
          tuple = packArg(tuple, static_cast<int>(i),
                          static_cast<uint8_t>(v.mask & m.frame.dom[w]));
        } else {
          tuple = packArg(tuple, static_cast<int>(i), v.ind);
        }
      }
      return m.holds(f->pred, w, tuple);
    }
    default:
      throw EvalError("not an atomic formula");
  }
}

struct Tracer {
  EvalTrace* t;
  void enter(const Model& m, int w, const FormulaRef& f, bool result, const char* sem) {
    if (!t) return;
    std::string line(static_cast<size_t>(t->depth) * 2, ' ');
    line += sem;
    line += " at " + m.worldNames[w] + ": " + render(f) + " => " + (result ? "true" : "false");
    t->lines.push_back(std::move(line));
  }
};

bool classical(const Model& m, int w, Env& env, const FormulaRef& f, EvalTrace* tr);

bool classicalCore(const Model& m, int w, Env& env, const FormulaRef& f, EvalTrace* tr) {
  const Frame& fr = m.frame;
  switch (f->kind) {
    case Conn::Atom: case Conn::Eq: case Conn::Prec:
      return atomHolds(m, w, env, f);
    case Conn::Not: return !classical(m, w, env, f->lhs, tr);
    case Conn::And: return classical(m, w, env, f->lhs, tr) && classical(m, w, env, f->rhs, tr);
    case Conn::Or: return classical(m, w, env, f->lhs, tr) || classical(m, w, env, f->rhs, tr);
    case Conn::Implies:
      return !classical(m, w, env, f->lhs, tr) || classical(m, w, env, f->rhs, tr);
    case Conn::BoxD: case Conn::BoxG: {
      uint32_t succ = f->kind == Conn::BoxD ? fr.leqD[w] : fr.leqG[w];
      for (int v = 0; v < fr.worlds; ++v)
        if (((succ >> v) & 1) && !classical(m, v, env, f->lhs, tr)) return false;
      return true;
    }
    case Conn::DiaD: case Conn::DiaG: {
      uint32_t succ = f->kind == Conn::DiaD ? fr.leqD[w] : fr.leqG[w];
      for (int v = 0; v < fr.worlds; ++v)
        if (((succ >> v) & 1) && classical(m, v, env, f->lhs, tr)) return true;
      return false;
    }
    case Conn::ForallS: case Conn::ExistsS: {
      bool isAll = f->kind == Conn::ForallS;
      for (int d = 0; d < 8; ++d) {
        if (!((fr.dom[w] >> d) & 1)) continue;
        env.push(f->var, Value::singular(static_cast<uint8_t>(d)));
        bool r = classical(m, w, env, f->lhs, tr);
        env.pop();
        if (isAll && !r) return false;
        if (!isAll && r) return true;
      }
      return isAll;
    }
    case Conn::ForallP: case Conn::ExistsP: {
      bool isAll = f->kind == Conn::ForallP;
      uint32_t domMask = fr.dom[w];
      uint32_t sub = domMask;
      for (;;) {
        env.push(f->var, Value::plural(static_cast<uint8_t>(sub)));
        bool r = classical(m, w, env, f->lhs, tr);
        env.pop();
        if (isAll && !r) return false;
        if (!isAll && r) return true;
        if (sub == 0) break;
        sub = (sub - 1) & domMask;
      }
      return isAll;
    }
  }
  throw EvalError("unhandled connective");
}

bool classical(const Model& m, int w, Env& env, const FormulaRef& f, EvalTrace* tr) {
  if (tr) ++tr->depth;
  bool r = classicalCore(m, w, env, f, tr);
  if (tr) {
    --tr->depth;
    Tracer{tr}.enter(m, w, f, r, "|=");
  }
  return r;
}

bool forcing(const Model& m, int w, Env& env, const FormulaRef& f, EvalTrace* tr);

bool forcingCore(const Model& m, int w, Env& env, const FormulaRef& f, EvalTrace* tr) {
  const Frame& fr = m.frame;
  switch (f->kind) {
    case Conn::Atom: case Conn::Eq: case Conn::Prec: {
      // Forced iff true at every D-extension.
      for (int v = 0; v < fr.worlds; ++v)
        if (fr.relD(w, v) && !atomHolds(m, v, env, f)) return false;
      return true;
    }
    case Conn::And: return forcing(m, w, env, f->lhs, tr) && forcing(m, w, env, f->rhs, tr);
    case Conn::Or: return forcing(m, w, env, f->lhs, tr) || forcing(m, w, env, f->rhs, tr);
    case Conn::Implies: {
      for (int v = 0; v < fr.worlds; ++v)
        if (fr.relD(w, v) && forcing(m, v, env, f->lhs, tr) && !forcing(m, v, env, f->rhs, tr))
          return false;
      return true;
    }
    case Conn::Not: {
      for (int v = 0; v < fr.worlds; ++v)
        if (fr.relD(w, v) && forcing(m, v, env, f->lhs, tr)) return false;
      return true;
    }
    case Conn::ExistsS: {
      // Some G-extension supplies a witness.
      for (int v = 0; v < fr.worlds; ++v) {
        if (!fr.relG(w, v)) continue;
        for (int d = 0; d < 8; ++d) {
          if (!((fr.dom[v] >> d) & 1)) continue;
          env.push(f->var, Value::singular(static_cast<uint8_t>(d)));
          bool r = forcing(m, v, env, f->lhs, tr);
          env.pop();
          if (r) return true;
        }
      }
      return false;
    }
    case Conn::ForallS: {
      for (int v = 0; v < fr.worlds; ++v) {
        if (!fr.relD(w, v)) continue;
        for (int d = 0; d < 8; ++d) {
          if (!((fr.dom[v] >> d) & 1)) continue;
          env.push(f->var, Value::singular(static_cast<uint8_t>(d)));
          bool r = forcing(m, v, env, f->lhs, tr);
          env.pop();
          if (!r) return false;
        }
      }
      return true;
    }
    case Conn::ExistsP: {
      for (int v = 0; v < fr.worlds; ++v) {
        if (!fr.relG(w, v)) continue;
        uint32_t domMask = fr.dom[v], sub = domMask;
        for (;;) {
          env.push(f->var, Value::plural(static_cast<uint8_t>(sub)));
          bool r = forcing(m, v, env, f->lhs, tr);
          env.pop();
          if (r) return true;
          if (sub == 0) break;
          sub = (sub - 1) & domMask;
        }
      }
      return false;
    }
    case Conn::ForallP: {
      for (int v = 0; v < fr.worlds; ++v) {
        if (!fr.relD(w, v)) continue;
        uint32_t domMask = fr.dom[v], sub = domMask;
        for (;;) {
          env.push(f->var, Value::plural(static_cast<uint8_t>(sub)));
          bool r = forcing(m, v, env, f->lhs, tr);
          env.pop();
          if (!r) return false;
          if (sub == 0) break;
          sub = (sub - 1) & domMask;
        }
      }
      return true;
    }
    default:
      throw EvalError("forcing applies to non-modal formulas only");
  }
}

bool forcing(const Model& m, int w, Env& env, const FormulaRef& f, EvalTrace* tr) {
  if (tr) ++tr->depth;
  bool r = forcingCore(m, w, env, f, tr);
  if (tr) {
    --tr->depth;
    Tracer{tr}.enter(m, w, f, r, "|-");
  }
  return r;
}

}  // namespace

void checkAssignment(const Model& m, int world, const Env& env, const FormulaRef& f) {
  for (const auto& [name, sort] : freeVars(f)) {
    if (m.sig.isConstant(name)) {
      int idx = m.individualIndex(name);
      if (idx < 0 || !((m.frame.dom[world] >> idx) & 1))
        throw EvalError("constant " + name + " does not denote in dom(" +
                        m.worldNames[world] + ")");
      continue;
    }
    const Value* v = env.lookup(name);
    if (!v) throw EvalError("assignment does not cover variable " + name);
    if ((sort == Sort::Plural) != (v->sort == Sort::Plural))
      throw EvalError("assignment sort mismatch for " + name);
    if (sort == Sort::Singular) {
      if (!((m.frame.dom[world] >> v->ind) & 1))
        throw EvalError("value of " + name + " outside dom(" + m.worldNames[world] + ")");
    } else if (v->mask & ~m.frame.dom[world]) {
      throw EvalError("value of " + name + " outside dom(" + m.worldNames[world] + ")");
    }
  }
}

bool evalClassical(const Model& m, int world, Env& env, const FormulaRef& f, EvalTrace* trace) {
  checkAssignment(m, world, env, f);
  return classical(m, world, env, f, trace);
}

bool evalForcing(const Model& m, int world, Env& env, const FormulaRef& f, EvalTrace* trace) {
  if (classify(f) != Language::L)
    throw EvalError("forcing applies to non-modal formulas only");
  checkAssignment(m, world, env, f);
  return forcing(m, world, env, f, trace);
}

DeterminacySpectrum spectrum(const Model& m, int world, Env& env,
                             const std::vector<FormulaRef>& pool) {
  DeterminacySpectrum out;
  for (const auto& f : pool) {
    FormulaRef boxed = Formula::boxD(f);
    if (evalClassical(m, world, env, Formula::diaG(boxed))) out.possG.push_back(f);
    if (evalClassical(m, world, env, Formula::diaD(boxed))) out.possD.push_back(f);
  }
  return out;
}

}  // namespace bimodal
