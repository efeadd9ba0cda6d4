#ifndef BIMODAL_EVAL_HPP
#define BIMODAL_EVAL_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "bimodal/formula.hpp"
#include "bimodal/kripke.hpp"

namespace bimodal {

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Value {
  Sort sort = Sort::Singular;
  uint8_t ind = 0;    // singular: individual index
  uint8_t mask = 0;   // plural: individual subset

  static Value singular(uint8_t i) { return {Sort::Singular, i, 0}; }
  static Value plural(uint8_t m) { return {Sort::Plural, 0, m}; }
};

// Variable assignment with lexical shadowing.
class Env {
 public:
  void push(const std::string& name, Value v) { entries_.emplace_back(name, v); }
  void pop() { entries_.pop_back(); }
  const Value* lookup(const std::string& name) const {
    for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
      if (it->first == name) return &it->second;
    return nullptr;
  }
  const std::vector<std::pair<std::string, Value>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, Value>> entries_;
};

// Records one line per evaluation step when attached.
struct EvalTrace {
  std::vector<std::string> lines;
  int depth = 0;
};

// Classical bimodal satisfaction. Quantifiers range over dom(w) (subsets of
// dom(w) for plural variables); []D/<>D follow leqD, []G/<>G follow leqG.
// The assignment must cover the free variables of f with values inside
// dom(w); plural atom arguments are intersected with the current domain.
bool evalClassical(const Model& m, int world, Env& env, const FormulaRef& f,
                   EvalTrace* trace = nullptr);

// Potentialist forcing for non-modal formulas: atoms and universals look at
// every D-extension, existentials at some G-extension; implication and
// negation quantify over D-extensions.
bool evalForcing(const Model& m, int world, Env& env, const FormulaRef& f,
                 EvalTrace* trace = nullptr);

struct DeterminacySpectrum {
  std::vector<FormulaRef> possG;  // <>G []D f true at the world
  std::vector<FormulaRef> possD;  // <>D []D f true at the world
};

DeterminacySpectrum spectrum(const Model& m, int world, Env& env,
                             const std::vector<FormulaRef>& pool);

// Checks that env covers freeVars(f) with values inside dom(world).
void checkAssignment(const Model& m, int world, const Env& env, const FormulaRef& f);

}  // namespace bimodal

#endif
