#include "doctest.h"

#include <random>

#include "bimodal/formula.hpp"
#include "bimodal/parse.hpp"
#include "bimodal/substitute.hpp"

using namespace bimodal;

namespace {

Signature arithmeticSig() {
  Signature sig;
  sig.addPred("Nat", {Sort::Singular});
  sig.addPred("Succ", {Sort::Singular, Sort::Singular});
  sig.addPred("P", {Sort::Singular});
  sig.addPred("Q", {Sort::Singular});
  sig.addPred("R", {Sort::Singular, Sort::Singular});
  sig.addConstant("a");
  sig.addConstant("b");
  return sig;
}

}  // namespace

TEST_CASE("parsing the strict successor axiom shape") {
  Signature sig = arithmeticSig();
  FormulaRef f = parseFormula("[]D forall x (Nat(x) -> <>G exists y Succ(x,y))", sig);
  FormulaRef expect = Formula::boxD(Formula::forallS(
      "x", Formula::implies(Formula::atom("Nat", {singularVar("x")}),
                            Formula::diaG(Formula::existsS(
                                "y", Formula::atom("Succ", {singularVar("x"), singularVar("y")}))))));
  CHECK(structEqual(f, expect));
}

TEST_CASE("parsing atoms and plural membership") {
  Signature sig = arithmeticSig();
  CHECK(structEqual(parseFormula("P(a)", sig), Formula::atom("P", {constant("a")})));
  FormulaRef f = parseFormula("x pc xx", sig);
  CHECK(structEqual(f, Formula::prec(singularVar("x"), pluralVar("xx"))));
}

TEST_CASE("parse errors carry position info") {
  Signature sig = arithmeticSig();
  CHECK_THROWS_AS(parseFormula("P(a", sig), ParseError);
  CHECK_THROWS_AS(parseFormula("P(a) ->", sig), ParseError);
  CHECK_THROWS_AS(parseFormula("Unknown(a) &", sig), ParseError);
  try {
    parseFormula("P(a) &\n& Q(a)", sig);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.column == 1);
  }
  // Sort errors.
  CHECK_THROWS_AS(parseFormula("P(xx)", sig), ParseError);
  CHECK_THROWS_AS(parseFormula("xx = x", sig), ParseError);
  CHECK_THROWS_AS(parseFormula("x pc y", sig), ParseError);
  CHECK_THROWS_AS(parseFormula("forall xx P(a)", sig), ParseError);
  CHECK_THROWS_AS(parseFormula("forallp x P(a)", sig), ParseError);
}

TEST_CASE("derived notations expand at parse time") {
  Signature sig = arithmeticSig();
  // xx pcq yy == forall z (z pc xx -> z pc yy)
  FormulaRef f = parseFormula("xx pcq yy", sig);
  FormulaRef expect = Formula::forallS(
      "z", Formula::implies(Formula::prec(singularVar("z"), pluralVar("xx")),
                            Formula::prec(singularVar("z"), pluralVar("yy"))));
  CHECK(structEqual(f, expect));

  Signature sigSet = arithmeticSig();
  sigSet.addPred("Set", {Sort::Plural, Sort::Singular});
  sigSet.designateSet("Set");
  FormulaRef g = parseFormula("x in y", sigSet);
  FormulaRef gExpect = Formula::existsP(
      "ww", Formula::conj(Formula::atom("Set", {pluralVar("ww"), singularVar("y")}),
                          Formula::prec(singularVar("x"), pluralVar("ww"))));
  CHECK(structEqual(g, gExpect));
  // Without a designated Set, 'in' is rejected.
  CHECK_THROWS_AS(parseFormula("x in y", sig), ParseError);
}

TEST_CASE("substitution examples") {
  FormulaRef f = Formula::existsS("y", Formula::eq(singularVar("x"), singularVar("y")));
  // No capture.
  FormulaRef s1 = substitute(f, "x", constant("a"));
  CHECK(structEqual(s1, Formula::existsS("y", Formula::eq(constant("a"), singularVar("y")))));
  // Capture forces a rename of the binder.
  FormulaRef s2 = substitute(f, "x", singularVar("y"));
  CHECK(structEqual(
      s2, Formula::existsS("y'", Formula::eq(singularVar("y"), singularVar("y'")))));
  CHECK(alphaEqual(s2, Formula::existsS("w", Formula::eq(singularVar("y"), singularVar("w")))));
  // Variable absent: untouched.
  FormulaRef p = Formula::atom("P", {singularVar("x")});
  CHECK(substitute(p, "z", constant("a")) == p);
  // Sort mismatch.
  CHECK_THROWS(substitute(p, "x", pluralVar("xx")));
}

TEST_CASE("language classification") {
  Signature sig = arithmeticSig();
  CHECK(classify(parseFormula("P(x)", sig)) == Language::L);
  CHECK(classify(parseFormula("[]D P(x)", sig)) == Language::LD);
  CHECK(classify(parseFormula("<>G P(x)", sig)) == Language::LG);
  CHECK(classify(parseFormula("[]D P(x) -> []G P(x)", sig)) == Language::LBM);
}

namespace {

// Deterministic random formula generator over a small signature.
struct Gen {
  std::mt19937 rng;
  Signature sig;
  std::vector<std::string> singVars{"x", "y", "z"};
  std::vector<std::string> plurVars{"xx", "yy"};

  explicit Gen(uint32_t seed) : rng(seed), sig(arithmeticSig()) {}

  Term someSingular() {
    int k = static_cast<int>(rng() % (singVars.size() + 2));
    if (k < static_cast<int>(singVars.size())) return singularVar(singVars[k]);
    return constant(k == static_cast<int>(singVars.size()) ? "a" : "b");
  }

  FormulaRef atom() {
    switch (rng() % 5) {
      case 0: return Formula::atom("P", {someSingular()});
      case 1: return Formula::atom("Q", {someSingular()});
      case 2: return Formula::atom("R", {someSingular(), someSingular()});
      case 3: return Formula::eq(someSingular(), someSingular());
      default:
        return Formula::prec(someSingular(), pluralVar(plurVars[rng() % plurVars.size()]));
    }
  }

  FormulaRef formula(int depth) {
    if (depth == 0) return atom();
    switch (rng() % 12) {
      case 0: return atom();
      case 1: return Formula::neg(formula(depth - 1));
      case 2: return Formula::conj(formula(depth - 1), formula(depth - 1));
      case 3: return Formula::disj(formula(depth - 1), formula(depth - 1));
      case 4: return Formula::implies(formula(depth - 1), formula(depth - 1));
      case 5: return Formula::boxD(formula(depth - 1));
      case 6: return Formula::diaD(formula(depth - 1));
      case 7: return Formula::boxG(formula(depth - 1));
      case 8: return Formula::diaG(formula(depth - 1));
      case 9: return Formula::quant(rng() % 2 ? Conn::ForallS : Conn::ExistsS,
                                    singVars[rng() % singVars.size()], formula(depth - 1));
      default: return Formula::quant(rng() % 2 ? Conn::ForallP : Conn::ExistsP,
                                     plurVars[rng() % plurVars.size()], formula(depth - 1));
    }
  }
};

}  // namespace

TEST_CASE("round-trip: parse(render(f)) is alpha-equivalent to f") {
  Gen gen(20240901);
  for (int i = 0; i < 400; ++i) {
    FormulaRef f = gen.formula(1 + static_cast<int>(gen.rng() % 6));
    std::string text = render(f);
    CAPTURE(text);
    FormulaRef back = parseFormula(text, gen.sig);
    CHECK(alphaEqual(f, back));
    // Printing is stable.
    CHECK(render(back) == text);
  }
}

TEST_CASE("substitution lemma on free variables") {
  Gen gen(7771);
  int applied = 0;
  for (int i = 0; i < 500; ++i) {
    FormulaRef f = gen.formula(1 + static_cast<int>(gen.rng() % 4));
    VarSet before = freeVars(f);
    if (!before.count({"x", Sort::Singular})) continue;
    ++applied;
    Term t = gen.rng() % 2 ? singularVar("y") : constant("a");
    FormulaRef g = substitute(f, "x", t);
    VarSet expect = before;
    expect.erase({"x", Sort::Singular});
    if (t.kind == TermKind::Var) expect.insert({t.name, Sort::Singular});
    CHECK(freeVars(g) == expect);
  }
  CHECK(applied > 50);
}

TEST_CASE("language tag is the join of subformula tags") {
  Gen gen(4242);
  auto join = [](Language a, Language b) {
    bool d = (a == Language::LD || a == Language::LBM) || (b == Language::LD || b == Language::LBM);
    bool g = (a == Language::LG || a == Language::LBM) || (b == Language::LG || b == Language::LBM);
    if (d && g) return Language::LBM;
    if (d) return Language::LD;
    if (g) return Language::LG;
    return Language::L;
  };
  for (int i = 0; i < 300; ++i) {
    FormulaRef f = gen.formula(3);
    Language own = Language::L;
    if (f->kind == Conn::BoxD || f->kind == Conn::DiaD) own = Language::LD;
    if (f->kind == Conn::BoxG || f->kind == Conn::DiaG) own = Language::LG;
    Language expect = own;
    if (f->lhs) expect = join(expect, classify(f->lhs));
    if (f->rhs) expect = join(expect, classify(f->rhs));
    CHECK(classify(f) == expect);
  }
}

TEST_CASE("plural variable shape rule") {
  CHECK(isPluralName("xx"));
  CHECK(isPluralName("aa"));
  CHECK(isPluralName("stuff"));  // doubled final letter
  CHECK(!isPluralName("x"));
  CHECK(!isPluralName("xy"));
  CHECK(!isPluralName("x1"));
}
