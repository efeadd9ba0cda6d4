#include "bimodal/parse.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace bimodal {

namespace {

enum class Tok {
  End, Ident, LParen, RParen, Comma, Not, And, Or, Implies, Eq,
  BoxD, BoxG, DiaD, DiaG,
  Forall, Exists, ForallP, ExistsP, Pc, Pcq, In,
};

struct Token {
  Tok kind;
  std::string text;
  size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg, size_t pos) const {
    size_t line = 1, col = 1;
    for (size_t i = 0; i < pos && i < src_.size(); ++i) {
      if (src_[i] == '\n') { ++line; col = 1; } else { ++col; }
    }
    throw ParseError(msg + " (line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ")",
                     pos, line, col);
  }

  [[noreturn]] void failHere(const std::string& msg) const { fail(msg, tok_.pos); }

 private:
  void advance() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
    tok_.pos = i_;
    if (i_ >= src_.size()) { tok_ = {Tok::End, "", i_}; return; }
    char c = src_[i_];
    auto two = [&](char a, char b) {
      return c == a && i_ + 1 < src_.size() && src_[i_ + 1] == b;
    };
    if (two('[', ']')) {
      if (i_ + 2 < src_.size() && (src_[i_ + 2] == 'D' || src_[i_ + 2] == 'G')) {
        tok_.kind = src_[i_ + 2] == 'D' ? Tok::BoxD : Tok::BoxG;
        tok_.text = src_.substr(i_, 3);
        i_ += 3;
        return;
      }
      fail("expected D or G after []", i_ + 2);
    }
    if (two('<', '>')) {
      if (i_ + 2 < src_.size() && (src_[i_ + 2] == 'D' || src_[i_ + 2] == 'G')) {
        tok_.kind = src_[i_ + 2] == 'D' ? Tok::DiaD : Tok::DiaG;
        tok_.text = src_.substr(i_, 3);
        i_ += 3;
        return;
      }
      fail("expected D or G after <>", i_ + 2);
    }
    if (two('-', '>')) { tok_ = {Tok::Implies, "->", i_}; i_ += 2; return; }
    switch (c) {
      case '(': tok_ = {Tok::LParen, "(", i_}; ++i_; return;
      case ')': tok_ = {Tok::RParen, ")", i_}; ++i_; return;
      case ',': tok_ = {Tok::Comma, ",", i_}; ++i_; return;
      case '~': tok_ = {Tok::Not, "~", i_}; ++i_; return;
      case '&': tok_ = {Tok::And, "&", i_}; ++i_; return;
      case '|': tok_ = {Tok::Or, "|", i_}; ++i_; return;
      case '=': tok_ = {Tok::Eq, "=", i_}; ++i_; return;
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = i_;
      while (i_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_' ||
              src_[i_] == '\''))
        ++i_;
      std::string word(src_.substr(start, i_ - start));
      Tok k = Tok::Ident;
      if (word == "forall") k = Tok::Forall;
      else if (word == "exists") k = Tok::Exists;
      else if (word == "forallp") k = Tok::ForallP;
      else if (word == "existsp") k = Tok::ExistsP;
      else if (word == "pc") k = Tok::Pc;
      else if (word == "pcq") k = Tok::Pcq;
      else if (word == "in") k = Tok::In;
      tok_ = {k, std::move(word), start};
      return;
    }
    fail(std::string("unexpected character '") + c + "'", i_);
  }

  std::string_view src_;
  size_t i_ = 0;
  Token tok_;
};

class Parser {
 public:
  Parser(std::string_view text, Signature& sig, bool infer)
      : lex_(text), sig_(sig), infer_(infer) {}

  FormulaRef parse() {
    FormulaRef f = parseImplies();
    if (lex_.peek().kind != Tok::End)
      lex_.failHere("unexpected trailing input; expected end of formula");
    return f;
  }

  Term parseSingleTerm() {
    Token t = expect(Tok::Ident, "term");
    Term r = resolveTerm(t);
    if (lex_.peek().kind != Tok::End) lex_.failHere("unexpected trailing input after term");
    return r;
  }

 private:
  Token expect(Tok k, const char* what) {
    if (lex_.peek().kind != k)
      lex_.failHere(std::string("expected ") + what + ", got '" + lex_.peek().text + "'");
    return lex_.take();
  }

  bool bound(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it)
      if (*it == name) return true;
    return false;
  }

  Term resolveTerm(const Token& t) {
    if (!bound(t.text) && sig_.isConstant(t.text)) return constant(t.text);
    if (sig_.findPred(t.text))
      lex_.fail("predicate symbol '" + t.text + "' used in term position", t.pos);
    return isPluralName(t.text) ? pluralVar(t.text) : singularVar(t.text);
  }

  FormulaRef parseImplies() {
    FormulaRef a = parseOr();
    if (lex_.peek().kind == Tok::Implies) {
      lex_.take();
      return Formula::implies(std::move(a), parseImplies());
    }
    return a;
  }

  FormulaRef parseOr() {
    FormulaRef a = parseAnd();
    while (lex_.peek().kind == Tok::Or) {
      lex_.take();
      a = Formula::disj(std::move(a), parseAnd());
    }
    return a;
  }

  FormulaRef parseAnd() {
    FormulaRef a = parseUnary();
    while (lex_.peek().kind == Tok::And) {
      lex_.take();
      a = Formula::conj(std::move(a), parseUnary());
    }
    return a;
  }

  FormulaRef parseQuantifier(Conn kind, bool plural) {
    Token v = expect(Tok::Ident, "variable");
    if (isPluralName(v.text) != plural)
      lex_.fail(std::string(plural ? "plural" : "singular") + " variable expected, got '" +
                    v.text + "'",
                v.pos);
    if (sig_.isConstant(v.text) || sig_.findPred(v.text))
      lex_.fail("'" + v.text + "' is a declared symbol and cannot be bound", v.pos);
    scopes_.push_back(v.text);
    FormulaRef body = parseUnary();
    scopes_.pop_back();
    return Formula::quant(kind, v.text, std::move(body));
  }

  FormulaRef parseUnary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Not: lex_.take(); return Formula::neg(parseUnary());
      case Tok::BoxD: lex_.take(); return Formula::boxD(parseUnary());
      case Tok::DiaD: lex_.take(); return Formula::diaD(parseUnary());
      case Tok::BoxG: lex_.take(); return Formula::boxG(parseUnary());
      case Tok::DiaG: lex_.take(); return Formula::diaG(parseUnary());
      case Tok::Forall: lex_.take(); return parseQuantifier(Conn::ForallS, false);
      case Tok::Exists: lex_.take(); return parseQuantifier(Conn::ExistsS, false);
      case Tok::ForallP: lex_.take(); return parseQuantifier(Conn::ForallP, true);
      case Tok::ExistsP: lex_.take(); return parseQuantifier(Conn::ExistsP, true);
      case Tok::LParen: {
        lex_.take();
        FormulaRef f = parseImplies();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Ident: return parseAtomic();
      default:
        lex_.failHere("expected a formula, got '" + t.text + "'");
    }
  }

  // Atom, equality, pc, pcq, or in -- all start with an identifier.
  FormulaRef parseAtomic() {
    Token head = lex_.take();
    if (lex_.peek().kind == Tok::LParen && !bound(head.text) && !sig_.isConstant(head.text) &&
        (sig_.findPred(head.text) || infer_)) {
      return parseApplication(head);
    }
    Term left = resolveTerm(head);
    const Token& op = lex_.peek();
    switch (op.kind) {
      case Tok::Eq: {
        lex_.take();
        Token rt = expect(Tok::Ident, "term");
        Term right = resolveTerm(rt);
        if (left.sort() != Sort::Singular || right.sort() != Sort::Singular)
          lex_.fail("'=' relates singular terms", rt.pos);
        return Formula::eq(left, right);
      }
      case Tok::Pc: {
        lex_.take();
        Token rt = expect(Tok::Ident, "plural variable");
        Term right = resolveTerm(rt);
        if (left.sort() != Sort::Singular)
          lex_.fail("left side of pc must be singular", head.pos);
        if (right.kind != TermKind::PluralVar)
          lex_.fail("right side of pc must be a plural variable", rt.pos);
        return Formula::prec(left, right);
      }
      case Tok::Pcq: {
        lex_.take();
        Token rt = expect(Tok::Ident, "plural variable");
        Term right = resolveTerm(rt);
        if (left.kind != TermKind::PluralVar || right.kind != TermKind::PluralVar)
          lex_.fail("pcq relates plural variables", rt.pos);
        // xx pcq yy abbreviates forall z (z pc xx -> z pc yy).
        std::string z = "z";
        while (z == left.name || z == right.name || bound(z)) z += "'";
        return Formula::forallS(
            z, Formula::implies(Formula::prec(singularVar(z), left),
                                Formula::prec(singularVar(z), right)));
      }
      case Tok::In: {
        lex_.take();
        Token rt = expect(Tok::Ident, "term");
        Term right = resolveTerm(rt);
        if (left.sort() != Sort::Singular || right.sort() != Sort::Singular)
          lex_.fail("'in' relates singular terms", rt.pos);
        if (!sig_.setPred) {
          if (!infer_) lex_.fail("'in' needs a designated Set predicate", op.pos);
          if (!sig_.findPred("Set")) sig_.addPred("Set", {Sort::Plural, Sort::Singular});
          sig_.designateSet("Set");
        }
        // t in u abbreviates existsp W (Set(W, u) & t pc W).
        std::string w = "ww";
        while (w == left.name || w == right.name || bound(w)) w += "w";
        return Formula::existsP(
            w, Formula::conj(Formula::atom(*sig_.setPred, {pluralVar(w), right}),
                             Formula::prec(left, pluralVar(w))));
      }
      default:
        // A bare identifier is a 0-ary predicate.
        if (!bound(head.text) && !sig_.isConstant(head.text)) {
          const PredDecl* p = sig_.findPred(head.text);
          if (p) {
            if (!p->argSorts.empty())
              lex_.fail("predicate '" + head.text + "' expects " +
                            std::to_string(p->argSorts.size()) + " argument(s)",
                        head.pos);
            return Formula::atom(head.text, {});
          }
          if (infer_ && std::isupper(static_cast<unsigned char>(head.text[0]))) {
            sig_.addPred(head.text, {});
            return Formula::atom(head.text, {});
          }
        }
        lex_.failHere("expected '=', 'pc', 'pcq', 'in', or predicate application after '" +
                      head.text + "'");
    }
  }

  FormulaRef parseApplication(const Token& head) {
    expect(Tok::LParen, "'('");
    std::vector<Term> args;
    if (lex_.peek().kind != Tok::RParen) {
      for (;;) {
        Token at = expect(Tok::Ident, "term");
        args.push_back(resolveTerm(at));
        if (lex_.peek().kind == Tok::Comma) { lex_.take(); continue; }
        break;
      }
    }
    expect(Tok::RParen, "')'");
    const PredDecl* p = sig_.findPred(head.text);
    if (!p) {
      // Inference mode: declare with the sorts of this first use.
      std::vector<Sort> sorts;
      for (const auto& a : args) sorts.push_back(a.sort());
      sig_.addPred(head.text, std::move(sorts));
      p = sig_.findPred(head.text);
    }
    if (p->argSorts.size() != args.size())
      lex_.fail("predicate '" + head.text + "' expects " + std::to_string(p->argSorts.size()) +
                    " argument(s), got " + std::to_string(args.size()),
                head.pos);
    for (size_t i = 0; i < args.size(); ++i) {
      if (args[i].sort() != p->argSorts[i])
        lex_.fail("argument " + std::to_string(i + 1) + " of '" + head.text + "' must be " +
                      (p->argSorts[i] == Sort::Plural ? "plural" : "singular"),
                  head.pos);
    }
    return Formula::atom(head.text, std::move(args));
  }

  Lexer lex_;
  Signature& sig_;
  bool infer_;
  std::vector<std::string> scopes_;
};

}  // namespace

FormulaRef parseFormula(std::string_view text, const Signature& sig) {
  Signature copy = sig;  // the strict mode must not mutate the signature
  Parser p(text, copy, false);
  return p.parse();
}

FormulaRef parseFormulaInfer(std::string_view text, Signature& sig) {
  Parser p(text, sig, true);
  return p.parse();
}

Term parseTerm(std::string_view text, const Signature& sig) {
  Signature copy = sig;
  Parser p(text, copy, false);
  return p.parseSingleTerm();
}

}  // namespace bimodal
