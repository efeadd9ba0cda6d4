#ifndef BIMODAL_SIGNATURE_HPP
#define BIMODAL_SIGNATURE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bimodal {

enum class Sort { Singular, Plural };

struct PredDecl {
  std::string name;
  std::vector<Sort> argSorts;
};

// Relational signature. `in` (set membership) and plural inclusion are
// derived notations expanded by the parser, never primitive symbols.
struct Signature {
  std::vector<PredDecl> preds;
  std::vector<std::string> constants;

  // Designated symbols, when present: Set(plural, singular), a unary
  // natural-number predicate, a binary successor predicate.
  std::optional<std::string> setPred;
  std::optional<std::string> natPred;
  std::optional<std::string> succPred;

  const PredDecl* findPred(std::string_view name) const {
    for (const auto& p : preds)
      if (p.name == name) return &p;
    return nullptr;
  }

  bool isConstant(std::string_view name) const {
    for (const auto& c : constants)
      if (c == name) return true;
    return false;
  }

  void addPred(std::string name, std::vector<Sort> argSorts) {
    if (findPred(name))
      throw std::invalid_argument("duplicate predicate: " + name);
    preds.push_back(PredDecl{std::move(name), std::move(argSorts)});
  }

  void addConstant(std::string name) {
    if (!isConstant(name)) constants.push_back(std::move(name));
  }

  void designateSet(const std::string& name) {
    const PredDecl* p = findPred(name);
    if (!p || p->argSorts.size() != 2 || p->argSorts[0] != Sort::Plural ||
        p->argSorts[1] != Sort::Singular)
      throw std::invalid_argument("Set predicate must have sorts (plural, singular)");
    setPred = name;
  }

  void designateNat(const std::string& name) {
    const PredDecl* p = findPred(name);
    if (!p || p->argSorts.size() != 1 || p->argSorts[0] != Sort::Singular)
      throw std::invalid_argument("natural-number predicate must be unary singular");
    natPred = name;
  }

  void designateSucc(const std::string& name) {
    const PredDecl* p = findPred(name);
    if (!p || p->argSorts.size() != 2 || p->argSorts[0] != Sort::Singular ||
        p->argSorts[1] != Sort::Singular)
      throw std::invalid_argument("successor predicate must be binary singular");
    succPred = name;
  }
};

}  // namespace bimodal

#endif
