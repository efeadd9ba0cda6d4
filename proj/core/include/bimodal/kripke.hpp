#ifndef BIMODAL_KRIPKE_HPP
#define BIMODAL_KRIPKE_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bimodal/signature.hpp"

namespace bimodal {

// Finite bimodal frame. Relations are stored as per-world successor bitmasks
// (bit w' of leqD[w] set iff w <=D w'); domains as individual bitmasks over a
// shared universe of at most 8 individuals.
struct Frame {
  int worlds = 0;
  std::vector<uint32_t> leqD;
  std::vector<uint32_t> leqG;
  std::vector<uint32_t> dom;

  bool relD(int w, int v) const { return (leqD[w] >> v) & 1; }
  bool relG(int w, int v) const { return (leqG[w] >> v) & 1; }
};

enum class FrameCondition {
  DReflexive,
  DTransitive,
  GReflexive,
  GTransitive,
  GConvergent,
  GContainedInD,
  MixedConvergence,
  DomainMonotone,
  ExtensionInDomain,
  GStableAtoms,
  DStableAtoms,
};

std::string frameConditionName(FrameCondition c);

struct Violation {
  FrameCondition condition;
  // Worlds witnessing the violation (unused entries are -1).
  int w0 = -1, w1 = -1, w2 = -1;
  std::string detail;
  int line = 0;  // source line when the model came from a file
};

// Checks the five frame conditions: D reflexive+transitive; G reflexive,
// transitive and convergent; G contained in D; mixed convergence; domain
// monotone along D. Violations are data, not errors.
std::vector<Violation> validateFrame(const Frame& f);

struct ModelFlags {
  bool gStableAtoms = true;
  bool dStableAtoms = false;
  bool decidableIdentity = true;
};

// Tuples are packed one argument per byte: singular positions hold the
// individual index, plural positions hold a subset bitmask.
uint64_t packArg(uint64_t tuple, int position, uint8_t value);
uint8_t unpackArg(uint64_t tuple, int position);

struct Model {
  Frame frame;
  Signature sig;
  ModelFlags flags;
  std::vector<std::string> worldNames;
  std::vector<std::string> indNames;
  // interp[pred][world] = sorted vector of packed tuples
  std::map<std::string, std::vector<std::vector<uint64_t>>> interp;

  int worldIndex(const std::string& name) const;
  int individualIndex(const std::string& name) const;
  bool holds(const std::string& pred, int world, uint64_t tuple) const;
  void add(const std::string& pred, int world, uint64_t tuple);
};

// Frame conditions plus: extensions only over dom(world); G-stability of
// atoms when flagged (and D-stability when flagged).
std::vector<Violation> validateModel(const Model& m);

struct ModelParseError : std::runtime_error {
  int line;
  ModelParseError(std::string msg, int line)
      : std::runtime_error(std::move(msg)), line(line) {}
};

// Keyword-block text format; see the grammar in the README. The reflexive
// closure of both relations is added automatically.
Model parseModel(const std::string& text);
std::string renderModel(const Model& m);

std::string describeViolations(const Model& m, const std::vector<Violation>& vs);

}  // namespace bimodal

#endif
