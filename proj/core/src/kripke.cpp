#include "bimodal/kripke.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace bimodal {

std::string frameConditionName(FrameCondition c) {
  switch (c) {
    case FrameCondition::DReflexive: return "leqD reflexive";
    case FrameCondition::DTransitive: return "leqD transitive";
    case FrameCondition::GReflexive: return "leqG reflexive";
    case FrameCondition::GTransitive: return "leqG transitive";
    case FrameCondition::GConvergent: return "leqG convergent";
    case FrameCondition::GContainedInD: return "leqG contained in leqD";
    case FrameCondition::MixedConvergence: return "mixed convergence";
    case FrameCondition::DomainMonotone: return "domain monotone along leqD";
    case FrameCondition::ExtensionInDomain: return "extension within domain";
    case FrameCondition::GStableAtoms: return "G-stable atoms";
    case FrameCondition::DStableAtoms: return "D-stable atoms";
  }
  return "?";
}

std::vector<Violation> validateFrame(const Frame& f) {
  std::vector<Violation> out;
  const int n = f.worlds;
  for (int w = 0; w < n; ++w) {
    if (!f.relD(w, w)) out.push_back({FrameCondition::DReflexive, w, -1, -1, "", 0});
    if (!f.relG(w, w)) out.push_back({FrameCondition::GReflexive, w, -1, -1, "", 0});
    if (f.leqG[w] & ~f.leqD[w]) {
      int v = std::countr_zero(f.leqG[w] & ~f.leqD[w]);
      out.push_back({FrameCondition::GContainedInD, w, v, -1, "", 0});
    }
  }
  for (int w = 0; w < n; ++w)
    for (int v = 0; v < n; ++v) {
      if (f.relD(w, v)) {
        if (f.leqD[v] & ~f.leqD[w]) {
          int u = std::countr_zero(f.leqD[v] & ~f.leqD[w]);
          out.push_back({FrameCondition::DTransitive, w, v, u, "", 0});
        }
        if ((f.dom[w] & ~f.dom[v]) != 0)
          out.push_back({FrameCondition::DomainMonotone, w, v, -1, "", 0});
      }
      if (f.relG(w, v) && (f.leqG[v] & ~f.leqG[w])) {
        int u = std::countr_zero(f.leqG[v] & ~f.leqG[w]);
        out.push_back({FrameCondition::GTransitive, w, v, u, "", 0});
      }
    }
  // Convergence of G: any two G-extensions share a G-extension.
  for (int w0 = 0; w0 < n; ++w0)
    for (int w1 = 0; w1 < n; ++w1)
      for (int w2 = 0; w2 < n; ++w2) {
        if (!f.relG(w0, w1) || !f.relG(w0, w2)) continue;
        if ((f.leqG[w1] & f.leqG[w2]) == 0)
          out.push_back({FrameCondition::GConvergent, w0, w1, w2, "", 0});
      }
  // Mixed convergence: a G-extension and a D-extension of one world are
  // completable: exists w3 with w1 <=D w3 and w2 <=G w3.
  for (int w0 = 0; w0 < n; ++w0)
    for (int w1 = 0; w1 < n; ++w1)
      for (int w2 = 0; w2 < n; ++w2) {
        if (!f.relG(w0, w1) || !f.relD(w0, w2)) continue;
        if ((f.leqD[w1] & f.leqG[w2]) == 0)
          out.push_back({FrameCondition::MixedConvergence, w0, w1, w2, "", 0});
      }
  return out;
}

uint64_t packArg(uint64_t tuple, int position, uint8_t value) {
  return tuple | (static_cast<uint64_t>(value) << (8 * position));
}

uint8_t unpackArg(uint64_t tuple, int position) {
  return static_cast<uint8_t>(tuple >> (8 * position));
}

int Model::worldIndex(const std::string& name) const {
  for (size_t i = 0; i < worldNames.size(); ++i)
    if (worldNames[i] == name) return static_cast<int>(i);
  return -1;
}

int Model::individualIndex(const std::string& name) const {
  for (size_t i = 0; i < indNames.size(); ++i)
    if (indNames[i] == name) return static_cast<int>(i);
  return -1;
}

bool Model::holds(const std::string& pred, int world, uint64_t tuple) const {
  auto it = interp.find(pred);
  if (it == interp.end()) return false;
  const auto& row = it->second[world];
  return std::binary_search(row.begin(), row.end(), tuple);
}

void Model::add(const std::string& pred, int world, uint64_t tuple) {
  auto& rows = interp[pred];
  if (rows.empty()) rows.resize(frame.worlds);
  auto& row = rows[world];
  auto it = std::lower_bound(row.begin(), row.end(), tuple);
  if (it == row.end() || *it != tuple) row.insert(it, tuple);
}

namespace {

// All tuples for pred over the given domain mask.
void tuplesOver(const std::vector<Sort>& sorts, uint32_t domMask, size_t pos, uint64_t acc,
                std::vector<uint64_t>& out) {
  if (pos == sorts.size()) {
    out.push_back(acc);
    return;
  }
  if (sorts[pos] == Sort::Singular) {
    for (int d = 0; d < 8; ++d)
      if ((domMask >> d) & 1)
        tuplesOver(sorts, domMask, pos + 1, packArg(acc, static_cast<int>(pos), d), out);
  } else {
    uint32_t sub = domMask;
    for (;;) {
      tuplesOver(sorts, domMask, pos + 1, packArg(acc, static_cast<int>(pos), sub), out);
      if (sub == 0) break;
      sub = (sub - 1) & domMask;
    }
  }
}

bool tupleInDomain(const std::vector<Sort>& sorts, uint64_t tuple, uint32_t domMask) {
  for (size_t i = 0; i < sorts.size(); ++i) {
    uint8_t v = unpackArg(tuple, static_cast<int>(i));
    if (sorts[i] == Sort::Singular) {
      if (!((domMask >> v) & 1)) return false;
    } else {
      if (v & ~domMask) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<Violation> validateModel(const Model& m) {
  std::vector<Violation> out = validateFrame(m.frame);
  for (const auto& [pred, rows] : m.interp) {
    const PredDecl* decl = m.sig.findPred(pred);
    if (!decl) {
      out.push_back({FrameCondition::ExtensionInDomain, -1, -1, -1,
                     "undeclared predicate " + pred, 0});
      continue;
    }
    for (int w = 0; w < m.frame.worlds; ++w) {
      for (uint64_t t : rows[w])
        if (!tupleInDomain(decl->argSorts, t, m.frame.dom[w]))
          out.push_back({FrameCondition::ExtensionInDomain, w, -1, -1,
                         "tuple of " + pred + " outside dom", 0});
    }
    auto checkStability = [&](bool alongG, FrameCondition cond) {
      for (int w = 0; w < m.frame.worlds; ++w)
        for (int v = 0; v < m.frame.worlds; ++v) {
          if (w == v) continue;
          bool rel = alongG ? m.frame.relG(w, v) : m.frame.relD(w, v);
          if (!rel) continue;
          std::vector<uint64_t> ts;
          tuplesOver(decl->argSorts, m.frame.dom[w], 0, 0, ts);
          for (uint64_t t : ts) {
            if (m.holds(pred, w, t) != m.holds(pred, v, t)) {
              out.push_back({cond, w, v, -1, "atom " + pred, 0});
              return;
            }
          }
        }
    };
    if (m.flags.gStableAtoms) checkStability(true, FrameCondition::GStableAtoms);
    if (m.flags.dStableAtoms) checkStability(false, FrameCondition::DStableAtoms);
  }
  return out;
}

namespace {

std::vector<std::string> splitWords(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

}  // namespace

Model parseModel(const std::string& text) {
  Model m;
  std::istringstream is(text);
  std::string raw;
  int lineNo = 0;
  std::vector<std::tuple<int, std::string, std::string>> interpLines;  // line, head, rest
  std::vector<std::tuple<int, bool, std::string>> relLines;            // line, isD, rest
  std::vector<std::tuple<int, std::string, std::string>> domLines;

  auto fail = [](const std::string& msg, int line) -> void {
    throw ModelParseError(msg, line);
  };

  while (std::getline(is, raw)) {
    ++lineNo;
    std::string line = raw;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    // Trim.
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);

    auto colon = line.find(':');
    if (colon == std::string::npos) fail("expected 'keyword ...:' line", lineNo);
    std::string head = line.substr(0, colon);
    std::string rest = line.substr(colon + 1);
    auto headWords = splitWords(head);
    if (headWords.empty()) fail("empty keyword", lineNo);
    const std::string& kw = headWords[0];

    if (kw == "worlds") {
      if (!m.worldNames.empty()) fail("duplicate worlds line", lineNo);
      m.worldNames = splitWords(rest);
      if (m.worldNames.empty()) fail("worlds line lists no worlds", lineNo);
      if (m.worldNames.size() > 30) fail("too many worlds", lineNo);
    } else if (kw == "leqD" || kw == "leqG") {
      relLines.emplace_back(lineNo, kw == "leqD", rest);
    } else if (kw == "dom") {
      if (headWords.size() != 2) fail("expected 'dom <world>:'", lineNo);
      domLines.emplace_back(lineNo, headWords[1], rest);
    } else if (kw == "interp") {
      if (headWords.size() != 3) fail("expected 'interp <world> <pred>:'", lineNo);
      interpLines.emplace_back(lineNo, headWords[1] + " " + headWords[2], rest);
    } else if (kw == "flags") {
      for (const auto& f : splitWords(rest)) {
        if (f == "g-stable-atoms") m.flags.gStableAtoms = true;
        else if (f == "no-g-stable-atoms") m.flags.gStableAtoms = false;
        else if (f == "d-stable-atoms") m.flags.dStableAtoms = true;
        else if (f == "no-d-stable-atoms") m.flags.dStableAtoms = false;
        else if (f == "decidable-identity") m.flags.decidableIdentity = true;
        else if (f == "no-decidable-identity") m.flags.decidableIdentity = false;
        else fail("unknown flag " + f, lineNo);
      }
    } else {
      fail("unknown keyword '" + kw + "'", lineNo);
    }
  }

  if (m.worldNames.empty()) throw ModelParseError("missing worlds line", 1);
  int n = static_cast<int>(m.worldNames.size());
  m.frame.worlds = n;
  m.frame.leqD.assign(n, 0);
  m.frame.leqG.assign(n, 0);
  m.frame.dom.assign(n, 0);
  for (int w = 0; w < n; ++w) {
    m.frame.leqD[w] |= 1u << w;  // reflexive closure
    m.frame.leqG[w] |= 1u << w;
  }

  for (const auto& [ln, isD, rest] : relLines) {
    for (const auto& pair : splitWords(rest)) {
      auto arrow = pair.find("<=");
      if (arrow == std::string::npos) fail("expected 'w<=v' pair, got " + pair, ln);
      int a = m.worldIndex(pair.substr(0, arrow));
      int b = m.worldIndex(pair.substr(arrow + 2));
      if (a < 0 || b < 0) fail("unknown world in pair " + pair, ln);
      (isD ? m.frame.leqD : m.frame.leqG)[a] |= 1u << b;
    }
  }

  for (const auto& [ln, worldName, rest] : domLines) {
    int w = m.worldIndex(worldName);
    if (w < 0) fail("unknown world " + worldName, ln);
    for (const auto& ind : splitWords(rest)) {
      int idx = m.individualIndex(ind);
      if (idx < 0) {
        if (m.indNames.size() >= 8) fail("too many individuals (max 8)", ln);
        idx = static_cast<int>(m.indNames.size());
        m.indNames.push_back(ind);
        m.sig.addConstant(ind);
      }
      m.frame.dom[w] |= 1u << idx;
    }
  }

  for (const auto& [ln, head, rest] : interpLines) {
    auto hw = splitWords(head);
    int w = m.worldIndex(hw[0]);
    if (w < 0) fail("unknown world " + hw[0], ln);
    const std::string& pred = hw[1];

    // Tokenize the tuple list: ( ... ) groups with { ... } plural values.
    std::vector<std::vector<std::string>> tuples;
    size_t i = 0;
    auto skipWs = [&] { while (i < rest.size() && std::isspace(static_cast<unsigned char>(rest[i]))) ++i; };
    for (;;) {
      skipWs();
      if (i >= rest.size()) break;
      if (rest[i] != '(') fail("expected '(' starting a tuple", ln);
      ++i;
      std::vector<std::string> parts;
      for (;;) {
        skipWs();
        if (i >= rest.size()) fail("unterminated tuple", ln);
        if (rest[i] == ')') { ++i; break; }
        if (rest[i] == '{') {
          size_t close = rest.find('}', i);
          if (close == std::string::npos) fail("unterminated '{'", ln);
          parts.push_back(rest.substr(i, close - i + 1));
          i = close + 1;
        } else {
          size_t start = i;
          while (i < rest.size() && !std::isspace(static_cast<unsigned char>(rest[i])) &&
                 rest[i] != ')' && rest[i] != '{')
            ++i;
          parts.push_back(rest.substr(start, i - start));
        }
      }
      tuples.push_back(std::move(parts));
    }

    std::vector<Sort> sorts;
    const PredDecl* decl = m.sig.findPred(pred);
    if (decl) sorts = decl->argSorts;

    for (const auto& parts : tuples) {
      if (!decl && m.interp.find(pred) == m.interp.end() && sorts.empty()) {
        for (const auto& p : parts)
          sorts.push_back(p.front() == '{' ? Sort::Plural : Sort::Singular);
        m.sig.addPred(pred, sorts);
        decl = m.sig.findPred(pred);
      }
      if (parts.size() != sorts.size())
        fail("tuple arity mismatch for " + pred, ln);
      uint64_t tuple = 0;
      for (size_t k = 0; k < parts.size(); ++k) {
        const std::string& p = parts[k];
        if (sorts[k] == Sort::Plural) {
          if (p.front() != '{' || p.back() != '}')
            fail("plural position of " + pred + " needs {..}", ln);
          uint8_t mask = 0;
          for (const auto& ind : splitWords(p.substr(1, p.size() - 2))) {
            int idx = m.individualIndex(ind);
            if (idx < 0) fail("unknown individual " + ind, ln);
            mask |= static_cast<uint8_t>(1u << idx);
          }
          tuple = packArg(tuple, static_cast<int>(k), mask);
        } else {
          if (p.front() == '{') fail("singular position of " + pred + " given a plural value", ln);
          int idx = m.individualIndex(p);
          if (idx < 0) fail("unknown individual " + p, ln);
          tuple = packArg(tuple, static_cast<int>(k), static_cast<uint8_t>(idx));
        }
      }
      if (m.interp.find(pred) == m.interp.end()) m.interp[pred].resize(n);
      m.add(pred, w, tuple);
    }
    if (decl && m.interp.find(pred) == m.interp.end()) m.interp[pred].resize(n);
  }
  return m;
}

std::string renderModel(const Model& m) {
  std::ostringstream os;
  os << "worlds:";
  for (const auto& w : m.worldNames) os << " " << w;
  os << "\n";
  auto relLine = [&](const char* kw, const std::vector<uint32_t>& rel) {
    os << kw << ":";
    for (int w = 0; w < m.frame.worlds; ++w)
      for (int v = 0; v < m.frame.worlds; ++v)
        if (w != v && ((rel[w] >> v) & 1))
          os << " " << m.worldNames[w] << "<=" << m.worldNames[v];
    os << "\n";
  };
  relLine("leqD", m.frame.leqD);
  relLine("leqG", m.frame.leqG);
  for (int w = 0; w < m.frame.worlds; ++w) {
    os << "dom " << m.worldNames[w] << ":";
    for (size_t d = 0; d < m.indNames.size(); ++d)
      if ((m.frame.dom[w] >> d) & 1) os << " " << m.indNames[d];
    os << "\n";
  }
  if (!m.flags.gStableAtoms || m.flags.dStableAtoms || !m.flags.decidableIdentity) {
    os << "flags:";
    if (!m.flags.gStableAtoms) os << " no-g-stable-atoms";
    if (m.flags.dStableAtoms) os << " d-stable-atoms";
    if (!m.flags.decidableIdentity) os << " no-decidable-identity";
    os << "\n";
  }
  for (const auto& [pred, rows] : m.interp) {
    const PredDecl* decl = m.sig.findPred(pred);
    for (int w = 0; w < m.frame.worlds; ++w) {
      if (rows[w].empty()) continue;
      os << "interp " << m.worldNames[w] << " " << pred << ":";
      for (uint64_t t : rows[w]) {
        os << " (";
        for (size_t k = 0; k < decl->argSorts.size(); ++k) {
          if (k) os << " ";
          uint8_t v = unpackArg(t, static_cast<int>(k));
          if (decl->argSorts[k] == Sort::Plural) {
            os << "{";
            bool first = true;
            for (size_t d = 0; d < m.indNames.size(); ++d)
              if ((v >> d) & 1) {
                if (!first) os << " ";
                os << m.indNames[d];
                first = false;
              }
            os << "}";
          } else {
            os << m.indNames[v];
          }
        }
        os << ")";
      }
      os << "\n";
    }
  }
  return os.str();
}

std::string describeViolations(const Model& m, const std::vector<Violation>& vs) {
  std::ostringstream os;
  auto wn = [&](int w) { return w >= 0 && w < m.frame.worlds ? m.worldNames[w] : std::string("-"); };
  for (const auto& v : vs) {
    os << "violated: " << frameConditionName(v.condition);
    if (v.w0 >= 0) os << " at (" << wn(v.w0);
    if (v.w1 >= 0) os << ", " << wn(v.w1);
    if (v.w2 >= 0) os << ", " << wn(v.w2);
    if (v.w0 >= 0) os << ")";
    if (!v.detail.empty()) os << " [" << v.detail << "]";
    os << "\n";
  }
  return os.str();
}

}  // namespace bimodal
