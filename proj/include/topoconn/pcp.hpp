#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "topoconn/syntax.hpp"

namespace topoconn {

struct PcpInstance {
  std::vector<std::string> tiles;
  std::map<std::string, std::string> lower, upper;  // words over {0,1}
};

void validate(const PcpInstance& inst);  // InvalidInstance

// Pairs of depicted regions that may touch; every other pair gets !C.
struct AdjacencyTable {
  std::string version;
  std::set<std::pair<std::string, std::string>> allowed_contacts;  // stored with first < second
  bool allowed(const std::string& x, const std::string& y) const;
};

const AdjacencyTable& adjacency_table();

struct FamilyCount {
  int stage;  // 1..5; 0 for the implicit 3-region conjuncts
  std::string family;
  size_t conjuncts = 0;
  bool transcription = false;  // our reading of prose or of a garbled display
  std::string note;
};

struct CompileReport {
  size_t variables = 0;
  size_t atoms = 0;
  std::vector<size_t> stage_conjuncts;  // index 0 = implicit, 1..5 = stages
  std::vector<FamilyCount> families;
  // atoms <= c0 + c1 * size^2, size = sum |lower| + sum |upper| + tiles
  size_t size = 0;
  size_t c0 = 0, c1 = 0;
  bool within_envelope = false;
};

struct Compiled {
  FormulaPtr formula;
  CompileReport report;
};

Compiled compile(const PcpInstance& inst);

enum class PcpTarget { BCc, Bc, BCci, Bci };
std::string target_name(PcpTarget t);  // "bcc", "bc", "bcci", "bci"
PcpTarget parse_target(const std::string& s);

FormulaPtr compile_variant(const PcpInstance& inst, PcpTarget target);

}  // namespace topoconn
