#pragma once

#include <cstdint>
#include <string>

#include "topoconn/quasisaw.hpp"
#include "topoconn/syntax.hpp"

namespace topoconn {

enum class SpaceClass { QS, QS2, ConnQS, ConnQS2 };

std::string class_name(SpaceClass c);        // "qs", "qs2", "conn-qs", "conn-qs2"
SpaceClass parse_class(const std::string& s);
bool in_class(const QuasiSaw& s, SpaceClass c);

struct SatResult {
  bool sat = false;
  QsInterpretation witness;  // valid when sat
  int bound = 0;             // the bound that was searched
};

struct SolveOptions {
  uint64_t seed = 0;        // 0 keeps the canonical search order
  int jobs = 0;             // 0 = OpenMP default, 1 = serial
  int max_w0 = 64;          // largest |W0| the search will ever try
  uint64_t max_nodes = 0;   // 0 = unlimited
};

struct SolveStats {
  uint64_t nodes = 0;
  int model_w0 = 0;
};

int default_bound(const Formula& f);

// Bounded model search. Sat witnesses are re-verified before they are returned.
SatResult solve(const FormulaPtr& f, SpaceClass cls, int bound, const SolveOptions& opt = {},
                SolveStats* stats = nullptr);

// Plain enumeration of every space and valuation with |W0| <= bound (bound <= 3).
SatResult solve_reference(const FormulaPtr& f, SpaceClass cls, int bound);

bool verify(const Formula& f, const QsInterpretation& w, SpaceClass cls);

}  // namespace topoconn
