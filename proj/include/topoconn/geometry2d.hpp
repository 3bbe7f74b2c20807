#pragma once

#include <gmpxx.h>

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "topoconn/syntax.hpp"

namespace topoconn {

using Rat = mpq_class;

Rat parse_rat(const std::string& s);  // "p/q" or "p"
std::string rat_string(const Rat& r);  // always "num/den"

struct Point {
  Rat x, y;
};

// a*x + b*y + c with coprime integers; b > 0, or b == 0 and a > 0.
struct Line {
  mpz_class a, b, c;
};
bool operator<(const Line& l, const Line& m);
bool operator==(const Line& l, const Line& m);

// Regular closed polygonal subset of the plane. Stored as the set of lines carrying
// its boundary and the sign vectors ('+'/'-' per line) of the open cells it covers.
// The representation is canonical, so == is set equality.
class PolyRegion {
 public:
  PolyRegion() = default;
  PolyRegion(std::vector<Line> lines, std::set<std::string> cells);  // canonicalizes

  static PolyRegion whole();

  const std::vector<Line>& lines() const { return lines_; }
  const std::set<std::string>& cells() const { return cells_; }

  bool is_empty() const { return cells_.empty(); }
  bool is_whole() const { return lines_.empty() && !cells_.empty(); }
  bool bounded() const;
  bool cobounded() const;  // complement is bounded

  // nullopt when p lies on one of the boundary lines
  std::optional<bool> contains(const Point& p) const;

  friend bool operator==(const PolyRegion& p, const PolyRegion& q) {
    return p.lines_ == q.lines_ && p.cells_ == q.cells_;
  }

 private:
  friend struct RegionAccess;
  std::vector<Line> lines_;
  std::set<std::string> cells_;
};

using Loop = std::vector<Point>;

PolyRegion box(const Point& lo, const Point& hi);
PolyRegion halfplane(const Rat& a, const Rat& b, const Rat& c);  // a*x + b*y + c >= 0
PolyRegion polygon(const Loop& outer, const std::vector<Loop>& holes = {});

PolyRegion sum(const PolyRegion& p, const PolyRegion& q);
PolyRegion product(const PolyRegion& p, const PolyRegion& q);
PolyRegion complement(const PolyRegion& p);

// p -> m * p + t, m = {m00, m01, m10, m11}, invertible
PolyRegion transform(const PolyRegion& p, const std::array<Rat, 4>& m, const Point& t);

bool contact(const PolyRegion& p, const PolyRegion& q);
bool connected(const PolyRegion& p);
bool interior_connected(const PolyRegion& p);

struct PolygonWithHoles {
  Loop outer;
  std::vector<Loop> holes;
};

// Boundary loops of a bounded region, or of the complement when complemented.
struct PolyLoops {
  std::vector<PolygonWithHoles> polygons;
  bool complemented = false;
};

PolyLoops to_loops(const PolyRegion& p);  // Unrepresentable for regions neither bounded nor co-bounded
PolyRegion from_loops(const PolyLoops& l);

struct PolyInterpretation {
  std::map<std::string, PolyRegion> valuation;
};

PolyRegion eval_term(const PolyInterpretation& m, const Term& t);
bool eval(const PolyInterpretation& m, const Formula& f);
std::vector<std::pair<FormulaPtr, bool>> conjunct_report(const PolyInterpretation& m, const FormulaPtr& f);

// TOPOCONN_MAX_CELLS, default 2000000
size_t max_cells();

}  // namespace topoconn
