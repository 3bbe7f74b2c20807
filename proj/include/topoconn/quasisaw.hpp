#pragma once

#include <boost/dynamic_bitset.hpp>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "topoconn/syntax.hpp"

namespace topoconn {

using Bits = boost::dynamic_bitset<uint64_t>;

// Depth-0 points are maximal; each depth-1 point z sees its successors succ(z) above it.
class QuasiSaw {
 public:
  struct Depth1 {
    std::string id;
    std::vector<std::string> succ;
  };

  QuasiSaw(std::vector<std::string> w0, std::vector<Depth1> w1);

  size_t n0() const { return w0_.size(); }
  size_t n1() const { return w1_.size(); }
  const std::vector<std::string>& w0() const { return w0_; }
  const std::vector<std::string>& w1() const { return w1_; }
  const Bits& succ(size_t z) const { return succ_[z]; }
  // Index lookups; -1 when absent.
  int index0(const std::string& id) const;
  int index1(const std::string& id) const;

  bool two_quasi_saw() const;
  bool connected() const;

 private:
  std::vector<std::string> w0_, w1_;
  std::vector<Bits> succ_;
  std::map<std::string, int> idx0_, idx1_;
};

using SpacePtr = std::shared_ptr<const QuasiSaw>;

struct QsRegion {
  SpacePtr space;
  Bits core;
};

enum class BoolOp { Sum, Product, Complement };

QsRegion qs_zero(const SpacePtr& s);
QsRegion qs_one(const SpacePtr& s);
QsRegion qs_region(const SpacePtr& s, const std::vector<std::string>& core_ids);
// Complement uses only args[0].
QsRegion algebra(BoolOp op, const std::vector<QsRegion>& args);

// A point set split into its depth-0 and depth-1 parts.
struct PointSet {
  Bits w0, w1;
};
PointSet points(const QsRegion& r);
PointSet make_point_set(const QuasiSaw& s, const std::vector<std::string>& ids);
std::vector<std::string> point_ids(const QuasiSaw& s, const PointSet& p);

struct ClosureInteriorBoundary {
  std::vector<std::string> closure, interior, boundary;
};
ClosureInteriorBoundary closure_interior_boundary(const QuasiSaw& s, const std::vector<std::string>& ids);

bool contact(const QsRegion& a, const QsRegion& b);
bool connected(const QsRegion& a);
bool interior_connected(const QsRegion& a);

struct QsInterpretation {
  SpacePtr space;
  std::map<std::string, Bits> valuation;
};

QsRegion eval_term(const QsInterpretation& m, const Term& t);
bool eval(const QsInterpretation& m, const Formula& f);
std::vector<std::pair<FormulaPtr, bool>> conjunct_report(const QsInterpretation& m, const FormulaPtr& f);

std::string to_dot(const QuasiSaw& s);

}  // namespace topoconn
