#pragma once

#include <gmpxx.h>

#include <array>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "topoconn/quasisaw.hpp"

namespace topoconn {

struct Graph {
  std::vector<std::string> vertices;
  std::set<std::pair<std::string, std::string>> edges;  // unordered; either orientation accepted
};

// W0 = vertices, one depth-1 point z_x_y per edge with succ {x, y}.
QuasiSaw neighbourhood_to_quasisaw(const Graph& g);

std::string to_dot(const Graph& g);

// Adds a depth-1 point seeing all of W0 unless one already exists.
QsInterpretation normalize_z0(const QsInterpretation& m);

using Vec3 = std::array<mpq_class, 3>;

struct Ball {
  std::string owner;
  Vec3 center;
  mpq_class radius;
  int step = 0;      // 0 for the initial ball of the owner
  std::string host;  // depth-1 id of the cell it was added in; empty for step 0
};

struct Rod {
  std::string owner;
  Vec3 a, b;
  mpq_class radius;
  int step = 0;
  std::string host;
};

// D_z: an open ball, or for z0 everything outside the initial balls and the other cells.
struct HostCell {
  std::string id;
  bool complement = false;
  Vec3 center{};
  mpq_class radius;
};

struct Scene {
  int stage = 1;
  std::vector<Ball> balls;
  std::vector<Rod> rods;
  std::vector<HostCell> hosts;
};

// Stage-k prefix of the ball-and-rod construction. Needs a universal depth-1 point.
Scene embed(const QsInterpretation& m, int stage);

struct SceneReport {
  bool disjoint = false;   // (1) solids of different owners have disjoint interiors
  bool connected = false;  // (2) each owner's solids form one touching cluster
  bool hosts = false;      // (3) added balls sit inside their cell and the owner is a successor
  bool valid = false;
  std::vector<std::string> problems;
  std::string property_b = "stage approximation";
};

SceneReport verify_scene(const Scene& s, const QsInterpretation& m, int jobs = 0);

// Pairs (i, j), i < j, of solids with different owners whose interiors meet. Solids are
// numbered balls first, then rods. The serial loop is the reference for the parallel one.
std::vector<std::pair<size_t, size_t>> overlapping_pairs(const Scene& s, bool parallel, int jobs = 0);

}  // namespace topoconn
