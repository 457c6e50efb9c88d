#pragma once

#include <string>
#include <utility>
#include <vector>

#include "asymlab/structures.hpp"

namespace fixtures {

using asymlab::Graph;

inline Graph cycle(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

inline Graph complete(int n) {
  Graph g(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) g.add_edge(a, b);
  return g;
}

inline Graph k33() {
  Graph g(6);
  for (int a = 0; a < 3; ++a)
    for (int b = 3; b < 6; ++b) g.add_edge(a, b);
  return g;
}

inline Graph petersen() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

inline Graph circulant(int n, std::vector<int> jumps) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int d : jumps) g.add_edge(i, (i + d) % n);
  return g;
}

/// Vertex-transitive regular graphs on an even number of vertices.
inline std::vector<std::pair<std::string, Graph>> regular_family() {
  std::vector<std::pair<std::string, Graph>> out;
  for (int n = 4; n <= 12; n += 2) out.emplace_back("C" + std::to_string(n), cycle(n));
  out.emplace_back("K4", complete(4));
  out.emplace_back("K6", complete(6));
  out.emplace_back("K3,3", k33());
  out.emplace_back("Petersen", petersen());
  for (int n = 6; n <= 12; n += 2)
    for (int a = 1; a < n / 2; ++a)
      for (int b = a + 1; b <= n / 2; ++b) out.emplace_back("Circ" + std::to_string(n) + "(" + std::to_string(a) + "," + std::to_string(b) + ")", circulant(n, {a, b}));
  return out;
}

}  // namespace fixtures
