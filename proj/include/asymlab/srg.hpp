#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "asymlab/common.hpp"
#include "asymlab/permgroup.hpp"
#include "asymlab/structures.hpp"

namespace asymlab {

struct SrgParams {
  int v = 0, k = 0, lambda = 0, mu = 0;
  friend bool operator==(const SrgParams&, const SrgParams&) = default;
};

/// Cells of the square, adjacent when they share a row, column or entry.
inline Graph latin_square_graph(const LatinSquare& s) {
  const int n = s.order();
  Graph g(n * n);
  for (int a = 0; a < n * n; ++a)
    for (int b = a + 1; b < n * n; ++b) {
      int ra = a / n, ca = a % n, rb = b / n, cb = b % n;
      if (ra == rb || ca == cb || s.at(ra, ca) == s.at(rb, cb)) g.add_edge(a, b);
    }
  return g;
}

/// Blocks, adjacent when they meet in a point.
inline Graph steiner_graph(const Sts& t) {
  const auto& bl = t.blocks();
  const int v = static_cast<int>(bl.size());
  Graph g(v);
  for (int a = 0; a < v; ++a)
    for (int b = a + 1; b < v; ++b) {
      int common = 0;
      for (int x : bl[a]) common += x == bl[b][0] || x == bl[b][1] || x == bl[b][2];
      if (common == 1) g.add_edge(a, b);
    }
  return g;
}

inline Graph complete_multipartite(int parts, int size) {
  if (parts < 2 || size < 1) throw Error(Errc::out_of_range, "complete_multipartite needs parts >= 2, size >= 1");
  Graph g(parts * size);
  for (int a = 0; a < parts * size; ++a)
    for (int b = a + 1; b < parts * size; ++b)
      if (a / size != b / size) g.add_edge(a, b);
  return g;
}

enum class ClassicalKind { triangular, square_lattice };

/// T(n): 2-subsets of {0..n-1} meeting in a point. L2(n): n x n grid,
/// same row or column.
inline Graph classical_graph(ClassicalKind kind, int n) {
  if (kind == ClassicalKind::triangular) {
    if (n < 4) throw Error(Errc::out_of_range, "triangular graph needs n >= 4");
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    const int v = static_cast<int>(pairs.size());
    Graph g(v);
    for (int x = 0; x < v; ++x)
      for (int y = x + 1; y < v; ++y) {
        auto [a, b] = pairs[x];
        auto [c, d] = pairs[y];
        if (a == c || a == d || b == c || b == d) g.add_edge(x, y);
      }
    return g;
  }
  if (n < 2) throw Error(Errc::out_of_range, "square lattice graph needs n >= 2");
  Graph g(n * n);
  for (int a = 0; a < n * n; ++a)
    for (int b = a + 1; b < n * n; ++b)
      if (a / n == b / n || a % n == b % n) g.add_edge(a, b);
  return g;
}

/// (v, k, lambda, mu) of a strongly regular graph. A count over an empty
/// set of pairs (mu for complete graphs, lambda for empty ones) is 0.
inline SrgParams srg_params(const Graph& g) {
  const int v = g.vertices();
  const int k = g.regular_degree();
  if (k < 0) throw Error(Errc::not_regular, "vertex degrees differ");
  int lambda = -1, mu = -1;
  for (int a = 0; a < v; ++a)
    for (int b = a + 1; b < v; ++b) {
      int common = 0;
      for (int c : g.neighbors(a)) common += g.adjacent(b, c);
      int& slot = g.adjacent(a, b) ? lambda : mu;
      if (slot < 0) slot = common;
      if (slot != common)
        throw Error(Errc::not_strongly_regular, "pair " + pair_str(a, b) + " has " + std::to_string(common) + " common neighbours, expected " + std::to_string(slot));
    }
  SrgParams p{v, k, std::max(lambda, 0), std::max(mu, 0)};
  if (static_cast<long long>(p.k) * (p.k - p.lambda - 1) != static_cast<long long>(p.v - p.k - 1) * p.mu)
    throw std::logic_error("feasibility identity fails for extracted parameters");
  return p;
}

inline double least_eigenvalue(const Graph& g) {
  const int v = g.vertices();
  if (v < 1) throw Error(Errc::out_of_range, "graph has no vertices");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(v, v);
  for (auto [x, y] : g.edges()) a(x, y) = a(y, x) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

/// Smaller root of x^2 - (lambda - mu) x - (k - mu).
inline double srg_least_root(const SrgParams& p) {
  const double b = p.lambda - p.mu;
  return (b - std::sqrt(b * b + 4.0 * (p.k - p.mu))) / 2.0;
}

struct AutComparison {
  BigInt graph_aut_order;
  BigInt structure_aut_order;
  bool induced_equal = false;
};

inline BigInt graph_aut_order(const Graph& g, const AutSearchOptions& opt = {}) { return colored_graph_aut(ColoredGraph(g), opt).order; }

namespace detail {

inline bool same_graph(const Graph& a, const Graph& b) { return a.vertices() == b.vertices() && a.edges() == b.edges(); }

}  // namespace detail

inline AutComparison aut_comparison(const std::variant<LatinSquare, Sts>& structure, const Graph& g) {
  AutComparison r;
  if (const auto* s = std::get_if<LatinSquare>(&structure)) {
    if (!detail::same_graph(g, latin_square_graph(*s))) throw Error(Errc::kind_mismatch, "graph is not the Latin square graph of the square");
    r.structure_aut_order = aut_order_latin(*s).order;
  } else {
    const auto& t = std::get<Sts>(structure);
    if (!detail::same_graph(g, steiner_graph(t))) throw Error(Errc::kind_mismatch, "graph is not the block graph of the system");
    r.structure_aut_order = aut_order_sts(t).order;
  }
  r.graph_aut_order = graph_aut_order(g);
  r.induced_equal = r.graph_aut_order == r.structure_aut_order;
  return r;
}

}  // namespace asymlab
