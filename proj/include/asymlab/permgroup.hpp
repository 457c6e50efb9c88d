#pragma once

#include <array>
#include <string>
#include <vector>

#include "asymlab/autgraph.hpp"
#include "asymlab/common.hpp"
#include "asymlab/perm.hpp"
#include "asymlab/structures.hpp"

namespace asymlab {

// Point classes of a Latin square: rows R, columns C, entries E.
inline constexpr int kRow = 0;
inline constexpr int kCol = 1;
inline constexpr int kEntry = 2;
inline constexpr std::array<char, 3> kClassLetter{'R', 'C', 'E'};

/// Permutation of the 3n row/column/entry points preserving the partition
/// into the three classes, possibly permuting the classes. Point (X, i) is
/// sent to (sigma[X], maps[X][i]).
class TriplePermutation {
 public:
  TriplePermutation() = default;
  TriplePermutation(std::array<int, 3> sigma, std::array<std::vector<int>, 3> maps)
      : sigma_(sigma), maps_(std::move(maps)) {
    std::array<char, 3> seen{};
    for (int x : sigma_) {
      if (x < 0 || x > 2 || seen[x]) throw Error(Errc::out_of_range, "sigma is not a permutation of {R,C,E}");
      seen[x] = 1;
    }
    n_ = static_cast<int>(maps_[0].size());
    for (const auto& f : maps_) {
      if (static_cast<int>(f.size()) != n_) throw Error(Errc::out_of_range, "class maps differ in length");
      std::vector<char> hit(static_cast<std::size_t>(n_), 0);
      for (int y : f) {
        if (y < 0 || y >= n_ || hit[y]) throw Error(Errc::out_of_range, "class map is not a bijection");
        hit[y] = 1;
      }
    }
  }

  static TriplePermutation identity(int n) {
    return {{0, 1, 2}, {identity_perm(n), identity_perm(n), identity_perm(n)}};
  }

  /// Image word such as "CRE": letter X is the image of class R, C, E in turn.
  static TriplePermutation from_word(const std::string& word, std::array<std::vector<int>, 3> maps) {
    if (word.size() != 3) throw Error(Errc::parse_error, "sigma word must have 3 letters");
    std::array<int, 3> sigma{};
    for (int x = 0; x < 3; ++x) {
      auto it = std::find(kClassLetter.begin(), kClassLetter.end(), word[static_cast<std::size_t>(x)]);
      if (it == kClassLetter.end()) throw Error(Errc::parse_error, "sigma letters must be R, C, E");
      sigma[x] = static_cast<int>(it - kClassLetter.begin());
    }
    return {sigma, std::move(maps)};
  }

  /// Reads a permutation of the 3n points laid out as R(0..n-1) C(n..2n-1)
  /// E(2n..3n-1). Throws if it does not respect the class partition.
  static TriplePermutation from_points(const Perm& p, int n) {
    std::array<int, 3> sigma{};
    std::array<std::vector<int>, 3> maps;
    for (int x = 0; x < 3; ++x) {
      sigma[x] = p[static_cast<std::size_t>(x * n)] / n;
      maps[x].resize(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        int y = p[static_cast<std::size_t>(x * n + i)];
        if (y / n != sigma[x]) throw Error(Errc::out_of_range, "point permutation mixes classes");
        maps[x][i] = y % n;
      }
    }
    return {sigma, std::move(maps)};
  }

  int order() const noexcept { return n_; }
  const std::array<int, 3>& sigma() const noexcept { return sigma_; }
  const std::vector<int>& map(int cls) const { return maps_[static_cast<std::size_t>(cls)]; }
  bool moves_classes() const { return sigma_ != std::array<int, 3>{0, 1, 2}; }
  bool is_identity() const {
    if (moves_classes()) return false;
    for (const auto& f : maps_)
      if (!asymlab::is_identity(f)) return false;
    return true;
  }
  std::string sigma_word() const {
    return {kClassLetter[static_cast<std::size_t>(sigma_[0])], kClassLetter[static_cast<std::size_t>(sigma_[1])],
            kClassLetter[static_cast<std::size_t>(sigma_[2])]};
  }

  Perm to_points() const {
    Perm p(static_cast<std::size_t>(3 * n_));
    for (int x = 0; x < 3; ++x)
      for (int i = 0; i < n_; ++i) p[static_cast<std::size_t>(x * n_ + i)] = sigma_[x] * n_ + maps_[x][i];
    return p;
  }

  /// (g * h)(p) = g(h(p)).
  friend TriplePermutation operator*(const TriplePermutation& g, const TriplePermutation& h) {
    std::array<int, 3> sigma{};
    std::array<std::vector<int>, 3> maps;
    for (int x = 0; x < 3; ++x) {
      int mid = h.sigma_[x];
      sigma[x] = g.sigma_[mid];
      maps[x].resize(static_cast<std::size_t>(h.n_));
      for (int i = 0; i < h.n_; ++i) maps[x][i] = g.maps_[mid][h.maps_[x][i]];
    }
    return {sigma, std::move(maps)};
  }

  TriplePermutation inverse() const { return from_points(asymlab::inverse(to_points()), n_); }

  friend bool operator==(const TriplePermutation&, const TriplePermutation&) = default;

 private:
  int n_ = 0;
  std::array<int, 3> sigma_{0, 1, 2};
  std::array<std::vector<int>, 3> maps_;
};

/// Image of a cell: map its three tagged points and re-sort them into
/// (row, col, entry) slots by class.
inline Cell apply_triple_perm(const TriplePermutation& g, const Cell& c) {
  const std::array<int, 3> coords{c.row, c.col, c.entry};
  std::array<int, 3> out{};
  for (int x = 0; x < 3; ++x) out[g.sigma()[x]] = g.map(x)[coords[x]];
  return {out[0], out[1], out[2]};
}

inline bool is_autoparatopism(const TriplePermutation& g, const LatinSquare& s) {
  const int n = s.order();
  if (g.order() != n) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Cell d = apply_triple_perm(g, {i, j, s.at(i, j)});
      if (s.at(d.row, d.col) != d.entry) return false;
    }
  return true;
}

/// Exact group order plus generators. For structures, generators act on the
/// structure's points (3n tagged points for Latin squares, n points for
/// STS and 1-factorizations).
struct AutReport {
  BigInt order;
  std::vector<Perm> generators;
  bool is_trivial = true;
};

/// Automorphism group of a colored graph, with the order recomputed from a
/// stabilizer chain over the returned generators.
inline AutReport colored_graph_aut(const ColoredGraph& cg, const AutSearchOptions& opt = {}) {
  GraphAutResult r = colored_graph_aut_raw(cg, opt);
  PermGroup chain(cg.vertices(), r.generators);
  if (chain.order() != r.order)
    throw std::logic_error("automorphism search: orbit product " + r.order.str() + " != chain order " + chain.order().str());
  AutReport rep;
  rep.order = chain.order();
  rep.generators = std::move(r.generators);
  rep.is_trivial = rep.order == 1;
  return rep;
}

// ---------------------------------------------------------------------------
// encodings

/// Vertices 0..3n-1 are the row, column and entry points (one shared
/// color, so class-permuting maps are captured), then one vertex per cell
/// adjacent to its three points.
inline ColoredGraph encode_latin(const LatinSquare& s) {
  const int n = s.order();
  Graph g(3 * n + n * n);
  std::vector<int> color(static_cast<std::size_t>(3 * n + n * n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int v = 3 * n + i * n + j;
      color[v] = 1;
      g.add_edge(v, i);
      g.add_edge(v, n + j);
      g.add_edge(v, 2 * n + s.at(i, j));
    }
  return {std::move(g), std::move(color)};
}

inline ColoredGraph encode_sts(const Sts& t) {
  const int n = t.points();
  const int b = static_cast<int>(t.blocks().size());
  Graph g(n + b);
  std::vector<int> color(static_cast<std::size_t>(n + b), 0);
  for (int k = 0; k < b; ++k) {
    color[n + k] = 1;
    for (int p : t.blocks()[k]) g.add_edge(n + k, p);
  }
  return {std::move(g), std::move(color)};
}

/// Points, then one vertex per factor, then one vertex per edge adjacent to
/// its two endpoints and to its factor.
inline ColoredGraph encode_one_factorization(const OneFactorization& f) {
  const int n = f.points();
  const int nf = static_cast<int>(f.factors().size());
  const int ne = n * (n - 1) / 2;
  Graph g(n + nf + ne);
  std::vector<int> color(static_cast<std::size_t>(n + nf + ne), 0);
  int e = n + nf;
  for (int k = 0; k < nf; ++k) {
    color[n + k] = 1;
    for (auto [a, b] : f.factors()[k]) {
      color[e] = 2;
      g.add_edge(e, a);
      g.add_edge(e, b);
      g.add_edge(e, n + k);
      ++e;
    }
  }
  return {std::move(g), std::move(color)};
}

namespace detail {

inline std::vector<Perm> restrict_generators(const std::vector<Perm>& gens, int points) {
  std::vector<Perm> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.emplace_back(g.begin(), g.begin() + points);
  return out;
}

inline AutReport structure_report(const ColoredGraph& cg, int points, const AutSearchOptions& opt) {
  AutReport r = colored_graph_aut(cg, opt);
  r.generators = restrict_generators(r.generators, points);
  return r;
}

}  // namespace detail

/// Full autoparatopism group order.
inline AutReport aut_order_latin(const LatinSquare& s, const AutSearchOptions& opt = {}) {
  return detail::structure_report(encode_latin(s), 3 * s.order(), opt);
}

inline AutReport aut_order_sts(const Sts& t, const AutSearchOptions& opt = {}) {
  return detail::structure_report(encode_sts(t), t.points(), opt);
}

inline AutReport aut_order_of(const OneFactorization& f, const AutSearchOptions& opt = {}) {
  return detail::structure_report(encode_one_factorization(f), f.points(), opt);
}

/// Group on the structure points generated by a report's generators.
inline PermGroup group_from_report(const AutReport& r, int points) { return PermGroup(points, r.generators); }

// ---------------------------------------------------------------------------
// point-permutation actions

inline Block apply_to_block(const PointPermutation& g, const Block& b) {
  Block r{g(b[0]), g(b[1]), g(b[2])};
  std::sort(r.begin(), r.end());
  return r;
}

inline bool is_sts_automorphism(const PointPermutation& g, const Sts& t) {
  if (g.degree() != t.points()) return false;
  for (const auto& b : t.blocks())
    if (!std::binary_search(t.blocks().begin(), t.blocks().end(), apply_to_block(g, b))) return false;
  return true;
}

inline Matching apply_to_matching(const PointPermutation& g, const Matching& m) {
  Matching r;
  r.reserve(m.size());
  for (auto [a, b] : m) r.emplace_back(g(a), g(b));
  return canonical_matching(std::move(r));
}

inline bool is_of_automorphism(const PointPermutation& g, const OneFactorization& f) {
  if (g.degree() != f.points()) return false;
  for (const auto& m : f.factors())
    if (!std::binary_search(f.factors().begin(), f.factors().end(), apply_to_matching(g, m))) return false;
  return true;
}

}  // namespace asymlab
