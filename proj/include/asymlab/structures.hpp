#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "asymlab/common.hpp"

namespace asymlab {

/// One (row, column, entry) triple of a Latin square.
struct Cell {
  int row = 0;
  int col = 0;
  int entry = 0;
  auto operator<=>(const Cell&) const = default;
};

class LatinSquare {
 public:
  LatinSquare() = default;

  /// No checking; for callers that already maintain the Latin property.
  static LatinSquare unchecked(int n, std::vector<int> grid) {
    LatinSquare s;
    s.n_ = n;
    s.grid_ = std::move(grid);
    return s;
  }

  int order() const noexcept { return n_; }
  int at(int row, int col) const { return grid_[static_cast<std::size_t>(row * n_ + col)]; }
  /// Row-major n*n symbols.
  std::span<const int> grid() const noexcept { return grid_; }
  std::vector<std::vector<int>> rows() const {
    std::vector<std::vector<int>> r(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) r[i].assign(grid_.begin() + i * n_, grid_.begin() + (i + 1) * n_);
    return r;
  }

  friend bool operator==(const LatinSquare&, const LatinSquare&) = default;

 private:
  int n_ = 0;
  std::vector<int> grid_;
};

/// k completed rows of length n; extension appends a row.
class LatinRectangle {
 public:
  LatinRectangle() = default;
  static LatinRectangle unchecked(int n, std::vector<std::vector<int>> rows) {
    LatinRectangle r;
    r.n_ = n;
    r.rows_ = std::move(rows);
    return r;
  }

  int order() const noexcept { return n_; }
  int row_count() const noexcept { return static_cast<int>(rows_.size()); }
  const std::vector<std::vector<int>>& rows() const noexcept { return rows_; }

  friend bool operator==(const LatinRectangle&, const LatinRectangle&) = default;

 private:
  int n_ = 0;
  std::vector<std::vector<int>> rows_;
};

using Block = std::array<int, 3>;

class Sts {
 public:
  Sts() = default;
  /// Blocks must already be sorted internally and lexicographically.
  static Sts unchecked(int n, std::vector<Block> blocks) {
    Sts s;
    s.n_ = n;
    s.blocks_ = std::move(blocks);
    return s;
  }

  int points() const noexcept { return n_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }

  friend bool operator==(const Sts&, const Sts&) = default;

 private:
  int n_ = 0;
  std::vector<Block> blocks_;
};

using Edge = std::pair<int, int>;
using Matching = std::vector<Edge>;

class OneFactorization {
 public:
  OneFactorization() = default;
  /// Factors must already be in canonical order.
  static OneFactorization unchecked(int n, std::vector<Matching> factors) {
    OneFactorization f;
    f.n_ = n;
    f.factors_ = std::move(factors);
    return f;
  }

  int points() const noexcept { return n_; }
  const std::vector<Matching>& factors() const noexcept { return factors_; }

  friend bool operator==(const OneFactorization&, const OneFactorization&) = default;

 private:
  int n_ = 0;
  std::vector<Matching> factors_;
};

class ZeroOneMatrix {
 public:
  ZeroOneMatrix() = default;
  explicit ZeroOneMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n * n), 0) {}
  static ZeroOneMatrix all_ones(int n) {
    ZeroOneMatrix m(n);
    std::fill(m.a_.begin(), m.a_.end(), 1);
    return m;
  }
  static ZeroOneMatrix identity(int n) {
    ZeroOneMatrix m(n);
    for (int i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  int dim() const noexcept { return n_; }
  bool at(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)] != 0; }
  void set(int i, int j, bool v) { a_[static_cast<std::size_t>(i * n_ + j)] = v ? 1 : 0; }

  int row_sum(int i) const {
    int s = 0;
    for (int j = 0; j < n_; ++j) s += at(i, j);
    return s;
  }
  int col_sum(int j) const {
    int s = 0;
    for (int i = 0; i < n_; ++i) s += at(i, j);
    return s;
  }
  /// Common line sum if every row and column sum agrees, else -1.
  int regular_sum() const {
    if (n_ == 0) return 0;
    int k = row_sum(0);
    for (int i = 0; i < n_; ++i)
      if (row_sum(i) != k || col_sum(i) != k) return -1;
    return k;
  }
  ZeroOneMatrix transposed() const {
    ZeroOneMatrix t(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) t.set(j, i, at(i, j));
    return t;
  }

  friend bool operator==(const ZeroOneMatrix&, const ZeroOneMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<std::uint8_t> a_;
};

class PointPermutation {
 public:
  PointPermutation() = default;
  explicit PointPermutation(std::vector<int> image) : image_(std::move(image)) {
    std::vector<char> seen(image_.size(), 0);
    for (std::size_t i = 0; i < image_.size(); ++i) {
      int x = image_[i];
      if (x < 0 || static_cast<std::size_t>(x) >= image_.size() || seen[x])
        throw Error(Errc::out_of_range, "point permutation is not a bijection at index " + std::to_string(i));
      seen[x] = 1;
    }
  }
  static PointPermutation identity(int n) {
    std::vector<int> im(static_cast<std::size_t>(n));
    std::iota(im.begin(), im.end(), 0);
    return PointPermutation(std::move(im));
  }

  int degree() const noexcept { return static_cast<int>(image_.size()); }
  int operator()(int i) const { return image_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& image() const noexcept { return image_; }
  bool is_identity() const {
    for (std::size_t i = 0; i < image_.size(); ++i)
      if (image_[i] != static_cast<int>(i)) return false;
    return true;
  }
  int fixed_points() const {
    int f = 0;
    for (std::size_t i = 0; i < image_.size(); ++i) f += image_[i] == static_cast<int>(i);
    return f;
  }

  friend bool operator==(const PointPermutation&, const PointPermutation&) = default;

 private:
  std::vector<int> image_;
};

/// Simple undirected graph: symmetric, irreflexive.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int v) : v_(v), adj_(static_cast<std::size_t>(v) * v, 0), nbrs_(static_cast<std::size_t>(v)) {}

  static Graph from_edges(int v, std::span<const Edge> edges) {
    Graph g(v);
    for (auto [a, b] : edges) g.add_edge(a, b);
    return g;
  }

  void add_edge(int a, int b) {
    if (a < 0 || b < 0 || a >= v_ || b >= v_)
      throw Error(Errc::out_of_range, "edge endpoint outside 0.." + std::to_string(v_ - 1));
    if (a == b) throw Error(Errc::out_of_range, "loop at vertex " + std::to_string(a));
    if (adjacent(a, b)) return;
    adj_[idx(a, b)] = adj_[idx(b, a)] = 1;
    nbrs_[a].push_back(b);
    nbrs_[b].push_back(a);
  }

  int vertices() const noexcept { return v_; }
  bool adjacent(int a, int b) const { return adj_[idx(a, b)] != 0; }
  const std::vector<int>& neighbors(int a) const { return nbrs_[static_cast<std::size_t>(a)]; }
  int degree(int a) const { return static_cast<int>(nbrs_[static_cast<std::size_t>(a)].size()); }
  std::size_t edge_count() const {
    std::size_t e = 0;
    for (const auto& n : nbrs_) e += n.size();
    return e / 2;
  }
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (int a = 0; a < v_; ++a)
      for (int b = a + 1; b < v_; ++b)
        if (adjacent(a, b)) out.emplace_back(a, b);
    return out;
  }
  /// Common valency, or -1 when irregular.
  int regular_degree() const {
    if (v_ == 0) return 0;
    int k = degree(0);
    for (int a = 1; a < v_; ++a)
      if (degree(a) != k) return -1;
    return k;
  }

  friend bool operator==(const Graph& x, const Graph& y) { return x.v_ == y.v_ && x.adj_ == y.adj_; }

 private:
  std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * v_ + b; }

  int v_ = 0;
  std::vector<std::uint8_t> adj_;
  std::vector<std::vector<int>> nbrs_;
};

// ---------------------------------------------------------------------------
// validation

inline LatinSquare validate_latin(int n, const std::vector<std::vector<int>>& grid) {
  if (n < 1) throw Error(Errc::out_of_range, "order must be positive");
  if (static_cast<int>(grid.size()) != n)
    throw Error(Errc::out_of_range, "expected " + std::to_string(n) + " rows");
  std::vector<int> flat;
  flat.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(grid[i].size()) != n)
      throw Error(Errc::out_of_range, "row " + std::to_string(i) + " has wrong length");
    for (int x : grid[i]) {
      if (x < 0 || x >= n) throw Error(Errc::out_of_range, "symbol " + std::to_string(x) + " in row " + std::to_string(i));
      flat.push_back(x);
    }
  }
  for (int i = 0; i < n; ++i) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int j = 0; j < n; ++j) {
      int x = flat[i * n + j];
      if (seen[x]) throw Error(Errc::repeat_in_row, "row " + std::to_string(i));
      seen[x] = 1;
    }
  }
  for (int j = 0; j < n; ++j) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
      int x = flat[i * n + j];
      if (seen[x]) throw Error(Errc::repeat_in_column, "column " + std::to_string(j));
      seen[x] = 1;
    }
  }
  return LatinSquare::unchecked(n, std::move(flat));
}

inline LatinRectangle validate_latin_rectangle(int n, const std::vector<std::vector<int>>& rows) {
  if (n < 1) throw Error(Errc::out_of_range, "order must be positive");
  if (static_cast<int>(rows.size()) > n) throw Error(Errc::out_of_range, "more rows than the order");
  std::vector<std::vector<char>> col_seen(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != n) throw Error(Errc::out_of_range, "row " + std::to_string(i) + " has wrong length");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int j = 0; j < n; ++j) {
      int x = rows[i][j];
      if (x < 0 || x >= n) throw Error(Errc::out_of_range, "symbol " + std::to_string(x) + " in row " + std::to_string(i));
      if (seen[x]) throw Error(Errc::repeat_in_row, "row " + std::to_string(i));
      if (col_seen[j][x]) throw Error(Errc::repeat_in_column, "column " + std::to_string(j));
      seen[x] = col_seen[j][x] = 1;
    }
  }
  return LatinRectangle::unchecked(n, rows);
}

constexpr bool sts_admissible(int n) { return n >= 3 && (n % 6 == 1 || n % 6 == 3); }

inline std::string pair_str(int a, int b) { return std::to_string(a) + "-" + std::to_string(b); }

inline Sts validate_sts(int n, const std::vector<std::vector<int>>& raw) {
  if (!sts_admissible(n)) throw Error(Errc::inadmissible_order, "n=" + std::to_string(n));
  std::vector<Block> blocks;
  blocks.reserve(raw.size());
  for (const auto& b : raw) {
    if (b.size() != 3) throw Error(Errc::malformed_block, "block of size " + std::to_string(b.size()));
    Block t{b[0], b[1], b[2]};
    std::sort(t.begin(), t.end());
    if (t[0] < 0 || t[2] >= n) throw Error(Errc::malformed_block, "point outside 0.." + std::to_string(n - 1));
    if (t[0] == t[1] || t[1] == t[2]) throw Error(Errc::malformed_block, "repeated point in block");
    blocks.push_back(t);
  }
  std::vector<char> covered(static_cast<std::size_t>(n * n), 0);
  for (const auto& t : blocks) {
    for (int x = 0; x < 3; ++x)
      for (int y = x + 1; y < 3; ++y) {
        auto& c = covered[static_cast<std::size_t>(t[x] * n + t[y])];
        if (c) throw Error(Errc::pair_covered_twice, pair_str(t[x], t[y]));
        c = 1;
      }
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!covered[static_cast<std::size_t>(a * n + b)]) throw Error(Errc::pair_uncovered, pair_str(a, b));
  std::sort(blocks.begin(), blocks.end());
  return Sts::unchecked(n, std::move(blocks));
}

inline Matching canonical_matching(Matching m) {
  for (auto& e : m)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(m.begin(), m.end());
  return m;
}

inline OneFactorization validate_one_factorization(int n, const std::vector<Matching>& raw) {
  if (n < 2 || n % 2 != 0) throw Error(Errc::odd_order, "n=" + std::to_string(n));
  std::vector<Matching> factors;
  factors.reserve(raw.size());
  std::vector<char> used(static_cast<std::size_t>(n * n), 0);
  for (std::size_t f = 0; f < raw.size(); ++f) {
    Matching m = canonical_matching(raw[f]);
    std::vector<char> hit(static_cast<std::size_t>(n), 0);
    if (static_cast<int>(m.size()) != n / 2)
      throw Error(Errc::factor_not_perfect_matching, "factor " + std::to_string(f) + " has " + std::to_string(m.size()) + " edges");
    for (auto [a, b] : m) {
      if (a < 0 || b >= n || a == b || hit[a] || hit[b])
        throw Error(Errc::factor_not_perfect_matching, "factor " + std::to_string(f));
      hit[a] = hit[b] = 1;
      auto& u = used[static_cast<std::size_t>(a * n + b)];
      if (u) throw Error(Errc::edge_repeated, pair_str(a, b));
      u = 1;
    }
    factors.push_back(std::move(m));
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!used[static_cast<std::size_t>(a * n + b)]) throw Error(Errc::edge_missing, pair_str(a, b));
  std::sort(factors.begin(), factors.end());
  return OneFactorization::unchecked(n, std::move(factors));
}

inline std::vector<Cell> cells_of(const LatinSquare& s) {
  const int n = s.order();
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cells.push_back({i, j, s.at(i, j)});
  return cells;
}

// ---------------------------------------------------------------------------
// common constructions used across tests, CLI and the srg module

/// Cayley table of Z_n: entry (i + j) mod n.
inline LatinSquare cyclic_latin(int n) {
  std::vector<int> g(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i * n + j] = (i + j) % n;
  return LatinSquare::unchecked(n, std::move(g));
}

/// Fano plane as the development of {0,1,3} mod 7.
inline Sts fano_sts() {
  std::vector<std::vector<int>> raw;
  for (int i = 0; i < 7; ++i) raw.push_back({i, (i + 1) % 7, (i + 3) % 7});
  return validate_sts(7, raw);
}

/// AG(2,3): points (x, y) -> 3x + y, blocks are the 12 affine lines.
inline Sts affine_sts9() {
  std::vector<std::vector<int>> raw;
  auto pt = [](int x, int y) { return 3 * ((x % 3 + 3) % 3) + (y % 3 + 3) % 3; };
  for (int c = 0; c < 3; ++c) {
    raw.push_back({pt(c, 0), pt(c, 1), pt(c, 2)});  // x = c
    raw.push_back({pt(0, c), pt(1, c), pt(2, c)});  // y = c
    raw.push_back({pt(0, c), pt(1, c + 1), pt(2, c + 2)});  // y = x + c
    raw.push_back({pt(0, c), pt(1, c + 2), pt(2, c + 4)});  // y = 2x + c
  }
  return validate_sts(9, raw);
}

/// Cyclic STS(13) from the base blocks {0,1,4} and {0,2,7}.
inline Sts cyclic_sts13() {
  std::vector<std::vector<int>> raw;
  for (int i = 0; i < 13; ++i) {
    raw.push_back({i, (i + 1) % 13, (i + 4) % 13});
    raw.push_back({i, (i + 2) % 13, (i + 7) % 13});
  }
  return validate_sts(13, raw);
}

/// Round-robin 1-factorization GK_n of K_n.
inline OneFactorization round_robin_one_factorization(int n) {
  if (n < 2 || n % 2) throw Error(Errc::odd_order, "n=" + std::to_string(n));
  const int m = n - 1;
  std::vector<Matching> f;
  for (int r = 0; r < m; ++r) {
    Matching mt{{r, m}};
    for (int i = 1; i <= (m - 1) / 2; ++i) mt.emplace_back((r + i) % m, ((r - i) % m + m) % m);
    f.push_back(std::move(mt));
  }
  return validate_one_factorization(n, f);
}

}  // namespace asymlab
