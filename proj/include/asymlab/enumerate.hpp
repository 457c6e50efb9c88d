#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

#include "asymlab/common.hpp"
#include "asymlab/parallel.hpp"
#include "asymlab/structures.hpp"

namespace asymlab {

struct EnumOptions {
  bool count_only = false;
  bool reduced_only = false;
  int jobs = 1;
  /// Depth (cells, blocks or edges placed) at which the search tree is cut
  /// into work frames; negative picks a default.
  int split_depth = -1;
  /// Wall-clock budget in seconds for the expensive STS(13) count; 0 = none.
  double budget_seconds = 0;
};

struct EnumCaps {
  int latin_visit = 6;
  int latin_count = 7;
  int sts_visit = 9;
  int sts_count_budgeted = 13;
  int of_visit = 8;
};

namespace detail {

template <class State, class Search, class Visit>
BigInt split_and_run(Search& search, const State& root, int split_depth, int jobs, SearchControl& ctl, Visit&& on_leaf) {
  std::vector<State> frames;
  {
    State s = root;
    search.advance(s, split_depth, [&](const State& f) { frames.push_back(f); return true; }, ctl);
  }
  std::vector<std::uint64_t> counts(frames.size(), 0);
  run_frames(frames.size(), jobs, [&](std::size_t i) {
    State s = frames[i];
    std::uint64_t c = 0;
    search.advance(s, search.leaf_depth(), [&](const State& leaf) {
      ++c;
      return on_leaf(leaf);
    }, ctl);
    counts[i] = c;
  });
  BigInt total = 0;
  for (auto c : counts) total += c;
  return total;
}

inline void finish(const SearchControl& ctl) {
  if (ctl.over_budget()) throw Error(Errc::budget_exceeded, "search exceeded its time budget");
  if (ctl.aborted()) throw Error(Errc::visitor_abort, "visitor requested early termination");
}

// Cell-by-cell, row-major filling of a Latin rectangle with `rows` rows.
// In reduced mode the first row and first column are preset.
class LatinSearch {
 public:
  struct State {
    std::array<std::int8_t, 64> grid{};
    std::array<std::uint32_t, 8> row_used{};
    std::array<std::uint32_t, 8> col_used{};
    int pos = 0;
  };

  LatinSearch(int n, int rows, bool reduced) : n_(n), rows_(rows), reduced_(reduced) {}

  State root() const {
    State s;
    if (reduced_) {
      for (int j = 0; j < n_; ++j) place(s, 0, j, j);
      for (int i = 1; i < rows_; ++i) place(s, i, 0, i);
      s.pos = n_;
    }
    return s;
  }

  int leaf_depth() const { return rows_ * n_; }

  // Fills cells from s.pos up to `stop`, calling emit(state) at each
  // position `stop`. emit returning false aborts the search.
  template <class Emit>
  void advance(State& s, int stop, Emit&& emit, SearchControl& ctl) const {
    rec(s, stop, emit, ctl);
  }

  LatinSquare to_square(const State& s) const {
    std::vector<int> g(static_cast<std::size_t>(n_ * n_));
    for (int i = 0; i < n_ * n_; ++i) g[i] = s.grid[i];
    return LatinSquare::unchecked(n_, std::move(g));
  }
  LatinRectangle to_rectangle(const State& s) const {
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(rows_), std::vector<int>(static_cast<std::size_t>(n_)));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < n_; ++j) rows[i][j] = s.grid[i * n_ + j];
    return LatinRectangle::unchecked(n_, std::move(rows));
  }

 private:
  void place(State& s, int i, int j, int x) const {
    s.grid[i * n_ + j] = static_cast<std::int8_t>(x);
    s.row_used[i] |= 1u << x;
    s.col_used[j] |= 1u << x;
  }
  void unplace(State& s, int i, int j, int x) const {
    s.row_used[i] &= ~(1u << x);
    s.col_used[j] &= ~(1u << x);
  }

  template <class Emit>
  bool rec(State& s, int stop, Emit& emit, SearchControl& ctl) const {
    if (ctl.aborted()) return false;
    // skip preset first-column cells in reduced mode
    while (reduced_ && s.pos < leaf_depth() && s.pos % n_ == 0) ++s.pos;
    if (s.pos >= stop) return emit(static_cast<const State&>(s));
    ctl.tick();
    const int i = s.pos / n_, j = s.pos % n_;
    const std::uint32_t full = (1u << n_) - 1;
    if (i == n_ - 1 && j == (reduced_ ? 1 : 0) && stop == leaf_depth()) {
      // last row is forced
      State t = s;
      for (int c = j; c < n_; ++c) {
        std::uint32_t avail = full & ~t.col_used[c];
        place(t, i, c, std::countr_zero(avail));
      }
      t.pos = leaf_depth();
      return emit(static_cast<const State&>(t));
    }
    std::uint32_t avail = full & ~(s.row_used[i] | s.col_used[j]);
    const int saved = s.pos;
    while (avail) {
      int x = std::countr_zero(avail);
      avail &= avail - 1;
      place(s, i, j, x);
      s.pos = saved + 1;
      bool go = rec(s, stop, emit, ctl);
      unplace(s, i, j, x);
      s.pos = saved;
      if (!go) return false;
    }
    return true;
  }

  int n_;
  int rows_;
  bool reduced_;
};

// Exact cover of the pairs of 0..n-1 by triples, always covering the
// lexicographically least uncovered pair, third point ascending.
class StsSearch {
 public:
  struct State {
    std::array<std::uint32_t, 32> covered{};
    std::vector<Block> blocks;
  };

  explicit StsSearch(int n) : n_(n), full_((n == 32 ? 0u : (1u << n)) - 1) {}

  State root() const {
    State s;
    for (int p = 0; p < n_; ++p) s.covered[p] = 1u << p;
    s.blocks.reserve(static_cast<std::size_t>(n_ * (n_ - 1) / 6));
    return s;
  }
  int leaf_depth() const { return n_ * (n_ - 1) / 6; }

  template <class Emit>
  void advance(State& s, int stop, Emit&& emit, SearchControl& ctl) const {
    rec(s, stop, emit, ctl);
  }

  Sts to_sts(const State& s) const {
    std::vector<Block> b = s.blocks;
    std::sort(b.begin(), b.end());
    return Sts::unchecked(n_, std::move(b));
  }

 private:
  template <class Emit>
  bool rec(State& s, int stop, Emit& emit, SearchControl& ctl) const {
    if (ctl.aborted()) return false;
    if (static_cast<int>(s.blocks.size()) >= stop) return emit(static_cast<const State&>(s));
    ctl.tick();
    int a = 0;
    while (s.covered[a] == full_) ++a;
    const std::uint32_t open_a = full_ & ~s.covered[a];
    const int b = std::countr_zero(open_a);
    std::uint32_t cand = open_a & ~s.covered[b] & ~(1u << b);
    while (cand) {
      int c = std::countr_zero(cand);
      cand &= cand - 1;
      cover(s, a, b, c);
      s.blocks.push_back({a, b, c});
      bool go = rec(s, stop, emit, ctl);
      s.blocks.pop_back();
      cover(s, a, b, c);
      if (!go) return false;
    }
    return true;
  }
  static void cover(State& s, int a, int b, int c) {
    s.covered[a] ^= (1u << b) | (1u << c);
    s.covered[b] ^= (1u << a) | (1u << c);
    s.covered[c] ^= (1u << a) | (1u << b);
  }

  int n_;
  std::uint32_t full_;
};

// Factor f is the one containing edge {0, f+1}; inside a factor the least
// unmatched vertex is matched next, partner ascending. Each unordered
// factorization is produced once, already in canonical order.
class OneFactorizationSearch {
 public:
  struct State {
    std::array<std::uint32_t, 32> used{};  // used[v]: partners already joined to v
    std::uint32_t matched = 0;             // vertices matched in the current factor
    std::vector<Matching> factors;
    int edges = 0;
  };

  explicit OneFactorizationSearch(int n) : n_(n), full_((1u << n) - 1) {}

  State root() const {
    State s;
    for (int v = 0; v < n_; ++v) s.used[v] = 1u << v;
    s.matched = full_;  // "current factor complete" so the first one opens
    return s;
  }
  int leaf_depth() const { return n_ * (n_ - 1) / 2; }

  template <class Emit>
  void advance(State& s, int stop, Emit&& emit, SearchControl& ctl) const {
    rec(s, stop, emit, ctl);
  }

  OneFactorization to_of(const State& s) const { return OneFactorization::unchecked(n_, s.factors); }

 private:
  template <class Emit>
  bool rec(State& s, int stop, Emit& emit, SearchControl& ctl) const {
    if (ctl.aborted()) return false;
    if (s.edges >= stop) return emit(static_cast<const State&>(s));
    ctl.tick();
    if (s.matched == full_) {
      // open factor number s.factors.size() with its forced edge at 0
      const int f = static_cast<int>(s.factors.size());
      const int partner = f + 1;
      s.factors.push_back({});
      add(s, 0, partner, 0);
      bool go = rec(s, stop, emit, ctl);
      remove(s, 0, partner, full_);
      s.factors.pop_back();
      return go;
    }
    const int v = std::countr_zero(~s.matched);
    std::uint32_t cand = full_ & ~s.matched & ~s.used[v];
    const std::uint32_t before = s.matched;
    while (cand) {
      int u = std::countr_zero(cand);
      cand &= cand - 1;
      add(s, v, u, before);
      bool go = rec(s, stop, emit, ctl);
      remove(s, v, u, before);
      if (!go) return false;
    }
    return true;
  }
  static void add(State& s, int a, int b, std::uint32_t before) {
    s.used[a] |= 1u << b;
    s.used[b] |= 1u << a;
    s.matched = before | (1u << a) | (1u << b);
    s.factors.back().emplace_back(a, b);
    ++s.edges;
  }
  static void remove(State& s, int a, int b, std::uint32_t before) {
    s.used[a] &= ~(1u << b);
    s.used[b] &= ~(1u << a);
    s.matched = before;
    s.factors.back().pop_back();
    --s.edges;
  }

  int n_;
  std::uint32_t full_;
};

inline int default_split(int leaf_depth, int jobs, int fallback) {
  if (jobs <= 1) return 0;
  return std::min(leaf_depth, fallback);
}

}  // namespace detail

/// Visits every labeled Latin square of order n (or every reduced square
/// when opt.reduced_only) and returns the count. Visitors are called
/// concurrently when opt.jobs > 1.
template <class Visitor>
BigInt enumerate_latin(int n, Visitor&& visitor, const EnumOptions& opt = {}, const EnumCaps& caps = {}) {
  if (n < 1) throw Error(Errc::out_of_range, "order must be positive");
  const bool counting = opt.count_only || opt.reduced_only;
  if (n > (counting ? caps.latin_count : caps.latin_visit) || n > 8)
    throw Error(Errc::cap_exceeded, "latin n=" + std::to_string(n));
  const bool labeled_via_reduced = opt.count_only && !opt.reduced_only && n > caps.latin_visit - 1;
  const bool reduced = opt.reduced_only || labeled_via_reduced;
  detail::LatinSearch search(n, n, reduced);
  detail::SearchControl ctl(opt.budget_seconds);
  int split = opt.split_depth >= 0 ? std::min(opt.split_depth, (n - 1) * n)
                                   : detail::default_split((n - 1) * n, opt.jobs, std::min(2 * n, (n - 1) * n));
  BigInt count = detail::split_and_run(search, search.root(), split, opt.jobs, ctl,
                                       [&](const detail::LatinSearch::State& s) {
                                         if (opt.count_only) return true;
                                         if (!detail::call_visitor(visitor, search.to_square(s))) {
                                           ctl.request_abort();
                                           return false;
                                         }
                                         return true;
                                       });
  detail::finish(ctl);
  if (labeled_via_reduced) count *= factorial(static_cast<unsigned>(n)) * factorial(static_cast<unsigned>(n - 1));
  return count;
}

inline BigInt count_latin(int n, bool reduced = false, int jobs = 1) {
  EnumOptions opt;
  opt.count_only = true;
  opt.reduced_only = reduced;
  opt.jobs = jobs;
  return enumerate_latin(n, [](const LatinSquare&) {}, opt);
}

/// Visits every labeled k x n Latin rectangle (k rows).
template <class Visitor>
BigInt enumerate_latin_rectangles(int n, int k, Visitor&& visitor, const EnumOptions& opt = {}, const EnumCaps& caps = {}) {
  if (n < 1 || k < 0 || k > n) throw Error(Errc::out_of_range, "need 0 <= k <= n");
  if (n > caps.latin_visit) throw Error(Errc::cap_exceeded, "latin n=" + std::to_string(n));
  detail::LatinSearch search(n, k, false);
  detail::SearchControl ctl(opt.budget_seconds);
  int split = opt.split_depth >= 0 ? std::min(opt.split_depth, k * n) : detail::default_split(k * n, opt.jobs, n);
  BigInt count = detail::split_and_run(search, search.root(), split, opt.jobs, ctl,
                                       [&](const detail::LatinSearch::State& s) {
                                         if (opt.count_only) return true;
                                         if (!detail::call_visitor(visitor, search.to_rectangle(s))) {
                                           ctl.request_abort();
                                           return false;
                                         }
                                         return true;
                                       });
  detail::finish(ctl);
  return count;
}

template <class Visitor>
BigInt enumerate_sts(int n, Visitor&& visitor, const EnumOptions& opt = {}, const EnumCaps& caps = {}) {
  if (!sts_admissible(n)) throw Error(Errc::inadmissible_order, "n=" + std::to_string(n));
  const bool budgeted = opt.count_only && opt.budget_seconds > 0;
  if (n > (budgeted ? caps.sts_count_budgeted : caps.sts_visit))
    throw Error(Errc::cap_exceeded, "sts n=" + std::to_string(n) + (n <= caps.sts_count_budgeted ? " needs --count-only with --budget" : ""));
  detail::StsSearch search(n);
  detail::SearchControl ctl(opt.budget_seconds);
  const int leaf = search.leaf_depth();
  int split = opt.split_depth >= 0 ? std::min(opt.split_depth, leaf) : detail::default_split(leaf, opt.jobs, std::min(leaf, 4));
  BigInt count = detail::split_and_run(search, search.root(), split, opt.jobs, ctl,
                                       [&](const detail::StsSearch::State& s) {
                                         if (opt.count_only) return true;
                                         if (!detail::call_visitor(visitor, search.to_sts(s))) {
                                           ctl.request_abort();
                                           return false;
                                         }
                                         return true;
                                       });
  detail::finish(ctl);
  return count;
}

template <class Visitor>
BigInt enumerate_one_factorizations(int n, Visitor&& visitor, const EnumOptions& opt = {}, const EnumCaps& caps = {}) {
  if (n < 2 || n % 2) throw Error(Errc::odd_order, "n=" + std::to_string(n));
  if (n > caps.of_visit || n > 30) throw Error(Errc::cap_exceeded, "one-factorization n=" + std::to_string(n));
  detail::OneFactorizationSearch search(n);
  detail::SearchControl ctl(opt.budget_seconds);
  const int leaf = search.leaf_depth();
  int split = opt.split_depth >= 0 ? std::min(opt.split_depth, leaf) : detail::default_split(leaf, opt.jobs, std::min(leaf, n));
  BigInt count = detail::split_and_run(search, search.root(), split, opt.jobs, ctl,
                                       [&](const detail::OneFactorizationSearch::State& s) {
                                         if (opt.count_only) return true;
                                         if (!detail::call_visitor(visitor, search.to_of(s))) {
                                           ctl.request_abort();
                                           return false;
                                         }
                                         return true;
                                       });
  detail::finish(ctl);
  return count;
}

/// Number of perfect matchings, by always matching the least uncovered
/// vertex.
inline BigInt count_one_factors(const Graph& g) {
  const int v = g.vertices();
  if (v % 2) return 0;
  std::vector<char> covered(static_cast<std::size_t>(v), 0);
  std::uint64_t count = 0;
  auto rec = [&](auto&& self, int first) -> void {
    while (first < v && covered[first]) ++first;
    if (first == v) {
      ++count;
      return;
    }
    covered[first] = 1;
    for (int u : g.neighbors(first)) {
      if (covered[u]) continue;
      covered[u] = 1;
      self(self, first + 1);
      covered[u] = 0;
    }
    covered[first] = 0;
  };
  rec(rec, 0);
  return count;
}

}  // namespace asymlab
