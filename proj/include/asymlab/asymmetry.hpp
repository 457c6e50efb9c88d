#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "asymlab/common.hpp"
#include "asymlab/enumerate.hpp"
#include "asymlab/log_scalar.hpp"
#include "asymlab/permanent.hpp"
#include "asymlab/permgroup.hpp"
#include "asymlab/structures.hpp"

namespace asymlab {

enum class Kind { latin, sts, of };

inline std::string kind_name(Kind k) {
  switch (k) {
    case Kind::latin: return "latin";
    case Kind::sts: return "sts";
    case Kind::of: return "of";
  }
  return "?";
}

inline Kind parse_kind(const std::string& s) {
  if (s == "latin") return Kind::latin;
  if (s == "sts") return Kind::sts;
  if (s == "of" || s == "ep") return Kind::of;
  throw Error(Errc::parse_error, "unknown kind '" + s + "'");
}

/// Fixed-structure statistics of one permutation acting on one structure.
struct FixStats {
  Kind kind = Kind::latin;
  int n = 0;
  std::optional<int> fixed_points;  // STS / 1F only
  int fixed_objects = 0;            // cells, blocks or parallel classes fixed setwise
  int total_objects = 0;
  int orbit_count = 0;
  std::map<std::string, LogScalar> bound_values;
};

namespace detail {

// LogScalar of num/den, memoized per thread (bound tables are rebuilt for
// every group element in the exhaustive sweeps)
inline LogScalar lv(long long num, long long den = 1) {
  thread_local std::map<std::pair<long long, long long>, LogScalar> memo;
  auto [it, fresh] = memo.try_emplace({num, den});
  if (fresh) it->second = LogScalar::from_value(Real(num) / den);
  return it->second;
}

[[noreturn]] inline void violated(const std::string& what) { throw Error(Errc::bound_violated, what); }

// number of cycles of a permutation given as an image array
inline int cycle_count(const std::vector<int>& p) {
  std::vector<char> seen(p.size(), 0);
  int c = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    ++c;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) seen[j] = 1;
  }
  return c;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Latin squares

inline int fixed_cells(const TriplePermutation& g, const LatinSquare& s) {
  if (!is_autoparatopism(g, s)) throw Error(Errc::not_an_automorphism, "triple permutation does not fix the square");
  const int n = s.order();
  int f = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Cell c{i, j, s.at(i, j)};
      f += apply_triple_perm(g, c) == c;
    }
  return f;
}

/// Fixed-cell statistics of an autoparatopism; throws BoundViolated if a
/// class-moving map fixes more than n cells, a class-fixing non-identity
/// map fixes more than n^2/4 cells (n >= 4), or its fixed rows, columns
/// and entries fail to carry a subsquare of order <= n/2.
inline FixStats latin_fix_stats(const TriplePermutation& g, const LatinSquare& s) {
  FixStats st;
  st.kind = Kind::latin;
  st.n = s.order();
  const int n = st.n;
  st.fixed_objects = fixed_cells(g, s);
  st.total_objects = n * n;
  std::vector<int> cell_perm(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Cell d = apply_triple_perm(g, {i, j, s.at(i, j)});
      cell_perm[i * n + j] = d.row * n + d.col;
    }
  st.orbit_count = detail::cycle_count(cell_perm);
  if (g.is_identity()) return st;

  if (g.moves_classes()) {
    st.bound_values["fixed_cells_max"] = detail::lv(n);
    if (st.fixed_objects > n) detail::violated("class-moving autoparatopism fixes " + std::to_string(st.fixed_objects) + " > n cells");
    return st;
  }
  st.bound_values["fixed_cells_max"] = detail::lv(n * n, 4);
  if (n >= 4 && 4 * st.fixed_objects > n * n)
    detail::violated("class-fixing autoparatopism fixes " + std::to_string(st.fixed_objects) + " > n^2/4 cells");
  std::vector<int> fr, fc, fe;
  for (int i = 0; i < n; ++i) {
    if (g.map(kRow)[i] == i) fr.push_back(i);
    if (g.map(kCol)[i] == i) fc.push_back(i);
    if (g.map(kEntry)[i] == i) fe.push_back(i);
  }
  if (!fr.empty() && !fc.empty()) {
    // fixed rows x fixed columns must be a Latin subsquare on the fixed entries
    const int m = static_cast<int>(fr.size());
    st.bound_values["subsquare_order_max"] = detail::lv(n, 2);
    if (static_cast<int>(fc.size()) != m || static_cast<int>(fe.size()) != m)
      detail::violated("fixed rows, columns and entries differ in number");
    if (2 * m > n) detail::violated("subsquare of order " + std::to_string(m) + " > n/2");
    for (int i : fr)
      for (int j : fc)
        if (!std::binary_search(fe.begin(), fe.end(), s.at(i, j))) detail::violated("fixed rows and columns do not close on fixed entries");
  }
  return st;
}

/// Number of grid positions that can hold a g-fixed cell, capped at n for
/// class-moving maps (a fixed cell on row i is then pinned to a single
/// column or entry, so each row carries at most one).
inline int latin_fixed_position_bound(const TriplePermutation& g) {
  const int n = g.order();
  int positions = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Cell c{i, j, k};
        if (apply_triple_perm(g, c) == c) {
          ++positions;
          break;
        }
      }
  return g.moves_classes() ? std::min(positions, n) : positions;
}

/// Log of n^{(n^2 + r)/2}.
inline LogScalar latin_fixed_square_bound(int n, int r) {
  return LogScalar::from_log((Real(n) * n + r) / 2 * log(Real(n)));
}

/// Labeled order-n Latin squares admitting g, by filtering the full
/// enumeration. Checked against n^{(n^2 + r)/2}.
inline BigInt count_fixed_latin(const TriplePermutation& g, int n) {
  if (n > 5) throw Error(Errc::cap_exceeded, "count_fixed_latin needs n <= 5");
  if (g.order() != n) throw Error(Errc::out_of_range, "permutation order differs from n");
  std::uint64_t c = 0;
  enumerate_latin(n, [&](const LatinSquare& s) { c += is_autoparatopism(g, s); });
  BigInt count = c;
  if (LogScalar::from_int(count) > latin_fixed_square_bound(n, latin_fixed_position_bound(g)))
    detail::violated("fixed square count exceeds n^((n^2+r)/2)");
  return count;
}

/// Row/column relabeling carrying s to its reduced form (first row and
/// column in natural order). Entries are left alone.
inline TriplePermutation isotopism_to_reduced(const LatinSquare& s) {
  const int n = s.order();
  std::vector<int> col(static_cast<std::size_t>(n)), row(static_cast<std::size_t>(n));
  int j0 = 0;
  for (int j = 0; j < n; ++j) {
    col[j] = s.at(0, j);
    if (s.at(0, j) == 0) j0 = j;
  }
  for (int i = 0; i < n; ++i) row[i] = s.at(i, j0);
  return {{0, 1, 2}, {row, col, identity_perm(n)}};
}

inline LatinSquare apply_isotopism(const TriplePermutation& t, const LatinSquare& s) {
  const int n = s.order();
  std::vector<int> g(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Cell d = apply_triple_perm(t, {i, j, s.at(i, j)});
      g[d.row * n + d.col] = d.entry;
    }
  return LatinSquare::unchecked(n, std::move(g));
}

/// Autoparatopism groups memoized by reduced form. Group order is an
/// isotopy invariant, and Aut(S) = t^-1 Aut(R) t for the isotopism t
/// carrying S to its reduced form R. Thread-safe.
class LatinAutCache {
 public:
  struct Entry {
    BigInt order;
    PermGroup group{0};
  };

  std::shared_ptr<const Entry> lookup(const LatinSquare& reduced) {
    std::vector<int> key(reduced.grid().begin(), reduced.grid().end());
    {
      std::lock_guard lock(mu_);
      if (auto it = map_.find(key); it != map_.end()) return it->second;
    }
    AutReport r = aut_order_latin(reduced);
    auto e = std::make_shared<Entry>(Entry{r.order, PermGroup(3 * reduced.order(), r.generators)});
    std::lock_guard lock(mu_);
    return map_.emplace(std::move(key), std::move(e)).first->second;
  }

  BigInt order(const LatinSquare& s) { return lookup(apply_isotopism(isotopism_to_reduced(s), s))->order; }

  /// Calls f(const TriplePermutation&) for every autoparatopism of s.
  template <class F>
  void for_each_automorphism(const LatinSquare& s, F&& f) {
    TriplePermutation t = isotopism_to_reduced(s);
    const Perm tp = t.to_points(), tp_inv = inverse(tp);
    auto e = lookup(apply_isotopism(t, s));
    const int n = s.order();
    Perm q(tp.size());
    e->group.for_each([&](const Perm& p) {
      for (std::size_t x = 0; x < q.size(); ++x) q[x] = tp_inv[p[tp[x]]];
      f(TriplePermutation::from_points(q, n));
    });
  }

  std::size_t forms_seen() const {
    std::lock_guard lock(mu_);
    return map_.size();
  }

 private:
  mutable std::mutex mu_;
  std::map<std::vector<int>, std::shared_ptr<const Entry>> map_;
};

// ---------------------------------------------------------------------------
// Steiner triple systems

/// Printed form of the fixed-block bound, kept for reporting.
inline Real sts_fixed_blocks_bound_as_printed(int n) { return (Real(n) * n + 2 * n - 9) / 24; }
/// max over m <= (n-1)/2 of m(m-1)/6 + (n-m)/2 at m = (n-1)/2.
inline Real sts_fixed_blocks_bound_subsystem(int n) { return (Real(n) * n + 2 * n + 9) / 24; }

/// m = fixed points, fixed blocks, r = block orbits. For g != identity
/// checks m <= (n-1)/2, fixed blocks <= max(n/2, (n^2+2n+9)/24),
/// r < 5n^2/48 and, when m >= 3, that the fixed points carry a sub-STS.
inline FixStats sts_fix_stats(const PointPermutation& g, const Sts& t) {
  if (!is_sts_automorphism(g, t)) throw Error(Errc::not_an_automorphism, "point permutation does not preserve the blocks");
  const int n = t.points();
  const auto& blocks = t.blocks();
  FixStats st;
  st.kind = Kind::sts;
  st.n = n;
  const int m = g.fixed_points();
  st.fixed_points = m;
  st.total_objects = static_cast<int>(blocks.size());
  std::vector<int> block_perm(blocks.size());
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    Block img = apply_to_block(g, blocks[k]);
    block_perm[k] = static_cast<int>(std::lower_bound(blocks.begin(), blocks.end(), img) - blocks.begin());
    st.fixed_objects += block_perm[k] == static_cast<int>(k);
  }
  st.orbit_count = detail::cycle_count(block_perm);

  st.bound_values["fixed_points_max"] = detail::lv(n - 1, 2);
  st.bound_values["fixed_blocks_max"] = detail::lv(std::max(12LL * n, n * n + 2LL * n + 9), 24);
  st.bound_values["fixed_blocks_max_as_printed"] = detail::lv(n * n + 2LL * n - 9, 24);
  st.bound_values["block_orbits_sup"] = detail::lv(5LL * n * n, 48);
  if (g.is_identity()) return st;

  if (2 * m > n - 1) detail::violated("non-identity automorphism fixes " + std::to_string(m) + " > (n-1)/2 points");
  if (24 * st.fixed_objects > std::max(12 * n, n * n + 2 * n + 9)) detail::violated("fixed blocks " + std::to_string(st.fixed_objects) + " exceed bound");
  if (48 * st.orbit_count >= 5 * n * n) detail::violated("block orbits " + std::to_string(st.orbit_count) + " >= 5n^2/48");
  if (m >= 3) {
    std::vector<int> relabel(static_cast<std::size_t>(n), -1);
    int next = 0;
    for (int p = 0; p < n; ++p)
      if (g(p) == p) relabel[p] = next++;
    std::vector<std::vector<int>> sub;
    for (const auto& b : blocks)
      if (relabel[b[0]] >= 0 && relabel[b[1]] >= 0 && relabel[b[2]] >= 0) sub.push_back({relabel[b[0]], relabel[b[1]], relabel[b[2]]});
    try {
      validate_sts(m, sub);
    } catch (const Error& e) {
      detail::violated(std::string("fixed points do not carry a subsystem: ") + e.what());
    }
  }
  return st;
}

// ---------------------------------------------------------------------------
// edge-parallelisms

/// r = fixed points, s = parallel classes fixed setwise, m = class orbits.
/// For g != identity with r > 0 checks r <= n/2, s <= r-1 and
/// m <= r + (n-r)/2 <= 3n/4.
inline FixStats ep_fix_stats(const PointPermutation& g, const OneFactorization& f) {
  if (!is_of_automorphism(g, f)) throw Error(Errc::not_an_automorphism, "point permutation does not permute the factors");
  const int n = f.points();
  const auto& factors = f.factors();
  FixStats st;
  st.kind = Kind::of;
  st.n = n;
  const int r = g.fixed_points();
  st.fixed_points = r;
  st.total_objects = static_cast<int>(factors.size());
  std::vector<int> fperm(factors.size());
  for (std::size_t k = 0; k < factors.size(); ++k) {
    Matching img = apply_to_matching(g, factors[k]);
    fperm[k] = static_cast<int>(std::lower_bound(factors.begin(), factors.end(), img) - factors.begin());
    st.fixed_objects += fperm[k] == static_cast<int>(k);
  }
  st.orbit_count = detail::cycle_count(fperm);
  const int s = st.fixed_objects, m = st.orbit_count;
  st.bound_values["class_orbits_max"] = detail::lv(3LL * n, 4);
  if (g.is_identity() || r == 0) return st;

  st.bound_values["fixed_points_max"] = detail::lv(n, 2);
  st.bound_values["fixed_classes_max"] = detail::lv(r - 1);
  if (2 * r > n) detail::violated("non-identity automorphism fixes " + std::to_string(r) + " > n/2 points");
  if (s > r - 1) detail::violated("fixed classes " + std::to_string(s) + " > r-1");
  if (2 * m > 2 * r + (n - r)) detail::violated("class orbits exceed r + (n-r)/2");
  if (4 * m > 3 * n) detail::violated("class orbits exceed 3n/4");
  return st;
}

/// Perfect matchings M of G with g(M) = M, for a fixed-point-free
/// automorphism g of a k-regular graph. Every chosen edge brings its whole
/// g-orbit. Checked against (8ek)^{n/4}.
inline BigInt count_fixed_one_factors(const Graph& G, const PointPermutation& g) {
  const int v = G.vertices();
  if (g.degree() != v) throw Error(Errc::out_of_range, "permutation degree differs from vertex count");
  for (auto [a, b] : G.edges())
    if (!G.adjacent(g(a), g(b))) throw Error(Errc::not_an_automorphism, "edge " + pair_str(a, b) + " not preserved");
  if (g.fixed_points() > 0) throw Error(Errc::has_fixed_vertex, "permutation fixes a vertex");
  const int k = G.regular_degree();
  if (k < 0) throw Error(Errc::not_regular, "graph is not regular");

  std::vector<char> matched(static_cast<std::size_t>(v), 0);
  std::uint64_t count = 0;
  std::vector<int> touched;
  auto rec = [&](auto&& self, int first) -> void {
    while (first < v && matched[first]) ++first;
    if (first == v) {
      ++count;
      return;
    }
    for (int u : G.neighbors(first)) {
      if (matched[u]) continue;
      // add the orbit of {first, u}
      const std::size_t mark = touched.size();
      bool ok = true;
      int a = first, b = u;
      do {
        if (matched[a] || matched[b]) {
          ok = false;
          break;
        }
        matched[a] = matched[b] = 1;
        touched.push_back(a);
        touched.push_back(b);
        a = g(a);
        b = g(b);
      } while (!((a == first && b == u) || (a == u && b == first)));
      if (ok) self(self, first + 1);
      while (touched.size() > mark) {
        matched[touched.back()] = 0;
        touched.pop_back();
      }
    }
  };
  rec(rec, 0);
  BigInt c = count;
  if (k > 0 && LogScalar::from_int(c) > LogScalar::from_log(Real(v) / 4 * log(Real(8) * exp(Real(1)) * k)))
    detail::violated("fixed 1-factor count exceeds (8ek)^(n/4)");
  return c;
}

// ---------------------------------------------------------------------------
// bound formulas

enum class BoundKind { latin_lower, latin_aut_upper, sts_lower, sts_aut_upper, ep_lower, ep_aut_upper };

inline std::string bound_kind_name(BoundKind k) {
  switch (k) {
    case BoundKind::latin_lower: return "latin_lower";
    case BoundKind::latin_aut_upper: return "latin_aut_upper";
    case BoundKind::sts_lower: return "sts_lower";
    case BoundKind::sts_aut_upper: return "sts_aut_upper";
    case BoundKind::ep_lower: return "ep_lower";
    case BoundKind::ep_aut_upper: return "ep_aut_upper";
  }
  return "?";
}

namespace detail {

inline Real bound_log(BoundKind kind, int n, std::optional<double> eps, const Real& ln_fact) {
  const Real N = n;
  const Real ln_n = log(N);
  auto need_eps = [&] {
    if (!eps) throw Error(Errc::missing_epsilon, bound_kind_name(kind) + " needs eps");
    if (!(*eps > 0 && *eps < 1)) throw Error(Errc::out_of_range, "eps must lie in (0,1)");
    return Real(*eps);
  };
  switch (kind) {
    case BoundKind::latin_lower: return N * ln_fact - N * N;
    case BoundKind::latin_aut_upper: return log(Real(6)) + 3 * ln_fact + Real(5) * N * N / 8 * ln_n;
    case BoundKind::sts_lower: return (1 - need_eps()) * N * N / 6 * ln_n;
    case BoundKind::sts_aut_upper: return ln_fact + Real(5) * N * N / 48 * log(Real(8) * N * exp(Real(1)) / 5);
    case BoundKind::ep_lower: return (1 - need_eps()) * N * N / 2 * ln_n;
    case BoundKind::ep_aut_upper: return ln_fact + Real(3) * N * N / 8 * ln_n;
  }
  return 0;
}

}  // namespace detail

/// Natural log of the named bound at order n.
inline LogScalar bound_eval(BoundKind kind, int n, std::optional<double> eps = std::nullopt) {
  if (n < 1) throw Error(Errc::out_of_range, "n must be positive");
  return LogScalar::from_log(detail::bound_log(kind, n, eps, log_factorial(n)));
}

inline bool admissible(Kind kind, int n) {
  switch (kind) {
    case Kind::latin: return n >= 1;
    case Kind::sts: return sts_admissible(n);
    case Kind::of: return n >= 2 && n % 2 == 0;
  }
  return false;
}

inline std::pair<BoundKind, BoundKind> bound_pair(Kind kind) {
  switch (kind) {
    case Kind::latin: return {BoundKind::latin_lower, BoundKind::latin_aut_upper};
    case Kind::sts: return {BoundKind::sts_lower, BoundKind::sts_aut_upper};
    case Kind::of: return {BoundKind::ep_lower, BoundKind::ep_aut_upper};
  }
  return {};
}

inline constexpr int kCrossoverWindow = 50;
inline constexpr int kCrossoverSearchCap = 1'000'000;

/// Least admissible n0 with aut_upper(n) < lower(n) for every admissible n
/// in [n0, n0 + 50].
inline int crossover_order(Kind kind, std::optional<double> eps = std::nullopt) {
  if (kind != Kind::latin && !eps) throw Error(Errc::missing_epsilon, "crossover for " + kind_name(kind) + " needs eps");
  auto [lower, upper] = bound_pair(kind);
  Real ln_fact = 0;
  std::vector<char> good;  // good[n]
  good.push_back(0);
  auto extend_to = [&](int n) {
    while (static_cast<int>(good.size()) <= n) {
      int m = static_cast<int>(good.size());
      ln_fact += log(Real(m));
      if (!admissible(kind, m)) {
        good.push_back(1);
        continue;
      }
      Real lo = detail::bound_log(lower, m, eps, ln_fact);
      Real up = detail::bound_log(upper, m, eps, ln_fact);
      good.push_back(up < lo ? 1 : 0);
    }
  };
  int bad_run_end = 0;  // last n seen that fails
  for (int n = 1; n <= kCrossoverSearchCap; ++n) {
    extend_to(n + kCrossoverWindow);
    if (!admissible(kind, n)) continue;
    if (n <= bad_run_end) continue;
    int last_bad = 0;
    for (int m = n; m <= n + kCrossoverWindow; ++m)
      if (!good[m]) last_bad = m;
    if (last_bad == 0) return n;
    bad_run_end = last_bad;
  }
  throw Error(Errc::not_found, "no crossover below " + std::to_string(kCrossoverSearchCap));
}

// ---------------------------------------------------------------------------
// asymmetry report

struct AsymmetryReport {
  Kind kind = Kind::latin;
  int n = 0;
  BigInt total = 0;
  BigInt with_nontrivial_aut = 0;
  Rational proportion = 0;
  std::map<BigInt, BigInt> aut_order_histogram;
  /// Isomorphism classes, from sum over structures of |Aut| / |acting group|.
  BigInt classes = 0;
};

/// Order of the group acting on labeled structures: 6(n!)^3 for Latin
/// squares (paratopisms), n! for STS and 1-factorizations.
inline BigInt acting_group_order(Kind kind, int n) {
  BigInt f = factorial(static_cast<unsigned>(n));
  return kind == Kind::latin ? 6 * f * f * f : f;
}

inline AsymmetryReport asymmetry_report(Kind kind, int n, int jobs = 1) {
  AsymmetryReport rep;
  rep.kind = kind;
  rep.n = n;
  std::mutex mu;
  std::map<BigInt, std::uint64_t> hist;
  auto record = [&](const BigInt& order) {
    std::lock_guard lock(mu);
    ++hist[order];
  };
  EnumOptions opt;
  opt.jobs = jobs;
  switch (kind) {
    case Kind::latin: {
      LatinAutCache cache;
      rep.total = enumerate_latin(n, [&](const LatinSquare& s) { record(cache.order(s)); }, opt);
      break;
    }
    case Kind::sts:
      rep.total = enumerate_sts(n, [&](const Sts& t) { record(aut_order_sts(t).order); }, opt);
      break;
    case Kind::of:
      rep.total = enumerate_one_factorizations(n, [&](const OneFactorization& f) { record(aut_order_of(f).order); }, opt);
      break;
  }
  BigInt hist_total = 0, weighted = 0;
  for (const auto& [order, count] : hist) {
    rep.aut_order_histogram[order] = count;
    hist_total += count;
    weighted += order * count;
    if (order != 1) rep.with_nontrivial_aut += count;
  }
  if (hist_total != rep.total) throw std::logic_error("histogram total differs from enumeration count");
  const BigInt g = acting_group_order(kind, n);
  if (weighted % g != 0) throw std::logic_error("orbit counting: sum of |Aut| not divisible by acting group order");
  rep.classes = weighted / g;
  rep.proportion = rep.total == 0 ? Rational(0) : Rational(rep.with_nontrivial_aut, rep.total);
  return rep;
}

}  // namespace asymlab
