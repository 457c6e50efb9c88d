#pragma once

#include <bit>
#include <cstdint>
#include <thread>
#include <vector>

#include "asymlab/common.hpp"
#include "asymlab/log_scalar.hpp"
#include "asymlab/structures.hpp"

namespace asymlab {

struct PermanentOptions {
  int max_n = 30;
  int jobs = 1;
};

namespace detail {

using u128 = unsigned __int128;

inline BigInt to_bigint(u128 x) {
  BigInt r = static_cast<std::uint64_t>(x >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(x);
  return r;
}

// Ryser terms for Gray-code steps [lo, hi). Step k visits the subset
// gray(k) = k ^ (k >> 1); consecutive subsets differ in bit ctz(k).
// Acc must be either wrap-around unsigned arithmetic (exact whenever the
// true permanent fits) or an arbitrary-precision integer.
template <class Acc>
Acc ryser_range(const ZeroOneMatrix& m, std::uint64_t lo, std::uint64_t hi) {
  const int n = m.dim();
  std::vector<std::int64_t> row_sum(static_cast<std::size_t>(n), 0);
  std::uint64_t subset = lo ^ (lo >> 1);
  int size = std::popcount(subset);
  for (int j = 0; j < n; ++j)
    if (subset >> j & 1)
      for (int i = 0; i < n; ++i) row_sum[i] += m.at(i, j);

  // column-major bit view for fast updates
  std::vector<std::vector<int>> col_rows(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (m.at(i, j)) col_rows[j].push_back(i);

  Acc total = 0;
  auto add_term = [&] {
    Acc prod = 1;
    for (int i = 0; i < n; ++i) {
      if (row_sum[i] == 0) return;
      prod *= static_cast<Acc>(row_sum[i]);
    }
    if ((n - size) % 2 == 0)
      total += prod;
    else
      total -= prod;
  };
  add_term();
  for (std::uint64_t k = lo + 1; k < hi; ++k) {
    int j = std::countr_zero(k);
    bool added = !(subset >> j & 1);
    subset ^= std::uint64_t{1} << j;
    int d = added ? 1 : -1;
    size += d;
    for (int i : col_rows[j]) row_sum[i] += d;
    add_term();
  }
  return total;
}

template <class Acc>
Acc ryser(const ZeroOneMatrix& m, int jobs) {
  const std::uint64_t steps = std::uint64_t{1} << m.dim();
  // step 0 is the empty subset, whose product is 0 for n >= 1
  const std::uint64_t lo = 1;
  if (jobs <= 1 || steps < 4096) return ryser_range<Acc>(m, lo, steps);
  std::vector<Acc> partial(static_cast<std::size_t>(jobs), Acc(0));
  std::vector<std::thread> pool;
  const std::uint64_t span = (steps - lo + jobs - 1) / static_cast<std::uint64_t>(jobs);
  for (int w = 0; w < jobs; ++w) {
    std::uint64_t a = lo + span * static_cast<std::uint64_t>(w);
    std::uint64_t b = std::min(steps, a + span);
    if (a >= b) break;
    pool.emplace_back([&, w, a, b] { partial[w] = ryser_range<Acc>(m, a, b); });
  }
  for (auto& t : pool) t.join();
  Acc total = 0;
  for (const auto& p : partial) total += p;
  return total;
}

}  // namespace detail

/// Exact permanent of a 0/1 matrix by Ryser's inclusion-exclusion with
/// Gray-code subset order: 2^n steps, each an O(column weight) update.
inline BigInt permanent_exact(const ZeroOneMatrix& m, const PermanentOptions& opt = {}) {
  const int n = m.dim();
  if (n < 1) throw Error(Errc::out_of_range, "dimension must be positive");
  if (n > opt.max_n || n > 62)
    throw Error(Errc::dimension_too_large, "n=" + std::to_string(n) + " exceeds cap " + std::to_string(std::min(opt.max_n, 62)));
  // per(M) <= n! < 2^128 for n <= 34, so mod-2^128 arithmetic is exact there.
  if (n <= 34) return detail::to_bigint(detail::ryser<detail::u128>(m, opt.jobs));
  return detail::ryser<BigInt>(m, opt.jobs);
}

/// Entry (i, j) is 1 iff symbol j is still missing from column i.
inline ZeroOneMatrix extension_matrix(const LatinRectangle& r) {
  const int n = r.order();
  if (r.row_count() >= n) throw Error(Errc::rectangle_full, "rectangle already has " + std::to_string(n) + " rows");
  ZeroOneMatrix m = ZeroOneMatrix::all_ones(n);
  for (const auto& row : r.rows())
    for (int i = 0; i < n; ++i) m.set(i, row[i], false);
  return m;
}

/// Number of rows that extend r to a (k+1)-row Latin rectangle, counted by
/// direct backtracking over columns (independent of the permanent route).
inline BigInt count_row_extensions(const LatinRectangle& r) {
  const int n = r.order();
  if (r.row_count() >= n) throw Error(Errc::rectangle_full, "rectangle already has " + std::to_string(n) + " rows");
  if (n > 63) throw Error(Errc::dimension_too_large, "row extension count supports n <= 63");
  std::vector<std::uint64_t> banned(static_cast<std::size_t>(n), 0);
  for (const auto& row : r.rows())
    for (int i = 0; i < n; ++i) banned[i] |= std::uint64_t{1} << row[i];
  BigInt count = 0;
  std::uint64_t count_small = 0;
  auto rec = [&](auto&& self, int col, std::uint64_t used) -> void {
    if (col == n) {
      if (++count_small == (std::uint64_t{1} << 62)) {
        count += count_small;
        count_small = 0;
      }
      return;
    }
    std::uint64_t avail = ~(used | banned[col]) & ((std::uint64_t{1} << n) - 1);
    while (avail) {
      int s = std::countr_zero(avail);
      avail &= avail - 1;
      self(self, col + 1, used | (std::uint64_t{1} << s));
    }
  };
  rec(rec, 0, 0);
  count += count_small;
  return count;
}

/// Log of (k/e)^n, the lower bound on the permanent of an n x n 0/1 matrix
/// with all line sums k.
inline LogScalar bang_friedland_lower(int n, int k) {
  if (k < 1 || k > n) throw Error(Errc::out_of_range, "need 1 <= k <= n");
  return LogScalar::from_log(Real(n) * (log(Real(k)) - 1));
}

inline Real log_factorial(int n) {
  Real s = 0;
  for (int k = 2; k <= n; ++k) s += log(Real(k));
  return s;
}

/// Log of prod_{k=1..n} (k/e)^n = (n!)^n e^{-n^2}.
inline LogScalar latin_lower_bound(int n) {
  if (n < 1) throw Error(Errc::out_of_range, "order must be positive");
  return LogScalar::from_log(Real(n) * log_factorial(n) - Real(n) * Real(n));
}

}  // namespace asymlab
