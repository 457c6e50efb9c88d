// Brute-force reference implementations. Deliberately naive and
// independent of the library's search code.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "asymlab/structures.hpp"

namespace oracle {

using asymlab::Graph;
using asymlab::ZeroOneMatrix;

inline std::vector<std::vector<int>> all_perms(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// sum over S_n of prod M[i][s(i)]
inline long long permanent(const ZeroOneMatrix& m) {
  const int n = m.dim();
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  long long total = 0;
  do {
    bool all = true;
    for (int i = 0; i < n && all; ++i) all = m.at(i, p[i]);
    total += all;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

// Latin squares as n-tuples of row permutations with distinct columns.
inline std::vector<std::vector<int>> latin_squares(int n) {
  auto perms = all_perms(n);
  std::vector<std::vector<int>> out;
  std::vector<int> chosen;
  std::function<void()> rec = [&] {
    if (static_cast<int>(chosen.size()) == n) {
      std::vector<int> grid;
      for (int r : chosen) grid.insert(grid.end(), perms[r].begin(), perms[r].end());
      out.push_back(std::move(grid));
      return;
    }
    for (int r = 0; r < static_cast<int>(perms.size()); ++r) {
      bool ok = true;
      for (int q : chosen)
        for (int j = 0; j < n && ok; ++j) ok = perms[q][j] != perms[r][j];
      if (!ok) continue;
      chosen.push_back(r);
      rec();
      chosen.pop_back();
    }
  };
  rec();
  return out;
}

// |{(sigma, f0, f1, f2)}| preserving the set of (row, col, entry) triples
inline long long latin_aut_order(int n, const std::vector<int>& grid) {
  auto perms = all_perms(n);
  std::array<std::array<int, 3>, 6> sigmas{{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  long long count = 0;
  for (const auto& s : sigmas)
    for (const auto& f0 : perms)
      for (const auto& f1 : perms)
        for (const auto& f2 : perms) {
          const std::vector<int>* f[3] = {&f0, &f1, &f2};
          bool ok = true;
          for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < n && ok; ++j) {
              int t[3] = {i, j, grid[i * n + j]};
              int img[3];
              for (int x = 0; x < 3; ++x) img[s[x]] = (*f[x])[t[x]];
              ok = grid[img[0] * n + img[1]] == img[2];
            }
          count += ok;
        }
  return count;
}

// point permutations preserving the block set; first-block pruning
inline long long sts_aut_order(int n, const std::vector<std::array<int, 3>>& blocks) {
  std::set<std::array<int, 3>> bs(blocks.begin(), blocks.end());
  auto maps_block = [&](const std::vector<int>& p, const std::array<int, 3>& b) {
    std::array<int, 3> im{p[b[0]], p[b[1]], p[b[2]]};
    std::sort(im.begin(), im.end());
    return bs.count(im) > 0;
  };
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  long long count = 0;
  do {
    if (!maps_block(p, blocks[0])) continue;
    bool ok = true;
    for (const auto& b : blocks)
      if (!(ok = maps_block(p, b))) break;
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

using Factor = std::vector<std::pair<int, int>>;

inline Factor normalize(Factor m) {
  for (auto& e : m)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(m.begin(), m.end());
  return m;
}

inline long long of_aut_order(int n, const std::vector<Factor>& factors) {
  std::set<Factor> fs;
  for (const auto& f : factors) fs.insert(normalize(f));
  long long count = 0;
  for (const auto& p : all_perms(n)) {
    bool ok = true;
    for (const auto& f : factors) {
      Factor img;
      for (auto [a, b] : f) img.emplace_back(p[a], p[b]);
      if (!(ok = fs.count(normalize(img)) > 0)) break;
    }
    count += ok;
  }
  return count;
}

// STS as sets of pairwise pair-disjoint triples chosen in increasing index order
inline std::vector<std::vector<std::array<int, 3>>> steiner_systems(int n) {
  std::vector<std::array<int, 3>> triples;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) triples.push_back({a, b, c});
  const int need = n * (n - 1) / 6;
  std::vector<std::vector<std::array<int, 3>>> out;
  std::vector<std::array<int, 3>> chosen;
  std::vector<char> used(static_cast<std::size_t>(n * n), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(chosen.size()) == need) {
      out.push_back(chosen);
      return;
    }
    for (std::size_t t = from; t < triples.size(); ++t) {
      auto [a, b, c] = triples[t];
      if (used[a * n + b] || used[a * n + c] || used[b * n + c]) continue;
      // later triples all start at >= a, so pairs below a are final
      bool dead = false;
      for (int x = 0; x < a && !dead; ++x)
        for (int y = x + 1; y < n && !dead; ++y) dead = !used[x * n + y];
      if (dead) return;
      used[a * n + b] = used[a * n + c] = used[b * n + c] = 1;
      chosen.push_back(triples[t]);
      rec(t + 1);
      chosen.pop_back();
      used[a * n + b] = used[a * n + c] = used[b * n + c] = 0;
    }
  };
  rec(0);
  return out;
}

inline std::vector<Factor> perfect_matchings_of_kn(int n) {
  std::vector<Factor> out;
  Factor cur;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::function<void()> rec = [&] {
    int a = 0;
    while (a < n && used[a]) ++a;
    if (a == n) {
      out.push_back(cur);
      return;
    }
    used[a] = 1;
    for (int b = a + 1; b < n; ++b) {
      if (used[b]) continue;
      used[b] = 1;
      cur.emplace_back(a, b);
      rec();
      cur.pop_back();
      used[b] = 0;
    }
    used[a] = 0;
  };
  rec();
  return out;
}

// 1-factorizations as (n-1)-subsets of pairwise edge-disjoint perfect matchings
inline std::vector<std::vector<Factor>> one_factorizations(int n) {
  auto pms = perfect_matchings_of_kn(n);
  std::vector<std::vector<Factor>> out;
  std::vector<int> chosen;
  std::vector<char> used(static_cast<std::size_t>(n * n), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(chosen.size()) == n - 1) {
      std::vector<Factor> f;
      for (int c : chosen) f.push_back(pms[c]);
      out.push_back(std::move(f));
      return;
    }
    for (std::size_t m = from; m < pms.size(); ++m) {
      bool ok = true;
      for (auto [a, b] : pms[m]) ok = ok && !used[a * n + b];
      if (!ok) continue;
      for (auto [a, b] : pms[m]) used[a * n + b] = 1;
      chosen.push_back(static_cast<int>(m));
      rec(m + 1);
      chosen.pop_back();
      for (auto [a, b] : pms[m]) used[a * n + b] = 0;
    }
  };
  rec(0);
  return out;
}

// automorphisms by extending partial maps vertex by vertex
inline long long graph_aut_order(const Graph& g) {
  const int v = g.vertices();
  std::vector<int> img(static_cast<std::size_t>(v), -1);
  std::vector<char> taken(static_cast<std::size_t>(v), 0);
  long long count = 0;
  std::function<void(int)> rec = [&](int x) {
    if (x == v) {
      ++count;
      return;
    }
    for (int y = 0; y < v; ++y) {
      if (taken[y] || g.degree(x) != g.degree(y)) continue;
      bool ok = true;
      for (int w = 0; w < x && ok; ++w) ok = g.adjacent(x, w) == g.adjacent(y, img[w]);
      if (!ok) continue;
      img[x] = y;
      taken[y] = 1;
      rec(x + 1);
      taken[y] = 0;
    }
    img[x] = -1;
  };
  rec(0);
  return count;
}

// natural logs in long double
inline long double ln_fact(int n) { return std::lgamma(static_cast<long double>(n) + 1); }

inline long double bound(int kind, int n, long double eps) {
  const long double N = n, ln = std::log(N), e = std::exp(1.0L);
  switch (kind) {
    case 0: return N * ln_fact(n) - N * N;                                            // latin_lower
    case 1: return std::log(6.0L) + 3 * ln_fact(n) + 5 * N * N / 8 * ln;             // latin_aut_upper
    case 2: return (1 - eps) * N * N / 6 * ln;                                       // sts_lower
    case 3: return ln_fact(n) + 5 * N * N / 48 * std::log(8 * N * e / 5);            // sts_aut_upper
    case 4: return (1 - eps) * N * N / 2 * ln;                                       // ep_lower
    default: return ln_fact(n) + 3 * N * N / 8 * ln;                                 // ep_aut_upper
  }
}

inline ZeroOneMatrix random_matrix(int n, std::mt19937_64& rng) {
  ZeroOneMatrix m(n);
  std::bernoulli_distribution bit(0.5);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.set(i, j, bit(rng));
  return m;
}

// circulant k-regular matrix, rows and columns shuffled, then random
// 2x2 switches (which keep every line sum)
inline ZeroOneMatrix random_regular(int n, int k, std::mt19937_64& rng) {
  std::vector<int> rp(static_cast<std::size_t>(n)), cp(static_cast<std::size_t>(n));
  std::iota(rp.begin(), rp.end(), 0);
  std::iota(cp.begin(), cp.end(), 0);
  std::shuffle(rp.begin(), rp.end(), rng);
  std::shuffle(cp.begin(), cp.end(), rng);
  ZeroOneMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int d = 0; d < k; ++d) m.set(rp[i], cp[(i + d) % n], true);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int s = 0; s < 4 * n * n; ++s) {
    int a = pick(rng), b = pick(rng), c = pick(rng), d = pick(rng);
    if (a == b || c == d) continue;
    if (m.at(a, c) && m.at(b, d) && !m.at(a, d) && !m.at(b, c)) {
      m.set(a, c, false);
      m.set(b, d, false);
      m.set(a, d, true);
      m.set(b, c, true);
    }
  }
  return m;
}

}  // namespace oracle
