#pragma once

#include <numeric>
#include <vector>

#include "asymlab/common.hpp"

namespace asymlab {

/// Permutation of 0..size-1 as an image array.
using Perm = std::vector<int>;

inline Perm identity_perm(int n) {
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline bool is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

/// (a * b)(x) = a(b(x)).
inline Perm compose(const Perm& a, const Perm& b) {
  Perm r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[static_cast<std::size_t>(b[i])];
  return r;
}

inline Perm inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return r;
}

/// Stabilizer chain for base 0, 1, ..., degree-1, built with the
/// deterministic Schreier-Sims procedure. Level k holds a transversal for
/// the orbit of k under the pointwise stabilizer of 0..k-1.
class PermGroup {
 public:
  explicit PermGroup(int degree) : degree_(degree), levels_(static_cast<std::size_t>(degree)) {
    for (int k = 0; k < degree_; ++k) rebuild_level(k);
  }
  PermGroup(int degree, const std::vector<Perm>& gens) : PermGroup(degree) {
    for (const auto& g : gens) insert(g);
  }

  int degree() const noexcept { return degree_; }

  /// Adds g to the generating set and restores the chain.
  void insert(const Perm& g) {
    if (static_cast<int>(g.size()) != degree_) throw std::invalid_argument("PermGroup::insert: degree mismatch");
    auto [h, level] = sift(g, 0);
    if (is_identity(h)) return;
    add_strong(std::move(h), level);
    complete(level);
  }

  bool contains(const Perm& g) const { return is_identity(sift(g, 0).first); }

  BigInt order() const {
    BigInt o = 1;
    for (const auto& L : levels_) o *= L.orbit.size();
    return o;
  }

  const std::vector<Perm>& strong_generators() const noexcept { return strong_; }

  /// Calls f(const Perm&) once for every group element.
  template <class F>
  void for_each(F&& f) const {
    std::vector<int> nontrivial;
    for (int k = 0; k < degree_; ++k)
      if (levels_[k].orbit.size() > 1) nontrivial.push_back(k);
    auto rec = [&](auto&& self, std::size_t depth, const Perm& prefix) -> void {
      if (depth == nontrivial.size()) {
        f(prefix);
        return;
      }
      const Level& L = levels_[static_cast<std::size_t>(nontrivial[depth])];
      for (const auto& rep : L.reps) self(self, depth + 1, compose(prefix, rep));
    };
    rec(rec, 0, identity_perm(degree_));
  }

  std::vector<Perm> elements() const {
    std::vector<Perm> out;
    for_each([&](const Perm& p) { out.push_back(p); });
    return out;
  }

 private:
  struct Level {
    std::vector<int> gens;       // indices into strong_ fixing 0..k-1
    std::vector<int> orbit;
    std::vector<int> rep_index;  // point -> index into reps, or -1
    std::vector<Perm> reps;      // reps[t] maps k to orbit[t]
    std::vector<Perm> rep_inv;
  };

  static int first_moved(const Perm& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] != static_cast<int>(i)) return static_cast<int>(i);
    return static_cast<int>(p.size());
  }

  // Residue of g after stripping through levels start.., and the level
  // where it dropped out (degree_ if it went all the way through).
  std::pair<Perm, int> sift(Perm h, int start) const {
    for (int k = start; k < degree_; ++k) {
      const Level& L = levels_[static_cast<std::size_t>(k)];
      int t = L.rep_index[static_cast<std::size_t>(h[k])];
      if (t < 0) return {std::move(h), k};
      if (t > 0) h = compose(L.rep_inv[static_cast<std::size_t>(t)], h);
    }
    return {std::move(h), degree_};
  }

  void rebuild_level(int k) {
    Level& L = levels_[static_cast<std::size_t>(k)];
    L.orbit.assign(1, k);
    L.rep_index.assign(static_cast<std::size_t>(degree_), -1);
    L.rep_index[static_cast<std::size_t>(k)] = 0;
    L.reps.assign(1, identity_perm(degree_));
    L.rep_inv.assign(1, identity_perm(degree_));
    for (std::size_t q = 0; q < L.orbit.size(); ++q) {
      int p = L.orbit[q];
      for (int gi : L.gens) {
        const Perm& s = strong_[static_cast<std::size_t>(gi)];
        int x = s[static_cast<std::size_t>(p)];
        if (L.rep_index[static_cast<std::size_t>(x)] >= 0) continue;
        L.rep_index[static_cast<std::size_t>(x)] = static_cast<int>(L.orbit.size());
        L.orbit.push_back(x);
        L.reps.push_back(compose(s, L.reps[q]));
        L.rep_inv.push_back(inverse(L.reps.back()));
      }
    }
  }

  // h fixes 0..level-1, so it joins the generating sets of levels 0..level.
  void add_strong(Perm h, int level) {
    int id = static_cast<int>(strong_.size());
    strong_.push_back(std::move(h));
    for (int k = 0; k <= level && k < degree_; ++k) {
      levels_[static_cast<std::size_t>(k)].gens.push_back(id);
      rebuild_level(k);
    }
  }

  // Every Schreier generator of every level <= top must sift to identity.
  void complete(int top) {
    int i = top;
    while (i >= 0) {
      bool added = false;
      const Level& L = levels_[static_cast<std::size_t>(i)];
      for (std::size_t q = 0; q < L.orbit.size() && !added; ++q) {
        for (std::size_t g = 0; g < L.gens.size() && !added; ++g) {
          const Perm& s = strong_[static_cast<std::size_t>(L.gens[g])];
          int x = s[static_cast<std::size_t>(L.orbit[q])];
          int t = L.rep_index[static_cast<std::size_t>(x)];
          Perm sch = compose(L.rep_inv[static_cast<std::size_t>(t)], compose(s, L.reps[q]));
          auto [h, drop] = sift(std::move(sch), i + 1);
          if (!is_identity(h)) {
            add_strong(std::move(h), drop);
            i = drop;
            added = true;
          }
        }
      }
      if (!added) --i;
    }
  }

  int degree_;
  std::vector<Level> levels_;
  std::vector<Perm> strong_;
};

}  // namespace asymlab
