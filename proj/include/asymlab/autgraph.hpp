#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "asymlab/common.hpp"
#include "asymlab/perm.hpp"
#include "asymlab/structures.hpp"

namespace asymlab {

/// Graph plus a vertex coloring with colors 0..c-1 (every color used).
class ColoredGraph {
 public:
  ColoredGraph() = default;
  ColoredGraph(Graph g, std::vector<int> color) : graph_(std::move(g)), color_(std::move(color)) {
    if (static_cast<int>(color_.size()) != graph_.vertices())
      throw Error(Errc::out_of_range, "coloring size does not match vertex count");
    int c = 0;
    for (int x : color_) {
      if (x < 0) throw Error(Errc::out_of_range, "negative color");
      c = std::max(c, x + 1);
    }
    std::vector<char> used(static_cast<std::size_t>(c), 0);
    for (int x : color_) used[x] = 1;
    if (std::find(used.begin(), used.end(), 0) != used.end())
      throw Error(Errc::out_of_range, "colors must form an initial segment 0..c-1");
  }
  explicit ColoredGraph(Graph g) : ColoredGraph(g, std::vector<int>(static_cast<std::size_t>(g.vertices()), 0)) {}

  const Graph& graph() const noexcept { return graph_; }
  const std::vector<int>& colors() const noexcept { return color_; }
  int vertices() const noexcept { return graph_.vertices(); }

 private:
  Graph graph_;
  std::vector<int> color_;
};

struct AutSearchOptions {
  std::uint64_t node_budget = 20'000'000;
};

/// Full automorphism group of a colored graph.
struct GraphAutResult {
  BigInt order;
  std::vector<Perm> generators;
  std::uint64_t nodes = 0;
};

namespace detail {

// Ordered partition of the vertex set. Cells are identified by their start
// position in `lab`.
struct Partition {
  std::vector<int> lab;
  std::vector<int> pos;
  std::vector<int> cell;       // vertex -> start of its cell
  std::vector<int> cell_size;  // start -> size (valid at starts only)
  int cells = 0;

  bool discrete() const { return cells == static_cast<int>(lab.size()); }
};

inline std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return h ^ x;
}

class Refiner {
 public:
  explicit Refiner(const Graph& g)
      : g_(g), count_(static_cast<std::size_t>(g.vertices()), 0), in_queue_(static_cast<std::size_t>(g.vertices()), 0),
        cell_mark_(static_cast<std::size_t>(g.vertices()), 0) {}

  // Refines p to the coarsest equitable refinement, splitting with the
  // cells in `queue` first. Returns an isomorphism-invariant trace hash.
  std::uint64_t refine(Partition& p, std::vector<int> queue) {
    std::uint64_t trace = 0x1234567ULL;
    for (int c : queue) in_queue_[c] = 1;
    std::size_t head = 0;
    const int nv = g_.vertices();
    while (head < queue.size() && p.cells < nv) {
      const int w = queue[head++];
      in_queue_[w] = 0;
      const int wsize = p.cell_size[w];
      touched_.clear();
      touched_cells_.clear();
      for (int i = w; i < w + wsize; ++i) {
        for (int x : g_.neighbors(p.lab[i])) {
          if (count_[x]++ == 0) {
            touched_.push_back(x);
            int c = p.cell[x];
            if (!cell_mark_[c]) {
              cell_mark_[c] = 1;
              touched_cells_.push_back(c);
            }
          }
        }
      }
      std::sort(touched_cells_.begin(), touched_cells_.end());
      trace = mix(trace, static_cast<std::uint64_t>(w));
      for (int c : touched_cells_) {
        cell_mark_[c] = 0;
        const int size = p.cell_size[c];
        if (size == 1) {
          trace = mix(trace, (static_cast<std::uint64_t>(c) << 20) ^ count_[p.lab[c]]);
          continue;
        }
        auto first = p.lab.begin() + c;
        auto last = first + size;
        std::sort(first, last, [&](int a, int b) { return count_[a] < count_[b]; });
        if (count_[*first] == count_[*(last - 1)]) {
          trace = mix(trace, (static_cast<std::uint64_t>(c) << 20) ^ count_[*first]);
          for (int i = c; i < c + size; ++i) p.pos[p.lab[i]] = i;
          continue;
        }
        // split into fragments of equal count
        frag_.clear();
        int start = c;
        for (int i = c; i < c + size; ++i) {
          p.pos[p.lab[i]] = i;
          if (i > c && count_[p.lab[i]] != count_[p.lab[i - 1]]) {
            frag_.push_back(start);
            start = i;
          }
        }
        frag_.push_back(start);
        int largest = frag_[0];
        int largest_size = 0;
        for (std::size_t f = 0; f < frag_.size(); ++f) {
          int fs = frag_[f];
          int fe = f + 1 < frag_.size() ? frag_[f + 1] : c + size;
          p.cell_size[fs] = fe - fs;
          for (int i = fs; i < fe; ++i) p.cell[p.lab[i]] = fs;
          trace = mix(trace, (static_cast<std::uint64_t>(fs) << 32) ^ (static_cast<std::uint64_t>(fe - fs) << 16) ^
                                 static_cast<std::uint64_t>(count_[p.lab[fs]]));
          if (fe - fs > largest_size) {
            largest_size = fe - fs;
            largest = fs;
          }
        }
        p.cells += static_cast<int>(frag_.size()) - 1;
        const bool was_queued = in_queue_[c] != 0;
        for (int fs : frag_) {
          if (was_queued ? fs == c : fs == largest) continue;
          if (!in_queue_[fs]) {
            in_queue_[fs] = 1;
            queue.push_back(fs);
          }
        }
      }
      for (int x : touched_) count_[x] = 0;
    }
    for (std::size_t i = head; i < queue.size(); ++i) in_queue_[queue[i]] = 0;
    trace = mix(trace, static_cast<std::uint64_t>(p.cells));
    return trace;
  }

 private:
  const Graph& g_;
  std::vector<int> count_;
  std::vector<char> in_queue_;
  std::vector<char> cell_mark_;
  std::vector<int> touched_;
  std::vector<int> touched_cells_;
  std::vector<int> frag_;
};

// Individualization-refinement search for the automorphism group: the
// leftmost path is followed to a discrete leaf; then, deepest level first,
// the orbit of the path vertex inside its target cell is computed under the
// stabilizer of the earlier path vertices. |Aut| is the product of those
// orbit sizes.
class AutSearch {
 public:
  AutSearch(const ColoredGraph& cg, const AutSearchOptions& opt)
      : cg_(cg), g_(cg.graph()), nv_(cg.vertices()), refiner_(g_), opt_(opt) {}

  GraphAutResult run() {
    GraphAutResult res;
    res.order = 1;
    if (nv_ == 0) return res;

    Partition root = initial_partition();
    std::vector<int> q;
    for (int i = 0; i < nv_; i = i + root.cell_size[i]) q.push_back(i);
    std::uint64_t t = refiner_.refine(root, q);
    path_.push_back({root, t, -1, -1});
    while (!path_.back().part.discrete()) {
      Node& cur = path_.back();
      cur.target = target_cell(cur.part);
      cur.choice = min_in_cell(cur.part, cur.target);
      Partition child = cur.part;
      std::uint64_t ct = individualize(child, cur.choice);
      path_.push_back({std::move(child), ct, -1, -1});
    }
    leaf_ = path_.back().part.lab;

    std::vector<int> uf(static_cast<std::size_t>(nv_));
    for (int i = 0; i < nv_; ++i) uf[i] = i;
    auto find = [&](int x) {
      while (uf[x] != x) x = uf[x] = uf[uf[x]];
      return x;
    };
    for (int d = static_cast<int>(path_.size()) - 2; d >= 0; --d) {
      const Node& node = path_[static_cast<std::size_t>(d)];
      std::vector<int> members(node.part.lab.begin() + node.target,
                               node.part.lab.begin() + node.target + node.part.cell_size[node.target]);
      std::sort(members.begin(), members.end());
      const int v = node.choice;
      for (int w : members) {
        if (w == v || find(w) == find(v)) continue;
        if (auto gamma = search(node.part, w, d)) {
          for (int x = 0; x < nv_; ++x) {
            int a = find(x), b = find((*gamma)[x]);
            if (a != b) uf[std::max(a, b)] = std::min(a, b);
          }
          res.generators.push_back(std::move(*gamma));
        }
      }
      int orbit = 0;
      for (int w : members) orbit += find(w) == find(v);
      res.order *= orbit;
    }
    res.nodes = nodes_;
    return res;
  }

 private:
  struct Node {
    Partition part;
    std::uint64_t trace;
    int target;
    int choice;
  };

  Partition initial_partition() const {
    Partition p;
    p.lab.resize(static_cast<std::size_t>(nv_));
    for (int i = 0; i < nv_; ++i) p.lab[i] = i;
    const auto& col = cg_.colors();
    std::stable_sort(p.lab.begin(), p.lab.end(), [&](int a, int b) { return col[a] < col[b]; });
    p.pos.resize(static_cast<std::size_t>(nv_));
    p.cell.resize(static_cast<std::size_t>(nv_));
    p.cell_size.assign(static_cast<std::size_t>(nv_), 0);
    int start = 0;
    for (int i = 0; i < nv_; ++i) {
      p.pos[p.lab[i]] = i;
      if (i > 0 && col[p.lab[i]] != col[p.lab[i - 1]]) {
        p.cell_size[start] = i - start;
        start = i;
        ++p.cells;
      }
      p.cell[p.lab[i]] = start;
    }
    p.cell_size[start] = nv_ - start;
    ++p.cells;
    return p;
  }

  // first smallest non-singleton cell
  static int target_cell(const Partition& p) {
    int best = -1, best_size = 0;
    for (int i = 0; i < static_cast<int>(p.lab.size()); i += p.cell_size[i]) {
      int s = p.cell_size[i];
      if (s > 1 && (best < 0 || s < best_size)) {
        best = i;
        best_size = s;
      }
    }
    return best;
  }

  static int min_in_cell(const Partition& p, int c) {
    return *std::min_element(p.lab.begin() + c, p.lab.begin() + c + p.cell_size[c]);
  }

  std::uint64_t individualize(Partition& p, int v) {
    if (++nodes_ > opt_.node_budget)
      throw Error(Errc::resource_limit, "automorphism search exceeded " + std::to_string(opt_.node_budget) + " nodes");
    const int c = p.cell[v];
    const int size = p.cell_size[c];
    const int at = p.pos[v];
    std::swap(p.lab[at], p.lab[c]);
    p.pos[p.lab[at]] = at;
    p.pos[v] = c;
    p.cell_size[c] = 1;
    p.cell_size[c + 1] = size - 1;
    for (int i = c + 1; i < c + size; ++i) p.cell[p.lab[i]] = c + 1;
    ++p.cells;
    return refiner_.refine(p, {c});
  }

  // Looks below the child (node at depth d, individualize w) for a leaf
  // equivalent to the first leaf.
  std::optional<Perm> search(const Partition& parent, int w, int d) {
    Partition p = parent;
    std::uint64_t t = individualize(p, w);
    const Node& ref = path_[static_cast<std::size_t>(d + 1)];
    if (t != ref.trace || p.cells != ref.part.cells) return std::nullopt;
    if (p.discrete()) {
      Perm gamma(static_cast<std::size_t>(nv_));
      for (int i = 0; i < nv_; ++i) gamma[leaf_[i]] = p.lab[i];
      if (is_automorphism(gamma)) return gamma;
      return std::nullopt;
    }
    int tc = target_cell(p);
    if (tc != ref.target || p.cell_size[tc] != ref.part.cell_size[ref.target]) return std::nullopt;
    std::vector<int> members(p.lab.begin() + tc, p.lab.begin() + tc + p.cell_size[tc]);
    std::sort(members.begin(), members.end());
    for (int x : members)
      if (auto r = search(p, x, d + 1)) return r;
    return std::nullopt;
  }

  bool is_automorphism(const Perm& gamma) const {
    for (int u = 0; u < nv_; ++u)
      for (int x : g_.neighbors(u))
        if (x > u && !g_.adjacent(gamma[u], gamma[x])) return false;
    return true;
  }

  const ColoredGraph& cg_;
  const Graph& g_;
  int nv_;
  Refiner refiner_;
  AutSearchOptions opt_;
  std::vector<Node> path_;
  std::vector<int> leaf_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Color-preserving automorphism group of `cg`. The order reported is the
/// order of the stabilizer chain built from the search's generators; the
/// search's own orbit product must agree with it.
inline GraphAutResult colored_graph_aut_raw(const ColoredGraph& cg, const AutSearchOptions& opt = {}) {
  return detail::AutSearch(cg, opt).run();
}

inline PermGroup group_of(const ColoredGraph& cg, const GraphAutResult& r) {
  return PermGroup(cg.vertices(), r.generators);
}

}  // namespace asymlab
