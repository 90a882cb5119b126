#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "rigidity/graph.hpp"

namespace rigidity {

namespace {

// Individualization-refinement search: colour refinement to an equitable
// ordered partition, branch on the first non-singleton cell, keep the least
// adjacency string over all discrete leaves. Twin vertices (same neighbourhood
// up to each other) yield identical subtrees, so only one twin is expanded.
class CanonicalSearch {
 public:
  explicit CanonicalSearch(const Graph& g) : g_(g), n_(g.vertex_count()) {}

  void run() {
    std::vector<int> colours(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) colours[static_cast<std::size_t>(v)] = g_.degree(v);
    rerank(colours);
    search(std::move(colours));
  }

  const std::string& best_key() const { return best_key_; }
  const std::vector<int>& best_labels() const { return best_labels_; }

 private:
  static int rerank(std::vector<int>& colours) {
    std::vector<int> sorted = colours;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int& c : colours) {
      c = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), c) - sorted.begin());
    }
    return static_cast<int>(sorted.size());
  }

  int refine(std::vector<int>& colours) const {
    int cells = rerank(colours);
    while (true) {
      // Signature: own colour, then neighbour counts per colour.
      std::vector<std::vector<int>> sig(static_cast<std::size_t>(n_));
      for (int v = 0; v < n_; ++v) {
        auto& s = sig[static_cast<std::size_t>(v)];
        s.assign(static_cast<std::size_t>(cells) + 1, 0);
        s[0] = colours[static_cast<std::size_t>(v)];
        std::uint64_t nb = g_.neighbours(v);
        while (nb) {
          const int w = std::countr_zero(nb);
          nb &= nb - 1;
          ++s[static_cast<std::size_t>(colours[static_cast<std::size_t>(w)]) + 1];
        }
      }
      std::vector<int> order(static_cast<std::size_t>(n_));
      for (int v = 0; v < n_; ++v) order[static_cast<std::size_t>(v)] = v;
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        return sig[static_cast<std::size_t>(a)] < sig[static_cast<std::size_t>(b)];
      });
      std::vector<int> next(static_cast<std::size_t>(n_));
      int rank = 0;
      for (std::size_t i = 0; i < order.size(); ++i) {
        if (i > 0 && sig[static_cast<std::size_t>(order[i])] != sig[static_cast<std::size_t>(order[i - 1])]) {
          ++rank;
        }
        next[static_cast<std::size_t>(order[i])] = rank;
      }
      const int next_cells = rank + 1;
      colours = std::move(next);
      if (next_cells == cells) return cells;
      cells = next_cells;
    }
  }

  std::string leaf_key(const std::vector<int>& labels) const {
    std::vector<int> vertex_at(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) vertex_at[static_cast<std::size_t>(labels[static_cast<std::size_t>(v)])] = v;
    std::string key(1, static_cast<char>(n_));
    unsigned char acc = 0;
    int filled = 0;
    for (int i = 0; i < n_; ++i) {
      const std::uint64_t row = g_.neighbours(vertex_at[static_cast<std::size_t>(i)]);
      for (int j = i + 1; j < n_; ++j) {
        acc = static_cast<unsigned char>((acc << 1) | ((row >> vertex_at[static_cast<std::size_t>(j)]) & 1U));
        if (++filled == 8) {
          key.push_back(static_cast<char>(acc));
          acc = 0;
          filled = 0;
        }
      }
    }
    if (filled) key.push_back(static_cast<char>(acc << (8 - filled)));
    return key;
  }

  bool twins(int a, int b) const {
    return (g_.neighbours(a) & ~(std::uint64_t{1} << b)) == (g_.neighbours(b) & ~(std::uint64_t{1} << a));
  }

  void search(std::vector<int> colours) {
    const int cells = refine(colours);
    if (cells == n_) {
      std::string key = leaf_key(colours);
      if (best_labels_.empty() || key < best_key_) {
        best_key_ = std::move(key);
        best_labels_ = colours;
      }
      return;
    }
    // First non-singleton cell.
    std::vector<int> count(static_cast<std::size_t>(cells), 0);
    for (int c : colours) ++count[static_cast<std::size_t>(c)];
    int target = 0;
    while (count[static_cast<std::size_t>(target)] < 2) ++target;

    std::vector<int> expanded;
    for (int v = 0; v < n_; ++v) {
      if (colours[static_cast<std::size_t>(v)] != target) continue;
      if (std::any_of(expanded.begin(), expanded.end(), [&](int w) { return twins(v, w); })) continue;
      expanded.push_back(v);
      std::vector<int> child(static_cast<std::size_t>(n_));
      for (int w = 0; w < n_; ++w) {
        const int c = colours[static_cast<std::size_t>(w)];
        child[static_cast<std::size_t>(w)] = 2 * c + ((c == target && w != v) ? 1 : 0);
      }
      search(std::move(child));
    }
  }

  const Graph& g_;
  int n_;
  std::string best_key_;
  std::vector<int> best_labels_;
};

}  // namespace

std::string canonical_form(const Graph& g) {
  CanonicalSearch s(g);
  s.run();
  return s.best_key();
}

std::vector<int> canonical_labeling(const Graph& g) {
  CanonicalSearch s(g);
  s.run();
  return s.best_labels();
}

}  // namespace rigidity
