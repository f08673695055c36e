#pragma once

// Seeded random instances. The bounded draw and the shuffle are written out
// so a seed produces the same instance under every standard library.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "swapdyn/core/classify.hpp"
#include "swapdyn/core/error.hpp"
#include "swapdyn/core/instance.hpp"
#include "swapdyn/core/matching.hpp"

namespace swapdyn {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw PreconditionError("Rng::below: empty range");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform in [lo, hi].
  int between(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

  std::vector<int> permutation(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    shuffle(v);
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

inline std::vector<std::vector<Object>> random_preferences(int n, Rng& rng) {
  std::vector<std::vector<Object>> prefs;
  prefs.reserve(n);
  for (int a = 0; a < n; ++a) prefs.push_back(rng.permutation(n));
  return prefs;
}

/// Random labelled tree from a Prüfer sequence.
inline Graph random_tree(int n, Rng& rng) {
  if (n <= 2) return Graph::path(n);
  std::vector<int> code(n - 2);
  for (int& c : code) c = static_cast<int>(rng.below(n));
  std::vector<int> degree(n, 1);
  for (int c : code) ++degree[c];
  std::vector<Edge> edges;
  for (int c : code) {
    int leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    edges.emplace_back(leaf, c);
    --degree[leaf];
    --degree[c];
  }
  int u = -1;
  for (int v = 0; v < n; ++v) {
    if (degree[v] == 1) {
      if (u < 0) {
        u = v;
      } else {
        edges.emplace_back(u, v);
      }
    }
  }
  return Graph(n, std::move(edges));
}

/// Random generalized star that is not a star (n >= 5): a random center
/// and a random split of the other objects into 3..n-2 branches.
inline Graph random_generalized_star(int n, Rng& rng) {
  if (n < 5) throw PreconditionError("a generalized star that is not a star needs 5 objects");
  const int arms = rng.between(3, n - 2);
  std::vector<int> objects = rng.permutation(n);
  const Object center = objects.back();
  objects.pop_back();
  // Cut points split the n-1 remaining objects into `arms` nonempty runs.
  std::vector<int> cuts(n - 2);
  for (int i = 0; i < n - 2; ++i) cuts[i] = i + 1;
  rng.shuffle(cuts);
  cuts.resize(arms - 1);
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(n - 1);
  std::vector<Edge> edges;
  int start = 0;
  for (int cut : cuts) {
    Object prev = center;
    for (int i = start; i < cut; ++i) {
      edges.emplace_back(prev, objects[i]);
      prev = objects[i];
    }
    start = cut;
  }
  return Graph(n, std::move(edges));
}

inline Graph random_graph(GraphKind kind, int n, Rng& rng) {
  switch (kind) {
    case GraphKind::Path: return Graph::path(n);
    case GraphKind::Star:
      if (n < 4) throw PreconditionError("a star needs at least 4 objects");
      return Graph::star(n);
    case GraphKind::GeneralizedStar: return random_generalized_star(n, rng);
    case GraphKind::Tree: {
      // Only trees with two or more branching vertices belong to no
      // narrower class; those exist from 6 objects on.
      if (n < 6) throw PreconditionError("a tree outside the narrower classes needs 6 objects");
      for (;;) {
        Graph g = random_tree(n, rng);
        if (classify_graph(g).kind == GraphKind::Tree) return g;
      }
    }
    case GraphKind::Clique:
      if (n < 3) throw PreconditionError("a clique needs at least 3 objects");
      return Graph::clique(n);
    case GraphKind::General: break;
  }
  throw PreconditionError("cannot generate instances of class general");
}

/// Uniformly random preferences over a random graph of the given class, with
/// the identity as the initial matching.
inline Instance random_instance(GraphKind kind, int n, Rng& rng) {
  if (n < 1) throw PreconditionError("n must be positive");
  Graph g = random_graph(kind, n, rng);
  return Instance(random_preferences(n, rng), std::move(g));
}

inline Instance random_instance(GraphKind kind, int n, std::uint64_t seed) {
  Rng rng(seed);
  return random_instance(kind, n, rng);
}

inline Matching random_perfect_matching(int n, Rng& rng) {
  const auto perm = rng.permutation(n);
  return Matching::from_objects(perm);
}

}  // namespace swapdyn
