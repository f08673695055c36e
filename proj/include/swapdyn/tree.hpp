#pragma once

// Reachable matching on trees. Every agent has a unique route to its target,
// so the partner of each of its swaps is forced: an edge is "good" when its
// two occupants both need to cross it next, and a run is just a sequence of
// good-edge swaps. If a good edge's swap is not an improvement for both, it
// never will be (preferences are fixed and the pairing is forced), so the
// target is unreachable.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "swapdyn/core/error.hpp"
#include "swapdyn/core/instance.hpp"
#include "swapdyn/core/matching.hpp"

namespace swapdyn::tree {

/// Tree rooted at object 0 with parent pointers and depths.
class RootedTree {
 public:
  explicit RootedTree(const Graph& g) : parent_(g.n(), kNone), depth_(g.n(), 0) {
    if (!g.is_tree()) throw ClassError("network is not a tree");
    if (g.n() == 0) return;
    std::vector<Object> stack{0};
    std::vector<char> seen(g.n(), 0);
    seen[0] = 1;
    while (!stack.empty()) {
      const Object u = stack.back();
      stack.pop_back();
      for (Object v : g.neighbors(u)) {
        if (!seen[v]) {
          seen[v] = 1;
          parent_[v] = u;
          depth_[v] = depth_[u] + 1;
          stack.push_back(v);
        }
      }
    }
  }

  Object parent(Object v) const { return parent_[v]; }
  int depth(Object v) const { return depth_[v]; }

  /// Objects on the route from u to v, both ends included.
  std::vector<Object> route(Object u, Object v) const {
    std::vector<Object> up, down;
    while (depth_[u] > depth_[v]) {
      up.push_back(u);
      u = parent_[u];
    }
    while (depth_[v] > depth_[u]) {
      down.push_back(v);
      v = parent_[v];
    }
    while (u != v) {
      up.push_back(u);
      down.push_back(v);
      u = parent_[u];
      v = parent_[v];
    }
    up.push_back(u);
    up.insert(up.end(), down.rbegin(), down.rend());
    return up;
  }

  int distance(Object u, Object v) const {
    return static_cast<int>(route(u, v).size()) - 1;
  }

  /// Identifier of the edge {u, parent(u)} or {parent(v), v}: the child end.
  Object edge_id(Object u, Object v) const { return parent_[u] == v ? u : v; }

 private:
  std::vector<Object> parent_;
  std::vector<int> depth_;
};

enum class PopOrder { Stack, Random };

struct MatchingAnswer {
  bool reachable = false;
  SwapSequence witness;  // on YES, replays from the initial matching to the target
};

inline MatchingAnswer reachable_matching(const Instance& instance, const Matching& target,
                                         PopOrder order = PopOrder::Stack,
                                         std::uint64_t seed = 0) {
  const int n = instance.n();
  if (target.n() != n || !target.is_perfect()) {
    throw PreconditionError("target must be a perfect matching of the instance");
  }
  const RootedTree tree(instance.network());
  Matching current = instance.initial();

  std::vector<std::vector<Object>> route(n);
  std::vector<int> step(n, 0);  // index of the agent's position on its route
  for (Agent a = 0; a < n; ++a) route[a] = tree.route(current.object_of(a), target.object_of(a));

  auto next_hop = [&](Agent a) -> Object {
    const auto s = static_cast<std::size_t>(step[a]) + 1;
    return s < route[a].size() ? route[a][s] : kNone;
  };
  auto good = [&](Object u, Object v) {
    return next_hop(current.agent_of(u)) == v && next_hop(current.agent_of(v)) == u;
  };

  std::vector<Edge> pending;
  std::vector<char> queued(n, 0);
  auto consider = [&](Agent a) {
    const Object u = current.object_of(a);
    const Object v = next_hop(a);
    if (v == kNone) return;
    const Object id = tree.edge_id(u, v);
    if (!queued[id] && good(u, v)) {
      queued[id] = 1;
      pending.push_back(normalized({u, v}));
    }
  };
  for (Agent a = 0; a < n; ++a) consider(a);

  std::mt19937_64 rng(seed);
  MatchingAnswer answer;
  while (!pending.empty()) {
    std::size_t pick = pending.size() - 1;
    if (order == PopOrder::Random) {
      pick = std::uniform_int_distribution<std::size_t>(0, pending.size() - 1)(rng);
    }
    const Edge e = pending[pick];
    pending[pick] = pending.back();
    pending.pop_back();
    queued[tree.edge_id(e.first, e.second)] = 0;

    const Agent a = current.agent_of(e.first);
    const Agent b = current.agent_of(e.second);
    if (!instance.prefers(a, e.second, e.first) || !instance.prefers(b, e.first, e.second)) {
      return {};
    }
    current.exchange(e.first, e.second);
    ++step[a];
    ++step[b];
    answer.witness.push_back(e);
    consider(a);
    consider(b);
  }
  answer.reachable = current == target;
  if (!answer.reachable) answer.witness.clear();
  return answer;
}

}  // namespace swapdyn::tree
