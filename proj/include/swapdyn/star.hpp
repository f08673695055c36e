#pragma once

// On a star every swap goes through the center, so the history of a run is
// the sequence of agents that pass through the center. A leaf's occupant
// changes at most once: the newcomer arrived from the center because it
// prefers the leaf, so it never trades back.

#include <algorithm>
#include <deque>
#include <optional>
#include <vector>

#include "swapdyn/core/error.hpp"
#include "swapdyn/core/instance.hpp"
#include "swapdyn/core/matching.hpp"

namespace swapdyn::star {

/// The object adjacent to all others. Ties (n <= 2) go to the smaller id.
inline Object find_center(const Instance& instance) {
  const Graph& g = instance.network();
  if (!g.is_tree()) throw ClassError("network is not a star");
  const int n = g.n();
  if (n == 1) return 0;
  for (Object v = 0; v < n; ++v) {
    if (g.degree(v) == n - 1) return v;
  }
  throw ClassError("network is not a star");
}

/// Agents as nodes; an arc a -> a2 means that a, once it holds the center,
/// could trade with a2 still sitting on its initial leaf.
class TradeDigraph {
 public:
  explicit TradeDigraph(const Instance& instance)
      : instance_(&instance), center_(find_center(instance)), out_(instance.n()) {
    const int n = instance.n();
    for (Agent a = 0; a < n; ++a) {
      for (Agent a2 = 0; a2 < n; ++a2) {
        if (a2 != a && trade(a, a2)) out_[a].push_back(a2);
      }
    }
  }

  Object center() const { return center_; }
  Agent center_agent() const { return instance_->initial().agent_of(center_); }
  const std::vector<Agent>& successors(Agent a) const { return out_[a]; }

  bool has_arc(Agent a, Agent a2) const {
    return std::binary_search(out_[a].begin(), out_[a].end(), a2);
  }

  /// Shortest arc path from the initial center agent to `target` that never
  /// visits `avoid`; empty when there is none.
  std::optional<std::vector<Agent>> route(Agent target, Agent avoid = kNone) const {
    const int n = instance_->n();
    const Agent source = center_agent();
    if (target == avoid || source == avoid) return std::nullopt;
    std::vector<Agent> from(n, kNone);
    std::vector<char> seen(n, 0);
    std::deque<Agent> queue{source};
    seen[source] = 1;
    while (!queue.empty()) {
      const Agent a = queue.front();
      queue.pop_front();
      if (a == target) break;
      for (Agent next : out_[a]) {
        if (!seen[next] && next != avoid) {
          seen[next] = 1;
          from[next] = a;
          queue.push_back(next);
        }
      }
    }
    if (!seen[target]) return std::nullopt;
    std::vector<Agent> path{target};
    while (path.back() != source) path.push_back(from[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
  }

 private:
  bool trade(Agent a, Agent a2) const {
    const Object leaf = instance_->initial().object_of(a2);
    if (leaf == center_) return false;
    return instance_->prefers(a, leaf, center_) && instance_->prefers(a2, center_, leaf);
  }

  const Instance* instance_;
  Object center_;
  std::vector<std::vector<Agent>> out_;
};

struct ObjectAnswer {
  bool reachable = false;
  SwapSequence witness;
};

namespace detail {

inline SwapSequence center_hops(const Instance& instance, Object center,
                                const std::vector<Agent>& route) {
  SwapSequence out;
  for (std::size_t i = 1; i < route.size(); ++i) {
    out.push_back(normalized({center, instance.initial().object_of(route[i])}));
  }
  return out;
}

}  // namespace detail

inline ObjectAnswer reachable_object(const Instance& instance, Agent agent, Object object) {
  const int n = instance.n();
  if (agent < 0 || agent >= n || object < 0 || object >= n) {
    throw PreconditionError("query agent or object out of range");
  }
  const TradeDigraph digraph(instance);
  const Object center = digraph.center();
  const Matching& start = instance.initial();
  const Object home = start.object_of(agent);
  if (home == object) return {true, {}};

  if (home == center) {
    // The center agent leaves the center once and never moves again.
    const Agent owner = start.agent_of(object);
    if (instance.prefers(agent, object, center) && instance.prefers(owner, center, object)) {
      return {true, {normalized({center, object})}};
    }
    return {false, {}};
  }
  if (object == center) {
    const auto route = digraph.route(agent);
    if (!route) return {false, {}};
    return {true, detail::center_hops(instance, center, *route)};
  }
  // Leaf to leaf: reach the center without disturbing the wanted leaf, then
  // trade with its original occupant.
  const Agent owner = start.agent_of(object);
  if (!digraph.has_arc(agent, owner)) return {false, {}};
  const auto route = digraph.route(agent, owner);
  if (!route) return {false, {}};
  SwapSequence witness = detail::center_hops(instance, center, *route);
  witness.push_back(normalized({center, object}));
  return {true, witness};
}

struct Outcome {
  Matching matching;
  SwapSequence witness;
};

/// Serial dictatorship along the center: leaf agents that would never enter
/// the center are set aside, then each center agent in turn takes its
/// favourite among the center and the leaves still open.
inline Outcome pareto(const Instance& instance) {
  const int n = instance.n();
  const Object center = find_center(instance);
  Matching current = instance.initial();
  std::vector<char> open(n, 0);
  for (Object leaf = 0; leaf < n; ++leaf) {
    if (leaf == center) continue;
    const Agent owner = current.agent_of(leaf);
    open[leaf] = instance.prefers(owner, center, leaf) ? 1 : 0;
  }
  SwapSequence witness;
  for (;;) {
    const Agent dictator = current.agent_of(center);
    Object choice = center;
    for (Object b : instance.preference(dictator)) {
      if (b == center || open[b]) {
        choice = b;
        break;
      }
    }
    if (choice == center) break;
    current.exchange(center, choice);
    witness.push_back(normalized({center, choice}));
    open[choice] = 0;
  }
  return {current, witness};
}

}  // namespace swapdyn::star
