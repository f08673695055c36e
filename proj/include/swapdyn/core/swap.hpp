#pragma once

#include <string>

#include "swapdyn/core/error.hpp"
#include "swapdyn/core/instance.hpp"
#include "swapdyn/core/matching.hpp"

namespace swapdyn {

namespace detail {

inline std::string edge_name(Edge e) {
  return "(" + std::to_string(e.first + 1) + "," + std::to_string(e.second + 1) +
         ")";
}

}  // namespace detail

/// Both owners of the edge's endpoints strictly prefer the other object.
/// Throws PreconditionError when the edge is not in the network.
inline bool swap_applicable(const Instance& instance, const Matching& current,
                            Edge edge) {
  if (!instance.network().has_edge(edge.first, edge.second)) {
    throw PreconditionError("edge " + detail::edge_name(edge) +
                            " is not in the network");
  }
  const Agent a = current.agent_of(edge.first);
  const Agent b = current.agent_of(edge.second);
  return instance.prefers(a, edge.second, edge.first) &&
         instance.prefers(b, edge.first, edge.second);
}

inline Matching apply_swap(const Instance& instance, const Matching& current,
                           Edge edge) {
  if (!swap_applicable(instance, current, edge)) {
    throw PreconditionError("swap across " + detail::edge_name(edge) +
                            " is not applicable");
  }
  Matching next = current;
  next.exchange(edge.first, edge.second);
  return next;
}

/// Replays `witness` from `start`; returns the final matching. Throws
/// SwapError carrying the index of the first step that is not applicable.
inline Matching validate_sequence(const Instance& instance, const Matching& start,
                                  const SwapSequence& witness) {
  if (!start.is_perfect()) {
    throw PreconditionError("validate_sequence needs a perfect start matching");
  }
  Matching current = start;
  for (std::size_t i = 0; i < witness.size(); ++i) {
    const Edge e = witness[i];
    if (!instance.network().has_edge(e.first, e.second)) {
      throw SwapError(i, "step " + std::to_string(i) + ": edge " +
                             detail::edge_name(e) + " is not in the network");
    }
    if (!swap_applicable(instance, current, e)) {
      throw SwapError(i, "step " + std::to_string(i) + ": swap across " +
                             detail::edge_name(e) + " is not applicable");
    }
    current.exchange(e.first, e.second);
  }
  return current;
}

/// Every agent weakly prefers m1 to m2 and at least one strictly.
inline bool pareto_dominates(const Instance& instance, const Matching& m1,
                             const Matching& m2) {
  bool strict = false;
  for (Agent a = 0; a < instance.n(); ++a) {
    const int r1 = instance.rank(a, m1.object_of(a));
    const int r2 = instance.rank(a, m2.object_of(a));
    if (r1 > r2) return false;
    if (r1 < r2) strict = true;
  }
  return strict;
}

}  // namespace swapdyn
