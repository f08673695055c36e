#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "swapdyn/core/error.hpp"

namespace swapdyn {

// Agents and objects are dense 0-based indices internally. External
// documents are 1-based; the conversion happens in io.hpp only.
using Agent = int;
using Object = int;

inline constexpr int kNone = -1;

/// An undirected network edge between two objects.
using Edge = std::pair<Object, Object>;

inline Edge normalized(Edge e) {
  if (e.second < e.first) std::swap(e.first, e.second);
  return e;
}

/// Ordered list of swaps; replaying it from a start matching is the
/// certificate of reachability.
using SwapSequence = std::vector<Edge>;

/// A (partial) matching between n agents and n objects with O(1) lookup in
/// both directions.
class Matching {
 public:
  Matching() = default;

  /// Empty matching over n agents and n objects.
  explicit Matching(int n) : object_of_(n, kNone), agent_of_(n, kNone) {}

  static Matching identity(int n) {
    Matching m(n);
    for (int i = 0; i < n; ++i) m.assign(i, i);
    return m;
  }

  /// Perfect matching from the agent-indexed object vector. Throws if the
  /// vector is not a permutation of 0..n-1.
  static Matching from_objects(std::span<const Object> object_of_agent) {
    const int n = static_cast<int>(object_of_agent.size());
    Matching m(n);
    for (int a = 0; a < n; ++a) {
      const Object b = object_of_agent[a];
      if (b < 0 || b >= n) {
        throw InstanceError("matching: object " + std::to_string(b + 1) +
                            " of agent " + std::to_string(a + 1) +
                            " is out of range");
      }
      if (m.agent_of_[b] != kNone) {
        throw InstanceError("matching: object " + std::to_string(b + 1) +
                            " is assigned to agents " +
                            std::to_string(m.agent_of_[b] + 1) + " and " +
                            std::to_string(a + 1) + "; not a bijection");
      }
      m.assign(a, b);
    }
    return m;
  }

  int n() const { return static_cast<int>(object_of_.size()); }
  int size() const { return size_; }
  bool is_perfect() const { return size_ == n(); }
  bool empty() const { return size_ == 0; }

  Object object_of(Agent a) const { return object_of_[a]; }
  Agent agent_of(Object b) const { return agent_of_[b]; }
  bool has_agent(Agent a) const { return object_of_[a] != kNone; }
  bool has_object(Object b) const { return agent_of_[b] != kNone; }

  void assign(Agent a, Object b) {
    if (object_of_[a] != kNone || agent_of_[b] != kNone) {
      throw PreconditionError("matching: agent " + std::to_string(a + 1) +
                              " or object " + std::to_string(b + 1) +
                              " is already matched");
    }
    object_of_[a] = b;
    agent_of_[b] = a;
    ++size_;
  }

  void unassign(Agent a) {
    const Object b = object_of_[a];
    if (b == kNone) return;
    object_of_[a] = kNone;
    agent_of_[b] = kNone;
    --size_;
  }

  /// Exchanges the objects held by the owners of b1 and b2.
  void exchange(Object b1, Object b2) {
    const Agent a1 = agent_of_[b1];
    const Agent a2 = agent_of_[b2];
    object_of_[a1] = b2;
    object_of_[a2] = b1;
    agent_of_[b1] = a2;
    agent_of_[b2] = a1;
  }

  /// True iff every pair of `sub` is also a pair of this matching.
  bool contains(const Matching& sub) const {
    if (sub.n() != n()) return false;
    for (Agent a = 0; a < n(); ++a) {
      if (sub.object_of_[a] != kNone && sub.object_of_[a] != object_of_[a]) {
        return false;
      }
    }
    return true;
  }

  /// Agent-indexed objects; kNone marks an unmatched agent.
  const std::vector<Object>& objects() const { return object_of_; }

  friend bool operator==(const Matching& x, const Matching& y) {
    return x.object_of_ == y.object_of_;
  }

 private:
  std::vector<Object> object_of_;
  std::vector<Agent> agent_of_;
  int size_ = 0;
};

}  // namespace swapdyn
