#pragma once

// Exhaustive ground truth. Breadth-first search over perfect matchings,
// expanding applicable swaps in sorted edge order, so the state order and
// every stored witness are deterministic and witnesses are shortest.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "swapdyn/core/error.hpp"
#include "swapdyn/core/instance.hpp"
#include "swapdyn/core/matching.hpp"
#include "swapdyn/core/swap.hpp"

namespace swapdyn {

class ReachSet;

namespace detail {
template <class Goal>
ReachSet search(const Instance& instance, std::size_t limit, Goal&& goal,
                std::optional<std::size_t>* hit);
}  // namespace detail

inline constexpr std::size_t kDefaultLimit = 2'000'000;

/// Reachable matchings in discovery order. State 0 is the start matching;
/// every other state records the parent state and the edge that led to it.
class ReachSet {
 public:
  ReachSet() = default;
  explicit ReachSet(int n) : n_(n) {}

  int n() const { return n_; }
  std::size_t size() const { return parent_.size(); }
  bool truncated() const { return truncated_; }

  Matching matching(std::size_t state) const {
    std::vector<Object> objs(key(state), key(state) + n_);
    return Matching::from_objects(objs);
  }

  std::size_t parent(std::size_t state) const { return parent_[state]; }
  Edge via(std::size_t state) const { return via_[state]; }

  /// Swap sequence from the start matching to `state`.
  SwapSequence witness(std::size_t state) const {
    SwapSequence out;
    while (state != 0) {
      out.push_back(via_[state]);
      state = parent_[state];
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  std::optional<std::size_t> find(const Matching& m) const {
    if (m.n() != n_ || !m.is_perfect() || table_.empty()) return std::nullopt;
    std::vector<std::uint8_t> probe(m.objects().begin(), m.objects().end());
    const std::size_t mask = table_.size() - 1;
    for (std::size_t slot = hash(probe.data()) & mask;; slot = (slot + 1) & mask) {
      const std::uint32_t entry = table_[slot];
      if (entry == kEmpty) return std::nullopt;
      if (std::equal(probe.begin(), probe.end(), key(entry))) return entry;
    }
  }

  bool contains(const Matching& m) const { return find(m).has_value(); }

  std::vector<Matching> matchings() const {
    std::vector<Matching> out;
    out.reserve(size());
    for (std::size_t s = 0; s < size(); ++s) out.push_back(matching(s));
    return out;
  }

 private:
  template <class Goal>
  friend ReachSet detail::search(const Instance&, std::size_t, Goal&&,
                                 std::optional<std::size_t>*);

  static constexpr std::uint32_t kEmpty = 0xffffffffu;

  const std::uint8_t* key(std::size_t state) const {
    return arena_.data() + state * static_cast<std::size_t>(n_);
  }

  std::size_t hash(const std::uint8_t* k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (int i = 0; i < n_; ++i) {
      h ^= k[i];
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }

  /// Inserts the key if absent. Returns {state, inserted}.
  std::pair<std::size_t, bool> insert(const std::uint8_t* k, std::size_t parent,
                                      Edge via) {
    if ((size() + 1) * 2 > table_.size()) grow();
    const std::size_t mask = table_.size() - 1;
    std::size_t slot = hash(k) & mask;
    for (;; slot = (slot + 1) & mask) {
      const std::uint32_t entry = table_[slot];
      if (entry == kEmpty) break;
      if (std::equal(k, k + n_, key(entry))) return {entry, false};
    }
    const auto id = static_cast<std::uint32_t>(size());
    table_[slot] = id;
    arena_.insert(arena_.end(), k, k + n_);
    parent_.push_back(parent);
    via_.push_back(via);
    return {id, true};
  }

  bool known(const std::uint8_t* k) const {
    if (table_.empty()) return false;
    const std::size_t mask = table_.size() - 1;
    for (std::size_t slot = hash(k) & mask;; slot = (slot + 1) & mask) {
      const std::uint32_t entry = table_[slot];
      if (entry == kEmpty) return false;
      if (std::equal(k, k + n_, key(entry))) return true;
    }
  }

  void grow() {
    std::vector<std::uint32_t> next(std::max<std::size_t>(16, table_.size() * 2), kEmpty);
    const std::size_t mask = next.size() - 1;
    for (std::size_t s = 0; s < size(); ++s) {
      std::size_t slot = hash(key(s)) & mask;
      while (next[slot] != kEmpty) slot = (slot + 1) & mask;
      next[slot] = static_cast<std::uint32_t>(s);
    }
    table_.swap(next);
  }

  int n_ = 0;
  bool truncated_ = false;
  std::vector<std::uint8_t> arena_;
  std::vector<std::size_t> parent_;
  std::vector<Edge> via_;
  std::vector<std::uint32_t> table_;
};

namespace detail {

/// Breadth-first search from the instance's initial matching. Stops early
/// once a state satisfying `goal` is stored (its index goes to *hit).
template <class Goal>
ReachSet search(const Instance& instance, std::size_t limit, Goal&& goal,
                std::optional<std::size_t>* hit) {
  const int n = instance.n();
  if (n > 255) throw PreconditionError("oracle supports at most 255 objects");
  if (limit < 1) throw PreconditionError("oracle limit must be at least 1");
  const Graph& g = instance.network();
  ReachSet reach(n);

  std::vector<std::uint8_t> cur(n), owner(n), next(n);
  for (Agent a = 0; a < n; ++a) {
    cur[a] = static_cast<std::uint8_t>(instance.initial().object_of(a));
  }
  reach.insert(cur.data(), 0, {kNone, kNone});
  if (hit && goal(cur.data())) {
    *hit = 0;
    return reach;
  }

  std::vector<Edge> moves;
  for (std::size_t head = 0; head < reach.size(); ++head) {
    std::copy(reach.key(head), reach.key(head) + n, cur.begin());
    for (Agent a = 0; a < n; ++a) owner[cur[a]] = static_cast<std::uint8_t>(a);

    // An applicable swap moves some agent to an object it ranks above its
    // own, so scanning each agent's better objects finds every one of them.
    moves.clear();
    for (Agent a = 0; a < n; ++a) {
      const Object mine = cur[a];
      const auto& prefs = instance.preference(a);
      for (int r = 0, top = instance.rank(a, mine); r < top; ++r) {
        const Object other = prefs[r];
        if (other < mine && g.has_edge(mine, other) &&
            instance.prefers(owner[other], mine, other)) {
          moves.emplace_back(other, mine);
        }
      }
    }
    std::sort(moves.begin(), moves.end());

    for (const Edge& e : moves) {
      next = cur;
      std::swap(next[owner[e.first]], next[owner[e.second]]);
      if (reach.known(next.data())) continue;
      if (reach.size() >= limit) {
        reach.truncated_ = true;
        return reach;
      }
      const auto [id, inserted] = reach.insert(next.data(), head, e);
      if (hit && inserted && goal(next.data())) {
        *hit = id;
        return reach;
      }
    }
  }
  return reach;
}

}  // namespace detail

inline ReachSet enumerate_reachable(const Instance& instance,
                                    std::size_t limit = kDefaultLimit) {
  return detail::search(instance, limit, [](const std::uint8_t*) { return false; },
                        nullptr);
}

enum class Verdict { Yes, No, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "YES";
    case Verdict::No: return "NO";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

struct OracleDecision {
  Verdict verdict = Verdict::No;
  SwapSequence witness;  // set on YES
  Matching reached;      // set on YES
  std::size_t states = 0;
};

namespace detail {

template <class Goal>
OracleDecision oracle_run(const Instance& instance, std::size_t limit, Goal&& goal) {
  std::optional<std::size_t> hit;
  const ReachSet reach = search(instance, limit, goal, &hit);
  OracleDecision out;
  out.states = reach.size();
  if (hit) {
    out.verdict = Verdict::Yes;
    out.witness = reach.witness(*hit);
    out.reached = reach.matching(*hit);
  } else {
    out.verdict = reach.truncated() ? Verdict::Inconclusive : Verdict::No;
  }
  return out;
}

}  // namespace detail

/// Is there a reachable matching giving `agent` the object `object`?
inline OracleDecision oracle_decide_object(const Instance& instance, Agent agent,
                                           Object object,
                                           std::size_t limit = kDefaultLimit) {
  if (agent < 0 || agent >= instance.n() || object < 0 || object >= instance.n()) {
    throw PreconditionError("query agent or object out of range");
  }
  return detail::oracle_run(instance, limit, [agent, object](const std::uint8_t* k) {
    return k[agent] == object;
  });
}

/// Is the perfect matching `target` reachable?
inline OracleDecision oracle_decide_matching(const Instance& instance,
                                             const Matching& target,
                                             std::size_t limit = kDefaultLimit) {
  if (target.n() != instance.n() || !target.is_perfect()) {
    throw PreconditionError("target must be a perfect matching of the instance");
  }
  const auto& want = target.objects();
  return detail::oracle_run(instance, limit, [&want](const std::uint8_t* k) {
    return std::equal(want.begin(), want.end(), k,
                      [](Object x, std::uint8_t y) { return x == y; });
  });
}

namespace detail {

inline void require_complete(const ReachSet& reach, const char* what) {
  if (reach.truncated()) {
    throw TruncatedError(std::string(what) + ": reach set truncated after " +
                         std::to_string(reach.size()) + " states");
  }
}

}  // namespace detail

/// Members of the reach set not Pareto-dominated by any other member, in
/// discovery order. States are scanned by ascending rank sum: a dominator
/// always has a strictly smaller sum, and if some member dominates a state
/// then some front member does, so comparing against the front suffices.
inline std::vector<Matching> oracle_pareto_front(const Instance& instance,
                                                 const ReachSet& reach) {
  detail::require_complete(reach, "pareto front");
  std::vector<Matching> all = reach.matchings();
  std::vector<long long> pot(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) pot[i] = instance.potential(all[i]);
  std::vector<std::size_t> order(all.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return pot[x] < pot[y]; });
  std::vector<std::size_t> front;
  for (std::size_t s : order) {
    bool dominated = false;
    for (std::size_t f : front) {
      if (pareto_dominates(instance, all[f], all[s])) {
        dominated = true;
        break;
      }
    }
    if (!dominated) front.push_back(s);
  }
  std::sort(front.begin(), front.end());
  std::vector<Matching> out;
  for (std::size_t f : front) out.push_back(all[f]);
  return out;
}

inline std::vector<Matching> oracle_pareto_front(const Instance& instance,
                                                 std::size_t limit = kDefaultLimit) {
  return oracle_pareto_front(instance, enumerate_reachable(instance, limit));
}

/// Filters `candidates` dictator by dictator, keeping only the matchings that
/// give the current dictator its best object among the survivors.
inline Matching serial_dictatorship_filter(const Instance& instance,
                                           std::vector<Matching> candidates,
                                           const std::vector<Agent>& order) {
  if (candidates.empty()) throw PreconditionError("no candidate matchings");
  for (Agent a : order) {
    int best = instance.n();
    for (const Matching& m : candidates) best = std::min(best, instance.rank(a, m.object_of(a)));
    std::erase_if(candidates, [&](const Matching& m) {
      return instance.rank(a, m.object_of(a)) != best;
    });
  }
  if (candidates.size() != 1) {
    throw PreconditionError("dictator order does not cover every agent");
  }
  return candidates.front();
}

inline Matching serial_dictatorship_reference(const Instance& instance,
                                              const ReachSet& reach,
                                              const std::vector<Agent>& order) {
  detail::require_complete(reach, "serial dictatorship");
  std::vector<int> seen(instance.n(), 0);
  if (static_cast<int>(order.size()) != instance.n()) {
    throw PreconditionError("dictator order must list every agent once");
  }
  for (Agent a : order) {
    if (a < 0 || a >= instance.n() || seen[a]++) {
      throw PreconditionError("dictator order must list every agent once");
    }
  }
  return serial_dictatorship_filter(instance, reach.matchings(), order);
}

inline Matching serial_dictatorship_reference(const Instance& instance,
                                              const std::vector<Agent>& order,
                                              std::size_t limit = kDefaultLimit) {
  return serial_dictatorship_reference(instance, enumerate_reachable(instance, limit),
                                       order);
}

}  // namespace swapdyn
