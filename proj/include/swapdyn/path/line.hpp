#pragma once

// Reachability machinery on a line of objects. Positions 0..len-1 run along
// the line and the agent standing on position i at the start is "agent i",
// so the start configuration is always the identity. A matching built agent
// by agent from the left is a prefix; the reachable perfect matchings are
// exactly the individually rational ones whose every prefix step takes
// either the smallest free position or a position beyond all taken ones.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swapdyn/core/error.hpp"
#include "swapdyn/core/instance.hpp"
#include "swapdyn/core/matching.hpp"

namespace swapdyn::path {

/// A view of some objects of an instance laid out as a line, together with
/// the agents occupying them. Preferences are read from the instance.
class Line {
 public:
  Line(const Instance& instance, std::vector<Object> objects, std::vector<Agent> agents)
      : instance_(&instance), objects_(std::move(objects)), agents_(std::move(agents)) {
    if (objects_.size() != agents_.size()) {
      throw PreconditionError("line needs one agent per object");
    }
  }

  int size() const { return static_cast<int>(objects_.size()); }
  Object object_at(int pos) const { return objects_[pos]; }
  Agent agent(int i) const { return agents_[i]; }

  /// Does line agent i strictly prefer position x to position y?
  // Holds a pointer to the instance, so temporaries are refused.
  Line(const Instance&&, std::vector<Object>, std::vector<Agent>) = delete;

  bool prefers(int i, int x, int y) const {
    return instance_->prefers(agents_[i], objects_[x], objects_[y]);
  }

  /// The same line read right to left.
  Line mirrored() const {
    return Line(*instance_, {objects_.rbegin(), objects_.rend()},
                {agents_.rbegin(), agents_.rend()});
  }

 private:
  const Instance* instance_;
  std::vector<Object> objects_;
  std::vector<Agent> agents_;
};

/// Per agent, the interval of positions it can ever hold: the maximal run
/// around its start along which its preference strictly increases outward.
struct PathBounds {
  std::vector<int> left;
  std::vector<int> right;

  bool rational(int agent, int pos) const {
    return left[agent] <= pos && pos <= right[agent];
  }
};

inline PathBounds compute_bounds(const Line& line) {
  const int len = line.size();
  PathBounds b{std::vector<int>(len), std::vector<int>(len)};
  for (int i = 0; i < len; ++i) {
    int lo = i;
    while (lo > 0 && line.prefers(i, lo - 1, lo)) --lo;
    int hi = i;
    while (hi + 1 < len && line.prefers(i, hi + 1, hi)) ++hi;
    b.left[i] = lo;
    b.right[i] = hi;
  }
  return b;
}

/// Agents 0..k-1 matched to positions, with the largest taken position and
/// the smallest free position maintained incrementally.
class PrefixMatching {
 public:
  explicit PrefixMatching(int len) : taken_(len, 0) {}

  int size() const { return static_cast<int>(pos_.size()); }
  int capacity() const { return static_cast<int>(taken_.size()); }
  bool complete() const { return size() == capacity(); }
  int position_of(int agent) const { return pos_[agent]; }
  const std::vector<int>& positions() const { return pos_; }
  bool taken(int p) const { return taken_[p] != 0; }

  /// -1 when empty.
  int max_matched() const { return max_; }
  /// capacity() when every position is taken.
  int min_unmatched() const { return min_free_; }

  /// The next agent may take `p` under the prefix rule.
  bool admissible(int p) const {
    return p >= 0 && p < capacity() && !taken(p) &&
           (size() == 0 || p == min_free_ || p > max_);
  }

  void push(int p) {
    pos_.push_back(p);
    taken_[p] = 1;
    max_ = std::max(max_, p);
    while (min_free_ < capacity() && taken_[min_free_]) ++min_free_;
  }

 private:
  std::vector<int> pos_;
  std::vector<char> taken_;
  int max_ = -1;
  int min_free_ = 0;
};

/// Extends `prefix` greedily to a perfect matching: each next agent takes the
/// smallest free position if its left bound allows, else the position just
/// past the largest taken one if its right bound allows, else the extension
/// fails. From a prefix that obeys the prefix rule and individual
/// rationality, this succeeds exactly when some reachable perfect matching
/// contains the prefix. `iterations` receives the number of agents placed.
inline bool greedy_complete(const PathBounds& bounds, PrefixMatching& prefix,
                            int* iterations = nullptr) {
  int steps = 0;
  bool ok = true;
  while (!prefix.complete()) {
    const int next = prefix.size();
    const int low = prefix.min_unmatched();
    if (bounds.left[next] <= low) {
      prefix.push(low);
    } else if (prefix.max_matched() < bounds.right[next]) {
      prefix.push(prefix.max_matched() + 1);
    } else {
      ok = false;
      break;
    }
    ++steps;
  }
  if (iterations) *iterations = steps;
  return ok;
}

/// Builds the prefix from explicit positions, checking the prefix rule and
/// individual rationality at each step. Returns nullopt on the first failure.
inline std::optional<PrefixMatching> make_prefix(const PathBounds& bounds,
                                                 std::span<const int> positions) {
  PrefixMatching prefix(static_cast<int>(bounds.left.size()));
  for (int p : positions) {
    const int agent = prefix.size();
    if (agent >= prefix.capacity() || !prefix.admissible(p) ||
        !bounds.rational(agent, p)) {
      return std::nullopt;
    }
    prefix.push(p);
  }
  return prefix;
}

/// Some reachable perfect matching assigns agent i to positions[i] for every
/// listed i.
inline bool extendable(const PathBounds& bounds, std::span<const int> positions) {
  auto prefix = make_prefix(bounds, positions);
  return prefix && greedy_complete(bounds, *prefix);
}

/// Single-step extension: extends `base` by giving the next agent position
/// `first` (which must lie beyond every taken position and within that
/// agent's right bound) and completes greedily. Returns the full position
/// vector or nullopt.
inline std::optional<std::vector<int>> greedy_extend(const PathBounds& bounds,
                                                     const PrefixMatching& base,
                                                     int first,
                                                     int* iterations = nullptr) {
  const int agent = base.size();
  if (agent >= base.capacity()) {
    throw PreconditionError("greedy_extend: prefix is already complete");
  }
  if (first <= base.max_matched() || first > bounds.right[agent]) {
    throw PreconditionError("greedy_extend: first position " + std::to_string(first + 1) +
                            " outside (MaxMatched, Right]");
  }
  PrefixMatching work = base;
  work.push(first);
  if (!greedy_complete(bounds, work, iterations)) return std::nullopt;
  return work.positions();
}

/// Is the full position vector a reachable matching of the line?
inline bool reachable_positions(const PathBounds& bounds, std::span<const int> positions) {
  if (positions.size() != bounds.left.size()) return false;
  return make_prefix(bounds, positions).has_value();
}

/// Largest position in (MaxMatched, Right(k)] that the next agent k can take
/// with the result still extendable, by binary search; the feasible set is
/// an initial segment of that range. nullopt when none is feasible.
inline std::optional<int> right_threshold(const PathBounds& bounds,
                                          const PrefixMatching& base,
                                          int* probes = nullptr) {
  const int agent = base.size();
  int lo = base.max_matched() + 1;
  int hi = bounds.right[agent];
  int count = 0;
  std::optional<int> best;
  while (lo <= hi) {
    const int mid = lo + (hi - lo) / 2;
    ++count;
    if (greedy_extend(bounds, base, mid)) {
      best = mid;
      lo = mid + 1;
    } else {
      hi = mid - 1;
    }
  }
  if (probes) *probes = count;
  return best;
}

/// Same threshold in one pass. Simulates the greedy completion for the
/// smallest candidate and slides the candidate right whenever the
/// simulation has no free position left behind it, tracking how much room
/// the agents that were pushed right still have.
inline std::optional<int> right_threshold_slack(const PathBounds& bounds,
                                                const PrefixMatching& base) {
  const int len = base.capacity();
  const int agent = base.size();
  int b0 = base.max_matched() + 1;
  int slack = bounds.right[agent] - b0;
  if (slack < 0) return std::nullopt;

  std::vector<int> holes;
  for (int p = 0; p < base.max_matched(); ++p) {
    if (!base.taken(p)) holes.push_back(p);
  }
  std::size_t next_hole = 0;
  int pushed = 0;  // agents placed right of b0, beyond agent k itself
  std::optional<int> best;
  int j = agent + 1;
  for (;;) {
    if (next_hole == holes.size()) {
      best = b0;
      if (j == len) break;
      ++b0;
      if (--slack < 0) break;
      holes.push_back(b0 - 1);
      continue;
    }
    if (j == len) break;
    if (bounds.left[j] <= holes[next_hole]) {
      ++next_hole;
    } else {
      ++pushed;
      slack = std::min(slack, bounds.right[j] - b0 - pushed);
      if (slack < 0) break;
    }
    ++j;
  }
  return best;
}

enum class ThresholdMethod { BinarySearch, Slack };

/// The position the next agent obtains under serial dictatorship in line
/// order, given that `base` is extendable.
inline int best_next_match(const Line& line, const PathBounds& bounds,
                           const PrefixMatching& base,
                           ThresholdMethod method = ThresholdMethod::BinarySearch) {
  const int k = base.size();
  std::optional<int> leftmost;
  if (bounds.left[k] <= base.min_unmatched()) leftmost = base.min_unmatched();
  const std::optional<int> rightmost = method == ThresholdMethod::BinarySearch
                                           ? right_threshold(bounds, base)
                                           : right_threshold_slack(bounds, base);
  if (leftmost && rightmost) {
    return line.prefers(k, *rightmost, *leftmost) ? *rightmost : *leftmost;
  }
  if (leftmost) return *leftmost;
  if (rightmost) return *rightmost;
  throw InvariantError("best_next_match: prefix has no reachable extension");
}

/// Serial dictatorship in line order starting from an extendable prefix.
inline std::vector<int> serial_positions(const Line& line, const PathBounds& bounds,
                                         PrefixMatching prefix,
                                         ThresholdMethod method = ThresholdMethod::BinarySearch) {
  while (!prefix.complete()) prefix.push(best_next_match(line, bounds, prefix, method));
  return prefix.positions();
}

}  // namespace swapdyn::path
