#pragma once

// Pareto-efficient reachable matching on generalized stars by serial
// dictatorship with dictators picked on the fly.
//
// Phase one follows the agent holding the center. Its commitment points
// into some branch; the next dictator is the first uncommitted agent on that
// branch, which either commits further out on the branch or, when it
// prefers every step inward, hops to the center and commits wherever the
// center lets it go. The phase ends once the center holder is committed to
// the center itself. Phase two is then a separate path problem per branch.
//
// Feasibility questions are all answered on lines (the center plus one
// branch, or one branch alone) with the greedy completion from path/line.hpp.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "swapdyn/core/classify.hpp"
#include "swapdyn/core/error.hpp"
#include "swapdyn/core/instance.hpp"
#include "swapdyn/core/matching.hpp"
#include "swapdyn/path/line.hpp"
#include "swapdyn/tree.hpp"

namespace swapdyn::genstar {

/// Center object and branches, each listed outward from the center. Depth
/// of the center is 0; branch objects have depth 1..length.
struct Layout {
  Object center = kNone;
  std::vector<std::vector<Object>> branches;
  std::vector<int> branch_of;  // kNone for the center
  std::vector<int> depth_of;

  int length(int branch) const { return static_cast<int>(branches[branch].size()); }
  /// Object at depth j >= 1 of a branch.
  Object at(int branch, int depth) const { return branches[branch][depth - 1]; }
};

inline Layout layout(const Instance& instance) {
  const GraphClass cls = classify_graph(instance);
  if (cls.kind == GraphKind::Path) {
    throw ClassError("network is a path; use the path solver");
  }
  if (cls.kind != GraphKind::Star && cls.kind != GraphKind::GeneralizedStar) {
    throw ClassError("network is not a generalized star");
  }
  Layout out;
  out.center = cls.center;
  out.branches = cls.branches;
  out.branch_of.assign(instance.n(), kNone);
  out.depth_of.assign(instance.n(), 0);
  for (int i = 0; i < static_cast<int>(out.branches.size()); ++i) {
    for (int j = 1; j <= out.length(i); ++j) {
      out.branch_of[out.at(i, j)] = i;
      out.depth_of[out.at(i, j)] = j;
    }
  }
  return out;
}

/// For each agent, the objects whose route from the agent's initial object
/// improves strictly at every step.
class MonotoneReachSets {
 public:
  MonotoneReachSets(const Instance& instance)
      : n_(instance.n()), member_(static_cast<std::size_t>(n_) * n_, 0) {
    const Graph& g = instance.network();
    std::vector<Object> stack;
    for (Agent a = 0; a < n_; ++a) {
      const Object home = instance.initial().object_of(a);
      member_[index(a, home)] = 1;
      stack.assign(1, home);
      while (!stack.empty()) {
        const Object u = stack.back();
        stack.pop_back();
        for (Object v : g.neighbors(u)) {
          if (!member_[index(a, v)] && instance.prefers(a, v, u)) {
            member_[index(a, v)] = 1;
            stack.push_back(v);
          }
        }
      }
    }
  }

  bool contains(Agent a, Object b) const { return member_[index(a, b)] != 0; }

  std::vector<Object> of(Agent a) const {
    std::vector<Object> out;
    for (Object b = 0; b < n_; ++b) {
      if (contains(a, b)) out.push_back(b);
    }
    return out;
  }

 private:
  std::size_t index(Agent a, Object b) const {
    return static_cast<std::size_t>(a) * n_ + b;
  }

  int n_;
  std::vector<char> member_;
};

/// Current configuration, commitments and dictators so far.
struct State {
  Matching chi;
  Matching tau;
  std::vector<Agent> sigma;
};

/// Depths the first committed agents of a branch are headed to, in order.
inline std::vector<int> dests(const Layout& lay, const State& state, int branch) {
  std::vector<int> out;
  for (int t = 1; t <= lay.length(branch); ++t) {
    const Agent a = state.chi.agent_of(lay.at(branch, t));
    if (!state.tau.has_agent(a)) break;
    out.push_back(lay.depth_of[state.tau.object_of(a)]);
  }
  return out;
}

/// Throws InvariantError unless commitments form, on every branch, an
/// outward order-preserving prefix and the center holder is committed.
inline void check_nice(const Layout& lay, const State& state) {
  const Agent holder = state.chi.agent_of(lay.center);
  if (!state.tau.has_agent(holder)) {
    throw InvariantError("center holder is not committed");
  }
  int committed = 1;
  for (int i = 0; i < static_cast<int>(lay.branches.size()); ++i) {
    bool prefix = true;
    int last = 0;
    for (int t = 1; t <= lay.length(i); ++t) {
      const Agent a = state.chi.agent_of(lay.at(i, t));
      if (!state.tau.has_agent(a)) {
        prefix = false;
        continue;
      }
      if (!prefix) throw InvariantError("branch commitments are not a prefix");
      const Object dest = state.tau.object_of(a);
      if (lay.branch_of[dest] != i || lay.depth_of[dest] <= last) {
        throw InvariantError("branch commitments are not outward and increasing");
      }
      last = lay.depth_of[dest];
      ++committed;
    }
  }
  if (committed != state.tau.size()) {
    throw InvariantError("a committed agent sits outside the branch prefixes");
  }
}

namespace detail {

/// Center followed by one branch, occupied as in `chi`.
inline path::Line spoke(const Instance& instance, const Layout& lay, const Matching& chi,
                        int branch) {
  std::vector<Object> objects{lay.center};
  objects.insert(objects.end(), lay.branches[branch].begin(), lay.branches[branch].end());
  std::vector<Agent> agents;
  agents.reserve(objects.size());
  for (Object b : objects) agents.push_back(chi.agent_of(b));
  return path::Line(instance, std::move(objects), std::move(agents));
}

/// One branch alone, occupied as in `chi`.
inline path::Line arm(const Instance& instance, const Layout& lay, const Matching& chi,
                      int branch) {
  std::vector<Agent> agents;
  for (Object b : lay.branches[branch]) agents.push_back(chi.agent_of(b));
  return path::Line(instance, lay.branches[branch], std::move(agents));
}

/// Largest v in [lo, hi] with feasible(v), assuming the feasible values form
/// an initial segment of the range.
template <class Pred>
std::optional<int> last_feasible(int lo, int hi, Pred&& feasible) {
  std::optional<int> best;
  while (lo <= hi) {
    const int mid = lo + (hi - lo) / 2;
    if (feasible(mid)) {
      best = mid;
      lo = mid + 1;
    } else {
      hi = mid - 1;
    }
  }
  return best;
}

}  // namespace detail

/// Best object the (uncommitted) center holder can still obtain. On each
/// branch the farthest feasible depth is also the best one, because every
/// feasible depth lies inside the holder's monotone run along that branch.
inline Object best_center(const Instance& instance, const Layout& lay, const State& state) {
  const Agent holder = state.chi.agent_of(lay.center);
  if (state.tau.has_agent(holder)) {
    throw InvariantError("best_center: the center holder is already committed");
  }
  Object best = lay.center;
  for (int i = 0; i < static_cast<int>(lay.branches.size()); ++i) {
    const std::vector<int> d = dests(lay, state, i);
    const path::Line line = detail::spoke(instance, lay, state.chi, i);
    const path::PathBounds bounds = path::compute_bounds(line);
    const int cap = std::min(d.empty() ? lay.length(i) : d.front() - 1, bounds.right[0]);
    std::vector<int> probe(d.size() + 1);
    std::copy(d.begin(), d.end(), probe.begin() + 1);
    const auto j = detail::last_feasible(1, cap, [&](int depth) {
      probe[0] = depth;
      return path::extendable(bounds, probe);
    });
    if (j) {
      const Object cand = lay.at(i, *j);
      if (instance.prefers(holder, cand, best)) best = cand;
    }
  }
  return best;
}

/// Which line answers "how far out along its branch can the next dictator
/// go". `Spoke` puts the center in front of the branch, with the center
/// holder's commitment as the first entry of the prefix. `BranchOnly` drops
/// the center and the holder; it ignores that the holder will push into the
/// branch and can report depths that are not reachable (see the tests).
enum class BranchScope { Spoke, BranchOnly };

/// Farthest depth the first uncommitted agent of a branch can reach while
/// the current commitments hold, or 0 when it has no feasible depth there.
inline int max_branch(const Instance& instance, const Layout& lay, const State& state,
                      int branch, BranchScope scope = BranchScope::Spoke) {
  const std::vector<int> d = dests(lay, state, branch);
  const int s = static_cast<int>(d.size());
  if (s >= lay.length(branch)) {
    throw PreconditionError("max_branch: every agent on the branch is committed");
  }
  const Agent holder = state.chi.agent_of(lay.center);
  const bool spoke = scope == BranchScope::Spoke && state.tau.has_agent(holder) &&
                     lay.branch_of[state.tau.object_of(holder)] == branch;
  // Line positions are depths on a spoke and depths minus one on an arm.
  const int shift = spoke ? 0 : 1;
  const path::Line line = spoke ? detail::spoke(instance, lay, state.chi, branch)
                                : detail::arm(instance, lay, state.chi, branch);
  const path::PathBounds bounds = path::compute_bounds(line);
  std::vector<int> committed;
  if (spoke) committed.push_back(lay.depth_of[state.tau.object_of(holder)]);
  for (int j : d) committed.push_back(j - shift);
  const auto base = path::make_prefix(bounds, committed);
  if (!base) throw InvariantError("max_branch: branch commitments are not reachable");
  const int agent = base->size();
  const int lo = std::max(s == 0 ? 1 : d.back() + 1, base->max_matched() + 1 + shift);
  const int hi = bounds.right[agent] + shift;
  const auto k = detail::last_feasible(lo, hi, [&](int depth) {
    return path::greedy_extend(bounds, *base, depth - shift).has_value();
  });
  return k.value_or(0);
}

struct Outcome {
  Matching matching;
  SwapSequence witness;
  std::vector<Agent> dictators;
};

/// Called after initialisation and after every phase-one iteration.
using TraceHook = std::function<void(const State&)>;

inline Outcome pareto(const Instance& instance, const TraceHook& trace = {},
                      BranchScope scope = BranchScope::Spoke) {
  const Layout lay = layout(instance);
  const MonotoneReachSets monotone(instance);
  const int n = instance.n();

  State state{instance.initial(), Matching(n), {}};
  {
    const Agent first = state.chi.agent_of(lay.center);
    state.sigma.push_back(first);
    state.tau.assign(first, best_center(instance, lay, state));
  }
  check_nice(lay, state);
  if (trace) trace(state);

  while (state.tau.object_of(state.chi.agent_of(lay.center)) != lay.center) {
    const Object target = state.tau.object_of(state.chi.agent_of(lay.center));
    const int i = lay.branch_of[target];
    const std::vector<int> d = dests(lay, state, i);
    const int s = static_cast<int>(d.size());
    if (s >= lay.length(i)) throw InvariantError("phase one ran off the end of a branch");
    const Agent a = state.chi.agent_of(lay.at(i, s + 1));
    state.sigma.push_back(a);

    int k = max_branch(instance, lay, state, i, scope);

    // Uncommitted agents have not moved, so "strictly better at every step
    // inward up to the center" is membership of the center in a's set.
    if (monotone.contains(a, lay.center)) {
      Matching hopped = state.chi;
      for (int t = s + 1; t >= 1; --t) {
        const Object from = lay.at(i, t);
        const Object to = t == 1 ? lay.center : lay.at(i, t - 1);
        const Agent other = hopped.agent_of(to);
        if (!instance.prefers(a, to, from) || !instance.prefers(other, from, to)) {
          throw InvariantError("hop to the center needs an irrational swap");
        }
        hopped.exchange(from, to);
      }
      State trial{hopped, state.tau, state.sigma};
      const Object b = best_center(instance, lay, trial);
      if (k == 0 || instance.prefers(a, b, lay.at(i, k))) {
        state.chi = std::move(hopped);
        state.tau.assign(a, b);
        k = -1;
      }
    }
    if (k > 0) state.tau.assign(a, lay.at(i, k));
    if (k == 0) throw InvariantError("dictator has no feasible object");

    check_nice(lay, state);
    if (trace) trace(state);
  }

  // Phase two: the center is settled, so each branch is its own path
  // problem seeded with that branch's commitments.
  for (int i = 0; i < static_cast<int>(lay.branches.size()); ++i) {
    const std::vector<int> d = dests(lay, state, i);
    const path::Line line = detail::arm(instance, lay, state.chi, i);
    const path::PathBounds bounds = path::compute_bounds(line);
    std::vector<int> committed;
    for (int j : d) committed.push_back(j - 1);
    auto prefix = path::make_prefix(bounds, committed);
    if (!prefix) throw InvariantError("phase two: branch commitments are not reachable");
    while (!prefix->complete()) {
      const int t = prefix->size();
      const int pos = path::best_next_match(line, bounds, *prefix);
      prefix->push(pos);
      const Agent a = line.agent(t);
      state.sigma.push_back(a);
      state.tau.assign(a, line.object_at(pos));
    }
  }
  if (!state.tau.is_perfect()) throw InvariantError("output matching is not perfect");

  auto witness = tree::reachable_matching(instance, state.tau);
  if (!witness.reachable) throw InvariantError("output matching is not reachable");
  return {state.tau, std::move(witness.witness), state.sigma};
}

}  // namespace swapdyn::genstar
