#pragma once

#include <optional>
#include <vector>

#include "swapdyn/core/classify.hpp"
#include "swapdyn/core/error.hpp"
#include "swapdyn/core/instance.hpp"
#include "swapdyn/core/matching.hpp"
#include "swapdyn/path/line.hpp"

namespace swapdyn::path {

/// The instance's path read from its smallest-id endpoint, with the agents
/// at their initial objects.
inline Line canonical_line(const Instance& instance) {
  const GraphClass cls = classify_graph(instance);
  if (cls.kind != GraphKind::Path) throw ClassError("network is not a path");
  std::vector<Agent> agents;
  agents.reserve(cls.path_order.size());
  for (Object b : cls.path_order) agents.push_back(instance.initial().agent_of(b));
  return Line(instance, cls.path_order, std::move(agents));
}
// The line refers to the instance, which must outlive it.
Line canonical_line(const Instance&&) = delete;

/// Bounds indexed by line position (line agent i starts at position i).
inline PathBounds compute_bounds(const Instance& instance) {
  return compute_bounds(canonical_line(instance));
}

inline Matching to_matching(const Line& line, const std::vector<int>& positions) {
  std::vector<Object> objs(line.size(), kNone);
  for (int i = 0; i < line.size(); ++i) objs[line.agent(i)] = line.object_at(positions[i]);
  return Matching::from_objects(objs);
}

namespace detail {

inline std::vector<int> line_position_of_object(const Line& line) {
  std::vector<int> pos(line.size());
  for (int p = 0; p < line.size(); ++p) pos[line.object_at(p)] = p;
  return pos;
}

}  // namespace detail

inline bool reachable_matching(const Instance& instance, const Matching& target) {
  if (target.n() != instance.n() || !target.is_perfect()) {
    throw PreconditionError("target must be a perfect matching of the instance");
  }
  const Line line = canonical_line(instance);
  const PathBounds bounds = compute_bounds(line);
  const auto pos = detail::line_position_of_object(line);
  std::vector<int> positions(line.size());
  for (int i = 0; i < line.size(); ++i) positions[i] = pos[target.object_of(line.agent(i))];
  return reachable_positions(bounds, positions);
}

struct ObjectAnswer {
  bool reachable = false;
  Matching matching;  // a reachable matching realizing the query, on YES
};

inline ObjectAnswer reachable_object(const Instance& instance, Agent agent, Object object) {
  const int n = instance.n();
  if (agent < 0 || agent >= n || object < 0 || object >= n) {
    throw PreconditionError("query agent or object out of range");
  }
  Line line = canonical_line(instance);
  auto pos = detail::line_position_of_object(line);
  int from = pos[instance.initial().object_of(agent)];
  int to = pos[object];
  if (from == to) return {true, instance.initial()};
  if (to < from) {
    line = line.mirrored();
    from = n - 1 - from;
    to = n - 1 - to;
  }
  const PathBounds bounds = compute_bounds(line);
  if (!bounds.rational(from, to)) return {false, {}};
  // Everyone left of the agent can be assumed to stay put.
  PrefixMatching base(n);
  for (int i = 0; i < from; ++i) base.push(i);
  const auto positions = greedy_extend(bounds, base, to);
  if (!positions) return {false, {}};
  return {true, to_matching(line, *positions)};
}

/// Serial dictatorship in path order; Pareto-efficient among the reachable
/// matchings.
inline Matching pareto(const Instance& instance,
                       ThresholdMethod method = ThresholdMethod::BinarySearch) {
  const Line line = canonical_line(instance);
  const PathBounds bounds = compute_bounds(line);
  return to_matching(line, serial_positions(line, bounds, PrefixMatching(line.size()), method));
}

/// Dictator order used by `pareto`: agents by their start along the path.
inline std::vector<Agent> dictator_order(const Instance& instance) {
  const Line line = canonical_line(instance);
  std::vector<Agent> order;
  for (int i = 0; i < line.size(); ++i) order.push_back(line.agent(i));
  return order;
}

}  // namespace swapdyn::path
