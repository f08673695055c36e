#pragma once

// Small named instances shared by the unit tests. Helpers take 1-based ids
// like the documents do.

#include <initializer_list>
#include <vector>

#include "swapdyn/core/instance.hpp"
#include "swapdyn/core/matching.hpp"

namespace fixtures {

using swapdyn::Edge;
using swapdyn::Graph;
using swapdyn::Instance;
using swapdyn::Matching;
using swapdyn::Object;

inline std::vector<std::vector<Object>> prefs(
    std::initializer_list<std::initializer_list<int>> lists) {
  std::vector<std::vector<Object>> out;
  for (const auto& list : lists) {
    std::vector<Object> row;
    for (int b : list) row.push_back(b - 1);
    out.push_back(row);
  }
  return out;
}

inline Graph edges(int n, std::initializer_list<std::pair<int, int>> list) {
  std::vector<Edge> out;
  for (auto [u, v] : list) out.emplace_back(u - 1, v - 1);
  return Graph(n, out);
}

/// Agent-indexed objects, 1-based.
inline Matching matching(std::initializer_list<int> objects) {
  std::vector<Object> objs;
  for (int b : objects) objs.push_back(b - 1);
  return Matching::from_objects(objs);
}

inline Edge e(int u, int v) { return {u - 1, v - 1}; }

inline Instance i1() { return Instance(prefs({{3, 2, 1}, {1, 2, 3}, {2, 3, 1}}), Graph::path(3)); }
inline Instance i2() { return Instance(prefs({{1, 2}, {2, 1}}), Graph::path(2)); }
inline Instance i3() { return Instance(prefs({{2, 1}, {1, 2}}), Graph::path(2)); }
inline Instance i4() {
  return Instance(prefs({{2, 1, 3}, {1, 2, 3}, {3, 1, 2}}), Graph::star(3, 0));
}

/// Every agent ranks its own object first.
inline Instance self_loving(const Graph& g) {
  const int n = g.n();
  std::vector<std::vector<Object>> p(n);
  for (int a = 0; a < n; ++a) {
    p[a].push_back(a);
    for (int b = 0; b < n; ++b) {
      if (b != a) p[a].push_back(b);
    }
  }
  return Instance(p, g);
}

}  // namespace fixtures
