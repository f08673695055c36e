#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "swapdyn/core/instance.hpp"

namespace swapdyn {

enum class GraphKind { Path, Star, GeneralizedStar, Tree, Clique, General };

inline std::string_view to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::Path: return "path";
    case GraphKind::Star: return "star";
    case GraphKind::GeneralizedStar: return "generalized-star";
    case GraphKind::Tree: return "tree";
    case GraphKind::Clique: return "clique";
    case GraphKind::General: return "general";
  }
  return "general";
}

/// Most specific class of a network plus its layout. `path_order` is set for
/// paths; `center` for stars and generalized stars; `branches` (objects
/// ordered by distance from the center) for generalized stars and stars.
struct GraphClass {
  GraphKind kind = GraphKind::General;
  std::vector<Object> path_order;
  Object center = kNone;
  std::vector<std::vector<Object>> branches;
};

namespace detail {

inline std::vector<Object> walk_branch(const Graph& g, Object center,
                                       Object first) {
  std::vector<Object> branch{first};
  Object prev = center;
  Object cur = first;
  while (g.degree(cur) == 2) {
    const auto& nb = g.neighbors(cur);
    const Object next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
    branch.push_back(cur);
  }
  return branch;
}

}  // namespace detail

inline GraphClass classify_graph(const Graph& g) {
  GraphClass out;
  const int n = g.n();
  const auto edge_count = static_cast<long long>(g.edges().size());

  if (g.is_tree()) {
    int high = 0;
    Object hub = kNone;
    for (Object v = 0; v < n; ++v) {
      if (g.degree(v) > 2) {
        ++high;
        hub = v;
      }
    }
    if (high == 0) {
      out.kind = GraphKind::Path;
      Object start = 0;
      while (start < n && g.degree(start) > 1) ++start;
      out.path_order.push_back(start);
      Object prev = kNone;
      Object cur = start;
      while (static_cast<int>(out.path_order.size()) < n) {
        for (Object next : g.neighbors(cur)) {
          if (next != prev) {
            prev = cur;
            cur = next;
            break;
          }
        }
        out.path_order.push_back(cur);
      }
      return out;
    }
    if (high == 1) {
      out.center = hub;
      for (Object first : g.neighbors(hub)) {
        out.branches.push_back(detail::walk_branch(g, hub, first));
      }
      std::sort(out.branches.begin(), out.branches.end(),
                [](const auto& x, const auto& y) {
                  return *std::min_element(x.begin(), x.end()) <
                         *std::min_element(y.begin(), y.end());
                });
      out.kind = g.degree(hub) == n - 1 ? GraphKind::Star
                                        : GraphKind::GeneralizedStar;
      return out;
    }
    out.kind = GraphKind::Tree;
    return out;
  }
  if (n >= 3 && edge_count == static_cast<long long>(n) * (n - 1) / 2) {
    out.kind = GraphKind::Clique;
    return out;
  }
  out.kind = GraphKind::General;
  return out;
}

inline GraphClass classify_graph(const Instance& instance) {
  return classify_graph(instance.network());
}

/// Edge set implied by a layout (path, star, generalized star, clique).
/// Trees and general graphs carry no layout and yield an empty list.
inline std::vector<Edge> expand_layout(const GraphClass& layout, int n) {
  std::vector<Edge> edges;
  switch (layout.kind) {
    case GraphKind::Path:
      for (std::size_t i = 1; i < layout.path_order.size(); ++i) {
        edges.push_back(normalized({layout.path_order[i - 1], layout.path_order[i]}));
      }
      break;
    case GraphKind::Star:
    case GraphKind::GeneralizedStar:
      for (const auto& branch : layout.branches) {
        Object prev = layout.center;
        for (Object b : branch) {
          edges.push_back(normalized({prev, b}));
          prev = b;
        }
      }
      break;
    case GraphKind::Clique:
      for (Object u = 0; u < n; ++u) {
        for (Object v = u + 1; v < n; ++v) edges.emplace_back(u, v);
      }
      break;
    case GraphKind::Tree:
    case GraphKind::General:
      break;
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace swapdyn
