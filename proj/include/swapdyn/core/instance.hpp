#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "swapdyn/core/error.hpp"
#include "swapdyn/core/matching.hpp"

namespace swapdyn {

/// Undirected simple graph on objects 0..n-1.
class Graph {
 public:
  Graph() = default;

  /// Throws InstanceError on self-loops, duplicates or out-of-range ends.
  Graph(int n, std::vector<Edge> edges) : n_(n), adj_(n) {
    for (const Edge& raw : edges) {
      const Edge e = normalized(raw);
      if (e.first < 0 || e.second >= n) {
        throw InstanceError("edge (" + std::to_string(raw.first + 1) + "," +
                            std::to_string(raw.second + 1) +
                            ") is out of range");
      }
      if (e.first == e.second) {
        throw InstanceError("edge (" + std::to_string(raw.first + 1) + "," +
                            std::to_string(raw.second + 1) +
                            ") is a self-loop");
      }
      edges_.push_back(e);
    }
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 1; i < edges_.size(); ++i) {
      if (edges_[i] == edges_[i - 1]) {
        throw InstanceError("edge (" + std::to_string(edges_[i].first + 1) +
                            "," + std::to_string(edges_[i].second + 1) +
                            ") appears twice");
      }
    }
    for (const Edge& e : edges_) {
      adj_[e.first].push_back(e.second);
      adj_[e.second].push_back(e.first);
    }
    for (auto& list : adj_) std::sort(list.begin(), list.end());
  }

  static Graph path(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph(n, std::move(edges));
  }

  static Graph star(int n, Object center = 0) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
      if (i != center) edges.emplace_back(center, i);
    }
    return Graph(n, std::move(edges));
  }

  static Graph clique(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    }
    return Graph(n, std::move(edges));
  }

  int n() const { return n_; }
  /// Sorted, normalized (u < v).
  const std::vector<Edge>& edges() const { return edges_; }
  /// Sorted ascending.
  const std::vector<Object>& neighbors(Object u) const { return adj_[u]; }
  int degree(Object u) const { return static_cast<int>(adj_[u].size()); }

  bool has_edge(Object u, Object v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
    const auto& list = adj_[u];
    return std::binary_search(list.begin(), list.end(), v);
  }

  bool connected() const {
    if (n_ == 0) return true;
    std::vector<char> seen(n_, 0);
    std::vector<Object> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      const Object u = stack.back();
      stack.pop_back();
      for (Object v : adj_[u]) {
        if (!seen[v]) {
          seen[v] = 1;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == n_;
  }

  bool is_tree() const {
    return static_cast<int>(edges_.size()) == n_ - 1 && connected();
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Object>> adj_;
};

/// Agents, objects, strict preferences, object network and the initial
/// perfect matching.
class Instance {
 public:
  Instance() = default;

  /// `preferences[a]` lists all n objects, most preferred first. A
  /// default-constructed `initial` stands for the identity matching.
  Instance(std::vector<std::vector<Object>> preferences, Graph network,
           Matching initial = Matching())
      : n_(static_cast<int>(preferences.size())),
        preferences_(std::move(preferences)),
        network_(std::move(network)),
        initial_(std::move(initial)),
        rank_(static_cast<std::size_t>(n_) * n_, kNone) {
    if (n_ <= 0) throw InstanceError("instance needs at least one agent");
    if (initial_.n() == 0) initial_ = Matching::identity(n_);
    if (network_.n() != n_) {
      throw InstanceError("network has " + std::to_string(network_.n()) +
                          " objects but there are " + std::to_string(n_) +
                          " agents");
    }
    for (Agent a = 0; a < n_; ++a) {
      const auto& list = preferences_[a];
      const std::string who = "preference list of agent " + std::to_string(a + 1);
      if (static_cast<int>(list.size()) != n_) {
        throw InstanceError(who + " has " + std::to_string(list.size()) +
                            " entries, expected " + std::to_string(n_) +
                            "; not a permutation");
      }
      for (int pos = 0; pos < n_; ++pos) {
        const Object b = list[pos];
        if (b < 0 || b >= n_) {
          throw InstanceError(who + " mentions object " + std::to_string(b + 1) +
                              " out of range; not a permutation");
        }
        int& r = rank_[index(a, b)];
        if (r != kNone) {
          throw InstanceError(who + " repeats object " + std::to_string(b + 1) +
                              "; not a permutation");
        }
        r = pos;
      }
    }
    if (initial_.n() != n_ || !initial_.is_perfect()) {
      throw InstanceError("initial matching is not a perfect matching");
    }
  }

  int n() const { return n_; }
  const std::vector<std::vector<Object>>& preferences() const {
    return preferences_;
  }
  const std::vector<Object>& preference(Agent a) const {
    return preferences_[a];
  }
  const Graph& network() const { return network_; }
  const Matching& initial() const { return initial_; }

  /// Position of b in a's list; 0 is the top choice.
  int rank(Agent a, Object b) const { return rank_[index(a, b)]; }

  /// True iff a strictly prefers x to y.
  bool prefers(Agent a, Object x, Object y) const {
    return rank(a, x) < rank(a, y);
  }

  /// Same preferences and network, different starting matching.
  Instance with_initial(Matching initial) const {
    Instance copy = *this;
    if (initial.n() != n_ || !initial.is_perfect()) {
      throw InstanceError("initial matching is not a perfect matching");
    }
    copy.initial_ = std::move(initial);
    return copy;
  }

  /// Sum of ranks; strictly decreases along every swap.
  long long potential(const Matching& m) const {
    long long sum = 0;
    for (Agent a = 0; a < n_; ++a) sum += rank(a, m.object_of(a));
    return sum;
  }

 private:
  std::size_t index(Agent a, Object b) const {
    return static_cast<std::size_t>(a) * n_ + b;
  }

  int n_ = 0;
  std::vector<std::vector<Object>> preferences_;
  Graph network_;
  Matching initial_;
  std::vector<int> rank_;
};

}  // namespace swapdyn
