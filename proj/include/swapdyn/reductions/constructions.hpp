#pragma once

// Instance constructions that carry satisfiability of a 2P1N formula into
// reachability questions, and object reachability into matching
// reachability. Agents start on the object with the same id, except where a
// construction relabels its input (ro_to_rm).

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "swapdyn/core/error.hpp"
#include "swapdyn/core/instance.hpp"
#include "swapdyn/core/io.hpp"
#include "swapdyn/core/matching.hpp"
#include "swapdyn/reductions/cnf.hpp"

namespace swapdyn::reductions {

/// An instance together with the object query it encodes.
struct ObjectQuestion {
  Instance instance;
  ObjectQuery query;
};

namespace detail {

/// `top` first, then the agent's own object, then everything else by id.
inline std::vector<Object> ranked(int n, const std::vector<Object>& top, Object own) {
  std::vector<Object> list = top;
  list.push_back(own);
  std::vector<char> used(n, 0);
  for (Object b : list) {
    if (used[b]) throw InvariantError("construction lists object " + std::to_string(b + 1) + " twice");
    used[b] = 1;
  }
  for (Object b = 0; b < n; ++b) {
    if (!used[b]) list.push_back(b);
  }
  return list;
}

inline void require_clauses(const Cnf2p1n& formula) {
  if (formula.clause_count() == 0) throw PreconditionError("formula has no clauses");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Clique gadget. Clause j (0-based) owns objects u, v, w at 3j, 3j+1, 3j+2;
// variable i owns two literal objects after all clause objects.

namespace clique_ids {
inline Object u(int j) { return 3 * j; }
inline Object v(int j) { return 3 * j + 1; }
inline Object w(int j) { return 3 * j + 2; }
inline Object x1(const Cnf2p1n& f, int i) { return 3 * f.clause_count() + 2 * i; }
inline Object x2(const Cnf2p1n& f, int i) { return 3 * f.clause_count() + 2 * i + 1; }
}  // namespace clique_ids

/// Position of a clause object in the descending chain walked by the last
/// w-agent (1 for u of the first clause); literal objects rank 0.
inline int clique_rank(const Cnf2p1n& formula, Object b) {
  return b < 3 * formula.clause_count() ? b + 1 : 0;
}

inline ObjectQuestion sat_to_clique_ro(const Cnf2p1n& formula) {
  using namespace clique_ids;
  detail::require_clauses(formula);
  const int m = formula.clause_count();
  const int n = 3 * m + 2 * formula.variables;
  std::vector<std::vector<Object>> prefs(n);

  for (int i = 0; i < formula.variables; ++i) {
    const int p1 = formula.first[i], p2 = formula.second[i], q = formula.negated[i];
    prefs[x1(formula, i)] = detail::ranked(n, {x2(formula, i), w(p1), v(p1)}, x1(formula, i));
    const std::vector<Object> by_second{w(p2), v(p2)};
    const std::vector<Object> by_negated{w(q), v(q)};
    std::vector<Object> top = q < p2 ? by_negated : by_second;
    const auto& later = q < p2 ? by_second : by_negated;
    top.insert(top.end(), later.begin(), later.end());
    top.push_back(x1(formula, i));
    prefs[x2(formula, i)] = detail::ranked(n, top, x2(formula, i));
  }
  for (int j = 0; j < m; ++j) {
    prefs[u(j)] = detail::ranked(n, {v(j)}, u(j));
    if (j + 1 < m) prefs[w(j)] = detail::ranked(n, {u(j + 1)}, w(j));

    std::vector<Object> wanted;
    for (int i = 0; i < formula.variables; ++i) {
      if (formula.first[i] == j || formula.negated[i] == j) wanted.push_back(x1(formula, i));
      if (formula.second[i] == j) wanted.push_back(x2(formula, i));
    }
    std::sort(wanted.begin(), wanted.end());
    prefs[v(j)] = detail::ranked(n, wanted, v(j));
  }
  std::vector<Object> chain;
  for (Object b = 0; b + 1 < 3 * m; ++b) chain.push_back(b);
  prefs[w(m - 1)] = detail::ranked(n, chain, w(m - 1));

  return {Instance(std::move(prefs), Graph::clique(n)), {w(m - 1), u(0)}};
}

/// Checks one swap of a run on a clique-gadget instance against the rank
/// bounds every such run obeys: the last w-agent never climbs and drops by at
/// most one, and no agent on a clause object climbs by more than one. Returns
/// a description of the first violation.
inline std::optional<std::string> rank_step_violation(const Cnf2p1n& formula,
                                                      const Matching& before,
                                                      const Matching& after) {
  const Agent last = clique_ids::w(formula.clause_count() - 1);
  auto rank = [&](const Matching& m, Agent a) { return clique_rank(formula, m.object_of(a)); };
  const int was = rank(before, last), now = rank(after, last);
  if (now > was) {
    return "last w-agent climbed from rank " + std::to_string(was) + " to " + std::to_string(now);
  }
  if (now < was - 1) {
    return "last w-agent dropped from rank " + std::to_string(was) + " to " + std::to_string(now);
  }
  for (Agent a = 0; a < before.n(); ++a) {
    const int r1 = rank(before, a), r2 = rank(after, a);
    if (r1 > 0 && r2 > r1 + 1) {
      return "agent " + std::to_string(a + 1) + " jumped from rank " + std::to_string(r1) +
             " to " + std::to_string(r2);
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Generalized-star gadget. A staircase of m + 1 objects ends at the center;
// each clause hangs a single object off the center, and each variable hangs
// a four-object arm plus a single spare object.

namespace star_ids {
inline Object stair(int k) { return k; }  // k = 0..m, the center is stair(m)
inline Object clause(const Cnf2p1n& f, int i) { return f.clause_count() + 1 + i; }
inline Object base(const Cnf2p1n& f, int j) { return 2 * f.clause_count() + 1 + 5 * j; }
inline Object negated(const Cnf2p1n& f, int j) { return base(f, j); }
inline Object spacer(const Cnf2p1n& f, int j) { return base(f, j) + 1; }
inline Object second(const Cnf2p1n& f, int j) { return base(f, j) + 2; }
inline Object first(const Cnf2p1n& f, int j) { return base(f, j) + 3; }
inline Object spare(const Cnf2p1n& f, int j) { return base(f, j) + 4; }
}  // namespace star_ids

// Preferences rank each agent's improving objects in the order the agent
// would pick them up when its literal is used, latest first.
inline ObjectQuestion sat_to_genstar_ro(const Cnf2p1n& formula) {
  using namespace star_ids;
  detail::require_clauses(formula);
  const int m = formula.clause_count();
  const int vars = formula.variables;
  const int n = 2 * m + 5 * vars + 1;
  const Object center = stair(m);

  std::vector<Edge> edges;
  for (int k = 0; k < m; ++k) edges.emplace_back(stair(k), stair(k + 1));
  for (int i = 0; i < m; ++i) edges.emplace_back(clause(formula, i), center);
  for (int j = 0; j < vars; ++j) {
    edges.emplace_back(negated(formula, j), spacer(formula, j));
    edges.emplace_back(spacer(formula, j), second(formula, j));
    edges.emplace_back(second(formula, j), first(formula, j));
    edges.emplace_back(first(formula, j), center);
    edges.emplace_back(spare(formula, j), center);
  }

  std::vector<std::vector<Object>> prefs(n);
  for (int i = 0; i < m; ++i) {
    std::vector<Object> top;
    for (int k = i; k <= m; ++k) top.push_back(stair(k));
    prefs[clause(formula, i)] = detail::ranked(n, top, clause(formula, i));
  }
  for (int k = 0; k <= m; ++k) {
    std::vector<Object> top;
    for (int j = 0; j < vars; ++j) top.push_back(second(formula, j));
    for (int j = 0; j < vars; ++j) top.push_back(first(formula, j));
    for (int s = m; s > k; --s) top.push_back(stair(s));
    prefs[stair(k)] = detail::ranked(n, top, stair(k));
  }
  for (int j = 0; j < vars; ++j) {
    const Object nj = negated(formula, j), dj = spacer(formula, j), qj = second(formula, j),
                 pj = first(formula, j), sj = spare(formula, j);
    prefs[dj] = detail::ranked(n, {sj, center, pj, qj}, dj);
    prefs[sj] = detail::ranked(n, {qj, pj, center}, sj);
    prefs[nj] = detail::ranked(n, {clause(formula, formula.negated[j]), center, pj, qj, dj}, nj);
    prefs[pj] = detail::ranked(n, {clause(formula, formula.first[j]), center, dj, qj}, pj);
    prefs[qj] = detail::ranked(n, {clause(formula, formula.second[j]), center, pj, nj, dj}, qj);
  }
  return {Instance(std::move(prefs), Graph(n, std::move(edges))), {stair(0), center}};
}

// ---------------------------------------------------------------------------
// Object reachability to matching reachability.

enum class TargetGraph { General, Clique };

/// The doubled instance, the matching whose reachability it asks about, and
/// `order[i]`: the input agent that became agent i (its initial object
/// became object i). Agent and object n + i are the fresh copies of i.
struct MatchingQuestion {
  Instance instance;
  Matching target;
  std::vector<Agent> order;
};

inline MatchingQuestion ro_to_rm(const Instance& input, ObjectQuery query,
                                 TargetGraph graph = TargetGraph::General) {
  const int n = input.n();
  if (query.agent < 0 || query.agent >= n || query.object < 0 || query.object >= n) {
    throw PreconditionError("query agent or object out of range");
  }
  if (n < 2) throw PreconditionError("need at least two agents");
  const auto edge_count = static_cast<long long>(input.network().edges().size());
  if (graph == TargetGraph::Clique && edge_count != static_cast<long long>(n) * (n - 1) / 2) {
    // Completing a sparser input would add trades the input never allowed.
    throw ClassError("a clique target needs a clique input");
  }
  const Matching& start = input.initial();
  const Agent holder = start.agent_of(query.object);
  if (holder == query.agent) {
    throw PreconditionError("query agent already holds the query object");
  }

  std::vector<Agent> order{query.agent};
  for (Agent a = 0; a < n; ++a) {
    if (a != query.agent && a != holder) order.push_back(a);
  }
  order.push_back(holder);
  std::vector<Object> relabel(n);  // input object -> new id
  for (int i = 0; i < n; ++i) relabel[start.object_of(order[i])] = i;

  auto star = [n](int i) { return n + i; };
  std::vector<Object> original_part(n);
  std::vector<std::vector<Object>> prefs(2 * n);
  for (int i = 0; i < n; ++i) {
    const auto& own = input.preference(order[i]);
    for (int r = 0; r < n; ++r) original_part[r] = relabel[own[r]];

    std::vector<Object> list;
    if (i == 0) {
      list.push_back(star(n - 1));
      list.insert(list.end(), original_part.begin(), original_part.end());
      for (int k = 0; k + 1 < n; ++k) list.push_back(star(k));
    } else if (i == n - 1) {
      for (int k = 0; k + 1 < n; ++k) list.push_back(star(k));
      list.insert(list.end(), original_part.begin(), original_part.end());
      list.push_back(star(n - 1));
    } else {
      for (int k = i; k + 1 < n; ++k) list.push_back(star(k));
      for (int k = i - 1; k >= 0; --k) list.push_back(star(k));
      list.insert(list.end(), original_part.begin(), original_part.end());
      list.push_back(star(n - 1));
    }
    prefs[i] = std::move(list);
    prefs[star(i)] = detail::ranked(2 * n, {i}, star(i));
  }

  std::vector<Edge> edges;
  if (graph == TargetGraph::Clique) {
    for (Object x = 0; x < 2 * n; ++x) {
      for (Object y = x + 1; y < 2 * n; ++y) edges.emplace_back(x, y);
    }
  } else {
    for (const Edge& e : input.network().edges()) {
      edges.emplace_back(relabel[e.first], relabel[e.second]);
    }
    for (int x = 0; x < n; ++x) {
      edges.emplace_back(x, star(x));
      for (int y = x + 1; y < n; ++y) edges.emplace_back(star(x), star(y));
    }
  }

  Instance doubled(std::move(prefs), Graph(2 * n, std::move(edges)));
  std::vector<Object> tops(2 * n);
  for (Agent a = 0; a < 2 * n; ++a) tops[a] = doubled.preference(a).front();
  return {std::move(doubled), Matching::from_objects(tops), std::move(order)};
}

}  // namespace swapdyn::reductions
