#pragma once

// JSON documents. Every identifier in a document is 1-based.
//
//   instance: {"n": 3, "graph": {"class": "path"} | {"edges": [[1,2],...]},
//              "preferences": [[3,2,1],...], "initial": [1,2,3]}
//   witness:  {"swaps": [[1,2],[2,3]]}
//   matching: {"matching": [3,1,2]}
//
// Instance documents may also carry an optional "query" ({"agent","object"})
// and "target" (matching array); generators for hardness instances use them.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "swapdyn/core/error.hpp"
#include "swapdyn/core/instance.hpp"
#include "swapdyn/core/matching.hpp"

namespace swapdyn {

struct ObjectQuery {
  Agent agent = kNone;
  Object object = kNone;
};

/// An instance document plus its optional query/target annotations.
struct InstanceDocument {
  Instance instance;
  std::optional<ObjectQuery> query;
  std::optional<Matching> target;
};

namespace detail {

using nlohmann::json;

inline json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

inline int as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
  return v.get<int>();
}

inline int as_id(const json& v, int n, const std::string& where) {
  const int id = as_int(v, where);
  if (id < 1 || id > n) {
    throw ParseError(where + ": identifier " + std::to_string(id) +
                     " out of range 1.." + std::to_string(n));
  }
  return id - 1;
}

inline std::vector<Object> id_array(const json& v, int n, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array");
  std::vector<Object> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_id(v[i], n, where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

inline Edge parse_edge(const json& v, int n, const std::string& where) {
  if (!v.is_array() || v.size() != 2) {
    throw ParseError(where + ": an edge is a pair [u, v]");
  }
  return {as_id(v[0], n, where), as_id(v[1], n, where)};
}

inline Graph parse_graph(const json& g, int n) {
  if (!g.is_object()) throw ParseError("graph: expected an object");
  if (g.contains("class")) {
    if (!g["class"].is_string()) throw ParseError("graph.class: expected a string");
    const auto cls = g["class"].get<std::string>();
    if (cls == "path") return Graph::path(n);
    if (cls == "star") return Graph::star(n);
    if (cls == "clique") return Graph::clique(n);
    throw ParseError("graph.class: unknown class \"" + cls +
                     "\" (expected path, star or clique)");
  }
  if (!g.contains("edges") || !g["edges"].is_array()) {
    throw ParseError("graph: needs \"class\" or an \"edges\" array");
  }
  std::vector<Edge> edges;
  const json& list = g["edges"];
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "graph.edges[" + std::to_string(i) + "]";
    if (!list[i].is_array() || list[i].size() != 2) {
      throw ParseError(where + ": an edge is a pair [u, v]");
    }
    // Range errors are reported by Graph with the offending edge.
    edges.emplace_back(as_int(list[i][0], where) - 1, as_int(list[i][1], where) - 1);
  }
  return Graph(n, std::move(edges));
}

inline json ids(const std::vector<Object>& v) {
  json out = json::array();
  for (Object x : v) out.push_back(x + 1);
  return out;
}

}  // namespace detail

inline InstanceDocument parse_instance_document(std::string_view text) {
  using detail::json;
  const json doc = detail::parse_json(text, "instance");
  if (!doc.is_object()) throw ParseError("instance: expected a JSON object");
  if (!doc.contains("n")) throw ParseError("instance: missing \"n\"");
  const int n = detail::as_int(doc["n"], "n");
  if (n < 1) throw ParseError("n: must be positive");
  if (!doc.contains("graph")) throw ParseError("instance: missing \"graph\"");
  if (!doc.contains("preferences") || !doc["preferences"].is_array()) {
    throw ParseError("instance: missing \"preferences\" array");
  }
  const json& prefs = doc["preferences"];
  if (static_cast<int>(prefs.size()) != n) {
    throw ParseError("preferences: expected " + std::to_string(n) +
                     " lists, got " + std::to_string(prefs.size()));
  }
  std::vector<std::vector<Object>> lists;
  for (int a = 0; a < n; ++a) {
    lists.push_back(detail::id_array(prefs[a], n,
                                     "preferences[agent " + std::to_string(a + 1) + "]"));
  }
  Graph graph = detail::parse_graph(doc["graph"], n);
  Matching initial;
  if (doc.contains("initial")) {
    const auto objs = detail::id_array(doc["initial"], n, "initial");
    if (static_cast<int>(objs.size()) != n) {
      throw InstanceError("initial: expected " + std::to_string(n) + " entries");
    }
    initial = Matching::from_objects(objs);
  }
  InstanceDocument out{Instance(std::move(lists), std::move(graph), std::move(initial)),
                       std::nullopt, std::nullopt};
  if (doc.contains("query")) {
    const json& q = doc["query"];
    if (!q.is_object() || !q.contains("agent") || !q.contains("object")) {
      throw ParseError("query: expected {\"agent\": int, \"object\": int}");
    }
    out.query = ObjectQuery{detail::as_id(q["agent"], n, "query.agent"),
                            detail::as_id(q["object"], n, "query.object")};
  }
  if (doc.contains("target")) {
    const auto objs = detail::id_array(doc["target"], n, "target");
    if (static_cast<int>(objs.size()) != n) {
      throw InstanceError("target: expected " + std::to_string(n) + " entries");
    }
    out.target = Matching::from_objects(objs);
  }
  return out;
}

inline Instance parse_instance(std::string_view text) {
  return parse_instance_document(text).instance;
}

/// Writes the explicit edge list so the document round-trips exactly.
inline nlohmann::json instance_to_json(const Instance& instance) {
  using detail::json;
  json doc;
  doc["n"] = instance.n();
  json edges = json::array();
  for (const Edge& e : instance.network().edges()) {
    edges.push_back({e.first + 1, e.second + 1});
  }
  doc["graph"] = {{"edges", edges}};
  json prefs = json::array();
  for (const auto& list : instance.preferences()) prefs.push_back(detail::ids(list));
  doc["preferences"] = prefs;
  doc["initial"] = detail::ids(instance.initial().objects());
  return doc;
}

inline nlohmann::json document_to_json(const InstanceDocument& document) {
  auto doc = instance_to_json(document.instance);
  if (document.query) {
    doc["query"] = {{"agent", document.query->agent + 1},
                    {"object", document.query->object + 1}};
  }
  if (document.target) doc["target"] = detail::ids(document.target->objects());
  return doc;
}

inline nlohmann::json matching_to_json(const Matching& m) {
  nlohmann::json out = nlohmann::json::array();
  for (Object b : m.objects()) {
    if (b == kNone) {
      out.push_back(nullptr);
    } else {
      out.push_back(b + 1);
    }
  }
  return out;
}

inline nlohmann::json witness_to_json(const SwapSequence& swaps) {
  nlohmann::json list = nlohmann::json::array();
  for (const Edge& e : swaps) list.push_back({e.first + 1, e.second + 1});
  return {{"swaps", list}};
}

inline SwapSequence parse_witness(std::string_view text, int n) {
  using detail::json;
  const json doc = detail::parse_json(text, "witness");
  if (!doc.is_object() || !doc.contains("swaps") || !doc["swaps"].is_array()) {
    throw ParseError("witness: expected {\"swaps\": [[u, v], ...]}");
  }
  SwapSequence out;
  const json& list = doc["swaps"];
  for (std::size_t i = 0; i < list.size(); ++i) {
    out.push_back(detail::parse_edge(list[i], n, "swaps[" + std::to_string(i) + "]"));
  }
  return out;
}

/// Accepts {"matching": [...]} or a bare array.
inline Matching parse_matching(std::string_view text, int n) {
  using detail::json;
  const json doc = detail::parse_json(text, "matching");
  const json& arr = doc.is_object() && doc.contains("matching") ? doc["matching"] : doc;
  const auto objs = detail::id_array(arr, n, "matching");
  if (static_cast<int>(objs.size()) != n) {
    throw InstanceError("matching: expected " + std::to_string(n) + " entries");
  }
  return Matching::from_objects(objs);
}

}  // namespace swapdyn
