#pragma once

// Command-line front end. `run` takes the argument vector and two streams so
// the whole tool can be driven in-process by tests.
//
// Exit status: 0 YES or success, 1 NO or failed verification, 2 usage or
// input error, 3 the oracle hit its state limit.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "swapdyn/core/classify.hpp"
#include "swapdyn/core/error.hpp"
#include "swapdyn/core/io.hpp"
#include "swapdyn/core/swap.hpp"
#include "swapdyn/generate.hpp"
#include "swapdyn/genstar.hpp"
#include "swapdyn/oracle.hpp"
#include "swapdyn/path/path.hpp"
#include "swapdyn/reductions/cnf.hpp"
#include "swapdyn/reductions/constructions.hpp"
#include "swapdyn/star.hpp"
#include "swapdyn/tree.hpp"

namespace swapdyn::cli {

using nlohmann::json;

enum Status : int { kYes = 0, kNo = 1, kUsage = 2, kTruncated = 3 };

enum class Method { Auto, Fast, Oracle };

/// Raised for requests that are well-formed but cannot be served, such as
/// asking for a fast solver on a class that has none.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Settings {
  Method method = Method::Auto;
  std::size_t limit = kDefaultLimit;
};

/// One answered question: the JSON body printed to stdout, the exit status,
/// and the witness (if any) for `--witness`.
struct Report {
  json body;
  int status = kYes;
  std::optional<SwapSequence> witness;
};

// ---------------------------------------------------------------------------
// Files

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

/// Writes to `path`, or to `fallback` when the path is empty.
inline void emit(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
  } else {
    write_file(path, text);
  }
}

// ---------------------------------------------------------------------------
// Solving

namespace detail {

inline std::string hardness_note(std::string_view question, GraphKind kind) {
  return std::string(question) + " is NP-hard on " + std::string(to_string(kind)) +
         " networks; answered by the exhaustive oracle";
}

inline std::string missing_note(std::string_view question, GraphKind kind) {
  return "no polynomial-time solver for " + std::string(question) + " on " +
         std::string(to_string(kind)) + " networks; answered by the exhaustive oracle";
}

/// Decides whether to use the fast solver. `note` explains an oracle fallback.
inline bool use_fast(Method method, bool available, const std::string& note, Report& report) {
  if (method == Method::Oracle) return false;
  if (available) return true;
  if (method == Method::Fast) throw UsageError(note.substr(0, note.find(';')));
  report.body["note"] = note;
  return false;
}

inline void answer(Report& report, Verdict verdict) {
  report.body["answer"] = to_string(verdict);
  report.status = verdict == Verdict::Yes ? kYes : verdict == Verdict::No ? kNo : kTruncated;
}

inline void attach(Report& report, const Instance& instance, const SwapSequence& witness) {
  report.body["matching"] = matching_to_json(validate_sequence(instance, instance.initial(), witness));
  report.body["witness_length"] = witness.size();
  report.witness = witness;
}

/// Witness for a matching already known to be reachable on a tree network.
inline SwapSequence tree_witness(const Instance& instance, const Matching& target) {
  auto found = tree::reachable_matching(instance, target);
  if (!found.reachable) throw InvariantError("tree replay failed for a reachable matching");
  return std::move(found.witness);
}

inline void oracle_answer(Report& report, const Instance& instance, const OracleDecision& d) {
  report.body["method"] = "oracle";
  report.body["states"] = d.states;
  answer(report, d.verdict);
  if (d.verdict == Verdict::Yes) attach(report, instance, d.witness);
}

}  // namespace detail

inline Report solve_object(const Instance& instance, ObjectQuery q, const Settings& settings) {
  const int n = instance.n();
  if (q.agent < 0 || q.agent >= n || q.object < 0 || q.object >= n) {
    throw UsageError("--agent and --object must lie in 1.." + std::to_string(n));
  }
  const GraphKind kind = classify_graph(instance).kind;
  Report report;
  report.body = {{"question", "reachable-object"},
                 {"class", to_string(kind)},
                 {"agent", q.agent + 1},
                 {"object", q.object + 1}};
  const bool fast = kind == GraphKind::Path || kind == GraphKind::Star;
  if (!detail::use_fast(settings.method, fast, detail::hardness_note("reachable object", kind),
                        report)) {
    detail::oracle_answer(report, instance,
                          oracle_decide_object(instance, q.agent, q.object, settings.limit));
    return report;
  }
  report.body["method"] = to_string(kind);
  if (kind == GraphKind::Path) {
    const auto found = path::reachable_object(instance, q.agent, q.object);
    detail::answer(report, found.reachable ? Verdict::Yes : Verdict::No);
    if (found.reachable) detail::attach(report, instance, detail::tree_witness(instance, found.matching));
  } else {
    const auto found = star::reachable_object(instance, q.agent, q.object);
    detail::answer(report, found.reachable ? Verdict::Yes : Verdict::No);
    if (found.reachable) detail::attach(report, instance, found.witness);
  }
  return report;
}

inline Report solve_matching(const Instance& instance, const Matching& target,
                             const Settings& settings) {
  if (target.n() != instance.n() || !target.is_perfect()) {
    throw UsageError("target must be a perfect matching on " + std::to_string(instance.n()) +
                     " agents");
  }
  const GraphKind kind = classify_graph(instance).kind;
  Report report;
  report.body = {{"question", "reachable-matching"}, {"class", to_string(kind)}};
  const bool fast = instance.network().is_tree();
  if (!detail::use_fast(settings.method, fast, detail::hardness_note("reachable matching", kind),
                        report)) {
    detail::oracle_answer(report, instance,
                          oracle_decide_matching(instance, target, settings.limit));
    return report;
  }
  if (kind == GraphKind::Path) {
    // The characterization decides; the tree procedure then supplies swaps.
    report.body["method"] = "path";
    const bool yes = path::reachable_matching(instance, target);
    detail::answer(report, yes ? Verdict::Yes : Verdict::No);
    if (yes) detail::attach(report, instance, detail::tree_witness(instance, target));
    return report;
  }
  report.body["method"] = "tree";
  const auto found = tree::reachable_matching(instance, target);
  detail::answer(report, found.reachable ? Verdict::Yes : Verdict::No);
  if (found.reachable) detail::attach(report, instance, found.witness);
  return report;
}

inline Report solve_pareto(const Instance& instance, const Settings& settings) {
  const GraphKind kind = classify_graph(instance).kind;
  Report report;
  report.body = {{"question", "pareto-efficient"}, {"class", to_string(kind)}};
  const bool fast = kind == GraphKind::Path || kind == GraphKind::Star ||
                    kind == GraphKind::GeneralizedStar;
  const std::string note = kind == GraphKind::Tree
                               ? detail::missing_note("Pareto efficiency", kind)
                               : detail::hardness_note("Pareto efficiency", kind);
  if (detail::use_fast(settings.method, fast, note, report)) {
    report.body["method"] = to_string(kind);
    SwapSequence witness;
    if (kind == GraphKind::Path) {
      witness = detail::tree_witness(instance, path::pareto(instance));
    } else if (kind == GraphKind::Star) {
      witness = star::pareto(instance).witness;
    } else {
      witness = genstar::pareto(instance).witness;
    }
    report.body["answer"] = "OK";
    detail::attach(report, instance, witness);
    return report;
  }

  report.body["method"] = "oracle";
  const ReachSet reach = enumerate_reachable(instance, settings.limit);
  report.body["states"] = reach.size();
  if (reach.truncated()) {
    report.body["answer"] = to_string(Verdict::Inconclusive);
    report.status = kTruncated;
    return report;
  }
  std::vector<Agent> order(instance.n());
  std::iota(order.begin(), order.end(), 0);
  if (kind == GraphKind::Path) order = path::dictator_order(instance);
  const Matching chosen = serial_dictatorship_reference(instance, reach, order);
  report.body["answer"] = "OK";
  detail::attach(report, instance, reach.witness(*reach.find(chosen)));
  return report;
}

// ---------------------------------------------------------------------------
// Output

/// Scalar fields as a header line and a value line, or just the value line.
inline std::string tsv_line(const json& body, const std::vector<std::string>& keys) {
  std::string line;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (i) line += '\t';
    if (!body.contains(keys[i])) continue;
    const json& v = body[keys[i]];
    line += v.is_string() ? v.get<std::string>() : v.dump();
  }
  return line + '\n';
}

inline std::vector<std::string> keys_of(const json& body) {
  std::vector<std::string> keys;
  for (auto it = body.begin(); it != body.end(); ++it) keys.push_back(it.key());
  return keys;
}

inline void print(std::ostream& out, const json& body, bool tsv) {
  if (!tsv) {
    out << body.dump() << '\n';
    return;
  }
  const auto keys = keys_of(body);
  std::string header;
  for (std::size_t i = 0; i < keys.size(); ++i) header += (i ? "\t" : "") + keys[i];
  out << header << '\n' << tsv_line(body, keys);
}

// ---------------------------------------------------------------------------
// Command line

namespace detail {

struct Args {
  std::string input, output, witness, target, batch, format = "json", method = "auto";
  std::string graph_class = "path";
  int agent = 0, object = 0, size = 0, variables = 0;
  std::uint64_t seed = 1;
  std::size_t limit = kDefaultLimit;
  bool clique = false, pareto = false;
};

inline Method parse_method(const std::string& text) {
  if (text == "fast") return Method::Fast;
  if (text == "oracle") return Method::Oracle;
  return Method::Auto;
}

inline GraphKind parse_kind(const std::string& text) {
  for (GraphKind k : {GraphKind::Path, GraphKind::Star, GraphKind::GeneralizedStar,
                      GraphKind::Tree, GraphKind::Clique}) {
    if (to_string(k) == text) return k;
  }
  throw UsageError("unknown class \"" + text + "\"");
}

inline ObjectQuery object_query(const Args& args, const InstanceDocument& doc) {
  if (args.agent != 0 || args.object != 0) {
    if (args.agent == 0 || args.object == 0) {
      throw UsageError("--agent and --object must be given together");
    }
    return {args.agent - 1, args.object - 1};
  }
  if (!doc.query) throw UsageError("no query: pass --agent and --object");
  return *doc.query;
}

inline Matching target_matching(const Args& args, const InstanceDocument& doc) {
  if (!args.target.empty()) return parse_matching(read_file(args.target), doc.instance.n());
  if (!doc.target) throw UsageError("no target: pass --target");
  return *doc.target;
}

inline Report solve_one(const std::string& question, const Args& args, const Settings& settings,
                        const std::string& file) {
  const InstanceDocument doc = parse_instance_document(read_file(file));
  if (question == "ro") return solve_object(doc.instance, object_query(args, doc), settings);
  if (question == "rm") return solve_matching(doc.instance, target_matching(args, doc), settings);
  return solve_pareto(doc.instance, settings);
}

/// Runs `work`, turning library errors into a usage report.
template <class Work>
Report guarded(Work&& work) {
  try {
    return work();
  } catch (const TruncatedError& e) {
    return {{{"error", e.what()}}, kTruncated, std::nullopt};
  } catch (const Error& e) {
    return {{{"error", e.what()}}, kUsage, std::nullopt};
  }
}

inline int combine(int a, int b) {
  // Usage errors dominate, then truncation, then NO.
  for (int s : {kUsage, kTruncated, kNo}) {
    if (a == s || b == s) return s;
  }
  return kYes;
}

inline int run_solve(const std::string& question, const Args& args, const Settings& settings,
                     std::ostream& out) {
  const bool tsv = args.format == "tsv";
  if (args.batch.empty()) {
    if (args.input.empty()) throw UsageError("pass -i <instance> or --batch <dir>");
    const Report report = solve_one(question, args, settings, args.input);
    if (!args.witness.empty() && report.witness) {
      write_file(args.witness, witness_to_json(*report.witness).dump(2) + "\n");
    }
    print(out, report.body, tsv);
    return report.status;
  }
  if (!args.witness.empty()) throw UsageError("--witness cannot be combined with --batch");

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(args.batch)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<std::future<Report>> pending;
  for (const auto& file : files) {
    pending.push_back(std::async(std::launch::async, [&, file] {
      return guarded([&] { return solve_one(question, args, settings, file.string()); });
    }));
  }
  int status = kYes;
  json results = json::array();
  for (std::size_t i = 0; i < files.size(); ++i) {
    Report r = pending[i].get();
    r.body["file"] = files[i].filename().string();
    status = combine(status, r.status);
    results.push_back(std::move(r.body));
  }
  if (!tsv) {
    out << json{{"results", results}}.dump() << '\n';
    return status;
  }
  std::vector<std::string> keys;
  for (const auto& r : results) {
    for (const auto& k : keys_of(r)) {
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
    }
  }
  std::sort(keys.begin(), keys.end());
  std::string header;
  for (std::size_t i = 0; i < keys.size(); ++i) header += (i ? "\t" : "") + keys[i];
  out << header << '\n';
  for (const auto& r : results) out << tsv_line(r, keys);
  return status;
}

inline int run_classify(const Args& args, std::ostream& out) {
  const Instance instance = parse_instance(read_file(args.input));
  const GraphClass cls = classify_graph(instance);
  json body{{"class", to_string(cls.kind)}, {"n", instance.n()}};
  if (cls.center != kNone) body["center"] = cls.center + 1;
  if (cls.kind == GraphKind::GeneralizedStar) body["branches"] = cls.branches.size();
  print(out, body, args.format == "tsv");
  return kYes;
}

inline int run_enum(const Args& args, const Settings& settings, std::ostream& out) {
  const Instance instance = parse_instance(read_file(args.input));
  const ReachSet reach = enumerate_reachable(instance, settings.limit);
  json list = json::array();
  for (const auto& m : reach.matchings()) list.push_back(matching_to_json(m));
  const json body{{"states", reach.size()}, {"truncated", reach.truncated()}, {"matchings", list}};
  if (args.format == "tsv") {
    print(out, json{{"states", reach.size()}, {"truncated", reach.truncated()}}, true);
  } else {
    out << body.dump() << '\n';
  }
  return reach.truncated() ? kTruncated : kYes;
}

inline int run_verify(const Args& args, std::ostream& out) {
  const InstanceDocument doc = parse_instance_document(read_file(args.input));
  if (args.witness.empty()) throw UsageError("pass --witness <file>");
  const SwapSequence swaps = parse_witness(read_file(args.witness), doc.instance.n());
  json body{{"swaps", swaps.size()}};
  int status = kYes;
  try {
    const Matching final_matching = validate_sequence(doc.instance, doc.instance.initial(), swaps);
    body["valid"] = true;
    body["matching"] = matching_to_json(final_matching);
    if (!args.target.empty() || doc.target) {
      const bool hit = final_matching == target_matching(args, doc);
      body["reaches_target"] = hit;
      if (!hit) status = kNo;
    }
  } catch (const SwapError& e) {
    body["valid"] = false;
    body["failed_swap"] = e.index() + 1;
    body["error"] = e.what();
    status = kNo;
  }
  print(out, body, args.format == "tsv");
  return status;
}

inline int run_reduce(const std::string& kind, const Args& args, std::ostream& out) {
  if (args.input.empty()) throw UsageError("pass -i <input>");
  InstanceDocument doc;
  json summary{{"reduction", kind}};
  if (kind == "ro2rm") {
    const InstanceDocument input = parse_instance_document(read_file(args.input));
    const auto q = object_query(args, input);
    auto built = reductions::ro_to_rm(input.instance, q,
                                      args.clique ? reductions::TargetGraph::Clique
                                                  : reductions::TargetGraph::General);
    doc = {std::move(built.instance), std::nullopt, std::move(built.target)};
    summary["question"] = args.pareto ? "pareto-efficient" : "reachable-matching";
  } else {
    const auto formula = reductions::parse_2p1n(read_file(args.input));
    auto built = kind == "sat2clique" ? reductions::sat_to_clique_ro(formula)
                                      : reductions::sat_to_genstar_ro(formula);
    doc = {std::move(built.instance), built.query, std::nullopt};
    summary["variables"] = formula.variables;
    summary["clauses"] = formula.clause_count();
    summary["question"] = "reachable-object";
    summary["query"] = {{"agent", built.query.agent + 1}, {"object", built.query.object + 1}};
  }
  json document = document_to_json(doc);
  if (args.pareto) {
    // Every agent gets its favourite in the target, so it dominates every
    // other matching: a Pareto-efficient reachable matching equals the
    // target exactly when the target is reachable.
    document["question"] = "pareto-efficient";
  }
  summary["objects"] = doc.instance.n();
  summary["class"] = to_string(classify_graph(doc.instance).kind);
  if (args.output.empty()) {
    out << document.dump() << '\n';
  } else {
    write_file(args.output, document.dump() + "\n");
    print(out, summary, args.format == "tsv");
  }
  return kYes;
}

inline int run_gen(const std::string& kind, const Args& args, std::ostream& out) {
  if (kind == "cnf") {
    if (args.variables < 1) throw UsageError("--vars must be at least 1");
    emit(args.output, reductions::to_dimacs(reductions::gen_random_2p1n(args.variables, args.seed)),
         out);
    return kYes;
  }
  if (args.size < 1) throw UsageError("--n must be at least 1");
  const GraphKind k = parse_kind(args.graph_class);
  Instance instance;
  try {
    instance = random_instance(k, args.size, args.seed);
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
  emit(args.output, instance_to_json(instance).dump() + "\n", out);
  return kYes;
}

}  // namespace detail

inline int run(const std::vector<std::string>& arguments, std::ostream& out, std::ostream& err) {
  detail::Args args;
  CLI::App app{"Swap dynamics in housing markets on object networks", "swapdyn"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--limit", args.limit, "Oracle state limit")->check(CLI::PositiveNumber);
  app.add_option("--seed", args.seed, "Random seed");
  app.add_option("--method", args.method, "Solver choice")
      ->check(CLI::IsMember({"auto", "fast", "oracle"}));
  app.add_option("--format", args.format, "Decision output format")
      ->check(CLI::IsMember({"json", "tsv"}));

  auto input = [&](CLI::App* cmd, const char* what) {
    return cmd->add_option("-i,--input", args.input, what);
  };

  auto* classify = app.add_subcommand("classify", "Report the network class");
  input(classify, "Instance document")->required();

  auto* solve = app.add_subcommand("solve", "Answer a question about an instance");
  solve->require_subcommand(1);
  std::map<std::string, CLI::App*> questions;
  for (const char* name : {"ro", "rm", "pe"}) {
    auto* q = solve->add_subcommand(name, name == std::string("ro")   ? "Reachable object"
                                          : name == std::string("rm") ? "Reachable matching"
                                                                      : "Pareto-efficient matching");
    input(q, "Instance document");
    q->add_option("--batch", args.batch, "Solve every .json file in a directory")
        ->check(CLI::ExistingDirectory);
    q->add_option("--witness", args.witness, "Write the swap sequence here");
    questions[name] = q;
  }
  questions["ro"]->add_option("--agent", args.agent, "Agent (1-based)");
  questions["ro"]->add_option("--object", args.object, "Object (1-based)");
  questions["rm"]->add_option("--target", args.target, "Target matching document");

  auto* oracle = app.add_subcommand("oracle", "Exhaustive search");
  oracle->require_subcommand(1);
  auto* enumerate = oracle->add_subcommand("enum", "List every reachable matching");
  input(enumerate, "Instance document")->required();

  auto* verify = app.add_subcommand("verify", "Replay a witness");
  input(verify, "Instance document")->required();
  verify->add_option("--witness", args.witness, "Witness document")->required();
  verify->add_option("--target", args.target, "Expected final matching");

  auto* reduce = app.add_subcommand("reduce", "Build hard instances");
  reduce->require_subcommand(1);
  std::map<std::string, CLI::App*> reductions_by_name;
  const std::pair<const char*, const char*> kinds[] = {
      {"sat2clique", "2P1N formula to a reachable-object question on a clique"},
      {"sat2genstar", "2P1N formula to a reachable-object question on a generalized star"},
      {"ro2rm", "Reachable-object question to a reachable-matching question"}};
  for (const auto& [name, about] : kinds) {
    auto* r = reduce->add_subcommand(name, about);
    input(r, "DIMACS formula or instance document")->required();
    r->add_option("-o,--output", args.output, "Output instance document");
    reductions_by_name[name] = r;
  }
  reductions_by_name["ro2rm"]->add_option("--agent", args.agent, "Query agent (1-based)");
  reductions_by_name["ro2rm"]->add_option("--object", args.object, "Query object (1-based)");
  reductions_by_name["ro2rm"]->add_flag("--clique", args.clique, "Complete network on the output");
  reductions_by_name["ro2rm"]->add_flag("--pe", args.pareto,
                                        "Mark the output as a Pareto-efficiency question");

  auto* gen = app.add_subcommand("gen", "Generate random inputs");
  gen->require_subcommand(1);
  auto* gen_instance = gen->add_subcommand("instance", "Random instance");
  gen_instance->add_option("--class", args.graph_class, "Network class")
      ->check(CLI::IsMember({"path", "star", "generalized-star", "tree", "clique"}));
  gen_instance->add_option("--n", args.size, "Number of agents")->required();
  gen_instance->add_option("-o,--output", args.output, "Output file (default stdout)");
  auto* gen_cnf = gen->add_subcommand("cnf", "Random 2P1N formula");
  gen_cnf->add_option("--vars", args.variables, "Number of variables")->required();
  gen_cnf->add_option("-o,--output", args.output, "Output file (default stdout)");

  std::vector<const char*> argv{"swapdyn"};
  for (const auto& a : arguments) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kYes : kUsage;
  }

  const Settings settings{detail::parse_method(args.method), args.limit};
  try {
    if (classify->parsed()) return detail::run_classify(args, out);
    if (enumerate->parsed()) return detail::run_enum(args, settings, out);
    if (verify->parsed()) return detail::run_verify(args, out);
    for (const auto& [name, cmd] : questions) {
      if (cmd->parsed()) return detail::run_solve(name, args, settings, out);
    }
    for (const auto& [name, cmd] : reductions_by_name) {
      if (cmd->parsed()) return detail::run_reduce(name, args, out);
    }
    if (gen_instance->parsed()) return detail::run_gen("instance", args, out);
    if (gen_cnf->parsed()) return detail::run_gen("cnf", args, out);
  } catch (const TruncatedError& e) {
    err << "swapdyn: " << e.what() << '\n';
    return kTruncated;
  } catch (const Error& e) {
    err << "swapdyn: " << e.what() << '\n';
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "swapdyn: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace swapdyn::cli
