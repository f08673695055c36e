#pragma once

// Formulas in which every variable occurs exactly three times, in three
// distinct clauses: twice as a positive literal and once negated.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "swapdyn/core/error.hpp"
#include "swapdyn/generate.hpp"

namespace swapdyn::reductions {

/// A CNF formula as read from DIMACS: literals are signed 1-based variables.
struct Cnf {
  int variables = 0;
  std::vector<std::vector<int>> clauses;
};

/// A CNF that passed the occurrence check. Clause indices are 0-based;
/// `first[v] < second[v]` are the clauses holding the positive literal of
/// variable v + 1 and `negated[v]` the clause holding its negation.
struct Cnf2p1n {
  int variables = 0;
  std::vector<std::vector<int>> clauses;
  std::vector<int> first;
  std::vector<int> second;
  std::vector<int> negated;

  int clause_count() const { return static_cast<int>(clauses.size()); }
};

inline Cnf parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  Cnf cnf;
  int declared = -1;
  std::vector<int> pending;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string head;
    if (!(tokens >> head)) continue;
    if (head == "c") continue;
    if (head == "%") break;
    const std::string where = "line " + std::to_string(line_no);
    if (head == "p") {
      std::string format;
      if (declared >= 0) throw ParseError(where + ": second problem line");
      if (!(tokens >> format >> cnf.variables >> declared) || format != "cnf" ||
          cnf.variables < 0 || declared < 0) {
        throw ParseError(where + ": expected \"p cnf <variables> <clauses>\"");
      }
      continue;
    }
    if (declared < 0) throw ParseError(where + ": clause before the problem line");
    tokens.clear();
    tokens.str(line);
    std::string word;
    while (tokens >> word) {
      char* end = nullptr;
      const long lit = std::strtol(word.c_str(), &end, 10);
      if (*end != '\0') throw ParseError(where + ": \"" + word + "\" is not an integer");
      if (lit == 0) {
        cnf.clauses.push_back(std::move(pending));
        pending.clear();
        continue;
      }
      if (std::labs(lit) > cnf.variables) {
        throw ParseError(where + ": literal " + word + " exceeds the declared " +
                         std::to_string(cnf.variables) + " variables");
      }
      pending.push_back(static_cast<int>(lit));
    }
  }
  if (declared < 0) throw ParseError("missing \"p cnf\" problem line");
  if (!pending.empty()) cnf.clauses.push_back(std::move(pending));
  if (static_cast<int>(cnf.clauses.size()) != declared) {
    throw ParseError("problem line declares " + std::to_string(declared) + " clauses, found " +
                     std::to_string(cnf.clauses.size()));
  }
  return cnf;
}

inline Cnf2p1n validate_2p1n(const Cnf& cnf) {
  const int n = cnf.variables;
  std::vector<std::vector<int>> positive(n), negative(n);
  for (std::size_t c = 0; c < cnf.clauses.size(); ++c) {
    const auto& clause = cnf.clauses[c];
    const std::string where = "clause " + std::to_string(c + 1);
    if (clause.empty()) throw InstanceError(where + " is empty");
    for (int lit : clause) {
      if (lit == 0 || std::abs(lit) > n) {
        throw InstanceError(where + ": literal " + std::to_string(lit) + " out of range");
      }
      (lit > 0 ? positive : negative)[std::abs(lit) - 1].push_back(static_cast<int>(c));
    }
  }
  Cnf2p1n out{n, cnf.clauses, std::vector<int>(n), std::vector<int>(n), std::vector<int>(n)};
  for (int v = 0; v < n; ++v) {
    const std::string name = "x" + std::to_string(v + 1);
    const auto total = positive[v].size() + negative[v].size();
    if (positive[v].size() != 2 || negative[v].size() != 1) {
      throw InstanceError("variable " + name + " occurs " + std::to_string(total) + " times (" +
                          std::to_string(positive[v].size()) + " positive, " +
                          std::to_string(negative[v].size()) +
                          " negated); expected 2 positive and 1 negated");
    }
    const int p1 = positive[v][0], p2 = positive[v][1], q = negative[v][0];
    if (p1 == p2 || p1 == q || p2 == q) {
      throw InstanceError("variable " + name + " occurs twice in clause " +
                          std::to_string((p1 == p2 || p1 == q ? p1 : p2) + 1));
    }
    out.first[v] = p1;
    out.second[v] = p2;
    out.negated[v] = q;
  }
  return out;
}

inline Cnf2p1n parse_2p1n(std::string_view text) { return validate_2p1n(parse_dimacs(text)); }

inline std::string to_dimacs(const Cnf2p1n& formula) {
  std::ostringstream out;
  out << "p cnf " << formula.variables << ' ' << formula.clause_count() << '\n';
  for (const auto& clause : formula.clauses) {
    for (int lit : clause) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

inline constexpr int kBruteSatMaxVariables = 24;

/// Exhaustive search; bit v of the returned mask is the value of x(v+1).
inline std::optional<std::vector<bool>> brute_sat(const Cnf2p1n& formula) {
  const int n = formula.variables;
  if (n > kBruteSatMaxVariables) {
    throw PreconditionError("brute_sat handles at most " +
                            std::to_string(kBruteSatMaxVariables) + " variables");
  }
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    const bool ok = std::all_of(formula.clauses.begin(), formula.clauses.end(), [&](const auto& c) {
      return std::any_of(c.begin(), c.end(), [&](int lit) {
        const bool value = (mask >> (std::abs(lit) - 1)) & 1U;
        return lit > 0 ? value : !value;
      });
    });
    if (ok) {
      std::vector<bool> assignment(n);
      for (int v = 0; v < n; ++v) assignment[v] = (mask >> v) & 1U;
      return assignment;
    }
  }
  return std::nullopt;
}

namespace detail {

/// Number of variables whose three slots share a clause.
inline int collisions(const std::vector<int>& slots) {
  int bad = 0;
  for (std::size_t v = 0; v + 2 < slots.size(); v += 3) {
    const int a = slots[v], b = slots[v + 1], c = slots[v + 2];
    if (a == b || a == c || b == c) ++bad;
  }
  return bad;
}

}  // namespace detail

/// Random formula with `variables` variables and between 3 and 3n clauses.
/// Every clause receives at least one occurrence and at most n, which is
/// exactly what lets the occurrences be dealt out round-robin without a
/// variable repeating inside a clause; random collision-free exchanges then
/// scramble which variable got which clauses.
inline Cnf2p1n gen_random_2p1n(int variables, std::uint64_t seed) {
  if (variables < 1) throw PreconditionError("need at least one variable");
  Rng rng(seed);
  const int n = variables;
  const int m = rng.between(3, 3 * n);

  std::vector<int> load(m, 1);
  for (int extra = 3 * n - m; extra > 0; --extra) {
    int c = rng.between(0, m - 1);
    while (load[c] == n) c = rng.between(0, m - 1);
    ++load[c];
  }
  std::vector<int> sorted;
  for (int c = 0; c < m; ++c) sorted.insert(sorted.end(), load[c], c);

  // Slot 3v + k is the k-th occurrence of variable v; its value is a clause.
  std::vector<int> slots(3 * n);
  for (int t = 0; t < 3 * n; ++t) slots[3 * (t % n) + t / n] = sorted[t];
  for (int round = 0; round < 20 * n; ++round) {
    const auto i = static_cast<std::size_t>(rng.below(slots.size()));
    const auto j = static_cast<std::size_t>(rng.below(slots.size()));
    std::swap(slots[i], slots[j]);
    if (detail::collisions(slots) > 0) std::swap(slots[i], slots[j]);
  }

  Cnf cnf{n, std::vector<std::vector<int>>(m)};
  for (int v = 0; v < n; ++v) {
    const int neg = rng.between(0, 2);
    for (int k = 0; k < 3; ++k) {
      cnf.clauses[slots[3 * v + k]].push_back(k == neg ? -(v + 1) : v + 1);
    }
  }
  for (auto& clause : cnf.clauses) {
    std::sort(clause.begin(), clause.end(), [](int x, int y) { return std::abs(x) < std::abs(y); });
  }
  return validate_2p1n(cnf);
}

}  // namespace swapdyn::reductions
