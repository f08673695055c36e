#include <catch2/catch_amalgamated.hpp>

#include "support/fixtures.hpp"
#include "swapdyn/generate.hpp"
#include "swapdyn/oracle.hpp"
#include "swapdyn/path/path.hpp"

using namespace swapdyn;
using namespace swapdyn::path;
using fixtures::matching;

namespace {

PrefixMatching prefix_of(int len, std::initializer_list<int> positions) {
  PrefixMatching p(len);
  for (int x : positions) p.push(x - 1);
  return p;
}

}  // namespace

TEST_CASE("bounds") {
  const auto b1 = compute_bounds(fixtures::i1());
  CHECK(b1.left == std::vector<int>{0, 0, 1});
  CHECK(b1.right == std::vector<int>{2, 1, 2});

  const auto b3 = compute_bounds(fixtures::i3());
  CHECK(b3.left == std::vector<int>{0, 0});
  CHECK(b3.right == std::vector<int>{1, 1});

  const auto pinned = compute_bounds(fixtures::self_loving(Graph::path(5)));
  for (int a = 0; a < 5; ++a) {
    CHECK(pinned.left[a] == a);
    CHECK(pinned.right[a] == a);
  }
}

TEST_CASE("bounds follow the path order, not object ids") {
  // Path 2 - 3 - 1; agent 2 sits at the left end.
  const Instance inst(fixtures::prefs({{3, 1, 2}, {3, 2, 1}, {1, 3, 2}}),
                      fixtures::edges(3, {{2, 3}, {3, 1}}));
  const Line line = canonical_line(inst);
  CHECK(line.object_at(0) == 0);
  CHECK(line.object_at(1) == 2);
  CHECK(line.object_at(2) == 1);
  const auto b = compute_bounds(line);
  // Agent 1 (line start 0) wants object 3 (position 1): right bound 1.
  CHECK(b.right[0] == 1);
}

TEST_CASE("greedy_extend follows the two-choice rule") {
  const Instance i1 = fixtures::i1();
  const Line l1 = canonical_line(i1);
  const auto b1 = compute_bounds(l1);
  int iterations = -1;
  const auto full = greedy_extend(b1, PrefixMatching(3), 2, &iterations);
  REQUIRE(full);
  CHECK(*full == std::vector<int>{2, 0, 1});
  CHECK(iterations == 2);

  const Instance stuck(fixtures::prefs({{2, 1}, {2, 1}}), Graph::path(2));
  const auto bs = compute_bounds(stuck);
  CHECK_FALSE(greedy_extend(bs, PrefixMatching(2), 1));

  const Instance any = random_instance(GraphKind::Path, 6, 3);
  const auto ba = compute_bounds(any);
  const auto forced = greedy_extend(ba, prefix_of(6, {1, 2, 3, 4, 5}), 5);
  REQUIRE(forced);
  CHECK(*forced == std::vector<int>{0, 1, 2, 3, 4, 5});

  CHECK_THROWS_AS(greedy_extend(b1, prefix_of(3, {3}), 2), PreconditionError);
}

TEST_CASE("prefix bookkeeping") {
  auto p = prefix_of(6, {3, 1});
  CHECK(p.max_matched() == 2);
  CHECK(p.min_unmatched() == 1);
  CHECK(p.admissible(1));
  CHECK(p.admissible(4));
  CHECK_FALSE(p.admissible(2));
  CHECK_FALSE(p.admissible(0));
  p.push(1);
  CHECK(p.min_unmatched() == 3);
  CHECK(PrefixMatching(4).max_matched() == -1);
}

TEST_CASE("reachable_matching") {
  CHECK(reachable_matching(fixtures::i1(), matching({3, 1, 2})));
  CHECK(reachable_matching(fixtures::i1(), Matching::identity(3)));
  CHECK_FALSE(reachable_matching(fixtures::i1(), matching({2, 3, 1})));
  CHECK_THROWS_AS(reachable_matching(fixtures::i1(), Matching(3)), PreconditionError);
  CHECK_THROWS_AS(reachable_matching(Instance(fixtures::prefs({{1, 2, 3}, {1, 2, 3}, {1, 2, 3}}),
                                              Graph::clique(3)),
                                     Matching::identity(3)),
                  ClassError);
}

TEST_CASE("reachable_object") {
  const auto yes = reachable_object(fixtures::i1(), 0, 2);
  CHECK(yes.reachable);
  CHECK(yes.matching == matching({3, 1, 2}));
  CHECK_FALSE(reachable_object(fixtures::i2(), 0, 1).reachable);
  CHECK(reachable_object(fixtures::i2(), 1, 1).reachable);
  // Leftward moves go through the mirrored line.
  const auto left = reachable_object(fixtures::i1(), 1, 0);
  CHECK(left.reachable);
  CHECK(left.matching.object_of(1) == 0);
  CHECK_FALSE(reachable_object(fixtures::i1(), 2, 0).reachable);
  CHECK_THROWS_AS(reachable_object(fixtures::i1(), 3, 0), PreconditionError);
}

TEST_CASE("best_next_match") {
  const Instance i1 = fixtures::i1();
  const Line l1 = canonical_line(i1);
  const auto b1 = compute_bounds(l1);
  CHECK(best_next_match(l1, b1, PrefixMatching(3)) == 2);
  CHECK(best_next_match(l1, b1, prefix_of(3, {3})) == 0);
  int probes = 0;
  CHECK(right_threshold(b1, PrefixMatching(3), &probes) == 2);
  CHECK(probes >= 1);
  CHECK(right_threshold(b1, prefix_of(3, {3})) == std::nullopt);

  const Instance pinned = fixtures::self_loving(Graph::path(5));
  const Line lp = canonical_line(pinned);
  const auto bp = compute_bounds(lp);
  CHECK(best_next_match(lp, bp, prefix_of(5, {1, 2})) == 2);
}

TEST_CASE("pareto on the named instances") {
  CHECK(pareto(fixtures::i1()) == matching({3, 1, 2}));
  CHECK(pareto(fixtures::i2()) == Matching::identity(2));
  CHECK(pareto(fixtures::i3()) == matching({2, 1}));
  CHECK(pareto(fixtures::i1(), ThresholdMethod::Slack) == matching({3, 1, 2}));
}

TEST_CASE("path solvers agree with the oracle on random instances") {
  Rng rng(101);
  for (int round = 0; round < 400; ++round) {
    const int n = rng.between(1, 7);
    Instance inst = random_instance(GraphKind::Path, n, rng);
    if (round % 4 == 0) {
      // Relabel the path so objects do not follow it in id order.
      const auto perm = rng.permutation(n);
      std::vector<Edge> edges;
      for (int i = 0; i + 1 < n; ++i) edges.emplace_back(perm[i], perm[i + 1]);
      inst = Instance(inst.preferences(), Graph(n, edges));
    }
    const auto reach = enumerate_reachable(inst);
    for (Agent a = 0; a < n; ++a) {
      for (Object b = 0; b < n; ++b) {
        const auto fast = reachable_object(inst, a, b);
        const auto slow = oracle_decide_object(inst, a, b);
        REQUIRE(fast.reachable == (slow.verdict == Verdict::Yes));
        if (fast.reachable) {
          CHECK(fast.matching.object_of(a) == b);
          CHECK(reach.contains(fast.matching));
        }
      }
    }
    for (const auto& m : reach.matchings()) CHECK(reachable_matching(inst, m));
    const auto pe = pareto(inst);
    CHECK(pe == serial_dictatorship_reference(inst, reach, dictator_order(inst)));
    CHECK(pe == pareto(inst, ThresholdMethod::Slack));
  }
}

TEST_CASE("greedy success is monotone in the first position") {
  Rng rng(7);
  for (int round = 0; round < 300; ++round) {
    const int n = rng.between(2, 9);
    const Instance inst = random_instance(GraphKind::Path, n, rng);
    const Line line = canonical_line(inst);
    const auto bounds = compute_bounds(line);
    // Walk a random serial-dictatorship-like prefix and test every stage.
    PrefixMatching prefix(n);
    while (!prefix.complete()) {
      const int k = prefix.size();
      bool seen_failure = false;
      for (int b0 = prefix.max_matched() + 1; b0 <= bounds.right[k]; ++b0) {
        int iterations = 0;
        const auto result = greedy_extend(bounds, prefix, b0, &iterations);
        CHECK(iterations <= n - k - 1);
        if (result) {
          CHECK_FALSE(seen_failure);
          CHECK(reachable_positions(bounds, *result));
        } else {
          seen_failure = true;
        }
      }
      prefix.push(best_next_match(line, bounds, prefix));
    }
  }
}
