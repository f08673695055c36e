#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "support/brute.hpp"
#include "support/fixtures.hpp"
#include "swapdyn/generate.hpp"
#include "swapdyn/oracle.hpp"

using namespace swapdyn;
using fixtures::e;
using fixtures::matching;

TEST_CASE("enumerate_reachable on the named instances") {
  CHECK(enumerate_reachable(fixtures::i2()).size() == 1);

  const auto r3 = enumerate_reachable(fixtures::i3());
  CHECK(r3.size() == 2);
  CHECK(r3.contains(matching({2, 1})));

  const auto r1 = enumerate_reachable(fixtures::i1());
  CHECK_FALSE(r1.truncated());
  CHECK(r1.size() == 3);
  CHECK(r1.contains(Matching::identity(3)));
  CHECK(r1.contains(matching({2, 1, 3})));
  CHECK(r1.contains(matching({3, 1, 2})));
  CHECK_FALSE(r1.contains(matching({1, 3, 2})));
  CHECK(r1.matching(0) == Matching::identity(3));
}

TEST_CASE("every stored witness replays to its state") {
  Rng rng(5);
  for (int round = 0; round < 40; ++round) {
    const Instance inst = random_instance(GraphKind::Clique, 5, rng);
    const auto reach = enumerate_reachable(inst);
    for (std::size_t s = 0; s < reach.size(); ++s) {
      CHECK(validate_sequence(inst, inst.initial(), reach.witness(s)) == reach.matching(s));
    }
  }
}

TEST_CASE("reach sets match an independent closure and are closed") {
  Rng rng(17);
  for (int round = 0; round < 150; ++round) {
    const int n = rng.between(1, 6);
    const Graph g = round % 3 == 0 ? Graph::clique(std::max(n, 3))
                  : round % 3 == 1 ? random_tree(n, rng)
                                   : Graph::path(n);
    const Instance inst(random_preferences(g.n(), rng), g);
    const auto reach = enumerate_reachable(inst);
    std::set<brute::Key> mine;
    for (const auto& m : reach.matchings()) mine.insert(brute::key(m));
    CHECK(mine.size() == reach.size());
    CHECK(mine == brute::closure(inst));
    for (const auto& m : reach.matchings()) {
      for (const Edge& ed : inst.network().edges()) {
        if (swap_applicable(inst, m, ed)) CHECK(reach.contains(apply_swap(inst, m, ed)));
      }
    }
  }
}

TEST_CASE("non-identity initial matchings are respected") {
  const Instance inst = fixtures::i1().with_initial(matching({2, 1, 3}));
  const auto reach = enumerate_reachable(inst);
  CHECK(reach.size() == 2);
  CHECK(reach.contains(matching({3, 1, 2})));
}

TEST_CASE("truncation is flagged, not hidden") {
  Rng rng(2);
  const Instance inst = random_instance(GraphKind::Clique, 7, rng);
  const auto full = enumerate_reachable(inst);
  REQUIRE(full.size() > 3);
  const auto cut = enumerate_reachable(inst, 3);
  CHECK(cut.truncated());
  CHECK(cut.size() == 3);
  CHECK_THROWS_AS(oracle_pareto_front(inst, cut), TruncatedError);
  CHECK_THROWS_AS(serial_dictatorship_reference(inst, cut, {0, 1, 2, 3, 4, 5, 6}),
                  TruncatedError);
  CHECK_FALSE(enumerate_reachable(inst, full.size()).truncated());
}

TEST_CASE("oracle decisions") {
  const auto yes = oracle_decide_object(fixtures::i1(), 0, 2);
  CHECK(yes.verdict == Verdict::Yes);
  CHECK(yes.witness == SwapSequence{e(1, 2), e(2, 3)});
  CHECK(yes.reached == matching({3, 1, 2}));

  CHECK(oracle_decide_object(fixtures::i2(), 0, 1).verdict == Verdict::No);

  const auto self = oracle_decide_matching(fixtures::i1(), Matching::identity(3));
  CHECK(self.verdict == Verdict::Yes);
  CHECK(self.witness.empty());

  CHECK(oracle_decide_matching(fixtures::i1(), matching({1, 3, 2})).verdict == Verdict::No);
  CHECK_THROWS_AS(oracle_decide_object(fixtures::i1(), 3, 0), PreconditionError);
}

TEST_CASE("inconclusive when the limit cuts the search short") {
  Rng rng(2);
  const Instance inst = random_instance(GraphKind::Clique, 7, rng);
  const auto reach = enumerate_reachable(inst);
  // The last discovered state needs every earlier one to be stored first.
  const Matching last = reach.matching(reach.size() - 1);
  CHECK(oracle_decide_matching(inst, last, 2).verdict == Verdict::Inconclusive);
  const auto full = oracle_decide_matching(inst, last);
  CHECK(full.verdict == Verdict::Yes);
  CHECK(validate_sequence(inst, inst.initial(), full.witness) == last);
}

TEST_CASE("witnesses are shortest") {
  Rng rng(23);
  for (int round = 0; round < 30; ++round) {
    const Instance inst = random_instance(GraphKind::Clique, 5, rng);
    const auto reach = enumerate_reachable(inst);
    // BFS discovery order is nondecreasing in witness length.
    std::size_t prev = 0;
    for (std::size_t s = 0; s < reach.size(); ++s) {
      const std::size_t len = reach.witness(s).size();
      CHECK(len >= prev);
      prev = len;
    }
  }
}

TEST_CASE("pareto front") {
  CHECK(oracle_pareto_front(fixtures::i2()) == std::vector<Matching>{Matching::identity(2)});
  CHECK(oracle_pareto_front(fixtures::i3()) == std::vector<Matching>{matching({2, 1})});
  CHECK(oracle_pareto_front(fixtures::i1()) == std::vector<Matching>{matching({3, 1, 2})});

  Rng rng(31);
  for (int round = 0; round < 80; ++round) {
    const Instance inst = random_instance(GraphKind::Clique, rng.between(3, 6), rng);
    const auto reach = enumerate_reachable(inst);
    const auto front = oracle_pareto_front(inst, reach);
    std::set<brute::Key> mine;
    for (const auto& m : front) mine.insert(brute::key(m));
    CHECK(mine == brute::front(inst, brute::closure(inst)));
    for (const auto& x : front) {
      for (const auto& y : front) CHECK_FALSE(pareto_dominates(inst, x, y));
    }
  }
}

TEST_CASE("serial dictatorship reference") {
  CHECK(serial_dictatorship_reference(fixtures::i1(), {0, 1, 2}) == matching({3, 1, 2}));
  CHECK(serial_dictatorship_reference(fixtures::i2(), {1, 0}) == Matching::identity(2));
  CHECK(serial_dictatorship_reference(fixtures::i3(), {1, 0}) == matching({2, 1}));
  CHECK_THROWS_AS(serial_dictatorship_reference(fixtures::i1(), {0, 0, 2}), PreconditionError);

  Rng rng(41);
  for (int round = 0; round < 60; ++round) {
    const int n = rng.between(3, 6);
    const Instance inst = random_instance(GraphKind::Clique, n, rng);
    const auto reach = enumerate_reachable(inst);
    const auto front = oracle_pareto_front(inst, reach);
    const auto sd = serial_dictatorship_reference(inst, reach, rng.permutation(n));
    CHECK(std::find(front.begin(), front.end(), sd) != front.end());
  }
}
