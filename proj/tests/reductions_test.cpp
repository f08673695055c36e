#include <catch2/catch_amalgamated.hpp>

#include "swapdyn/core/classify.hpp"
#include "swapdyn/core/io.hpp"
#include "swapdyn/generate.hpp"
#include "swapdyn/oracle.hpp"
#include "swapdyn/path/path.hpp"
#include "swapdyn/reductions/cnf.hpp"
#include "swapdyn/reductions/constructions.hpp"
#include "support/fixtures.hpp"

using namespace swapdyn;
using namespace swapdyn::reductions;

namespace {

const char* const kF1 = "c (x1)(x1)(-x1)\np cnf 1 3\n1 0\n1 0\n-1 0\n";
const char* const kF2 = "p cnf 2 3\n1 -2 0\n1 2 0\n-1 2 0\n";

bool decides_yes(const ObjectQuestion& q) {
  const auto d = oracle_decide_object(q.instance, q.query.agent, q.query.object);
  REQUIRE(d.verdict != Verdict::Inconclusive);
  return d.verdict == Verdict::Yes;
}

}  // namespace

TEST_CASE("DIMACS parsing") {
  const Cnf cnf = parse_dimacs(kF2);
  CHECK(cnf.variables == 2);
  CHECK(cnf.clauses == std::vector<std::vector<int>>{{1, -2}, {1, 2}, {-1, 2}});
  // Clauses may span lines.
  CHECK(parse_dimacs("p cnf 2 2\n1\n-2 0 2 0\n").clauses ==
        std::vector<std::vector<int>>{{1, -2}, {2}});
  CHECK_THROWS_AS(parse_dimacs("1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 2\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\nx 0\n"), ParseError);
}

TEST_CASE("occurrence discipline") {
  const Cnf2p1n f1 = parse_2p1n(kF1);
  CHECK(f1.first == std::vector<int>{0});
  CHECK(f1.second == std::vector<int>{1});
  CHECK(f1.negated == std::vector<int>{2});
  CHECK_NOTHROW(parse_2p1n(kF2));

  try {
    parse_2p1n("p cnf 1 2\n1 0\n-1 0\n");
    FAIL("expected an occurrence error");
  } catch (const InstanceError& err) {
    CHECK_THAT(err.what(), Catch::Matchers::ContainsSubstring("x1"));
  }
  CHECK_THROWS_AS(parse_2p1n("p cnf 1 2\n1 1 0\n-1 0\n"), InstanceError);
  CHECK_THROWS_AS(parse_2p1n("p cnf 1 2\n1 -1 0\n1 0\n"), InstanceError);
  CHECK_THROWS_AS(parse_2p1n("p cnf 1 4\n1 0\n1 0\n-1 0\n0\n"), InstanceError);
}

TEST_CASE("brute_sat") {
  CHECK_FALSE(brute_sat(parse_2p1n(kF1)));
  const auto model = brute_sat(parse_2p1n(kF2));
  REQUIRE(model);
  CHECK(*model == std::vector<bool>{true, true});
  const auto empty = brute_sat(Cnf2p1n{});
  REQUIRE(empty);
  CHECK(empty->empty());
}

TEST_CASE("random formulas obey the discipline and the seed") {
  for (int n = 1; n <= 30; ++n) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Cnf2p1n f = gen_random_2p1n(n, seed);
      CHECK(f.variables == n);
      CHECK(f.clause_count() >= 3);
      CHECK(f.clause_count() <= 3 * n);
      std::size_t occurrences = 0;
      for (const auto& c : f.clauses) occurrences += c.size();
      CHECK(occurrences == static_cast<std::size_t>(3 * n));
      CHECK_NOTHROW(parse_2p1n(to_dimacs(f)));
      CHECK(gen_random_2p1n(n, seed).clauses == f.clauses);
    }
  }
  const Cnf2p1n one = gen_random_2p1n(1, 99);
  CHECK(one.clause_count() == 3);
  CHECK_THROWS_AS(gen_random_2p1n(0, 1), PreconditionError);
}

TEST_CASE("clique construction") {
  const Cnf2p1n f1 = parse_2p1n(kF1);
  const Cnf2p1n f2 = parse_2p1n(kF2);
  const auto q1 = sat_to_clique_ro(f1);
  CHECK(q1.instance.n() == 11);
  CHECK(q1.query.agent == clique_ids::w(2));
  CHECK(q1.query.object == clique_ids::u(0));
  CHECK(classify_graph(q1.instance).kind == GraphKind::Clique);
  CHECK(sat_to_clique_ro(f2).instance.n() == 13);

  // The last w-agent lists every clause object in descending rank order.
  const auto& chain = q1.instance.preference(clique_ids::w(2));
  for (int r = 0; r < 9; ++r) CHECK(clique_rank(f1, chain[r]) == r + 1);
  CHECK(clique_rank(f1, clique_ids::x1(f1, 0)) == 0);

  // f2: x2 occurs negated in clause 1 and positively in clauses 2 and 3;
  // the negated occurrence comes first, so its pair leads.
  const auto q2 = sat_to_clique_ro(f2);
  const auto& x2_list = q2.instance.preference(clique_ids::x2(f2, 1));
  CHECK(std::vector<Object>(x2_list.begin(), x2_list.begin() + 6) ==
        std::vector<Object>{clique_ids::w(0), clique_ids::v(0), clique_ids::w(2),
                            clique_ids::v(2), clique_ids::x1(f2, 1), clique_ids::x2(f2, 1)});

  CHECK_FALSE(decides_yes(q1));
  CHECK(decides_yes(q2));
}

TEST_CASE("generalized-star construction") {
  const Cnf2p1n f1 = parse_2p1n(kF1);
  const auto q1 = sat_to_genstar_ro(f1);
  CHECK(q1.instance.n() == 12);
  const GraphClass cls = classify_graph(q1.instance);
  CHECK(cls.kind == GraphKind::GeneralizedStar);
  CHECK(cls.center == star_ids::stair(3));
  CHECK(q1.query.agent == star_ids::stair(0));
  CHECK(q1.query.object == star_ids::stair(3));
  CHECK_FALSE(decides_yes(q1));
  CHECK(decides_yes(sat_to_genstar_ro(parse_2p1n(kF2))));
}

TEST_CASE("both constructions agree with brute force on small formulas") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Cnf2p1n f = gen_random_2p1n(2, seed);
    const bool sat = brute_sat(f).has_value();
    CHECK(decides_yes(sat_to_clique_ro(f)) == sat);
    CHECK(decides_yes(sat_to_genstar_ro(f)) == sat);
  }
}

TEST_CASE("rank bounds hold on every discovered swap") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Cnf2p1n f = gen_random_2p1n(2, seed);
    const auto q = sat_to_clique_ro(f);
    const auto reach = enumerate_reachable(q.instance);
    REQUIRE_FALSE(reach.truncated());
    for (std::size_t s = 1; s < reach.size(); ++s) {
      const auto problem = rank_step_violation(f, reach.matching(reach.parent(s)), reach.matching(s));
      CHECK_FALSE(problem.has_value());
    }
  }
  // The checker does fire: a direct jump of the last w-agent to u1.
  const Cnf2p1n f1 = parse_2p1n(kF1);
  Matching jumped = Matching::identity(11);
  jumped.exchange(clique_ids::u(0), clique_ids::w(2));
  CHECK(rank_step_violation(f1, Matching::identity(11), jumped).has_value());
}

TEST_CASE("ro_to_rm layout") {
  const Instance i1 = fixtures::i1();
  const auto out = ro_to_rm(i1, {0, 2});
  CHECK(out.instance.n() == 6);
  CHECK(out.order == std::vector<Agent>{0, 1, 2});
  // a*_i -> b_i, a_1 -> b*_n, a_n -> b*_1, a_i -> b*_i otherwise.
  CHECK(out.target == Matching::from_objects(std::vector<Object>{5, 4, 3, 0, 1, 2}));
  const Graph& g = out.instance.network();
  CHECK(g.edges().size() == 2 + 3 + 3);
  CHECK(g.has_edge(0, 3));
  CHECK(g.has_edge(3, 5));
  CHECK_FALSE(g.has_edge(0, 2));

  const Instance k3(i1.preferences(), Graph::clique(3));
  const auto clique = ro_to_rm(k3, {0, 2}, TargetGraph::Clique);
  CHECK(classify_graph(clique.instance).kind == GraphKind::Clique);
  CHECK(clique.target == out.target);

  // Agent 2 asks for object 1: agent 2 is relabelled first, agent 1 last.
  CHECK(ro_to_rm(i1, {1, 0}).order == std::vector<Agent>{1, 2, 0});
  CHECK_THROWS_AS(ro_to_rm(i1, {0, 0}), PreconditionError);
  CHECK_THROWS_AS(ro_to_rm(fixtures::i3().with_initial(Matching::identity(2)), {0, 5}),
                  PreconditionError);
}

TEST_CASE("ro_to_rm preserves the answer") {
  Rng rng(11);
  for (int round = 0; round < 40; ++round) {
    const int n = rng.between(2, 4);
    const Graph g = round % 2 == 0 ? random_tree(n, rng) : Graph::star(n, 0);
    const Instance inst(random_preferences(n, rng), g);
    const Agent a = rng.between(0, n - 1);
    Object b = rng.between(0, n - 1);
    if (b == a) b = (b + 1) % n;
    const bool ro = oracle_decide_object(inst, a, b).verdict == Verdict::Yes;
    const auto out = ro_to_rm(inst, {a, b});
    const auto rm = oracle_decide_matching(out.instance, out.target);
    REQUIRE(rm.verdict != Verdict::Inconclusive);
    CHECK((rm.verdict == Verdict::Yes) == ro);
  }
}

TEST_CASE("ro_to_rm on clique inputs, both targets") {
  Rng rng(13);
  for (int round = 0; round < 30; ++round) {
    const int n = rng.between(3, 4);
    const Instance inst = random_instance(GraphKind::Clique, n, rng);
    const Agent a = rng.between(0, n - 1);
    const Object b = (a + rng.between(1, n - 1)) % n;
    const bool ro = oracle_decide_object(inst, a, b).verdict == Verdict::Yes;
    for (TargetGraph t : {TargetGraph::General, TargetGraph::Clique}) {
      const auto out = ro_to_rm(inst, {a, b}, t);
      const auto rm = oracle_decide_matching(out.instance, out.target);
      REQUIRE(rm.verdict != Verdict::Inconclusive);
      CHECK((rm.verdict == Verdict::Yes) == ro);
    }
  }
  CHECK_THROWS_AS(ro_to_rm(fixtures::i1(), {0, 2}, TargetGraph::Clique), ClassError);
}

TEST_CASE("constructions survive a document round trip") {
  const Cnf2p1n f2 = parse_2p1n(kF2);
  for (const auto& q : {sat_to_clique_ro(f2), sat_to_genstar_ro(f2)}) {
    const InstanceDocument doc{q.instance, q.query, std::nullopt};
    const auto back = parse_instance_document(document_to_json(doc).dump());
    CHECK(back.instance.preferences() == q.instance.preferences());
    CHECK(back.instance.network().edges() == q.instance.network().edges());
    REQUIRE(back.query);
    CHECK(back.query->agent == q.query.agent);
    CHECK(back.query->object == q.query.object);
  }
}
