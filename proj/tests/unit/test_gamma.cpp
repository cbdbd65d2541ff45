#include <catch_amalgamated.hpp>

#include <set>

#include "brute.hpp"
#include "crautomata/crautomata.hpp"

using namespace cra;

namespace {

Letter L(const Dfa& dfa, const std::string& name) {
  const auto& a = dfa.alphabet();
  return static_cast<Letter>(std::find(a.begin(), a.end(), name) - a.begin());
}

// Vertex of level k whose leafage is the given 0-based set.
Vertex vertex(const GammaResult& r, std::size_t k, std::initializer_list<State> leafage) {
  StateSet want(r.forest.state_count(), leafage);
  const auto& level = r.forest.level(k);
  for (Vertex v = 0; v < level.size(); ++v) {
    if (level[v].leafage == want) return v;
  }
  FAIL("no vertex with the requested leafage");
  return 0;
}

std::set<Edge> edge_set(const GammaLevel& level) {
  auto e = level.graph.edges();
  return {e.begin(), e.end()};
}

}  // namespace

TEST_CASE("E_5 level 1") {
  auto e5 = gen::e5();
  auto r = build_gamma(e5);
  CHECK(edge_set(r.level(1)) == std::set<Edge>{{0, 1}, {1, 0}, {2, 0}, {3, 4}, {4, 3}});
  for (const auto& e : r.level(1).edges) {
    CHECK_FALSE(e.inherited);
    REQUIRE(e.forced_by);
    CHECK(*e.forced_by == Word{static_cast<Letter>(e.source)});
  }
}

TEST_CASE("E_5 level 2") {
  auto e5 = gen::e5();
  auto r = build_gamma(e5);
  REQUIRE(r.levels.size() >= 2);
  const auto& g2 = r.level(2);
  CHECK(r.forest.level(2).size() == 3);
  auto v12 = vertex(r, 2, {0, 1});
  auto v3 = vertex(r, 2, {2});
  auto v45 = vertex(r, 2, {3, 4});
  CHECK(g2.graph.edge_count() == 4);

  auto* inherited = g2.find_edge(v3, v12);
  REQUIRE(inherited);
  CHECK(inherited->inherited);
  CHECK_FALSE(inherited->forced_by);

  auto* e1 = g2.find_edge(v12, v3);
  REQUIRE(e1);
  CHECK(*e1->forced_by == Word{L(e5, "a[1,2]")});
  auto* e2 = g2.find_edge(v45, v3);
  REQUIRE(e2);
  CHECK(*e2->forced_by == Word{L(e5, "a[4,5]")});
  auto* e3 = g2.find_edge(v45, v12);
  REQUIRE(e3);
  CHECK(*e3->forced_by == Word{L(e5, "a[4,5]")});
}

TEST_CASE("E_5 level 3 and outcome") {
  auto e5 = gen::e5();
  auto r = build_gamma(e5);
  CHECK(r.outcome == Outcome::success);
  CHECK(r.terminal_step == 3);
  const auto& g3 = r.level(3);
  CHECK(is_strongly_connected(g3.graph));
  auto low = vertex(r, 3, {0, 1, 2});
  auto high = vertex(r, 3, {3, 4});
  auto* inh = g3.find_edge(high, low);
  REQUIRE(inh);
  CHECK(inh->inherited);
  auto* forced = g3.find_edge(low, high);
  REQUIRE(forced);
  CHECK_FALSE(forced->inherited);
  CHECK(*forced->forced_by == Word{L(e5, "a[1,3]")});

  // Forest: 5 leaves, 3 + 2 clusters, then the root.
  CHECK(r.forest.depth() == 4);
  CHECK(r.forest.level(2).size() == 3);
  CHECK(r.forest.level(3).size() == 2);
  CHECK(r.forest.level(4).size() == 1);
  CHECK(r.forest.level(4)[0].leafage.is_full());
}

TEST_CASE("first level equals the brute-force defect-one signatures") {
  for (const auto& c : brute::random_corpus(300)) {
    auto dfa = gen::random_dfa(c.n, c.m, c.seed);
    std::set<Edge> want;
    for (const auto& [sig, w] : brute::min_words_by_signature(dfa, 1)) {
      if (sig.excl.size() == 1) {
        for (auto d : sig.dupl) want.insert({sig.excl[0], d});
      }
    }
    auto cws = enumerate_canonical_words(dfa, 1);
    REQUIRE(edge_set(build_gamma1(dfa, cws)) == want);
  }
}

TEST_CASE("first level of C_n is complete") {
  for (std::size_t n = 2; n <= 6; ++n) {
    auto c = gen::cerny(n);
    auto cws = enumerate_canonical_words(c, 1);
    CHECK(build_gamma1(c, cws).graph.edge_count() == n * (n - 1));
  }
}

TEST_CASE("E_12 level 1 contains two six-cycles and keeps parity") {
  auto e12 = gen::e12();
  auto r = build_gamma(e12);
  auto edges = edge_set(r.level(1));
  for (Vertex k = 0; k < 12; ++k) CHECK(edges.contains({k, (k + 10) % 12}));
  // ab^6a has excl {0} and dupl {4}, so the graph has more than the cycle edges.
  CHECK(edges.contains({0, 4}));
  for (const auto& [s, t] : edges) CHECK(s % 2 == t % 2);
  CHECK(r.outcome == Outcome::success);
  CHECK(r.terminal_step == 2);
  CHECK(r.forest.level(2).size() == 2);
}

TEST_CASE("E_{n,k}: success at exactly step k, condensed first level is a star") {
  for (std::size_t n = 3; n <= 8; ++n) {
    for (std::size_t k = 2; k < n; ++k) {
      auto dfa = gen::e_family(n, k);
      auto r = build_gamma(dfa);
      INFO("n=" << n << " k=" << k);
      CHECK(r.outcome == Outcome::success);
      CHECK(r.terminal_step == k);

      auto g1 = r.level(1).graph;
      auto p = strongly_connected_components(g1);
      auto con = condensation(g1, p);
      CHECK(con.vertex_count() == k);
      CHECK(con.edge_count() == k - 1);
    }
  }
}

TEST_CASE("E'_{n,n-1} fails at step n-1 with witness {n}") {
  for (std::size_t n = 3; n <= 7; ++n) {
    auto dfa = gen::e_family(n, n - 1, true);
    auto r = build_gamma(dfa);
    INFO("n=" << n);
    CHECK(r.outcome == Outcome::failure);
    CHECK(r.terminal_step == n - 1);
    auto w = unreachable_witness(r, dfa);
    CHECK(w == StateSet(n, {static_cast<State>(n - 1)}));
    CHECK_FALSE(oracle::powerset_reach_map(dfa).contains(w));
  }
}

TEST_CASE("all letters of defect two: failure at step 1") {
  // 3 states, one letter mapping everything to 0.
  Dfa dfa(3, {"z"}, {0, 0, 0});
  auto r = build_gamma(dfa);
  CHECK(r.outcome == Outcome::failure);
  CHECK(r.terminal_step == 1);
  CHECK(r.level(1).graph.edge_count() == 0);
  auto w = unreachable_witness(r, dfa);
  CHECK(w.size() == 2);
  CHECK_FALSE(brute::reachable_subsets(dfa).contains(w.to_mask()));
}

TEST_CASE("unreachable_witness on success is a usage error") {
  auto e5 = gen::e5();
  CHECK_THROWS_AS(unreachable_witness(build_gamma(e5), e5), UsageError);
}

TEST_CASE("one-state automaton") {
  auto r = build_gamma(Dfa(1, {"a"}, {0}));
  CHECK(r.outcome == Outcome::success);
  CHECK(r.terminal_step == 1);
}

TEST_CASE("gamma invariants and oracle agreement on random automata") {
  for (const auto& c : brute::random_corpus(600)) {
    auto dfa = gen::random_dfa(c.n, c.m, c.seed);
    auto d = decide_complete_reachability(dfa);
    const auto& r = d.gamma;
    REQUIRE(d.completely_reachable == brute::is_cr(dfa));
    REQUIRE(r.terminal_step >= 1);
    REQUIRE(r.terminal_step <= c.n - 1);
    REQUIRE(r.forest.depth() == r.terminal_step + 1);
    for (std::size_t k = 1; k <= r.terminal_step; ++k) {
      const auto& level = r.level(k);
      REQUIRE(level.graph.vertex_count() == r.forest.level(k).size());
      // Every edge carries provenance and forcing words have defect k.
      for (const auto& e : level.edges) {
        REQUIRE(e.source != e.target);
        REQUIRE((e.inherited || e.forced_by));
        if (e.forced_by) {
          REQUIRE(defect(dfa, *e.forced_by) == k);
          auto sig = excl_dupl(dfa, *e.forced_by);
          REQUIRE(sig.excl.is_subset_of(r.forest.level(k)[e.source].leafage));
          REQUIRE(sig.dupl.intersects(r.forest.level(k)[e.target].leafage));
        }
      }
      // Leafages at each level partition Q.
      StateSet all(c.n);
      std::size_t total = 0;
      for (const auto& node : r.forest.level(k)) {
        all |= node.leafage;
        total += node.leafage.size();
      }
      REQUIRE(all.is_full());
      REQUIRE(total == c.n);
    }
    if (!d.completely_reachable) {
      auto w = unreachable_witness(r, dfa);
      REQUIRE(w.size() >= c.n - r.terminal_step);
      REQUIRE_FALSE(brute::reachable_subsets(dfa).contains(w.to_mask()));
    }
  }
}
