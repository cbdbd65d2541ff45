#include <catch_amalgamated.hpp>

#include "brute.hpp"
#include "crautomata/crautomata.hpp"

using namespace cra;

TEST_CASE("xoshiro256** stream is fixed by the seed") {
  gen::Xoshiro256ss rng(0);
  CHECK(rng() == 0x99ec5f36cb75f2b4ULL);
  CHECK(rng() == 0xbf6e1f784956452aULL);
  CHECK(rng() == 0x1a5f849d4933e6e0ULL);

  gen::Xoshiro256ss bounded(123);
  std::vector<std::uint64_t> got;
  for (int i = 0; i < 15; ++i) got.push_back(bounded.below(5));
  CHECK(got == std::vector<std::uint64_t>{2, 3, 2, 0, 4, 4, 0, 0, 3, 4, 1, 3, 1, 1, 2});
}

TEST_CASE("random_dfa is reproducible") {
  auto d = gen::random_dfa(3, 2, 7);
  CHECK(d.table() == std::vector<State>{0, 2, 0, 1, 2, 2});
  CHECK(d.alphabet() == std::vector<std::string>{"a", "b"});
  CHECK(gen::random_dfa(6, 3, 99) == gen::random_dfa(6, 3, 99));
  CHECK_FALSE(gen::random_dfa(6, 3, 99) == gen::random_dfa(6, 3, 100));
  CHECK(gen::random_dfa(2, 30, 1).letter_name(27) == "x27");
}

TEST_CASE("cerny automaton") {
  auto c = gen::cerny(4);
  CHECK(c.table() == std::vector<State>{1, 1, 1, 2, 2, 3, 3, 0});
  CHECK(decide_complete_reachability(gen::cerny(5)).completely_reachable);
  CHECK_THROWS_AS(gen::cerny(1), UsageError);
}

TEST_CASE("E_5 transition table") {
  auto e5 = gen::e5();
  CHECK(e5.state_names() == std::vector<std::string>{"1", "2", "3", "4", "5"});
  CHECK(e5.letter_count() == 8);
  // Each a[i] has defect one with excluded state i.
  for (State i = 0; i < 5; ++i) {
    auto p = excl_dupl(e5, Word{i});
    CHECK(p.excl == StateSet(5, {i}));
  }
  CHECK(gen::fixed_example("e5") == e5);
  CHECK_THROWS_AS(gen::fixed_example("nope"), UsageError);
}

TEST_CASE("E_{n,k} family") {
  for (std::size_t n = 3; n <= 7; ++n) {
    for (std::size_t k = 2; k < n; ++k) {
      auto dfa = gen::e_family(n, k);
      auto l = n - k + 1;
      CHECK(dfa.letter_count() == n + (n - l));
      CHECK(oracle::is_cr_bruteforce(dfa));
    }
  }
  auto bad = gen::e_family(5, 4, true);
  CHECK(bad.letter_count() == 5 + 2);
  CHECK_FALSE(oracle::is_cr_bruteforce(bad));
  CHECK_THROWS_AS(gen::e_family(5, 1), UsageError);
  CHECK_THROWS_AS(gen::e_family(5, 5), UsageError);
  CHECK_THROWS_AS(gen::e_family(5, 3, true), UsageError);
}

TEST_CASE("words over the a-letters of E_{n,k} duplicate only low states") {
  gen::Xoshiro256ss rng(5);
  for (std::size_t n = 4; n <= 8; ++n) {
    for (std::size_t k = 2; k < n; ++k) {
      auto dfa = gen::e_family(n, k);
      auto l = n - k + 1;
      for (int trial = 0; trial < 200; ++trial) {
        Word w(1 + rng.below(10));
        for (auto& a : w) a = static_cast<Letter>(rng.below(n));
        for (auto q : excl_dupl(dfa, w).dupl) REQUIRE(q < l);
      }
    }
  }
}
