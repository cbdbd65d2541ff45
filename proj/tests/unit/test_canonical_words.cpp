#include <catch_amalgamated.hpp>

#include "brute.hpp"
#include "crautomata/crautomata.hpp"

using namespace cra;

namespace {

void check_against_brute(const Dfa& dfa, std::size_t k) {
  auto cws = enumerate_canonical_words(dfa, k);
  auto want = brute::min_words_by_signature(dfa, k);
  REQUIRE(cws.size() == want.size());
  for (const auto& [sig, word] : want) {
    ExclDupl pair{StateSet::from_range(dfa.state_count(), sig.excl),
                  StateSet::from_range(dfa.state_count(), sig.dupl)};
    auto got = cws.find(pair);
    REQUIRE(got.has_value());
    REQUIRE(*got == word);
  }
}

}  // namespace

TEST_CASE("E_5 defect-1 signatures come from the five single-state letters") {
  auto e5 = gen::e5();
  auto cws = enumerate_canonical_words(e5, 1);
  auto xd = xd_pairs(cws, 1);
  REQUIRE(xd.size() == 5);
  const std::vector<State> dup{1, 0, 0, 4, 3};  // 0-based (2,1,1,5,4)
  for (State i = 0; i < 5; ++i) {
    CHECK(xd[i].word == Word{i});
    CHECK(xd[i].pair.excl == StateSet(5, {i}));
    CHECK(xd[i].pair.dupl == StateSet(5, {dup[i]}));
  }
}

TEST_CASE("epsilon is the first entry") {
  auto cws = enumerate_canonical_words(gen::cerny(4), 2);
  CHECK(cws[0].word.empty());
  CHECK(cws[0].pair.excl.empty());
  CHECK(cws[0].pair.dupl.empty());
}

TEST_CASE("E_5 defect-3 signatures include the a[1,3] pair") {
  auto e5 = gen::e5();
  auto cws = enumerate_canonical_words(e5, 3);
  ExclDupl want{StateSet(5, {0, 1, 2}), StateSet(5, {3, 4})};
  bool found = false;
  for (const auto& e : xd_pairs(cws, 3)) found = found || e.pair == want;
  CHECK(found);
}

TEST_CASE("no defect-(n-1) signatures on the failing E' family") {
  for (std::size_t n = 4; n <= 6; ++n) {
    auto dfa = gen::e_family(n, n - 1, true);
    auto cws = enumerate_canonical_words(dfa, n - 1);
    bool dup_n = false;
    for (const auto& e : xd_pairs(cws, n - 1)) dup_n = dup_n || e.pair.dupl.contains(n - 1);
    CHECK_FALSE(dup_n);
  }
}

TEST_CASE("argument checks") {
  auto c4 = gen::cerny(4);
  CHECK_THROWS_AS(enumerate_canonical_words(c4, 0), UsageError);
  CHECK_THROWS_AS(enumerate_canonical_words(c4, 4), UsageError);
  auto cws = enumerate_canonical_words(c4, 1);
  CHECK_THROWS_AS(xd_pairs(cws, 2), UsageError);
  auto one = enumerate_canonical_words(Dfa(1, {"a"}, {0}), 1);
  CHECK(one.size() == 1);
}

TEST_CASE("canonical words equal brute-force shortlex minima") {
  check_against_brute(gen::e5(), 4);
  check_against_brute(gen::cerny(5), 4);
  check_against_brute(gen::e_family(5, 3), 4);
  for (const auto& c : brute::random_corpus(150)) {
    if (c.n > 6) continue;
    auto dfa = gen::random_dfa(c.n, c.m, c.seed);
    check_against_brute(dfa, c.n - 1);
  }
}

TEST_CASE("raising the cap gives the same set as building at once") {
  for (const auto& c : brute::random_corpus(100)) {
    auto dfa = gen::random_dfa(c.n, c.m, c.seed);
    CanonicalWordSet step(dfa, 1);
    for (std::size_t k = 2; k < c.n; ++k) step.extend_to(k);
    CanonicalWordSet once(dfa, c.n - 1);
    auto a = step.entries();
    auto b = once.entries();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      REQUIRE(a[i].word == b[i].word);
      REQUIRE(a[i].pair == b[i].pair);
    }
  }
}

TEST_CASE("entries are shortlex sorted, prefix closed, correctly signed and within the size bound") {
  for (const auto& c : brute::random_corpus(200)) {
    auto dfa = gen::random_dfa(c.n, c.m, c.seed);
    for (std::size_t k = 1; k < c.n; ++k) {
      auto cws = enumerate_canonical_words(dfa, k);
      std::size_t defect_k = 0;
      for (std::size_t i = 0; i < cws.size(); ++i) {
        const auto& e = cws[i];
        if (i > 0) REQUIRE(shortlex_less(cws[i - 1].word, e.word));
        REQUIRE(e.pair == excl_dupl(dfa, e.word));
        REQUIRE(e.defect() <= k);
        if (!e.word.empty()) {
          Word prefix(e.word.begin(), e.word.end() - 1);
          REQUIRE(cws.contains_word(prefix));
        }
        if (e.defect() == k) ++defect_k;
      }
      auto b = brute::binomial(c.n, k);
      REQUIRE(defect_k < b * b);
    }
  }
}
