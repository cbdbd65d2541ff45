#pragma once

// Deliberately naive reference implementations used as test oracles. Nothing
// here shares code paths with the library beyond the Dfa container itself.

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "crautomata/dfa.hpp"
#include "crautomata/generators.hpp"

namespace brute {

using cra::Dfa;
using cra::Letter;
using cra::State;
using cra::Word;

inline State run(const Dfa& dfa, State q, const Word& w) {
  for (auto a : w) q = dfa.table()[q * dfa.letter_count() + a];
  return q;
}

/// (excl, dupl) as sorted state lists, computed by counting preimages directly.
struct Signature {
  std::vector<State> excl;
  std::vector<State> dupl;
  auto operator<=>(const Signature&) const = default;
};

inline Signature signature(const Dfa& dfa, const Word& w) {
  std::vector<int> hits(dfa.state_count(), 0);
  for (State q = 0; q < dfa.state_count(); ++q) ++hits[run(dfa, q, w)];
  Signature s;
  for (State q = 0; q < dfa.state_count(); ++q) {
    if (hits[q] == 0) s.excl.push_back(q);
    if (hits[q] > 1) s.dupl.push_back(q);
  }
  return s;
}

inline std::uint64_t image(const Dfa& dfa, std::uint64_t set, const Word& w) {
  std::uint64_t out = 0;
  for (State q = 0; q < dfa.state_count(); ++q) {
    if (set >> q & 1U) out |= std::uint64_t{1} << run(dfa, q, w);
  }
  return out;
}

/// Every word of length exactly len, in lexicographic order.
inline std::vector<Word> words_of_length(std::size_t m, std::size_t len) {
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<Word> next;
    for (const auto& w : out) {
      for (Letter a = 0; a < m; ++a) {
        auto v = w;
        v.push_back(a);
        next.push_back(std::move(v));
      }
    }
    out = std::move(next);
  }
  return out;
}

/// Shortlex-least word for every signature of defect <= k. Words are scanned
/// in shortlex order, pruning a word once its transformation has been seen,
/// until no new transformation appears.
inline std::map<Signature, Word> min_words_by_signature(const Dfa& dfa, std::size_t k) {
  std::map<Signature, Word> out;
  std::set<std::vector<State>> seen;
  std::vector<Word> layer{Word{}};
  while (!layer.empty()) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      std::vector<State> t;
      for (State q = 0; q < dfa.state_count(); ++q) t.push_back(run(dfa, q, w));
      if (!seen.insert(t).second) continue;
      auto s = signature(dfa, w);
      if (s.excl.size() <= k) out.emplace(s, w);
      for (Letter a = 0; a < dfa.letter_count(); ++a) {
        auto v = w;
        v.push_back(a);
        next.push_back(std::move(v));
      }
    }
    layer = std::move(next);
  }
  return out;
}

/// Subsets reachable from Q by repeated letter application (fixpoint, no BFS order).
inline std::set<std::uint64_t> reachable_subsets(const Dfa& dfa) {
  const auto n = dfa.state_count();
  std::set<std::uint64_t> seen{(std::uint64_t{1} << n) - 1};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::uint64_t> current(seen.begin(), seen.end());
    for (auto s : current) {
      for (Letter a = 0; a < dfa.letter_count(); ++a) {
        if (seen.insert(image(dfa, s, Word{a})).second) grew = true;
      }
    }
  }
  return seen;
}

inline bool is_cr(const Dfa& dfa) {
  return reachable_subsets(dfa).size() == (std::size_t{1} << dfa.state_count()) - 1;
}

/// Shortest reset length by layered search over images of Q.
inline std::size_t reset_threshold(const Dfa& dfa) {
  const auto n = dfa.state_count();
  std::set<std::uint64_t> layer{(std::uint64_t{1} << n) - 1};
  std::set<std::uint64_t> seen = layer;
  for (std::size_t d = 0; !layer.empty(); ++d) {
    for (auto s : layer) {
      if ((s & (s - 1)) == 0) return d;
    }
    std::set<std::uint64_t> next;
    for (auto s : layer) {
      for (Letter a = 0; a < dfa.letter_count(); ++a) {
        auto t = image(dfa, s, Word{a});
        if (seen.insert(t).second) next.insert(t);
      }
    }
    layer = std::move(next);
  }
  return SIZE_MAX;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// The fixed random corpus used by the property and acceptance suites:
/// 1000 automata, n cycling through 3..7 and m through 1..3, seed = index.
struct CorpusEntry {
  std::size_t n;
  std::size_t m;
  std::uint64_t seed;
};

inline std::vector<CorpusEntry> random_corpus(std::size_t count = 1000) {
  std::vector<CorpusEntry> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back({3 + i % 5, 1 + (i / 5) % 3, i});
  return out;
}

}  // namespace brute
