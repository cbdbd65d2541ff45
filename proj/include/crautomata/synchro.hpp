#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "crautomata/dfa.hpp"
#include "crautomata/error.hpp"
#include "crautomata/oracle.hpp"

namespace cra {

// Length bounds, exact integer arithmetic.

/// (n-1)^2
inline std::size_t cerny_bound(std::size_t n) { return n == 0 ? 0 : (n - 1) * (n - 1); }

/// n(ceil(n/2) - 1) + 1: length of the word produced by halving_word on a CR automaton.
inline std::size_t halving_bound(std::size_t n) { return n * ((n + 1) / 2 - 1) + 1; }

/// C(n-k+2, 2): minimum compressing word for a k-subset, k >= 2.
inline std::size_t compression_bound(std::size_t n, std::size_t k) {
  auto m = n - k + 2;
  return m * (m - 1) / 2;
}

/// Cubic reset-length bound for completely reachable automata (floor division).
inline std::size_t cubic_reset_bound(std::size_t n) {
  auto n1 = static_cast<long long>(n);
  long long numerator = n % 2 == 0 ? 7 * n1 * n1 * n1 + 18 * n1 * n1 - 64 * n1 + 48
                                   : 7 * n1 * n1 * n1 + 15 * n1 * n1 - 55 * n1 + 33;
  return numerator <= 0 ? 0 : static_cast<std::size_t>(numerator / 48);
}

namespace detail {

// Shortlex-first word u with goal(start.u), searching over distinct images.
template <typename Goal>
std::optional<Word> search_images(const Dfa& dfa, const StateSet& start, Goal goal) {
  if (goal(start)) return Word{};
  struct Node {
    StateSet set;
    std::size_t parent;
    Letter letter;
  };
  std::vector<Node> nodes{{start, 0, 0}};
  std::unordered_map<StateSet, std::size_t, StateSetHash> seen{{start, 0}};
  auto rebuild = [&](std::size_t i) {
    Word w;
    while (i != 0) {
      w.push_back(nodes[i].letter);
      i = nodes[i].parent;
    }
    return Word(w.rbegin(), w.rend());
  };
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    for (Letter a = 0; a < dfa.letter_count(); ++a) {
      StateSet next(dfa.state_count());
      for (auto q : nodes[head].set) next.insert(dfa.next(q, a));
      if (seen.contains(next)) continue;
      seen.emplace(next, nodes.size());
      nodes.push_back({next, head, a});
      if (goal(next)) return rebuild(nodes.size() - 1);
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Shortest (then shortlex-least) word whose image misses q; nothing if q is unavoidable.
inline std::optional<Word> avoiding_word(const Dfa& dfa, State q) {
  if (q >= dfa.state_count()) throw UsageError("avoiding_word: state out of range");
  return detail::search_images(dfa, dfa.all_states(),
                               [q](const StateSet& s) { return !s.contains(q); });
}

/// Shortest (then shortlex-least) word v with |p.v| < |p|; nothing if none exists.
inline std::optional<Word> compress_word(const Dfa& dfa, const StateSet& p) {
  if (p.empty()) throw UsageError("compress_word: subset must be non-empty");
  if (p.size() == 1) return std::nullopt;
  auto k = p.size();
  return detail::search_images(dfa, p, [k](const StateSet& s) { return s.size() < k; });
}

struct HalvingTrace {
  Word word;
  std::size_t iterations = 0;
  /// |Q.w| after the first letter and after every iteration.
  std::vector<std::size_t> image_sizes;
  /// Avoiding-word length prepended at every iteration.
  std::vector<std::size_t> avoiding_lengths;
};

/**
 * Start from a letter of maximum defect; while the image is larger than n/2,
 * pick a state outside dupl(w), take its unique preimage q and prepend a
 * shortest word avoiding q. Each round removes one state from the image.
 */
inline HalvingTrace halving_trace(const Dfa& dfa) {
  const auto n = dfa.state_count();
  Letter best = 0;
  std::size_t best_defect = 0;
  for (Letter a = 0; a < dfa.letter_count(); ++a) {
    auto d = defect(dfa, Word{a});
    if (d > best_defect) {
      best = a;
      best_defect = d;
    }
  }
  if (best_defect == 0) throw NoDefect("halving: every letter acts as a permutation");

  HalvingTrace trace;
  trace.word = {best};
  auto image = apply_word(dfa, dfa.all_states(), trace.word);
  trace.image_sizes.push_back(image.size());
  while (2 * image.size() > n) {
    auto t = transformation_of(dfa, trace.word);
    auto dupl = excl_dupl_of(t).dupl;
    auto p = (image - dupl).min();
    State q = 0;
    while (t.image[q] != p) ++q;
    auto u = avoiding_word(dfa, q);
    if (!u) {
      throw NotSynchronizing("halving: state " + dfa.state_name(q) + " cannot be avoided");
    }
    trace.avoiding_lengths.push_back(u->size());
    trace.word = concat(*u, trace.word);
    image = apply_word(dfa, dfa.all_states(), trace.word);
    trace.image_sizes.push_back(image.size());
    ++trace.iterations;
  }
  return trace;
}

inline Word halving_word(const Dfa& dfa) { return halving_trace(dfa).word; }

struct ResetReport {
  Word word;
  std::size_t length = 0;
  std::size_t halving_length = 0;
  std::vector<std::size_t> compression_lengths;
  std::size_t cerny = 0;
  std::size_t cubic = 0;
  bool meets_cerny = false;
  bool meets_cubic = false;
};

/// Halving word followed by shortest compressing words until the image is a singleton.
inline ResetReport reset_word(const Dfa& dfa) {
  const auto n = dfa.state_count();
  ResetReport report;
  if (n > 1) {
    report.word = halving_word(dfa);
    report.halving_length = report.word.size();
    auto image = apply_word(dfa, dfa.all_states(), report.word);
    while (image.size() > 1) {
      auto v = compress_word(dfa, image);
      if (!v) {
        throw NotSynchronizing("reset: subset " + format_set(dfa, image) + " cannot be compressed");
      }
      report.compression_lengths.push_back(v->size());
      report.word.insert(report.word.end(), v->begin(), v->end());
      image = apply_word(dfa, image, *v);
    }
  }
  report.length = report.word.size();
  report.cerny = cerny_bound(n);
  report.cubic = cubic_reset_bound(n);
  report.meets_cerny = report.length <= report.cerny;
  report.meets_cubic = report.length <= report.cubic;
  return report;
}

struct TwoLetterReport {
  struct PermutationLetter {
    Letter letter = 0;
    bool single_cycle = false;
  };
  std::vector<PermutationLetter> permutation_letters;
  std::optional<std::size_t> reset_threshold;
  std::size_t cerny = 0;

  bool permutations_are_cycles() const {
    for (const auto& p : permutation_letters) {
      if (!p.single_cycle) return false;
    }
    return true;
  }
  bool threshold_within_cerny() const { return reset_threshold && *reset_threshold <= cerny; }
};

inline TwoLetterReport check_two_letter_properties(
    const Dfa& dfa, std::size_t max_states = oracle::default_max_states) {
  if (dfa.letter_count() != 2) throw UsageError("two-letter check needs exactly two letters");
  const auto n = dfa.state_count();
  TwoLetterReport report;
  report.cerny = cerny_bound(n);
  for (Letter a = 0; a < 2; ++a) {
    if (defect(dfa, Word{a}) != 0) continue;
    std::size_t orbit = 1;
    for (State q = dfa.next(0, a); q != 0; q = dfa.next(q, a)) ++orbit;
    report.permutation_letters.push_back({a, orbit == n});
  }
  if (n <= max_states) report.reset_threshold = oracle::reset_threshold_exact(dfa, max_states);
  return report;
}

}  // namespace cra
