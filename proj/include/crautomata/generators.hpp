#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "crautomata/dfa.hpp"
#include "crautomata/error.hpp"

namespace cra::gen {

/// SplitMix64 (Steele, Lea, Flood 2014). Used to seed Xoshiro256ss.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/**
 * xoshiro256** 1.0 (Blackman, Vigna). The four state words are the first
 * four outputs of SplitMix64(seed), so a 64-bit seed fixes the stream on
 * every platform. Satisfies UniformRandomBitGenerator.
 */
class Xoshiro256ss {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256ss(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& s : s_) s = sm.next();
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    const auto result = rotl(s_[1] * 5, 7) * 9;
    const auto t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform integer in [0, bound). Draws at or above the largest multiple
  /// of `bound` are rejected, then the draw is reduced modulo `bound`.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw UsageError("below: bound must be positive");
    const auto limit = max() - max() % bound;
    for (;;) {
      auto x = (*this)();
      if (x < limit) return x % bound;
    }
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> s_{};
};

/// "a", "b", ... for small alphabets, "x0", "x1", ... beyond 26 letters.
inline std::vector<std::string> default_alphabet(std::size_t m) {
  std::vector<std::string> names;
  names.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    names.push_back(m <= 26 ? std::string(1, static_cast<char>('a' + i)) : "x" + std::to_string(i));
  }
  return names;
}

/// Černý automaton C_n: a sends 0 to 1 and fixes the rest; b is i -> i+1 mod n.
inline Dfa cerny(std::size_t n) {
  if (n < 2) throw UsageError("cerny: n must be at least 2");
  std::vector<State> delta(2 * n);
  for (State i = 0; i < n; ++i) {
    delta[2 * i] = i == 0 ? 1 : i;
    delta[2 * i + 1] = static_cast<State>((i + 1) % n);
  }
  return Dfa(n, {"a", "b"}, std::move(delta));
}

/**
 * E_{n,k} on states 1..n (0-based internally, named "1".."n") with letters
 * a1..an, then b<l>..b<n-1> where l = n-k+1. Completely reachable, and its
 * Gamma hierarchy needs exactly k steps. With `drop_last_b` (k = n-1 only)
 * the letter b<n-1> is omitted, giving an automaton whose hierarchy fails at
 * step n-1.
 */
inline Dfa e_family(std::size_t n, std::size_t k, bool drop_last_b = false) {
  if (k < 2 || k >= n) throw UsageError("e_family: need 2 <= k < n");
  if (drop_last_b && k != n - 1) throw UsageError("e_family: dropping b_{n-1} requires k = n-1");
  const std::size_t l = n - k + 1;

  std::vector<std::string> alphabet;
  // Each action is a 1-based map q -> q.x stored as a vector indexed by q.
  std::vector<std::vector<std::size_t>> actions;

  for (std::size_t j = 1; j <= n; ++j) {
    std::vector<std::size_t> act(n + 1);
    for (std::size_t q = 1; q <= n; ++q) {
      if (j < l) {
        act[q] = q == j ? q + 1 : q;
      } else if (j == l) {
        act[q] = q == l ? 1 : q;
      } else if (q < l || q > j) {
        act[q] = q;
      } else if (q == l) {
        act[q] = 1;
      } else {
        act[q] = q - 1;
      }
    }
    alphabet.push_back("a" + std::to_string(j));
    actions.push_back(std::move(act));
  }

  const std::size_t last_b = drop_last_b ? n - 2 : n - 1;
  for (std::size_t i = l; i <= last_b; ++i) {
    std::vector<std::size_t> act(n + 1);
    for (std::size_t q = 1; q <= n; ++q) {
      act[q] = (q == 1 || (l <= q && q <= i)) ? i + 1 : q;
    }
    alphabet.push_back("b" + std::to_string(i));
    actions.push_back(std::move(act));
  }

  const auto m = alphabet.size();
  std::vector<State> delta(n * m);
  std::vector<std::string> names;
  for (std::size_t q = 1; q <= n; ++q) {
    names.push_back(std::to_string(q));
    for (std::size_t a = 0; a < m; ++a) delta[(q - 1) * m + a] = static_cast<State>(actions[a][q] - 1);
  }
  return Dfa(n, std::move(alphabet), std::move(delta), std::move(names));
}

namespace detail {

// Builds a Dfa from 1-based columns: columns[a][q-1] = q.a (1-based).
inline Dfa from_one_based_columns(std::size_t n, std::vector<std::string> alphabet,
                                  const std::vector<std::vector<State>>& columns) {
  const auto m = alphabet.size();
  std::vector<State> delta(n * m);
  std::vector<std::string> names;
  for (std::size_t q = 0; q < n; ++q) {
    names.push_back(std::to_string(q + 1));
    for (std::size_t a = 0; a < m; ++a) delta[q * m + a] = columns[a][q] - 1;
  }
  return Dfa(n, std::move(alphabet), std::move(delta), std::move(names));
}

}  // namespace detail

/// The five-state running example with eight letters (states named 1..5).
inline Dfa e5() {
  return detail::from_one_based_columns(
      5, {"a[1]", "a[2]", "a[3]", "a[4]", "a[5]", "a[1,2]", "a[4,5]", "a[1,3]"},
      {
          {2, 2, 3, 4, 5},  // a[1]
          {1, 1, 3, 4, 5},  // a[2]
          {1, 1, 2, 4, 5},  // a[3]
          {1, 2, 3, 5, 5},  // a[4]
          {1, 2, 3, 4, 4},  // a[5]
          {3, 3, 3, 4, 5},  // a[1,2]
          {1, 1, 2, 3, 3},  // a[4,5]
          {4, 4, 4, 5, 5},  // a[1,3]
      });
}

/// Twelve states, two letters; completely reachable although Gamma_1 is not strongly connected.
inline Dfa e12() {
  std::vector<State> a{10, 1, 2, 8, 4, 3, 10, 9, 5, 7, 6, 11};
  std::vector<State> delta(24);
  for (State q = 0; q < 12; ++q) {
    delta[2 * q] = a[q];
    delta[2 * q + 1] = (q + 1) % 12;
  }
  return Dfa(12, {"a", "b"}, std::move(delta));
}

/// Two states; a resets to 0, b resets to 1.
inline Dfa flipflop() { return Dfa(2, {"a", "b"}, {0, 1, 0, 1}); }

inline Dfa fixed_example(std::string_view name) {
  if (name == "e5") return e5();
  if (name == "e12") return e12();
  if (name == "flipflop") return flipflop();
  throw UsageError("unknown fixed example '" + std::string(name) + "'");
}

/// Every transition drawn independently and uniformly, row by row
/// (state 0 letters 0..m-1, then state 1, ...), from Xoshiro256ss(seed).
inline Dfa random_dfa(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n == 0 || m == 0) throw UsageError("random_dfa: need n >= 1 and m >= 1");
  Xoshiro256ss rng(seed);
  std::vector<State> delta(n * m);
  for (auto& t : delta) t = static_cast<State>(rng.below(n));
  return Dfa(n, default_alphabet(m), std::move(delta));
}

}  // namespace cra::gen
