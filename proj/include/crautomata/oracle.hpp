#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "crautomata/dfa.hpp"
#include "crautomata/error.hpp"

namespace cra::oracle {

/// Exponential brute force: these routines refuse automata above the guard.
inline constexpr std::size_t default_max_states = 22;
inline constexpr std::size_t hard_max_states = 32;
inline constexpr std::size_t default_max_monoid = 1'000'000;

using Mask = std::uint64_t;

inline Mask image_mask(const Dfa& dfa, Mask p, Letter a) {
  Mask out = 0;
  for (Mask rest = p; rest != 0; rest &= rest - 1) {
    auto q = static_cast<State>(std::countr_zero(rest));
    out |= Mask{1} << dfa.next(q, a);
  }
  return out;
}

/**
 * Every subset reachable from Q, each with a shortest word reaching it.
 * Among shortest words the shortlex-least is recorded. Words are stored as
 * BFS parent links and rebuilt on request.
 */
class ReachMap {
 public:
  ReachMap(const Dfa& dfa, std::size_t max_states = default_max_states) : n_(dfa.state_count()) {
    if (n_ > max_states || n_ > hard_max_states) {
      throw LimitExceeded("powerset search refused: " + std::to_string(n_) +
                          " states exceeds the limit of " +
                          std::to_string(std::min(max_states, hard_max_states)));
    }
    const std::size_t universe = std::size_t{1} << n_;
    parent_.assign(universe, unreached);
    letter_.assign(universe, 0);
    dist_.assign(universe, 0);

    const Mask full = universe - 1;
    parent_[full] = full;
    order_.push_back(full);
    for (std::size_t head = 0; head < order_.size(); ++head) {
      auto p = order_[head];
      for (Letter a = 0; a < dfa.letter_count(); ++a) {
        auto next = image_mask(dfa, p, a);
        if (parent_[next] != unreached) continue;
        parent_[next] = static_cast<std::uint32_t>(p);
        letter_[next] = a;
        dist_[next] = dist_[p] + 1;
        order_.push_back(next);
      }
    }
  }

  std::size_t state_count() const noexcept { return n_; }
  std::size_t size() const noexcept { return order_.size(); }

  bool contains(const StateSet& s) const { return reached(s.to_mask()); }
  bool reached(Mask m) const { return m < parent_.size() && m != 0 && parent_[m] != unreached; }

  std::optional<Word> word_for(const StateSet& s) const { return word_for_mask(s.to_mask()); }

  std::optional<Word> word_for_mask(Mask m) const {
    if (!reached(m)) return std::nullopt;
    Word w(dist_[m]);
    for (auto i = w.size(); i > 0; --i) {
      w[i - 1] = letter_[m];
      m = parent_[m];
    }
    return w;
  }

  std::size_t distance(Mask m) const { return dist_.at(m); }

  /// Reachable subsets in BFS discovery order (Q first).
  const std::vector<Mask>& subsets() const noexcept { return order_; }

 private:
  static constexpr std::uint32_t unreached = 0xffffffffU;
  std::size_t n_;
  std::vector<std::uint32_t> parent_;
  std::vector<Letter> letter_;
  std::vector<std::uint32_t> dist_;
  std::vector<Mask> order_;
};

inline ReachMap powerset_reach_map(const Dfa& dfa, std::size_t max_states = default_max_states) {
  return ReachMap(dfa, max_states);
}

inline bool is_cr_bruteforce(const Dfa& dfa, std::size_t max_states = default_max_states) {
  ReachMap map(dfa, max_states);
  return map.size() == (std::size_t{1} << dfa.state_count()) - 1;
}

/// Length of a shortest reset word, or nothing if no singleton is reachable.
inline std::optional<std::size_t> reset_threshold_exact(
    const Dfa& dfa, std::size_t max_states = default_max_states) {
  ReachMap map(dfa, max_states);
  for (auto m : map.subsets()) {
    if ((m & (m - 1)) == 0) return map.distance(m);
  }
  return std::nullopt;
}

struct Monoid {
  struct Element {
    Transformation transformation;
    Word word;
  };
  /// In shortlex order of their generating words; the identity (empty word) first.
  std::vector<Element> elements;

  std::size_t size() const noexcept { return elements.size(); }
};

/**
 * Closure of the letter transformations under composition, each element with
 * its shortlex-least word. With `positive_defect_only` the identity and every
 * other permutation are filtered out afterwards, leaving the singular part.
 */
inline Monoid transition_monoid(const Dfa& dfa, bool positive_defect_only,
                                std::size_t max_elements = default_max_monoid) {
  std::unordered_map<Transformation, std::size_t, TransformationHash> seen;
  Monoid all;
  all.elements.push_back({Transformation::identity(dfa.state_count()), {}});
  seen.emplace(all.elements.front().transformation, 0);
  for (std::size_t head = 0; head < all.elements.size(); ++head) {
    for (Letter a = 0; a < dfa.letter_count(); ++a) {
      auto t = all.elements[head].transformation.then(dfa, a);
      if (seen.contains(t)) continue;
      if (all.elements.size() >= max_elements) {
        throw LimitExceeded("transition monoid exceeds " + std::to_string(max_elements) +
                            " elements");
      }
      auto w = all.elements[head].word;
      w.push_back(a);
      seen.emplace(t, all.elements.size());
      all.elements.push_back({std::move(t), std::move(w)});
    }
  }
  if (!positive_defect_only) return all;
  Monoid sing;
  for (auto& e : all.elements) {
    if (e.transformation.defect() > 0) sing.elements.push_back(std::move(e));
  }
  return sing;
}

}  // namespace cra::oracle
