#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "crautomata/error.hpp"
#include "crautomata/state_set.hpp"

namespace cra {

using Letter = std::uint32_t;

/// A word is a sequence of letter indices into the automaton's alphabet.
using Word = std::vector<Letter>;

/**
 * Complete deterministic finite automaton <Q, Sigma, delta>.
 *
 * States are the dense integers 0..n-1; the optional state names are kept
 * only for input and output. The alphabet order given at construction is the
 * letter order used for every shortlex comparison downstream.
 *
 * Instances are immutable once constructed.
 */
class Dfa {
 public:
  /// `delta` is row-major: delta[q * m + a] = q.a
  Dfa(std::size_t state_count, std::vector<std::string> alphabet, std::vector<State> delta,
      std::vector<std::string> state_names = {})
      : n_(state_count),
        alphabet_(std::move(alphabet)),
        delta_(std::move(delta)),
        state_names_(std::move(state_names)) {
    if (n_ == 0) throw UsageError("automaton needs at least one state");
    if (alphabet_.empty()) throw UsageError("automaton needs at least one letter");
    check_names(alphabet_, "letter");
    if (delta_.size() != n_ * alphabet_.size()) {
      throw UsageError("transition table has " + std::to_string(delta_.size()) +
                       " entries, expected " + std::to_string(n_ * alphabet_.size()));
    }
    for (auto t : delta_) {
      if (t >= n_) throw UsageError("transition target " + std::to_string(t) + " out of range");
    }
    if (state_names_.empty()) {
      state_names_.reserve(n_);
      for (std::size_t q = 0; q < n_; ++q) state_names_.push_back(std::to_string(q));
    } else {
      if (state_names_.size() != n_) throw UsageError("state name count does not match state count");
      check_names(state_names_, "state");
    }
  }

  std::size_t state_count() const noexcept { return n_; }
  std::size_t letter_count() const noexcept { return alphabet_.size(); }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  const std::vector<std::string>& state_names() const noexcept { return state_names_; }
  const std::string& letter_name(Letter a) const { return alphabet_.at(a); }
  const std::string& state_name(State q) const { return state_names_.at(q); }
  const std::vector<State>& table() const noexcept { return delta_; }

  /// True when state names are just "0".."n-1".
  bool has_default_state_names() const {
    for (std::size_t q = 0; q < n_; ++q) {
      if (state_names_[q] != std::to_string(q)) return false;
    }
    return true;
  }

  State next(State q, Letter a) const { return delta_[q * alphabet_.size() + a]; }

  void check_word(std::span<const Letter> w) const {
    for (auto a : w) {
      if (a >= alphabet_.size()) {
        throw InvalidWord("letter index " + std::to_string(a) + " outside alphabet of size " +
                          std::to_string(alphabet_.size()));
      }
    }
  }

  StateSet all_states() const { return StateSet::full(n_); }

  friend bool operator==(const Dfa& a, const Dfa& b) {
    return a.n_ == b.n_ && a.alphabet_ == b.alphabet_ && a.delta_ == b.delta_ &&
           a.state_names_ == b.state_names_;
  }

 private:
  // State names may not contain commas: subsets are written as comma lists.
  static void check_names(const std::vector<std::string>& names, const char* what) {
    const bool states = std::string(what) == "state";
    std::unordered_set<std::string> seen;
    for (const auto& name : names) {
      if (name.empty()) throw UsageError(std::string(what) + " names must be non-empty");
      for (char c : name) {
        bool bad = c == ' ' || c == '\t' || c == '\n' || c == '\r' || (states && c == ',');
        if (bad) throw UsageError(std::string(what) + " name '" + name + "' contains '" + c + "'");
      }
      if (!seen.insert(name).second) {
        throw UsageError("duplicate " + std::string(what) + " name '" + name + "'");
      }
    }
  }

  std::size_t n_;
  std::vector<std::string> alphabet_;
  std::vector<State> delta_;
  std::vector<std::string> state_names_;
};

/// The map q -> q.w induced by a word.
struct Transformation {
  std::vector<State> image;

  static Transformation identity(std::size_t n) {
    Transformation t;
    t.image.resize(n);
    std::iota(t.image.begin(), t.image.end(), State{0});
    return t;
  }

  /// Right action: (this then a), i.e. the transformation of w.a
  Transformation then(const Dfa& dfa, Letter a) const {
    Transformation t;
    t.image.reserve(image.size());
    for (auto q : image) t.image.push_back(dfa.next(q, a));
    return t;
  }

  StateSet range() const { return StateSet::from_range(image.size(), image); }

  std::size_t defect() const { return image.size() - range().size(); }

  friend bool operator==(const Transformation&, const Transformation&) = default;
};

struct TransformationHash {
  std::size_t operator()(const Transformation& t) const noexcept {
    std::size_t h = t.image.size();
    for (auto q : t.image) h = h * 1000003U ^ q;
    return h;
  }
};

inline StateSet apply_word(const Dfa& dfa, const StateSet& p, std::span<const Letter> w) {
  dfa.check_word(w);
  if (p.universe() != dfa.state_count()) throw UsageError("apply_word: set universe mismatch");
  if (p.empty()) throw UsageError("apply_word: subset must be non-empty");
  auto current = p.to_vector();
  for (auto a : w) {
    for (auto& q : current) q = dfa.next(q, a);
  }
  return StateSet::from_range(dfa.state_count(), current);
}

inline Transformation transformation_of(const Dfa& dfa, std::span<const Letter> w) {
  dfa.check_word(w);
  auto t = Transformation::identity(dfa.state_count());
  for (auto& q : t.image) {
    for (auto a : w) q = dfa.next(q, a);
  }
  return t;
}

inline std::size_t defect(const Dfa& dfa, std::span<const Letter> w) {
  return transformation_of(dfa, w).defect();
}

/**
 * The (excl(w), dupl(w)) signature of a word: states with no preimage under
 * w, and states with at least two preimages.
 */
struct ExclDupl {
  StateSet excl;
  StateSet dupl;

  std::size_t defect() const { return excl.size(); }

  friend bool operator==(const ExclDupl&, const ExclDupl&) = default;

  friend bool operator<(const ExclDupl& a, const ExclDupl& b) {
    if (a.excl == b.excl) return a.dupl < b.dupl;
    return a.excl < b.excl;
  }
};

struct ExclDuplHash {
  std::size_t operator()(const ExclDupl& p) const noexcept {
    return p.excl.hash() * 31U ^ p.dupl.hash();
  }
};

inline ExclDupl excl_dupl_of(const Transformation& t) {
  auto n = t.image.size();
  std::vector<std::uint32_t> hits(n, 0);
  for (auto q : t.image) ++hits[q];
  ExclDupl pair{StateSet(n), StateSet(n)};
  for (State q = 0; q < n; ++q) {
    if (hits[q] == 0) pair.excl.insert(q);
    if (hits[q] >= 2) pair.dupl.insert(q);
  }
  return pair;
}

inline ExclDupl excl_dupl(const Dfa& dfa, std::span<const Letter> w) {
  return excl_dupl_of(transformation_of(dfa, w));
}

/// For every letter a and state q, the preimage set {p | p.a = q}.
class PreimageTable {
 public:
  explicit PreimageTable(const Dfa& dfa) : n_(dfa.state_count()), m_(dfa.letter_count()) {
    sets_.assign(n_ * m_, StateSet(n_));
    for (State p = 0; p < n_; ++p) {
      for (Letter a = 0; a < m_; ++a) sets_[a * n_ + dfa.next(p, a)].insert(p);
    }
  }

  const StateSet& preimage(Letter a, State q) const { return sets_.at(a * n_ + q); }
  std::size_t state_count() const noexcept { return n_; }
  std::size_t letter_count() const noexcept { return m_; }

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<StateSet> sets_;
};

inline PreimageTable preimage_table(const Dfa& dfa) { return PreimageTable(dfa); }

/**
 * Signature of u.a computed from the signature of u alone:
 *   excl(ua) = {q | q a^-1 is contained in excl(u)}
 *   dupl(ua) = {q | q a^-1 meets dupl(u), or |q a^-1 \ excl(u)| >= 2}
 */
inline ExclDupl extend_excl_dupl(const ExclDupl& pair_u, const Dfa& dfa, Letter a,
                                 const PreimageTable& table) {
  auto n = dfa.state_count();
  if (a >= dfa.letter_count()) throw InvalidWord("letter index out of range");
  ExclDupl out{StateSet(n), StateSet(n)};
  for (State q = 0; q < n; ++q) {
    const auto& pre = table.preimage(a, q);
    if (pre.is_subset_of(pair_u.excl)) {
      out.excl.insert(q);
      continue;
    }
    if (pre.intersects(pair_u.dupl) || (pre - pair_u.excl).size() >= 2) out.dupl.insert(q);
  }
  return out;
}

/// Shortlex comparison using the alphabet's declaration order.
inline bool shortlex_less(std::span<const Letter> a, std::span<const Letter> b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

/// Human-readable word. Single-character letter names are juxtaposed,
/// longer ones separated by spaces; the empty word prints as "ε".
inline std::string format_word(const Dfa& dfa, std::span<const Letter> w) {
  if (w.empty()) return "ε";
  bool short_names = true;
  for (const auto& name : dfa.alphabet()) short_names = short_names && name.size() == 1;
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0 && !short_names) out += ' ';
    out += dfa.letter_name(w[i]);
  }
  return out;
}

inline std::string format_set(const Dfa& dfa, const StateSet& s) {
  std::string out = "{";
  bool first = true;
  for (auto q : s) {
    if (!first) out += ',';
    out += dfa.state_name(q);
    first = false;
  }
  return out + "}";
}

}  // namespace cra
