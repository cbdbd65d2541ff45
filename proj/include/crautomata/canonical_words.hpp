#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "crautomata/dfa.hpp"
#include "crautomata/error.hpp"

namespace cra {

/**
 * Shortlex-least representatives of every realizable (excl, dupl) signature
 * whose defect does not exceed a cap.
 *
 * Words are discovered by breadth-first search in shortlex order. A child
 * word is kept only if its signature has not been seen before; otherwise the
 * child and its whole subtree are dropped, because every extension of it has
 * the same signature as the matching extension of the earlier word. A child
 * whose defect exceeds the cap is parked, not dropped: when the cap is raised
 * the search resumes from the parked children instead of starting over.
 *
 * The stored words are prefix-closed. Signatures are propagated letter by
 * letter with extend_excl_dupl; whole words are never re-simulated.
 */
class CanonicalWordSet {
 public:
  struct Entry {
    Word word;
    ExclDupl pair;

    std::size_t defect() const { return pair.defect(); }
  };

  CanonicalWordSet(const Dfa& dfa, std::size_t k_max)
      : dfa_(dfa), table_(dfa), n_(dfa.state_count()) {
    nodes_.push_back({Word{}, ExclDupl{StateSet(n_), StateSet(n_)}});
    index_.emplace(nodes_.front().pair, 0);
    sorted_.push_back(0);
    for (Letter a = 0; a < dfa.letter_count(); ++a) park(0, a);
    run_level(0);
    extend_to(k_max);
  }

  /// Raise the defect cap; lowering is a no-op. Values past n-1 are clamped.
  void extend_to(std::size_t k_max) {
    auto target = std::min(k_max, n_ - 1);
    while (cap_ < target) run_level(cap_ + 1);
  }

  std::size_t cap() const noexcept { return cap_; }
  std::size_t size() const noexcept { return sorted_.size(); }

  /// i-th entry in shortlex order.
  const Entry& operator[](std::size_t i) const { return nodes_.at(sorted_.at(i)); }

  /// Entries in shortlex order.
  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    out.reserve(sorted_.size());
    for (auto i : sorted_) out.push_back(nodes_[i]);
    return out;
  }

  /// Canonical word for a signature, if that signature is realizable within the cap.
  std::optional<Word> find(const ExclDupl& pair) const {
    auto it = index_.find(pair);
    if (it == index_.end()) return std::nullopt;
    return nodes_[it->second].word;
  }

  bool contains_word(const Word& w) const {
    auto it = index_.find(excl_dupl(dfa_, w));
    return it != index_.end() && nodes_[it->second].word == w;
  }

  const Dfa& dfa() const noexcept { return dfa_; }

 private:
  struct Pending {
    std::size_t parent;
    Letter letter;
    ExclDupl pair;
  };

  void park(std::size_t parent, Letter a) {
    auto pair = extend_excl_dupl(nodes_[parent].pair, dfa_, a, table_);
    auto d = pair.defect();
    parked_[d].push_back({parent, a, std::move(pair)});
  }

  /// Lists all canonical words of defect exactly `level`.
  void run_level(std::size_t level) {
    // Candidates grouped by word length; within a length they are sorted by
    // (parent word, letter), which is shortlex order of the children.
    std::map<std::size_t, std::vector<Pending>> by_length;
    if (auto it = parked_.find(level); it != parked_.end()) {
      for (auto& p : it->second) {
        auto len = nodes_[p.parent].word.size() + 1;
        by_length[len].push_back(std::move(p));
      }
      parked_.erase(it);
    }

    std::vector<std::size_t> added;
    while (!by_length.empty()) {
      auto node = by_length.begin();
      auto len = node->first;
      auto candidates = std::move(node->second);
      by_length.erase(node);

      std::stable_sort(candidates.begin(), candidates.end(),
                       [this](const Pending& x, const Pending& y) {
                         if (x.parent != y.parent) {
                           return shortlex_less(nodes_[x.parent].word, nodes_[y.parent].word);
                         }
                         return x.letter < y.letter;
                       });

      for (auto& c : candidates) {
        if (index_.contains(c.pair)) continue;
        Word w = nodes_[c.parent].word;
        w.push_back(c.letter);
        auto id = nodes_.size();
        index_.emplace(c.pair, id);
        nodes_.push_back({std::move(w), std::move(c.pair)});
        added.push_back(id);

        for (Letter a = 0; a < dfa_.letter_count(); ++a) {
          auto pair = extend_excl_dupl(nodes_[id].pair, dfa_, a, table_);
          auto d = pair.defect();
          if (d == level) {
            by_length[len + 1].push_back({id, a, std::move(pair)});
          } else {
            parked_[d].push_back({id, a, std::move(pair)});
          }
        }
      }
    }

    cap_ = level;
    std::vector<std::size_t> merged;
    merged.reserve(sorted_.size() + added.size());
    std::merge(sorted_.begin(), sorted_.end(), added.begin(), added.end(),
               std::back_inserter(merged), [this](std::size_t x, std::size_t y) {
                 return shortlex_less(nodes_[x].word, nodes_[y].word);
               });
    sorted_ = std::move(merged);
  }

  Dfa dfa_;
  PreimageTable table_;
  std::size_t n_;
  std::size_t cap_ = 0;
  std::vector<Entry> nodes_;
  std::vector<std::size_t> sorted_;
  std::unordered_map<ExclDupl, std::size_t, ExclDuplHash> index_;
  std::map<std::size_t, std::vector<Pending>> parked_;
};

inline CanonicalWordSet enumerate_canonical_words(const Dfa& dfa, std::size_t k_max) {
  // A one-state automaton has no positive-defect words; only epsilon is listed.
  bool trivial = dfa.state_count() == 1;
  if (!trivial && (k_max < 1 || k_max >= dfa.state_count())) {
    throw UsageError("enumerate_canonical_words: k_max must lie in 1..n-1");
  }
  return CanonicalWordSet(dfa, k_max);
}

/// Signatures of defect exactly k together with their canonical words, in shortlex order.
inline std::vector<CanonicalWordSet::Entry> xd_pairs(const CanonicalWordSet& cws, std::size_t k) {
  if (k > cws.cap()) {
    throw UsageError("xd_pairs: defect " + std::to_string(k) + " exceeds the build cap " +
                     std::to_string(cws.cap()));
  }
  std::vector<CanonicalWordSet::Entry> out;
  for (std::size_t i = 0; i < cws.size(); ++i) {
    if (cws[i].defect() == k) out.push_back(cws[i]);
  }
  return out;
}

}  // namespace cra
