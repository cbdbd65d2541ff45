#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iterator>
#include <string>
#include <vector>

#include "crautomata/error.hpp"

namespace cra {

using State = std::uint32_t;

/**
 * A subset of the states {0, ..., n-1} of one automaton, stored as a bit
 * vector. Membership is O(1); union, intersection and subset tests work a
 * machine word at a time. Iteration yields members in increasing order.
 *
 * Two sets are only comparable when they share the same universe size.
 */
class StateSet {
 public:
  using Block = std::uint64_t;
  static constexpr std::size_t bits_per_block = 64;

  class const_iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = State;
    using difference_type = std::ptrdiff_t;
    using pointer = const State*;
    using reference = State;

    const_iterator() = default;

    State operator*() const { return static_cast<State>(pos_); }

    const_iterator& operator++() {
      pos_ = set_->next_from(pos_ + 1);
      return *this;
    }

    const_iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }

    bool operator==(const const_iterator& other) const {
      return pos_ == other.pos_;
    }

   private:
    friend class StateSet;
    const_iterator(const StateSet* set, std::size_t pos) : set_(set), pos_(pos) {}

    const StateSet* set_ = nullptr;
    std::size_t pos_ = 0;
  };

  StateSet() = default;

  explicit StateSet(std::size_t universe)
      : universe_(universe), blocks_((universe + bits_per_block - 1) / bits_per_block, 0) {}

  StateSet(std::size_t universe, std::initializer_list<State> members) : StateSet(universe) {
    for (auto q : members) insert(q);
  }

  template <typename Range>
  static StateSet from_range(std::size_t universe, const Range& members) {
    StateSet s(universe);
    for (auto q : members) s.insert(static_cast<State>(q));
    return s;
  }

  static StateSet full(std::size_t universe) {
    StateSet s(universe);
    for (auto& b : s.blocks_) b = ~Block{0};
    s.trim();
    return s;
  }

  static StateSet from_mask(std::size_t universe, std::uint64_t mask) {
    if (universe > bits_per_block) throw UsageError("StateSet::from_mask: universe exceeds 64");
    StateSet s(universe);
    if (!s.blocks_.empty()) s.blocks_[0] = mask;
    s.trim();
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }

  void insert(State q) {
    check(q);
    blocks_[q / bits_per_block] |= Block{1} << (q % bits_per_block);
  }

  void erase(State q) {
    check(q);
    blocks_[q / bits_per_block] &= ~(Block{1} << (q % bits_per_block));
  }

  bool contains(State q) const {
    if (q >= universe_) return false;
    return (blocks_[q / bits_per_block] >> (q % bits_per_block)) & 1U;
  }

  std::size_t size() const noexcept {
    std::size_t c = 0;
    for (auto b : blocks_) c += static_cast<std::size_t>(std::popcount(b));
    return c;
  }

  bool empty() const noexcept {
    return std::all_of(blocks_.begin(), blocks_.end(), [](Block b) { return b == 0; });
  }

  bool is_full() const noexcept { return size() == universe_; }

  /// Smallest member. The set must be non-empty.
  State min() const {
    auto pos = next_from(0);
    if (pos >= universe_) throw UsageError("StateSet::min on empty set");
    return static_cast<State>(pos);
  }

  bool is_subset_of(const StateSet& other) const {
    same_universe(other);
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (blocks_[i] & ~other.blocks_[i]) return false;
    }
    return true;
  }

  bool intersects(const StateSet& other) const {
    same_universe(other);
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (blocks_[i] & other.blocks_[i]) return true;
    }
    return false;
  }

  StateSet& operator|=(const StateSet& other) {
    same_universe(other);
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] |= other.blocks_[i];
    return *this;
  }

  StateSet& operator&=(const StateSet& other) {
    same_universe(other);
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= other.blocks_[i];
    return *this;
  }

  StateSet& operator-=(const StateSet& other) {
    same_universe(other);
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= ~other.blocks_[i];
    return *this;
  }

  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
  friend StateSet operator-(StateSet a, const StateSet& b) { return a -= b; }

  /// Complement within the universe.
  StateSet complement() const { return full(universe_) - *this; }

  const_iterator begin() const { return const_iterator(this, next_from(0)); }
  const_iterator end() const { return const_iterator(this, universe_); }

  std::vector<State> to_vector() const { return std::vector<State>(begin(), end()); }

  std::uint64_t to_mask() const {
    if (universe_ > bits_per_block) throw UsageError("StateSet::to_mask: universe exceeds 64");
    return blocks_.empty() ? 0 : blocks_[0];
  }

  const std::vector<Block>& blocks() const noexcept { return blocks_; }

  friend bool operator==(const StateSet& a, const StateSet& b) {
    return a.universe_ == b.universe_ && a.blocks_ == b.blocks_;
  }

  /// Canonical order: by size, then lexicographically by member sequence.
  friend bool operator<(const StateSet& a, const StateSet& b) {
    auto sa = a.size();
    auto sb = b.size();
    if (sa != sb) return sa < sb;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }

  std::size_t hash() const noexcept {
    std::size_t h = universe_ * 0x9e3779b97f4a7c15ULL;
    for (auto b : blocks_) {
      h ^= std::hash<Block>{}(b) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

 private:
  std::size_t next_from(std::size_t pos) const {
    while (pos < universe_) {
      auto bi = pos / bits_per_block;
      auto bits = blocks_[bi] >> (pos % bits_per_block);
      if (bits != 0) return pos + static_cast<std::size_t>(std::countr_zero(bits));
      pos = (bi + 1) * bits_per_block;
    }
    return universe_;
  }

  void check(State q) const {
    if (q >= universe_) {
      throw UsageError("state " + std::to_string(q) + " outside universe of size " +
                       std::to_string(universe_));
    }
  }

  void same_universe(const StateSet& other) const {
    if (universe_ != other.universe_) throw UsageError("StateSet universe mismatch");
  }

  void trim() {
    auto rem = universe_ % bits_per_block;
    if (rem != 0 && !blocks_.empty()) blocks_.back() &= (Block{1} << rem) - 1;
  }

  std::size_t universe_ = 0;
  std::vector<Block> blocks_;
};

struct StateSetHash {
  std::size_t operator()(const StateSet& s) const noexcept { return s.hash(); }
};

}  // namespace cra
