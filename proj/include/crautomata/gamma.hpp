#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crautomata/canonical_words.hpp"
#include "crautomata/dfa.hpp"
#include "crautomata/digraph.hpp"
#include "crautomata/error.hpp"

namespace cra {

struct ForestNode {
  std::size_t level = 1;
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;
  StateSet leafage;
};

/**
 * Layered forest of clusters. Level 1 holds one node per state; the nodes of
 * level k+1 are the clusters of the level-k graph, and their children are the
 * level-k nodes they contain. Node i of level k is vertex i of the level-k graph.
 *
 * Levels are numbered from 1.
 */
class ClusterForest {
 public:
  ClusterForest() = default;

  explicit ClusterForest(std::size_t state_count) : n_(state_count) {
    std::vector<ForestNode> leaves;
    leaves.reserve(state_count);
    for (State q = 0; q < state_count; ++q) {
      leaves.push_back({1, std::nullopt, {}, StateSet(state_count, {q})});
    }
    levels_.push_back(std::move(leaves));
  }

  std::size_t depth() const noexcept { return levels_.size(); }
  std::size_t state_count() const noexcept { return n_; }

  const std::vector<ForestNode>& level(std::size_t k) const {
    if (k == 0 || k > levels_.size()) throw UsageError("forest level out of range");
    return levels_[k - 1];
  }

  /// Appends the clusters of the current top level as a new level.
  void add_level(const ClusterPartition& clusters) {
    auto& top = levels_.back();
    if (clusters.cluster_id.size() != top.size()) {
      throw ContractViolation("add_level: partition does not cover the top level");
    }
    auto k = levels_.size() + 1;
    std::vector<ForestNode> next;
    next.reserve(clusters.cluster_count());
    for (std::size_t c = 0; c < clusters.cluster_count(); ++c) {
      ForestNode node{k, std::nullopt, clusters.clusters[c], StateSet(n_)};
      for (auto child : node.children) {
        top[child].parent = c;
        node.leafage |= top[child].leafage;
      }
      next.push_back(std::move(node));
    }
    levels_.push_back(std::move(next));
  }

  /// Node of level k whose leafage contains q.
  std::size_t node_of(std::size_t k, State q) const {
    std::size_t v = q;
    for (std::size_t i = 1; i < k; ++i) {
      const auto& p = levels_.at(i - 1).at(v).parent;
      if (!p) throw UsageError("node_of: level not yet built");
      v = *p;
    }
    return v;
  }

  std::size_t max_leafage(std::size_t k) const {
    std::size_t best = 0;
    for (const auto& node : level(k)) best = std::max(best, node.leafage.size());
    return best;
  }

  std::size_t node_count() const noexcept {
    std::size_t c = 0;
    for (const auto& l : levels_) c += l.size();
    return c;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::vector<ForestNode>> levels_;
};

struct GammaEdge {
  Vertex source = 0;
  Vertex target = 0;
  /// Induced by an edge of the previous level through condensation.
  bool inherited = false;
  /// Shortlex-least canonical word of defect `level` forcing this edge, if any.
  std::optional<Word> forced_by;
};

struct GammaLevel {
  std::size_t level = 1;
  SimpleDigraph graph;
  /// Same edge set as `graph`, sorted by (source, target), with provenance.
  std::vector<GammaEdge> edges;

  const GammaEdge* find_edge(Vertex s, Vertex t) const {
    auto it = std::lower_bound(edges.begin(), edges.end(), std::pair{s, t},
                               [](const GammaEdge& e, const std::pair<Vertex, Vertex>& key) {
                                 return std::pair{e.source, e.target} < key;
                               });
    if (it == edges.end() || it->source != s || it->target != t) return nullptr;
    return &*it;
  }
};

enum class Outcome { success, failure };

inline const char* to_string(Outcome o) { return o == Outcome::success ? "SUCCESS" : "FAILURE"; }

struct GammaResult {
  Outcome outcome = Outcome::failure;
  std::size_t terminal_step = 1;
  std::vector<GammaLevel> levels;
  /// Has terminal_step + 1 levels: the top one holds the clusters of the
  /// final graph (a single root on SUCCESS).
  ClusterForest forest;

  const GammaLevel& level(std::size_t k) const {
    if (k == 0 || k > levels.size()) throw UsageError("gamma level out of range");
    return levels[k - 1];
  }
  const GammaLevel& final_level() const { return levels.back(); }
};

namespace detail {

// Adds to `edges` every edge forced by the signatures in `xd`. A signature
// can only force edges out of the one vertex whose leafage holds min(excl).
inline void add_forced_edges(const std::vector<ForestNode>& vertices, const ClusterForest& forest,
                             std::size_t level, std::span<const CanonicalWordSet::Entry> xd,
                             SimpleDigraph& graph, std::vector<GammaEdge>& edges) {
  for (const auto& entry : xd) {
    const auto& [excl, dupl] = entry.pair;
    if (excl.empty()) continue;
    auto source = forest.node_of(level, excl.min());
    if (!excl.is_subset_of(vertices[source].leafage)) continue;
    for (Vertex target = 0; target < vertices.size(); ++target) {
      if (target == source || !vertices[target].leafage.intersects(dupl)) continue;
      if (graph.add_edge(source, target)) {
        edges.push_back({source, target, false, entry.word});
      } else {
        auto it = std::find_if(edges.begin(), edges.end(), [&](const GammaEdge& e) {
          return e.source == source && e.target == target;
        });
        if (!it->forced_by) it->forced_by = entry.word;
      }
    }
  }
  std::sort(edges.begin(), edges.end(), [](const GammaEdge& a, const GammaEdge& b) {
    return std::pair{a.source, a.target} < std::pair{b.source, b.target};
  });
}

}  // namespace detail

/// Gamma_1: one vertex per state, an edge excl(w) -> dupl(w) for every defect-1 word w.
inline GammaLevel build_gamma1(const Dfa& dfa, const CanonicalWordSet& cws) {
  ClusterForest forest(dfa.state_count());
  GammaLevel out{1, SimpleDigraph(dfa.state_count()), {}};
  if (dfa.state_count() == 1) return out;
  auto xd = xd_pairs(cws, 1);
  detail::add_forced_edges(forest.level(1), forest, 1, xd, out.graph, out.edges);
  return out;
}

/**
 * Gamma_k from Gamma_{k-1}: the condensation of `prev` (whose clusters must
 * already be the top level k of `forest`) plus every edge forced by a
 * defect-k signature in `xd_k`.
 */
inline GammaLevel build_next_level(const GammaLevel& prev, const ClusterForest& forest,
                                   std::span<const CanonicalWordSet::Entry> xd_k) {
  auto k = prev.level + 1;
  if (forest.depth() != k) {
    throw ContractViolation("build_next_level: forest top level must be level " +
                            std::to_string(k));
  }
  const auto& below = forest.level(prev.level);
  const auto& vertices = forest.level(k);

  GammaLevel out{k, SimpleDigraph(vertices.size()), {}};
  for (const auto& [s, t] : prev.graph.edges()) {
    auto cs = *below[s].parent;
    auto ct = *below[t].parent;
    if (cs != ct && out.graph.add_edge(cs, ct)) out.edges.push_back({cs, ct, true, std::nullopt});
  }
  detail::add_forced_edges(vertices, forest, k, xd_k, out.graph, out.edges);
  return out;
}

/**
 * Runs the hierarchy Gamma_1, Gamma_2, ... until the current graph is
 * strongly connected (SUCCESS) or every cluster's leafage is too small to
 * host the excluded set of a word of the next defect (FAILURE).
 */
inline GammaResult build_gamma(const Dfa& dfa) {
  const auto n = dfa.state_count();
  CanonicalWordSet cws(dfa, 1);

  GammaResult result;
  result.forest = ClusterForest(n);
  result.levels.push_back(build_gamma1(dfa, cws));

  for (std::size_t k = 1;; ++k) {
    const auto& current = result.levels.back();
    auto clusters = strongly_connected_components(current.graph);
    result.forest.add_level(clusters);
    result.terminal_step = k;
    if (clusters.cluster_count() == 1) {
      result.outcome = Outcome::success;
      return result;
    }
    if (result.forest.max_leafage(k + 1) < k + 1) {
      result.outcome = Outcome::failure;
      return result;
    }
    // A non-trivial cluster has at most n-1 states here, so k+1 <= n-1.
    cws.extend_to(k + 1);
    auto xd = xd_pairs(cws, k + 1);
    result.levels.push_back(build_next_level(current, result.forest, xd));
  }
}

struct Decision {
  bool completely_reachable = false;
  GammaResult gamma;
};

inline Decision decide_complete_reachability(const Dfa& dfa) {
  auto gamma = build_gamma(dfa);
  bool cr = gamma.outcome == Outcome::success;
  return {cr, std::move(gamma)};
}

/**
 * For a FAILURE result, a subset of at least n - k states that no word
 * reaches: the complement of the leafage of a sink cluster of the final graph.
 * Among sinks, the one holding the smallest state is used.
 */
inline StateSet unreachable_witness(const GammaResult& result, const Dfa& dfa) {
  if (result.outcome != Outcome::failure) {
    throw UsageError("unreachable_witness: result is SUCCESS, every subset is reachable");
  }
  const auto& final_graph = result.final_level().graph;
  const auto& clusters = result.forest.level(result.terminal_step + 1);
  const auto& below = result.forest.level(result.terminal_step);

  std::vector<bool> is_sink(clusters.size(), true);
  for (const auto& [s, t] : final_graph.edges()) {
    if (*below[s].parent != *below[t].parent) is_sink[*below[s].parent] = false;
  }
  std::optional<std::size_t> chosen;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (!is_sink[c]) continue;
    if (!chosen || clusters[c].leafage.min() < clusters[*chosen].leafage.min()) chosen = c;
  }
  if (!chosen) throw ContractViolation("unreachable_witness: condensation has no sink");
  return dfa.all_states() - clusters[*chosen].leafage;
}

}  // namespace cra
