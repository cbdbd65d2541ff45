#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "crautomata/error.hpp"

namespace cra {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

/// Directed graph without parallel edges. Successor lists are kept sorted,
/// so every traversal below is deterministic.
class SimpleDigraph {
 public:
  SimpleDigraph() = default;
  explicit SimpleDigraph(std::size_t vertex_count) : out_(vertex_count) {}

  std::size_t vertex_count() const noexcept { return out_.size(); }

  std::size_t edge_count() const noexcept {
    std::size_t c = 0;
    for (const auto& s : out_) c += s.size();
    return c;
  }

  /// Returns false when the edge was already present.
  bool add_edge(Vertex s, Vertex t) {
    check(s);
    check(t);
    auto& succ = out_[s];
    auto it = std::lower_bound(succ.begin(), succ.end(), t);
    if (it != succ.end() && *it == t) return false;
    succ.insert(it, t);
    return true;
  }

  bool has_edge(Vertex s, Vertex t) const {
    if (s >= out_.size()) return false;
    return std::binary_search(out_[s].begin(), out_[s].end(), t);
  }

  std::span<const Vertex> successors(Vertex v) const {
    check(v);
    return out_[v];
  }

  /// All edges, sorted by (source, target).
  std::vector<Edge> edges() const {
    std::vector<Edge> es;
    for (Vertex s = 0; s < out_.size(); ++s) {
      for (auto t : out_[s]) es.emplace_back(s, t);
    }
    return es;
  }

  friend bool operator==(const SimpleDigraph&, const SimpleDigraph&) = default;

 private:
  void check(Vertex v) const {
    if (v >= out_.size()) throw UsageError("vertex index out of range");
  }

  std::vector<std::vector<Vertex>> out_;
};

/// Strongly connected components. `clusters[c]` lists its vertices in
/// increasing order; `cluster_id[v]` is the cluster holding v.
struct ClusterPartition {
  std::vector<std::size_t> cluster_id;
  std::vector<std::vector<Vertex>> clusters;

  std::size_t cluster_count() const noexcept { return clusters.size(); }
};

/**
 * Tarjan's lowlink algorithm with an explicit stack. Clusters come out in
 * reverse topological order of the condensation: cluster 0 has no edge to
 * any other cluster.
 */
inline ClusterPartition strongly_connected_components(const SimpleDigraph& g) {
  constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();
  const auto n = g.vertex_count();
  if (n == 0) throw UsageError("strongly_connected_components: graph has no vertices");

  std::vector<std::size_t> index(n, unvisited);
  std::vector<std::size_t> lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<Vertex> stack;
  std::size_t counter = 0;

  ClusterPartition part;
  part.cluster_id.assign(n, 0);

  struct Frame {
    Vertex v;
    std::size_t next_child;
  };
  std::vector<Frame> call;

  for (Vertex root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    call.push_back({root, 0});
    index[root] = lowlink[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call.empty()) {
      auto& frame = call.back();
      auto succ = g.successors(frame.v);
      if (frame.next_child < succ.size()) {
        auto w = succ[frame.next_child++];
        if (index[w] == unvisited) {
          index[w] = lowlink[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[frame.v] = std::min(lowlink[frame.v], index[w]);
        }
        continue;
      }

      auto v = frame.v;
      call.pop_back();
      if (!call.empty()) {
        auto parent = call.back().v;
        lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
      }
      if (lowlink[v] == index[v]) {
        std::vector<Vertex> members;
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          part.cluster_id[w] = part.clusters.size();
          members.push_back(w);
        } while (w != v);
        std::sort(members.begin(), members.end());
        part.clusters.push_back(std::move(members));
      }
    }
  }
  return part;
}

inline bool is_strongly_connected(const SimpleDigraph& g) {
  return strongly_connected_components(g).cluster_count() == 1;
}

/// Kahn's algorithm; true iff the graph has no directed cycle.
inline bool is_acyclic(const SimpleDigraph& g) {
  const auto n = g.vertex_count();
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& [s, t] : g.edges()) ++indegree[t];
  std::vector<Vertex> ready;
  for (Vertex v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    auto v = ready.back();
    ready.pop_back();
    ++seen;
    for (auto t : g.successors(v)) {
      if (--indegree[t] == 0) ready.push_back(t);
    }
  }
  return seen == n;
}

/// Graph on clusters with an edge (C, C') iff some edge of g leads from C to C' != C.
inline SimpleDigraph condensation(const SimpleDigraph& g, const ClusterPartition& p) {
  if (p.cluster_id.size() != g.vertex_count()) {
    throw ContractViolation("condensation: partition size does not match graph");
  }
  // The partition must be exactly the SCC partition (up to renumbering).
  auto actual = strongly_connected_components(g);
  if (actual.cluster_count() != p.cluster_count()) {
    throw ContractViolation("condensation: partition is not the SCC partition of the graph");
  }
  std::vector<std::size_t> rename(actual.cluster_count(), p.cluster_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    auto a = actual.cluster_id[v];
    auto c = p.cluster_id[v];
    if (c >= p.cluster_count()) throw ContractViolation("condensation: cluster id out of range");
    if (rename[a] == p.cluster_count()) {
      rename[a] = c;
    } else if (rename[a] != c) {
      throw ContractViolation("condensation: partition is not the SCC partition of the graph");
    }
  }
  auto sorted = rename;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ContractViolation("condensation: partition merges distinct clusters");
  }

  SimpleDigraph con(p.cluster_count());
  for (const auto& [s, t] : g.edges()) {
    auto cs = p.cluster_id[s];
    auto ct = p.cluster_id[t];
    if (cs != ct) con.add_edge(cs, ct);
  }
  return con;
}

}  // namespace cra
