#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "crautomata/dfa.hpp"
#include "crautomata/error.hpp"
#include "crautomata/gamma.hpp"

namespace cra {

/// One induction step: `word` maps `source` onto `target`, and |source| > |target|.
struct ReachStep {
  std::size_t level = 1;
  Edge edge;
  Word word;
  State dup_state = 0;
  StateSet source;
  StateSet target;
};

struct ReachResult {
  Word word;
  /// Outermost first: steps.front().target is the requested subset.
  std::vector<ReachStep> steps;
};

/**
 * R with R.w = p: the full preimage of `dup_state` plus the smallest
 * preimage of every other member of p.
 */
inline StateSet expand_step(const Dfa& dfa, const StateSet& p, const Word& w, State dup_state) {
  auto t = transformation_of(dfa, w);
  auto sig = excl_dupl_of(t);
  if (sig.excl.intersects(p)) throw ContractViolation("expand_step: excl(w) meets the target set");
  if (!p.contains(dup_state) || !sig.dupl.contains(dup_state)) {
    throw ContractViolation("expand_step: dup_state must lie in dupl(w) and in the target set");
  }
  StateSet r(dfa.state_count());
  std::vector<bool> picked(dfa.state_count(), false);
  for (State q = 0; q < dfa.state_count(); ++q) {
    auto image = t.image[q];
    if (image == dup_state) {
      r.insert(q);
    } else if (p.contains(image) && !picked[image]) {
      picked[image] = true;
      r.insert(q);
    }
  }
  return r;
}

/**
 * A word mapping Q onto `p`, assembled from forcing words of the Gamma
 * hierarchy. Each round finds the lowest level m whose graph has an edge
 * entering the clusters inside the current target from outside them; that
 * edge is forced by a defect-m word w, and the target is replaced by a
 * strictly larger preimage under w. Rounds stop once the target is Q.
 */
inline ReachResult reach_word(const Dfa& dfa, const GammaResult& result, const StateSet& p) {
  if (result.outcome != Outcome::success) {
    throw UsageError("reach_word: automaton is not completely reachable");
  }
  if (p.universe() != dfa.state_count()) throw UsageError("reach_word: subset universe mismatch");
  if (p.empty()) throw UsageError("reach_word: target subset must be non-empty");

  ReachResult out;
  auto target = p;
  while (!target.is_full()) {
    std::optional<ReachStep> step;
    for (std::size_t m = 1; m <= result.terminal_step && !step; ++m) {
      const auto& vertices = result.forest.level(m);
      std::vector<bool> inside(vertices.size());
      for (std::size_t v = 0; v < vertices.size(); ++v) {
        inside[v] = vertices[v].leafage.is_subset_of(target);
      }
      for (const auto& e : result.level(m).edges) {
        if (inside[e.source] || !inside[e.target]) continue;
        if (!e.forced_by) {
          throw ContractViolation("reach_word: lowest penetrating edge is not a forced edge");
        }
        auto sig = excl_dupl(dfa, *e.forced_by);
        auto candidates = sig.dupl & vertices[e.target].leafage;
        auto dup = candidates.min();
        auto source = expand_step(dfa, target, *e.forced_by, dup);
        step = ReachStep{m, {e.source, e.target}, *e.forced_by, dup, source, target};
        break;
      }
    }
    if (!step) throw ContractViolation("reach_word: no penetrating edge at any level");
    target = step->source;
    out.steps.push_back(std::move(*step));
  }
  for (auto it = out.steps.rbegin(); it != out.steps.rend(); ++it) {
    out.word.insert(out.word.end(), it->word.begin(), it->word.end());
  }
  return out;
}

}  // namespace cra
