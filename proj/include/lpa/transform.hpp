#pragma once

#include "lpa/graph.hpp"

namespace lpa {

// What a whole-graph transform did.  Refusal (an uncountable emitter was
// found) is an outcome, not an exception: the witness is set, nothing was
// added, and the accompanying graph is the input unchanged.
struct TransformReport {
  std::vector<std::pair<VertexId, TailKind>> tails_added;
  std::size_t vertices_untouched = 0;
  std::optional<VertexId> refusal;

  bool refused() const { return refusal.has_value(); }
};

struct TransformResult {
  Graph graph;
  TransformReport report;
};

// Attach an infinite head-to-tail chain at a sink.  Throws NotASink when the
// vertex emits anything.
void add_tail_at_sink(Graph& g, const VertexId& v);

// Replace the edge row of a countably infinite emitter by a tail: the policy
// fixes the listing e_1, e_2, ... that the redirect edges g_j follow.  Throws
// NotACountableEmitter when the row is finite or uncountable, BadPolicy when
// the policy does not apply at this vertex.
void add_tail_at_countable_emitter(Graph& g, const VertexId& v,
                                   const EdgeOrderPolicy& policy);

// Tails at every sink and every countably infinite emitter; regular
// vertices untouched.  Refuses when some vertex emits uncountably many
// edges.  The input must not already carry tails.
TransformResult desingularize(
    const Graph& g,
    const EdgeOrderPolicy& policy = EdgeOrderPolicy::default_diagonal());

// Tails at countably infinite emitters only; sinks stay sinks.  Same
// refusal rule as desingularize.
TransformResult row_finite_equivalent(
    const Graph& g,
    const EdgeOrderPolicy& policy = EdgeOrderPolicy::default_diagonal());

// Concrete finite cutoff of a graph with tails: each tail becomes `depth`
// real vertices with forward/redirect bundles, every surviving omega bundle
// is truncated to its first `depth` edges, and every vertex whose out-edges
// were cut short is marked frontier.  Throws HasUncountable when an
// uncountable bundle is present (there is no finite window onto those).
Graph materialize(const Graph& g, std::uint64_t depth);

}  // namespace lpa
