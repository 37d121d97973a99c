#include "lpa/transform.hpp"

#include <algorithm>

namespace lpa {

void add_tail_at_sink(Graph& g, const VertexId& v) {
  if (!g.has_vertex(v)) {
    throw DomainError(Errc::unknown_vertex, "unknown vertex '" + v.name + "'");
  }
  if (classify_vertex(g, v) != VertexClass::Sink) {
    throw DomainError(Errc::not_a_sink,
                      "vertex '" + v.name + "' is not a sink");
  }
  g.add_tail({v, TailKind::SinkTail, EdgeOrderPolicy::default_diagonal(),
              v.name});
}

void add_tail_at_countable_emitter(Graph& g, const VertexId& v,
                                   const EdgeOrderPolicy& policy) {
  if (!g.has_vertex(v)) {
    throw DomainError(Errc::unknown_vertex, "unknown vertex '" + v.name + "'");
  }
  if (classify_vertex(g, v) != VertexClass::CountableEmitter) {
    throw DomainError(Errc::not_a_countable_emitter,
                      "vertex '" + v.name +
                          "' is not a countably infinite emitter");
  }
  // Fail fast on policies that cannot list this row.
  enumerate_out_edges(g, v, policy, 1);
  g.add_tail({v, TailKind::EmitterTail, policy, v.name});
}

namespace {

TransformResult add_tails(const Graph& g, const EdgeOrderPolicy& policy,
                          bool tail_sinks) {
  if (!g.tails().empty()) {
    throw DomainError(Errc::malformed_tail, "input already carries tails");
  }
  TransformResult result{g, {}};
  for (const VertexId& v : g.vertices()) {
    if (classify_vertex(g, v) == VertexClass::UncountableEmitter) {
      result.report.refusal = v;
      result.report.vertices_untouched = g.vertices().size();
      return result;
    }
  }
  for (const VertexId& v : g.vertices()) {
    switch (classify_vertex(g, v)) {
      case VertexClass::Sink:
        if (tail_sinks) {
          add_tail_at_sink(result.graph, v);
          result.report.tails_added.emplace_back(v, TailKind::SinkTail);
        } else {
          ++result.report.vertices_untouched;
        }
        break;
      case VertexClass::CountableEmitter:
        add_tail_at_countable_emitter(result.graph, v, policy);
        result.report.tails_added.emplace_back(v, TailKind::EmitterTail);
        break;
      case VertexClass::Regular:
      case VertexClass::UncountableEmitter:  // unreachable: refused above
        ++result.report.vertices_untouched;
        break;
    }
  }
  return result;
}

}  // namespace

TransformResult desingularize(const Graph& g, const EdgeOrderPolicy& policy) {
  return add_tails(g, policy, /*tail_sinks=*/true);
}

TransformResult row_finite_equivalent(const Graph& g,
                                      const EdgeOrderPolicy& policy) {
  return add_tails(g, policy, /*tail_sinks=*/false);
}

Graph materialize(const Graph& g, std::uint64_t depth) {
  for (const auto& [id, b] : g.bundles()) {
    if (b.multiplicity.is_uncountable()) {
      throw DomainError(Errc::has_uncountable,
                        "bundle '" + id +
                            "' is uncountable; no finite window exists");
    }
  }

  Graph out;
  for (const VertexId& v : g.vertices()) out.add_vertex(v);

  for (const auto& [id, b] : g.bundles()) {
    const TailDescriptor* d = g.find_tail(b.source);
    if (d && d->kind == TailKind::EmitterTail) continue;  // replaced
    if (b.multiplicity.is_finite()) {
      out.add_bundle(b.id, b.source, b.target, b.multiplicity);
    } else {
      // Surviving omega bundle: keep its first `depth` edges, remember the
      // cut at the source.
      if (depth > 0) {
        out.add_bundle(b.id, b.source, b.target, Cardinality::finite(depth));
      }
      out.mark_frontier(b.source);
    }
  }

  for (const auto& [base, d] : g.tails()) {
    if (depth == 0) {
      out.mark_frontier(base);
      continue;
    }
    std::vector<EdgeRef> listed;
    if (d.kind == TailKind::EmitterTail) {
      listed = enumerate_out_edges(g, base, d.enumeration,
                                   static_cast<std::size_t>(depth));
    }
    for (std::uint64_t j = 1; j <= depth; ++j) {
      VertexId from = (j == 1) ? base : tail_vertex_name(d, j - 1);
      VertexId to = tail_vertex_name(d, j);
      out.add_vertex(to);
      out.add_bundle(tail_edge_forward_name(d, j), from, to,
                     Cardinality::finite(1));
      if (d.kind == TailKind::EmitterTail) {
        const EdgeBundle* src = g.find_bundle(listed[j - 1].bundle);
        out.add_bundle(tail_edge_redirect_name(d, j), from, src->target,
                       Cardinality::finite(1));
      }
    }
    out.mark_frontier(tail_vertex_name(d, depth));
  }
  return out;
}

}  // namespace lpa
