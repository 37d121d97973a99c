#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lpa/graph.hpp"
#include "lpa/transform.hpp"
#include "testutil.hpp"

using namespace lpa;
using testutil::E;
using testutil::V;

TEST_CASE("add_tail_at_sink then materialize gives the finite chain") {
  Graph g;
  g.add_bundle("e", V("u"), V("w"), Cardinality::finite(1));
  add_tail_at_sink(g, V("w"));

  Graph got = materialize(g, 2);

  Graph want;
  want.add_bundle("e", V("u"), V("w"), Cardinality::finite(1));
  want.add_bundle("w#f1", V("w"), V("w#1"), Cardinality::finite(1));
  want.add_bundle("w#f2", V("w#1"), V("w#2"), Cardinality::finite(1));
  want.mark_frontier(V("w#2"));
  CHECK(got == want);

  SUBCASE("depth zero only marks the base as frontier") {
    Graph flat = materialize(g, 0);
    CHECK(flat.vertices() == std::set<VertexId>{V("u"), V("w")});
    CHECK(flat.bundles().size() == 1);
    CHECK(flat.is_frontier(V("w")));
  }
  SUBCASE("not a sink") {
    Graph h;
    h.add_bundle("e", V("u"), V("w"), Cardinality::finite(1));
    CHECK_DOMAIN(add_tail_at_sink(h, V("u")), not_a_sink);
  }
}

TEST_CASE("add_tail_at_countable_emitter redirects along the listing") {
  Graph g;
  g.add_bundle("L", V("z"), V("w"), Cardinality::omega());
  add_tail_at_countable_emitter(g, V("z"), EdgeOrderPolicy::default_diagonal());

  // Every g_j points at w, the range of every listed edge.
  Graph got = materialize(g, 2);
  const EdgeBundle* g2 = got.find_bundle("z#g2");
  REQUIRE(g2 != nullptr);
  CHECK(g2->source == V("z#1"));
  CHECK(g2->target == V("w"));
  CHECK(got.find_bundle("L") == nullptr);  // replaced row is gone
  CHECK(got.is_frontier(V("z#2")));
  // w is a real sink in the materialization, not frontier: emitter tails
  // do not fix sinks.
  CHECK_FALSE(got.is_frontier(V("w")));

  SUBCASE("requires an omega row") {
    Graph h;
    h.add_bundle("e", V("v"), V("w"), Cardinality::finite(3));
    CHECK_DOMAIN(add_tail_at_countable_emitter(
                     h, V("v"), EdgeOrderPolicy::default_diagonal()),
                 not_a_countable_emitter);
    Graph u;
    u.add_bundle("U", V("v"), V("w"), Cardinality::uncountable());
    CHECK_DOMAIN(add_tail_at_countable_emitter(
                     u, V("v"), EdgeOrderPolicy::default_diagonal()),
                 not_a_countable_emitter);
  }
  SUBCASE("policy is validated eagerly") {
    Graph h;
    h.add_bundle("A", V("z"), V("u"), Cardinality::omega());
    CHECK_DOMAIN(
        add_tail_at_countable_emitter(
            h, V("z"), EdgeOrderPolicy::bundle_concat({"A", "nope"})),
        bad_policy);
  }
}

TEST_CASE("desingularize handles all three vertex kinds at once") {
  Graph g;
  g.add_bundle("r", V("a"), V("b"), Cardinality::finite(2));  // a regular
  g.add_vertex(V("s"));                                       // sink
  g.add_bundle("L", V("c"), V("b"), Cardinality::omega());    // emitter
  // b is regular (no out-edges? no: b has none -> sink too). Give b an edge.
  g.add_bundle("back", V("b"), V("a"), Cardinality::finite(1));

  TransformResult res = desingularize(g);
  CHECK_FALSE(res.report.refused());
  CHECK(res.report.tails_added ==
        std::vector<std::pair<VertexId, TailKind>>{
            {V("c"), TailKind::EmitterTail}, {V("s"), TailKind::SinkTail}});
  CHECK(res.report.vertices_untouched == 2);  // a and b
  CHECK(is_row_finite(res.graph).row_finite);

  // No sinks anywhere in the result, symbolically.
  for (const VertexId& v : res.graph.vertices()) {
    CHECK(classify_vertex(res.graph, v) != VertexClass::Sink);
  }
}

TEST_CASE("desingularize on a row-finite sink-free graph is the identity") {
  Graph g;
  g.add_bundle("e", V("a"), V("b"), Cardinality::finite(2));
  g.add_bundle("f", V("b"), V("a"), Cardinality::finite(1));
  TransformResult res = desingularize(g);
  CHECK(res.graph == g);
  CHECK(res.report.tails_added.empty());
  CHECK(res.report.vertices_untouched == 2);
}

TEST_CASE("desingularize refuses on an uncountable emitter") {
  Graph g;
  g.add_bundle("U", V("v"), V("w"), Cardinality::uncountable());
  g.add_vertex(V("s"));  // a sink that would otherwise get a tail

  TransformResult res = desingularize(g);
  CHECK(res.report.refused());
  CHECK(res.report.refusal == V("v"));
  CHECK(res.report.tails_added.empty());
  CHECK(res.graph == g);  // input returned unchanged
  CHECK(res.report.vertices_untouched == g.vertices().size());

  // row_finite_equivalent refuses on the same witness.
  TransformResult rf = row_finite_equivalent(g);
  CHECK(rf.report.refusal == V("v"));
  CHECK(rf.graph == g);
}

TEST_CASE("row_finite_equivalent leaves sinks alone") {
  Graph g;
  g.add_bundle("L", V("z"), V("s"), Cardinality::omega());
  TransformResult res = row_finite_equivalent(g);
  CHECK_FALSE(res.report.refused());
  CHECK(res.report.tails_added ==
        std::vector<std::pair<VertexId, TailKind>>{
            {V("z"), TailKind::EmitterTail}});
  CHECK(classify_vertex(res.graph, V("s")) == VertexClass::Sink);
  CHECK(is_row_finite(res.graph).row_finite);
}

TEST_CASE("transforms reject inputs that already carry tails") {
  Graph g;
  g.add_vertex(V("w"));
  add_tail_at_sink(g, V("w"));
  CHECK_DOMAIN(desingularize(g), malformed_tail);
  CHECK_DOMAIN(row_finite_equivalent(g), malformed_tail);
}

TEST_CASE("materialize") {
  SUBCASE("depth zero on a tail-free finite graph is the graph itself") {
    Graph g;
    g.add_bundle("e", V("a"), V("b"), Cardinality::finite(2));
    CHECK(materialize(g, 0) == g);
    CHECK(materialize(g, 3) == g);
  }
  SUBCASE("an omega row without a tail truncates and marks the source") {
    Graph g = testutil::rose_omega();
    Graph got = materialize(g, 3);
    const EdgeBundle* L = got.find_bundle("L");
    REQUIRE(L != nullptr);
    CHECK(L->multiplicity == Cardinality::finite(3));
    CHECK(got.is_frontier(V("z")));
  }
  SUBCASE("uncountable rows cannot be materialized") {
    Graph g;
    g.add_bundle("U", V("v"), V("w"), Cardinality::uncountable());
    CHECK_DOMAIN(materialize(g, 2), has_uncountable);
  }
  SUBCASE("sink tail at depth d adds exactly d vertices") {
    Graph g;
    g.add_vertex(V("w"));
    add_tail_at_sink(g, V("w"));
    for (std::uint64_t d = 1; d <= 5; ++d) {
      Graph got = materialize(g, d);
      CHECK(got.vertices().size() == 1 + d);
      CHECK(got.bundles().size() == d);
      CHECK(got.frontier() == std::set<VertexId>{V("w#" + std::to_string(d))});
    }
  }
}

TEST_CASE("rose desingularization materializes to the book figure") {
  TransformResult res = desingularize(testutil::rose_omega());
  Graph got = materialize(res.graph, 4);

  CHECK(got.vertices() == std::set<VertexId>{V("z"), V("z#1"), V("z#2"),
                                             V("z#3"), V("z#4")});
  CHECK(got.bundles().size() == 8);
  // Redirect targets: every g_j lands back at z (every listed edge is the
  // loop).
  for (int j = 1; j <= 4; ++j) {
    const EdgeBundle* gj = got.find_bundle("z#g" + std::to_string(j));
    REQUIRE(gj != nullptr);
    CHECK(gj->target == V("z"));
  }
  CHECK(got.frontier() == std::set<VertexId>{V("z#4")});
}

TEST_CASE("redirect targets follow the enumeration policy") {
  // Listing under the default diagonal: A0, B0, A1, ... so g_1 -> u,
  // g_2 -> w, g_3 -> u.  Under the B-first prefix: g_1 -> w, g_2 -> u,
  // g_3 -> u.
  Graph base = testutil::two_petals();

  auto redirect_targets = [](const Graph& m, int upto) {
    std::vector<VertexId> t;
    for (int j = 1; j <= upto; ++j) {
      const EdgeBundle* b = m.find_bundle("z#g" + std::to_string(j));
      REQUIRE(b != nullptr);
      t.push_back(b->target);
    }
    return t;
  };

  Graph m1 = materialize(desingularize(base).graph, 3);
  CHECK(redirect_targets(m1, 3) ==
        std::vector<VertexId>{V("u"), V("w"), V("u")});

  Graph m2 = materialize(
      desingularize(base, EdgeOrderPolicy::explicit_prefix({E("B", 0)})).graph,
      3);
  CHECK(redirect_targets(m2, 3) ==
        std::vector<VertexId>{V("w"), V("u"), V("u")});

  // And the two truncations are genuinely different shapes.
  CHECK_FALSE(graph_isomorphic(m1, m2));
  CHECK(graph_isomorphic(m1, m1));
}

TEST_CASE("transform invariants on random graphs") {
  std::mt19937 rng(4242);
  testutil::RandomGraphOptions opt;
  opt.allow_omega = true;
  opt.allow_uncountable = true;
  int refusals = 0, transforms = 0;
  for (int iter = 0; iter < 120; ++iter) {
    Graph g = testutil::random_graph(rng, opt);
    bool has_uncountable_emitter = false;
    for (const VertexId& v : g.vertices()) {
      if (classify_vertex(g, v) == VertexClass::UncountableEmitter) {
        has_uncountable_emitter = true;
      }
    }
    TransformResult res = desingularize(g);

    // Trichotomy: refusal exactly on uncountable emitters.
    CHECK(res.report.refused() == has_uncountable_emitter);
    if (res.report.refused()) {
      ++refusals;
      CHECK(res.graph == g);
      CHECK(classify_vertex(g, *res.report.refusal) ==
            VertexClass::UncountableEmitter);
      continue;
    }
    ++transforms;
    CHECK(is_row_finite(res.graph).row_finite);

    // Report accounting: every vertex is either touched or untouched.
    CHECK(res.report.tails_added.size() + res.report.vertices_untouched ==
          g.vertices().size());

    // Nothing singular is left: every declared vertex (tail bases
    // included) now classifies Regular, so a second pass would have no
    // work to do.
    for (const VertexId& v : res.graph.vertices()) {
      CHECK(classify_vertex(res.graph, v) == VertexClass::Regular);
    }

    // Materializations at a few depths never contain a non-frontier sink.
    for (std::uint64_t d = 1; d <= 3; ++d) {
      Graph m = materialize(res.graph, d);
      for (const VertexId& v : m.vertices()) {
        if (m.is_frontier(v)) continue;
        CHECK(m.out_bundles(v).size() > 0);
      }
    }

    // Sinks survive row_finite_equivalent untouched.
    TransformResult rf = row_finite_equivalent(g);
    for (const VertexId& v : g.vertices()) {
      if (classify_vertex(g, v) == VertexClass::Sink) {
        CHECK(classify_vertex(rf.graph, v) == VertexClass::Sink);
      }
    }
  }
  // The generator must exercise both branches.
  CHECK(refusals > 5);
  CHECK(transforms > 5);
}
