#ifndef LPA_GRAPH_HPP
#define LPA_GRAPH_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lpa/cardinality.hpp"
#include "lpa/errors.hpp"

namespace lpa {

// Names a point of the vertex set. Declared vertices use [A-Za-z0-9_]+;
// generated tail vertices are "<base>#<j>" and can never collide with a
// declared id because '#' is forbidden there.
struct VertexId {
  std::string name;

  auto operator<=>(const VertexId&) const = default;
};

// One concrete edge inside a bundle. For a Finite(n) bundle the valid
// indices are 0..n-1; a CountablyInfinite bundle accepts any index; an
// Uncountable bundle exposes only indices below kUncountableSampleBound.
struct EdgeRef {
  std::string bundle;
  std::uint64_t index = 0;

  auto operator<=>(const EdgeRef&) const = default;
};

// Bounded sampling window for uncountable bundles. They can be classified
// and sampled but never enumerated; asking for more edges than this raises
// Errc::non_enumerable.
inline constexpr std::uint64_t kUncountableSampleBound = 64;

// A parallel family of edges source -> target with a single multiplicity.
struct EdgeBundle {
  std::string id;
  VertexId source;
  VertexId target;
  Cardinality multiplicity;

  auto operator<=>(const EdgeBundle&) const = default;
};

// Order in which the out-edges of one vertex are listed as e_1, e_2, ...
// Different orders give genuinely different (possibly nonisomorphic)
// emitter-tail transforms, so the choice is explicit.
//
//  - DefaultDiagonal: finite bundles first (sorted by id, each in index
//    order), then round-robin across infinite bundles (sorted by id) by
//    increasing index. Total and deterministic.
//  - BundleConcat: the listed bundles one after another. Must name every
//    out-bundle of the vertex exactly once, and only the last listed
//    bundle may be infinite (anything after an infinite bundle would
//    never be reached).
//  - ExplicitPrefix: the given edges first, then DefaultDiagonal over the
//    remaining ones.
struct EdgeOrderPolicy {
  enum class Kind { DefaultDiagonal, BundleConcat, ExplicitPrefix };

  Kind kind = Kind::DefaultDiagonal;
  std::vector<std::string> bundle_order;  // BundleConcat only
  std::vector<EdgeRef> prefix;            // ExplicitPrefix only

  static EdgeOrderPolicy default_diagonal() { return {}; }
  static EdgeOrderPolicy bundle_concat(std::vector<std::string> order) {
    EdgeOrderPolicy p;
    p.kind = Kind::BundleConcat;
    p.bundle_order = std::move(order);
    return p;
  }
  static EdgeOrderPolicy explicit_prefix(std::vector<EdgeRef> prefix) {
    EdgeOrderPolicy p;
    p.kind = Kind::ExplicitPrefix;
    p.prefix = std::move(prefix);
    return p;
  }

  bool operator==(const EdgeOrderPolicy&) const = default;
};

enum class TailKind { SinkTail, EmitterTail };

const char* tail_kind_name(TailKind k);

// Symbolic record of an infinite tail v_0 -> v_1 -> v_2 -> ... attached at
// `base` (= v_0). Tail vertices are virtual: generated on demand as
// "<prefix>#<j>", never stored.
//
// SinkTail: base keeps its (empty) out-edges and gains f_1: v_0 -> v_1;
// each v_j gains f_{j+1}: v_j -> v_{j+1}.
//
// EmitterTail: the original out-edges e_1, e_2, ... of base (listed per
// `enumeration`) are logically removed; each v_{j-1} emits
// f_j: v_{j-1} -> v_j and g_j: v_{j-1} -> r(e_j).
struct TailDescriptor {
  VertexId base;
  TailKind kind = TailKind::SinkTail;
  EdgeOrderPolicy enumeration;
  std::string tail_vertex_prefix;

  bool operator==(const TailDescriptor&) const = default;
};

// Vertex classes, decided on *effective* out-edges (tail semantics
// included): Regular iff finite nonzero out-degree, Sink iff none,
// CountableEmitter iff countably infinite, UncountableEmitter iff the
// out-cardinality is uncountable.
enum class VertexClass { Regular, Sink, CountableEmitter, UncountableEmitter };

const char* vertex_class_name(VertexClass c);

// Directed graph with a finite declared vertex set, cardinality-annotated
// edge bundles, and lazily attached tails. Values are treated as immutable
// once built: every operation below is a pure function, and transforms
// return new graphs.
class Graph {
 public:
  // Inserts a vertex; returns false if it was already present. Identifier
  // must be nonempty over [A-Za-z0-9_#].
  bool add_vertex(const VertexId& v);

  // Adds a bundle; source/target are declared implicitly if absent.
  void add_bundle(const std::string& bundle_id, const VertexId& source,
                  const VertexId& target, const Cardinality& multiplicity);

  // Attaches a tail descriptor. Validates that the base exists, carries no
  // other tail, has the right shape for the kind (no out-bundles for
  // SinkTail, countably infinite out-cardinality for EmitterTail), and
  // that the prefix equals the base id.
  void add_tail(const TailDescriptor& d);

  void mark_frontier(const VertexId& v);

  bool has_vertex(const VertexId& v) const { return vertices_.count(v) > 0; }
  bool has_bundle(const std::string& id) const { return bundles_.count(id) > 0; }
  const EdgeBundle* find_bundle(const std::string& id) const;
  const TailDescriptor* find_tail(const VertexId& base) const;
  bool is_frontier(const VertexId& v) const { return frontier_.count(v) > 0; }

  const std::set<VertexId>& vertices() const { return vertices_; }
  const std::map<std::string, EdgeBundle>& bundles() const { return bundles_; }
  const std::map<VertexId, TailDescriptor>& tails() const { return tails_; }
  const std::set<VertexId>& frontier() const { return frontier_; }

  // Out-bundles of a declared vertex, sorted by bundle id.
  std::vector<const EdgeBundle*> out_bundles(const VertexId& v) const;

  bool operator==(const Graph&) const = default;

 private:
  std::set<VertexId> vertices_;
  std::map<std::string, EdgeBundle> bundles_;
  std::map<VertexId, TailDescriptor> tails_;
  std::set<VertexId> frontier_;
};

// True when the graph has no tails and no infinite bundles.
bool is_finite(const Graph& g);

struct EdgeEndpoints {
  VertexId source;
  VertexId target;
};

// Resolves an edge reference to its endpoints. Handles declared bundles
// and virtual tail edges ("<base>#f<j>" / "<base>#g<j>", index 0).
// Rejects edges of a bundle logically removed by an emitter tail, indices
// out of range, and uncountable indices beyond the sampling bound.
EdgeEndpoints resolve_edge(const Graph& g, const EdgeRef& e);

// Generated names for tail vertices and tail edges.
VertexId tail_vertex_name(const TailDescriptor& d, std::uint64_t j);
std::string tail_edge_forward_name(const TailDescriptor& d, std::uint64_t j);
std::string tail_edge_redirect_name(const TailDescriptor& d, std::uint64_t j);

VertexClass classify_vertex(const Graph& g, const VertexId& v);

// Aggregate effective out-degree under cardinal addition; nullopt = zero.
OutCardinality out_cardinality(const Graph& g, const VertexId& v);

// Deterministic prefix of the enumeration of the effective out-edges of v,
// of length min(limit, total out-degree when finite). Tail bases and tail
// vertices list their f/g edges; plain vertices follow DefaultDiagonal.
std::vector<EdgeRef> edges_from(const Graph& g, const VertexId& v,
                                std::size_t limit);

// First `count` out-edges of v's own bundles under `policy`, ignoring any
// tail semantics. This is the e_1, e_2, ... listing used by emitter tails.
std::vector<EdgeRef> enumerate_out_edges(const Graph& g, const VertexId& v,
                                         const EdgeOrderPolicy& policy,
                                         std::size_t count);

struct RowFiniteness {
  bool row_finite = true;
  std::optional<VertexId> witness;  // some infinite emitter when false
};

// Decided symbolically: tails only ever contribute vertices of out-degree
// 1 or 2, so only declared vertices can witness failure.
RowFiniteness is_row_finite(const Graph& g);

// Multigraph isomorphism by exhaustive permutation search. Both graphs
// must be finite with at most kIsomorphismVertexBound vertices.
inline constexpr std::size_t kIsomorphismVertexBound = 10;

bool graph_isomorphic(const Graph& g1, const Graph& g2);

}  // namespace lpa

#endif  // LPA_GRAPH_HPP
