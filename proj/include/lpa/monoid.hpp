#pragma once

#include <map>
#include <string>
#include <vector>

#include "lpa/graph.hpp"

namespace lpa {

// Finite formal sum of vertex generators with nonnegative coefficients;
// zero entries are never stored.
struct MonoidVector {
  std::map<VertexId, std::uint64_t> coords;

  auto operator<=>(const MonoidVector&) const = default;

  bool is_zero() const { return coords.empty(); }
  void add(const VertexId& v, std::uint64_t k);
  // Subtracts when every coordinate stays nonnegative; false otherwise.
  bool try_subtract(const MonoidVector& other);
};

// "v:2,w:1" with every vertex resolvable in g; rejects empty input,
// zero coefficients and repeated vertices.
MonoidVector parse_monoid_vector(const Graph& g, const std::string& text);
std::string format_monoid_vector(const MonoidVector& x);

// One application of a defining relation a_v = sum of a_{r(e)} over the row
// of a regular vertex v: Expand replaces a_v by the sum, Contract folds the
// sum back into a_v.
struct RewriteStep {
  enum class Kind { Expand, Contract };

  Kind kind;
  VertexId vertex;

  auto operator<=>(const RewriteStep&) const = default;
};

// The right-hand side of v's relation; throws unless v is regular.
MonoidVector relation_sum(const Graph& g, const VertexId& v);

// All vectors one Expand step away from x, with the step that reaches them.
// The whole module admits only finite graphs (no tails, no infinite
// bundles) and throws NotFinite otherwise: the monoid of an infinite graph
// is compared through its materializations.
std::vector<std::pair<RewriteStep, MonoidVector>> expansions(
    const Graph& g, const MonoidVector& x);

// Replay a step; throws when it does not apply.
MonoidVector apply_step(const Graph& g, const MonoidVector& x,
                        const RewriteStep& step);

struct EqualityVerdict {
  enum class Kind { Equal, UnknownAtDepth };

  Kind kind;
  std::vector<RewriteStep> certificate;  // Equal: rewrites x into y
  std::uint64_t depth = 0;               // UnknownAtDepth: levels searched

  bool equal() const { return kind == Kind::Equal; }
};

inline constexpr std::size_t kMonoidStateBound = 100000;

// Breadth-first search over Expand and Contract steps, at most `depth`
// steps and kMonoidStateBound distinct vectors.  Equal comes with a replayable
// certificate; UnknownAtDepth is not a disequality proof.
EqualityVerdict equal_up_to_depth(const Graph& g, const MonoidVector& x,
                                  const MonoidVector& y, std::uint64_t depth);

// On materialize(sink-tailed graph, depth): every truncated tail generator
// a_{base#j}, 1 <= j <= depth, must collapse onto a_base within `depth`
// steps.  Throws MalformedTail when the chain base -> base#1 -> ... is not
// actually present in g.
bool tail_collapse_check(const Graph& g, const VertexId& base,
                         std::uint64_t depth);

}  // namespace lpa
