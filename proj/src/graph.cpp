#include "lpa/graph.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <string_view>

namespace lpa {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::unknown_vertex: return "UnknownVertex";
    case Errc::bad_identifier: return "BadIdentifier";
    case Errc::duplicate_bundle: return "DuplicateBundle";
    case Errc::bad_multiplicity: return "BadMultiplicity";
    case Errc::invalid_edge: return "InvalidEdge";
    case Errc::non_enumerable: return "NonEnumerable";
    case Errc::too_large: return "TooLarge";
    case Errc::not_finite: return "NotFinite";
    case Errc::not_a_sink: return "NotASink";
    case Errc::not_a_countable_emitter: return "NotACountableEmitter";
    case Errc::has_uncountable: return "HasUncountable";
    case Errc::bad_policy: return "BadPolicy";
    case Errc::invalid_monomial: return "InvalidMonomial";
    case Errc::not_enough_edges: return "NotEnoughEdges";
    case Errc::not_locally_row_finite: return "NotLocallyRowFinite";
    case Errc::malformed_tail: return "MalformedTail";
    case Errc::empty_vector: return "EmptyVector";
  }
  return "Unknown";
}

const char* tail_kind_name(TailKind k) {
  return k == TailKind::SinkTail ? "sink" : "emitter";
}

const char* vertex_class_name(VertexClass c) {
  switch (c) {
    case VertexClass::Regular: return "Regular";
    case VertexClass::Sink: return "Sink";
    case VertexClass::CountableEmitter: return "CountableEmitter";
    case VertexClass::UncountableEmitter: return "UncountableEmitter";
  }
  return "";
}

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
              (c >= '0' && c <= '9') || c == '_' || c == '#';
    if (!ok) return false;
  }
  return true;
}

// Canonical decimal: nonempty, no leading zeros, fits in 64 bits.
std::optional<std::uint64_t> parse_canonical_u64(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.size() > 1 && s[0] == '0') return std::nullopt;
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

struct ResolvedVertex {
  const TailDescriptor* tail = nullptr;  // non-null when v sits on a tail
  std::uint64_t tail_index = 0;          // 0 = the base itself
};

// Declared vertices resolve directly (picking up their own tail, if any);
// otherwise "<base>#<j>" with j >= 1 resolves as a virtual tail vertex of
// base's descriptor.
ResolvedVertex resolve_vertex(const Graph& g, const VertexId& v) {
  if (g.has_vertex(v)) {
    return {g.find_tail(v), 0};
  }
  auto pos = v.name.find('#');
  if (pos != std::string::npos && pos > 0) {
    VertexId base{v.name.substr(0, pos)};
    auto j = parse_canonical_u64(std::string_view(v.name).substr(pos + 1));
    if (j && *j >= 1) {
      if (const TailDescriptor* d = g.find_tail(base)) {
        return {d, *j};
      }
    }
  }
  throw DomainError(Errc::unknown_vertex, "unknown vertex '" + v.name + "'");
}

OutCardinality own_out_cardinality(const Graph& g, const VertexId& v) {
  OutCardinality acc;
  for (const EdgeBundle* b : g.out_bundles(v)) {
    acc = acc ? cardinal_add(*acc, b->multiplicity) : b->multiplicity;
  }
  return acc;
}

// Index validity against a bundle's multiplicity.
void check_edge_index(const EdgeBundle& b, std::uint64_t index) {
  if (b.multiplicity.is_finite() && index >= b.multiplicity.count()) {
    throw DomainError(Errc::invalid_edge,
                      "edge index " + std::to_string(index) +
                          " out of range for bundle '" + b.id + "'");
  }
  if (b.multiplicity.is_uncountable() && index >= kUncountableSampleBound) {
    throw DomainError(Errc::non_enumerable,
                      "index " + std::to_string(index) +
                          " exceeds the sampling bound of uncountable bundle '" +
                          b.id + "'");
  }
}

// Stateful cursor over the DefaultDiagonal order: finite bundles first
// (sorted by id, index order), then round-robin across infinite bundles.
class DiagonalCursor {
 public:
  explicit DiagonalCursor(const std::vector<const EdgeBundle*>& bundles) {
    for (const EdgeBundle* b : bundles) {
      (b->multiplicity.is_finite() ? finite_ : infinite_).push_back(b);
    }
  }

  bool next(EdgeRef& out) {
    while (fi_ < finite_.size()) {
      const EdgeBundle* b = finite_[fi_];
      if (index_ < b->multiplicity.count()) {
        out = {b->id, index_++};
        return true;
      }
      ++fi_;
      index_ = 0;
    }
    if (infinite_.empty()) return false;
    out = {infinite_[ii_]->id, round_};
    if (++ii_ == infinite_.size()) {
      ii_ = 0;
      ++round_;
    }
    return true;
  }

 private:
  std::vector<const EdgeBundle*> finite_;
  std::vector<const EdgeBundle*> infinite_;
  std::size_t fi_ = 0;
  std::uint64_t index_ = 0;
  std::size_t ii_ = 0;
  std::uint64_t round_ = 0;
};

}  // namespace

bool Graph::add_vertex(const VertexId& v) {
  if (!valid_identifier(v.name)) {
    throw DomainError(Errc::bad_identifier,
                      "bad vertex identifier '" + v.name + "'");
  }
  return vertices_.insert(v).second;
}

void Graph::add_bundle(const std::string& bundle_id, const VertexId& source,
                       const VertexId& target,
                       const Cardinality& multiplicity) {
  if (!valid_identifier(bundle_id)) {
    throw DomainError(Errc::bad_identifier,
                      "bad bundle identifier '" + bundle_id + "'");
  }
  if (bundles_.count(bundle_id)) {
    throw DomainError(Errc::duplicate_bundle,
                      "duplicate bundle '" + bundle_id + "'");
  }
  if (find_tail(source)) {
    throw DomainError(Errc::malformed_tail,
                      "cannot add an out-bundle at tailed vertex '" +
                          source.name + "'");
  }
  add_vertex(source);
  add_vertex(target);
  bundles_.emplace(bundle_id,
                   EdgeBundle{bundle_id, source, target, multiplicity});
}

void Graph::add_tail(const TailDescriptor& d) {
  if (!has_vertex(d.base)) {
    throw DomainError(Errc::unknown_vertex,
                      "unknown vertex '" + d.base.name + "'");
  }
  if (d.base.name.find('#') != std::string::npos) {
    throw DomainError(Errc::bad_identifier,
                      "cannot attach a tail at generated vertex '" +
                          d.base.name + "'");
  }
  if (find_tail(d.base)) {
    throw DomainError(Errc::malformed_tail,
                      "vertex '" + d.base.name + "' already carries a tail");
  }
  if (d.tail_vertex_prefix != d.base.name) {
    throw DomainError(Errc::malformed_tail,
                      "tail prefix must equal the base vertex id");
  }
  // Generated names are "<base>#..."; a declared name in that space (only
  // possible in re-fed materializations) would collide.
  const std::string generated = d.base.name + "#";
  for (const VertexId& v : vertices_) {
    if (v.name.compare(0, generated.size(), generated) == 0) {
      throw DomainError(Errc::bad_identifier,
                        "declared vertex '" + v.name +
                            "' collides with generated tail names");
    }
  }
  for (const auto& [id, b] : bundles_) {
    if (id.compare(0, generated.size(), generated) == 0) {
      throw DomainError(Errc::bad_identifier,
                        "declared bundle '" + id +
                            "' collides with generated tail names");
    }
  }
  OutCardinality oc = own_out_cardinality(*this, d.base);
  if (d.kind == TailKind::SinkTail && oc) {
    throw DomainError(Errc::not_a_sink,
                      "vertex '" + d.base.name + "' has out-edges");
  }
  if (d.kind == TailKind::EmitterTail &&
      (!oc || !oc->is_countably_infinite())) {
    throw DomainError(Errc::not_a_countable_emitter,
                      "vertex '" + d.base.name +
                          "' is not a countably infinite emitter");
  }
  tails_.emplace(d.base, d);
}

void Graph::mark_frontier(const VertexId& v) {
  if (!has_vertex(v)) {
    throw DomainError(Errc::unknown_vertex, "unknown vertex '" + v.name + "'");
  }
  frontier_.insert(v);
}

const EdgeBundle* Graph::find_bundle(const std::string& id) const {
  auto it = bundles_.find(id);
  return it == bundles_.end() ? nullptr : &it->second;
}

const TailDescriptor* Graph::find_tail(const VertexId& base) const {
  auto it = tails_.find(base);
  return it == tails_.end() ? nullptr : &it->second;
}

std::vector<const EdgeBundle*> Graph::out_bundles(const VertexId& v) const {
  std::vector<const EdgeBundle*> out;
  for (const auto& [id, b] : bundles_) {
    if (b.source == v) out.push_back(&b);
  }
  return out;
}

bool is_finite(const Graph& g) {
  if (!g.tails().empty()) return false;
  for (const auto& [id, b] : g.bundles()) {
    if (!b.multiplicity.is_finite()) return false;
  }
  return true;
}

VertexId tail_vertex_name(const TailDescriptor& d, std::uint64_t j) {
  return VertexId{d.tail_vertex_prefix + "#" + std::to_string(j)};
}

std::string tail_edge_forward_name(const TailDescriptor& d, std::uint64_t j) {
  return d.tail_vertex_prefix + "#f" + std::to_string(j);
}

std::string tail_edge_redirect_name(const TailDescriptor& d, std::uint64_t j) {
  return d.tail_vertex_prefix + "#g" + std::to_string(j);
}

EdgeEndpoints resolve_edge(const Graph& g, const EdgeRef& e) {
  if (const EdgeBundle* b = g.find_bundle(e.bundle)) {
    const TailDescriptor* d = g.find_tail(b->source);
    if (d && d->kind == TailKind::EmitterTail) {
      throw DomainError(Errc::invalid_edge,
                        "bundle '" + e.bundle +
                            "' is replaced by the tail at '" +
                            b->source.name + "'");
    }
    check_edge_index(*b, e.index);
    return {b->source, b->target};
  }
  // Virtual tail edge "<prefix>#f<j>" or "<prefix>#g<j>".
  auto pos = e.bundle.find('#');
  if (pos != std::string::npos && pos > 0 && pos + 2 < e.bundle.size()) {
    char kind = e.bundle[pos + 1];
    auto j = parse_canonical_u64(std::string_view(e.bundle).substr(pos + 2));
    if ((kind == 'f' || kind == 'g') && j && *j >= 1 && e.index == 0) {
      VertexId base{e.bundle.substr(0, pos)};
      if (const TailDescriptor* d = g.find_tail(base)) {
        VertexId from = (*j == 1) ? d->base : tail_vertex_name(*d, *j - 1);
        if (kind == 'f') {
          return {from, tail_vertex_name(*d, *j)};
        }
        if (d->kind == TailKind::EmitterTail) {
          auto listed = enumerate_out_edges(g, d->base, d->enumeration,
                                            static_cast<std::size_t>(*j));
          if (listed.size() == *j) {
            const EdgeBundle* src = g.find_bundle(listed.back().bundle);
            return {from, src->target};
          }
        }
      }
    }
  }
  throw DomainError(Errc::invalid_edge, "no such edge '" + e.bundle + "#" +
                                            std::to_string(e.index) + "'");
}

OutCardinality out_cardinality(const Graph& g, const VertexId& v) {
  ResolvedVertex rv = resolve_vertex(g, v);
  if (rv.tail) {
    // Any position on a tail emits f_{j+1}, plus g_{j+1} on emitter tails.
    return Cardinality::finite(rv.tail->kind == TailKind::EmitterTail ? 2 : 1);
  }
  return own_out_cardinality(g, v);
}

VertexClass classify_vertex(const Graph& g, const VertexId& v) {
  OutCardinality oc = out_cardinality(g, v);
  if (!oc) return VertexClass::Sink;
  switch (oc->kind()) {
    case Cardinality::Kind::Finite: return VertexClass::Regular;
    case Cardinality::Kind::CountablyInfinite:
      return VertexClass::CountableEmitter;
    case Cardinality::Kind::Uncountable: return VertexClass::UncountableEmitter;
  }
  return VertexClass::Sink;
}

std::vector<EdgeRef> enumerate_out_edges(const Graph& g, const VertexId& v,
                                         const EdgeOrderPolicy& policy,
                                         std::size_t count) {
  if (!g.has_vertex(v)) {
    throw DomainError(Errc::unknown_vertex, "unknown vertex '" + v.name + "'");
  }
  auto bundles = g.out_bundles(v);
  std::vector<EdgeRef> out;
  out.reserve(count);

  switch (policy.kind) {
    case EdgeOrderPolicy::Kind::DefaultDiagonal: {
      DiagonalCursor cursor(bundles);
      EdgeRef ref;
      while (out.size() < count && cursor.next(ref)) out.push_back(ref);
      return out;
    }

    case EdgeOrderPolicy::Kind::BundleConcat: {
      std::set<std::string> listed(policy.bundle_order.begin(),
                                   policy.bundle_order.end());
      if (listed.size() != policy.bundle_order.size() ||
          listed.size() != bundles.size()) {
        throw DomainError(Errc::bad_policy,
                          "concat order must list every out-bundle of '" +
                              v.name + "' exactly once");
      }
      for (const std::string& id : policy.bundle_order) {
        const EdgeBundle* b = g.find_bundle(id);
        if (!b || b->source != v) {
          throw DomainError(Errc::bad_policy, "bundle '" + id +
                                                  "' is not an out-bundle of '" +
                                                  v.name + "'");
        }
      }
      for (std::size_t i = 0; i + 1 < policy.bundle_order.size(); ++i) {
        if (!g.find_bundle(policy.bundle_order[i])->multiplicity.is_finite()) {
          throw DomainError(
              Errc::bad_policy,
              "only the last bundle of a concat order may be infinite");
        }
      }
      for (const std::string& id : policy.bundle_order) {
        const EdgeBundle* b = g.find_bundle(id);
        std::uint64_t n = b->multiplicity.is_finite()
                              ? b->multiplicity.count()
                              : std::numeric_limits<std::uint64_t>::max();
        for (std::uint64_t i = 0; i < n && out.size() < count; ++i) {
          out.push_back({b->id, i});
        }
        if (out.size() >= count) break;
      }
      return out;
    }

    case EdgeOrderPolicy::Kind::ExplicitPrefix: {
      std::set<EdgeRef> seen;
      for (const EdgeRef& ref : policy.prefix) {
        const EdgeBundle* b = g.find_bundle(ref.bundle);
        if (!b || b->source != v ||
            (b->multiplicity.is_finite() &&
             ref.index >= b->multiplicity.count())) {
          throw DomainError(Errc::bad_policy,
                            "prefix edge '" + ref.bundle + "#" +
                                std::to_string(ref.index) +
                                "' is not an out-edge of '" + v.name + "'");
        }
        check_edge_index(*b, ref.index);
        if (!seen.insert(ref).second) {
          throw DomainError(Errc::bad_policy,
                            "prefix lists edge '" + ref.bundle + "#" +
                                std::to_string(ref.index) + "' twice");
        }
      }
      for (const EdgeRef& ref : policy.prefix) {
        if (out.size() >= count) break;
        out.push_back(ref);
      }
      DiagonalCursor cursor(bundles);
      EdgeRef ref;
      while (out.size() < count && cursor.next(ref)) {
        if (!seen.count(ref)) out.push_back(ref);
      }
      return out;
    }
  }
  return out;
}

std::vector<EdgeRef> edges_from(const Graph& g, const VertexId& v,
                                std::size_t limit) {
  ResolvedVertex rv = resolve_vertex(g, v);
  if (rv.tail) {
    const TailDescriptor& d = *rv.tail;
    std::uint64_t j = rv.tail_index + 1;
    std::vector<EdgeRef> out;
    if (limit >= 1) out.push_back({tail_edge_forward_name(d, j), 0});
    if (limit >= 2 && d.kind == TailKind::EmitterTail) {
      out.push_back({tail_edge_redirect_name(d, j), 0});
    }
    return out;
  }
  OutCardinality oc = own_out_cardinality(g, v);
  if (oc && oc->is_uncountable() && limit > kUncountableSampleBound) {
    throw DomainError(Errc::non_enumerable,
                      "limit " + std::to_string(limit) +
                          " exceeds the sampling bound at uncountable emitter '" +
                          v.name + "'");
  }
  return enumerate_out_edges(g, v, EdgeOrderPolicy::default_diagonal(), limit);
}

RowFiniteness is_row_finite(const Graph& g) {
  // Tail vertices always emit one or two edges, so only declared vertices
  // can witness an infinite row.
  for (const VertexId& v : g.vertices()) {
    OutCardinality oc = out_cardinality(g, v);
    if (oc && !oc->is_finite()) return {false, v};
  }
  return {true, std::nullopt};
}

namespace {

struct VertexInvariant {
  std::uint64_t out = 0;
  std::uint64_t in = 0;
  std::uint64_t loops = 0;

  auto operator<=>(const VertexInvariant&) const = default;
};

struct FlatGraph {
  std::vector<VertexId> vertices;                 // sorted
  std::vector<std::vector<std::uint64_t>> count;  // edge counts per pair
  std::vector<VertexInvariant> inv;
  std::uint64_t total = 0;
};

FlatGraph flatten(const Graph& g) {
  FlatGraph f;
  f.vertices.assign(g.vertices().begin(), g.vertices().end());
  std::size_t n = f.vertices.size();
  f.count.assign(n, std::vector<std::uint64_t>(n, 0));
  auto index = [&](const VertexId& v) {
    return static_cast<std::size_t>(
        std::lower_bound(f.vertices.begin(), f.vertices.end(), v) -
        f.vertices.begin());
  };
  for (const auto& [id, b] : g.bundles()) {
    f.count[index(b.source)][index(b.target)] += b.multiplicity.count();
    f.total += b.multiplicity.count();
  }
  f.inv.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      f.inv[i].out += f.count[i][j];
      f.inv[i].in += f.count[j][i];
    }
    f.inv[i].loops = f.count[i][i];
  }
  return f;
}

bool extend_mapping(const FlatGraph& a, const FlatGraph& b,
                    std::vector<std::size_t>& map, std::vector<bool>& used,
                    std::size_t i) {
  std::size_t n = a.vertices.size();
  if (i == n) return true;
  for (std::size_t j = 0; j < n; ++j) {
    if (used[j] || a.inv[i] != b.inv[j]) continue;
    bool ok = a.count[i][i] == b.count[j][j];
    for (std::size_t k = 0; ok && k < i; ++k) {
      ok = a.count[i][k] == b.count[j][map[k]] &&
           a.count[k][i] == b.count[map[k]][j];
    }
    if (!ok) continue;
    map[i] = j;
    used[j] = true;
    if (extend_mapping(a, b, map, used, i + 1)) return true;
    used[j] = false;
  }
  return false;
}

}  // namespace

bool graph_isomorphic(const Graph& g1, const Graph& g2) {
  for (const Graph* g : {&g1, &g2}) {
    if (!is_finite(*g)) {
      throw DomainError(Errc::not_finite,
                        "isomorphism requires finite graphs");
    }
    if (g->vertices().size() > kIsomorphismVertexBound) {
      throw DomainError(Errc::too_large,
                        "isomorphism search limited to " +
                            std::to_string(kIsomorphismVertexBound) +
                            " vertices");
    }
  }
  FlatGraph a = flatten(g1), b = flatten(g2);
  if (a.vertices.size() != b.vertices.size() || a.total != b.total) {
    return false;
  }
  auto ia = a.inv, ib = b.inv;
  std::sort(ia.begin(), ia.end());
  std::sort(ib.begin(), ib.end());
  if (ia != ib) return false;
  std::vector<std::size_t> map(a.vertices.size());
  std::vector<bool> used(a.vertices.size(), false);
  return extend_mapping(a, b, map, used, 0);
}

}  // namespace lpa
