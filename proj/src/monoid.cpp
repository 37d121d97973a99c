#include "lpa/monoid.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <string_view>

namespace lpa {

namespace {

std::optional<std::uint64_t> parse_canonical_u64(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.size() > 1 && s[0] == '0') return std::nullopt;
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

void require_finite(const Graph& g) {
  if (!is_finite(g)) {
    throw DomainError(Errc::not_finite,
                      "monoid comparisons admit only finite graphs; "
                      "materialize first");
  }
}

void require_vertex(const Graph& g, const VertexId& v) {
  if (!g.has_vertex(v)) {
    throw DomainError(Errc::unknown_vertex, "unknown vertex '" + v.name + "'");
  }
}

void require_nonzero(const MonoidVector& x) {
  if (x.is_zero()) {
    throw DomainError(Errc::empty_vector, "empty monoid vector");
  }
}

}  // namespace

void MonoidVector::add(const VertexId& v, std::uint64_t k) {
  if (k == 0) return;
  coords[v] += k;
}

bool MonoidVector::try_subtract(const MonoidVector& other) {
  for (const auto& [v, k] : other.coords) {
    auto it = coords.find(v);
    if (it == coords.end() || it->second < k) return false;
  }
  for (const auto& [v, k] : other.coords) {
    auto it = coords.find(v);
    it->second -= k;
    if (it->second == 0) coords.erase(it);
  }
  return true;
}

MonoidVector parse_monoid_vector(const Graph& g, const std::string& text) {
  if (text.empty()) {
    throw DomainError(Errc::empty_vector, "empty monoid vector");
  }
  MonoidVector out;
  std::string_view rest = text;
  while (!rest.empty()) {
    auto comma = rest.find(',');
    std::string_view part = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{}
                                           : rest.substr(comma + 1);
    auto colon = part.find(':');
    if (colon == std::string_view::npos || colon == 0) {
      throw DomainError(Errc::bad_identifier,
                        "expected 'vertex:count', got '" + std::string(part) +
                            "'");
    }
    VertexId v{std::string(part.substr(0, colon))};
    auto k = parse_canonical_u64(part.substr(colon + 1));
    if (!k || *k == 0) {
      throw DomainError(Errc::bad_multiplicity,
                        "bad count in '" + std::string(part) + "'");
    }
    require_vertex(g, v);
    if (out.coords.count(v)) {
      throw DomainError(Errc::bad_identifier,
                        "vertex '" + v.name + "' listed twice");
    }
    out.add(v, *k);
  }
  if (out.is_zero()) {
    throw DomainError(Errc::empty_vector, "empty monoid vector");
  }
  return out;
}

std::string format_monoid_vector(const MonoidVector& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [v, k] : x.coords) {
    if (!out.empty()) out += ',';
    out += v.name + ":" + std::to_string(k);
  }
  return out;
}

MonoidVector relation_sum(const Graph& g, const VertexId& v) {
  require_vertex(g, v);
  if (classify_vertex(g, v) != VertexClass::Regular) {
    throw DomainError(Errc::not_enough_edges,
                      "vertex '" + v.name +
                          "' is not regular and has no defining relation");
  }
  MonoidVector sum;
  for (const EdgeBundle* b : g.out_bundles(v)) {
    sum.add(b->target, b->multiplicity.count());
  }
  return sum;
}

std::vector<std::pair<RewriteStep, MonoidVector>> expansions(
    const Graph& g, const MonoidVector& x) {
  require_finite(g);
  std::vector<std::pair<RewriteStep, MonoidVector>> out;
  for (const auto& [v, k] : x.coords) {
    require_vertex(g, v);
    if (classify_vertex(g, v) != VertexClass::Regular) continue;
    MonoidVector y = x;
    auto it = y.coords.find(v);
    if (--it->second == 0) y.coords.erase(it);
    MonoidVector sum = relation_sum(g, v);
    for (const auto& [w, n] : sum.coords) y.add(w, n);
    out.push_back({{RewriteStep::Kind::Expand, v}, std::move(y)});
  }
  return out;
}

namespace {

std::vector<std::pair<RewriteStep, MonoidVector>> neighbors(
    const Graph& g, const MonoidVector& x) {
  auto out = expansions(g, x);
  for (const VertexId& v : g.vertices()) {
    if (classify_vertex(g, v) != VertexClass::Regular) continue;
    MonoidVector y = x;
    if (!y.try_subtract(relation_sum(g, v))) continue;
    y.add(v, 1);
    out.push_back({{RewriteStep::Kind::Contract, v}, std::move(y)});
  }
  return out;
}

}  // namespace

MonoidVector apply_step(const Graph& g, const MonoidVector& x,
                        const RewriteStep& step) {
  MonoidVector y = x;
  MonoidVector sum = relation_sum(g, step.vertex);
  if (step.kind == RewriteStep::Kind::Expand) {
    MonoidVector one;
    one.add(step.vertex, 1);
    if (!y.try_subtract(one)) {
      throw DomainError(Errc::bad_policy, "expand step does not apply at '" +
                                              step.vertex.name + "'");
    }
    for (const auto& [w, n] : sum.coords) y.add(w, n);
  } else {
    if (!y.try_subtract(sum)) {
      throw DomainError(Errc::bad_policy, "contract step does not apply at '" +
                                              step.vertex.name + "'");
    }
    y.add(step.vertex, 1);
  }
  return y;
}

EqualityVerdict equal_up_to_depth(const Graph& g, const MonoidVector& x,
                                  const MonoidVector& y, std::uint64_t depth) {
  require_finite(g);
  require_nonzero(x);
  require_nonzero(y);
  for (const auto& [v, k] : x.coords) require_vertex(g, v);
  for (const auto& [v, k] : y.coords) require_vertex(g, v);
  if (x == y) return {EqualityVerdict::Kind::Equal, {}, 0};

  std::set<MonoidVector> visited{x};
  std::map<MonoidVector, std::pair<MonoidVector, RewriteStep>> parent;
  std::vector<MonoidVector> frontier{x};
  bool capped = false;

  for (std::uint64_t level = 1; level <= depth; ++level) {
    std::vector<MonoidVector> next;
    for (const MonoidVector& u : frontier) {
      for (auto& [step, w] : neighbors(g, u)) {
        if (visited.count(w)) continue;
        if (visited.size() >= kMonoidStateBound) {
          capped = true;
          break;
        }
        visited.insert(w);
        parent.emplace(w, std::make_pair(u, step));
        if (w == y) {
          std::vector<RewriteStep> cert;
          MonoidVector cur = w;
          while (cur != x) {
            const auto& [p, s] = parent.at(cur);
            cert.push_back(s);
            cur = p;
          }
          std::reverse(cert.begin(), cert.end());
          return {EqualityVerdict::Kind::Equal, std::move(cert), level};
        }
        next.push_back(std::move(w));
      }
      if (capped) break;
    }
    if (capped) {
      return {EqualityVerdict::Kind::UnknownAtDepth, {}, level - 1};
    }
    if (next.empty()) break;  // component exhausted; still no disequality claim
    frontier = std::move(next);
  }
  // TODO: an exhausted component in an acyclic graph actually refutes
  // equality, but the verdict vocabulary keeps that observation out of scope.
  return {EqualityVerdict::Kind::UnknownAtDepth, {}, depth};
}

bool tail_collapse_check(const Graph& g, const VertexId& base,
                         std::uint64_t depth) {
  require_finite(g);
  require_vertex(g, base);
  // The input must be a materialized sink tail: base -> base#1 -> ... ->
  // base#depth via single-edge forward bundles.
  TailDescriptor shape{base, TailKind::SinkTail,
                       EdgeOrderPolicy::default_diagonal(), base.name};
  for (std::uint64_t j = 1; j <= depth; ++j) {
    VertexId from = (j == 1) ? base : tail_vertex_name(shape, j - 1);
    VertexId to = tail_vertex_name(shape, j);
    const EdgeBundle* b = g.find_bundle(tail_edge_forward_name(shape, j));
    if (!b || b->source != from || b->target != to ||
        !(b->multiplicity == Cardinality::finite(1))) {
      throw DomainError(Errc::malformed_tail,
                        "no truncated tail of depth " + std::to_string(depth) +
                            " at '" + base.name + "'");
    }
  }
  MonoidVector x;
  x.add(base, 1);
  for (std::uint64_t j = 1; j <= depth; ++j) {
    MonoidVector y;
    y.add(tail_vertex_name(shape, j), 1);
    if (!equal_up_to_depth(g, x, y, depth).equal()) return false;
  }
  return true;
}

}  // namespace lpa
