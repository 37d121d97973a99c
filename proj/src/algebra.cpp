#include "lpa/algebra.hpp"

#include <algorithm>

namespace lpa {

namespace {

// Ceiling on path enumeration so corner_basis fails loudly instead of
// grinding on a dense graph.
constexpr std::size_t kCornerPathBound = 100000;

// Cheap existence check covering declared and tail vertices alike.
void require_vertex(const Graph& g, const VertexId& v) {
  edges_from(g, v, 0);
}

bool is_prefix(const std::vector<EdgeRef>& shorter,
               const std::vector<EdgeRef>& longer) {
  return shorter.size() <= longer.size() &&
         std::equal(shorter.begin(), shorter.end(), longer.begin());
}

}  // namespace

Path make_path(const Graph& g, const VertexId& start,
               std::vector<EdgeRef> edges) {
  require_vertex(g, start);
  VertexId cur = start;
  for (const EdgeRef& e : edges) {
    EdgeEndpoints ep = resolve_edge(g, e);
    if (ep.source != cur) {
      throw DomainError(Errc::invalid_monomial,
                        "edge '" + e.bundle + "#" + std::to_string(e.index) +
                            "' does not continue the path at '" + cur.name +
                            "'");
    }
    cur = ep.target;
  }
  return Path{start, std::move(edges)};
}

VertexId path_end(const Graph& g, const Path& p) {
  if (p.trivial()) {
    require_vertex(g, p.start);
    return p.start;
  }
  return resolve_edge(g, p.edges.back()).target;
}

Monomial make_monomial(const Graph& g, Path real, Path ghost) {
  if (path_end(g, real) != path_end(g, ghost)) {
    throw DomainError(Errc::invalid_monomial,
                      "real and ghost halves end at different vertices");
  }
  return Monomial{std::move(real), std::move(ghost)};
}

Monomial vertex_unit(const Graph& g, const VertexId& v) {
  require_vertex(g, v);
  Path trivial{v, {}};
  return Monomial{trivial, trivial};
}

std::optional<Monomial> mul_monomial(const Graph& g, const Monomial& a,
                                     const Monomial& b) {
  (void)g;  // monomial invariants carry all the range information needed
  if (a.ghost.start != b.real.start) return std::nullopt;
  if (is_prefix(a.ghost.edges, b.real.edges)) {
    Monomial out{a.real, b.ghost};
    out.real.edges.insert(out.real.edges.end(),
                          b.real.edges.begin() + a.ghost.edges.size(),
                          b.real.edges.end());
    return out;
  }
  if (is_prefix(b.real.edges, a.ghost.edges)) {
    Monomial out{a.real, b.ghost};
    out.ghost.edges.insert(out.ghost.edges.end(),
                           a.ghost.edges.begin() + b.real.edges.size(),
                           a.ghost.edges.end());
    return out;
  }
  return std::nullopt;
}

AlgebraElement AlgebraElement::term(const Monomial& m, const Rational& c) {
  AlgebraElement x;
  x.add_term(m, c);
  return x;
}

AlgebraElement& AlgebraElement::add_term(const Monomial& m,
                                         const Rational& c) {
  if (c == 0) return *this;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement out = a;
  for (const auto& [m, c] : b.terms_) out.add_term(m, c);
  return out;
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement out = a;
  for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
  return out;
}

AlgebraElement scale(const Rational& c, const AlgebraElement& x) {
  AlgebraElement out;
  if (c == 0) return out;
  for (const auto& [m, k] : x.terms()) out.add_term(m, c * k);
  return out;
}

AlgebraElement mul(const Graph& g, const AlgebraElement& a,
                   const AlgebraElement& b) {
  AlgebraElement out;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      if (auto m = mul_monomial(g, ma, mb)) out.add_term(*m, ca * cb);
    }
  }
  return out;
}

LocalUnit local_unit_for(const Graph& g, const AlgebraElement& x) {
  (void)g;
  LocalUnit u;
  for (const auto& [m, c] : x.terms()) {
    u.vertices.insert(m.real.start);
    u.vertices.insert(m.ghost.start);
  }
  return u;
}

AlgebraElement unit_element(const Graph& g, const LocalUnit& u) {
  AlgebraElement out;
  for (const VertexId& v : u.vertices) out.add_term(vertex_unit(g, v), 1);
  return out;
}

bool is_idempotent(const Graph& g, const AlgebraElement& x) {
  return mul(g, x, x) == x;
}

bool are_orthogonal(const Graph& g, const AlgebraElement& x,
                    const AlgebraElement& y) {
  return mul(g, x, y).is_zero() && mul(g, y, x).is_zero();
}

std::vector<AlgebraElement> sample_emitter_idempotents(const Graph& g,
                                                       const VertexId& v,
                                                       std::size_t n) {
  std::vector<EdgeRef> refs = edges_from(g, v, n);
  if (refs.size() < n) {
    throw DomainError(Errc::not_enough_edges,
                      "vertex '" + v.name + "' emits only " +
                          std::to_string(refs.size()) + " edges, need " +
                          std::to_string(n));
  }
  std::vector<AlgebraElement> out;
  out.reserve(n);
  for (const EdgeRef& e : refs) {
    Path p = make_path(g, v, {e});
    out.push_back(AlgebraElement::term(Monomial{p, p}));
  }
  return out;
}

bool linearly_independent(const std::vector<AlgebraElement>& xs) {
  std::map<Monomial, std::size_t> column;
  for (const AlgebraElement& x : xs) {
    for (const auto& [m, c] : x.terms()) {
      column.emplace(m, column.size());
    }
  }
  std::vector<std::vector<Rational>> rows;  // reduced rows kept as pivots
  std::vector<std::size_t> pivot_col;
  for (const AlgebraElement& x : xs) {
    std::vector<Rational> row(column.size(), 0);
    for (const auto& [m, c] : x.terms()) row[column[m]] = c;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Rational& lead = row[pivot_col[r]];
      if (lead != 0) {
        Rational f = lead / rows[r][pivot_col[r]];
        for (std::size_t j = 0; j < row.size(); ++j) row[j] -= f * rows[r][j];
      }
    }
    auto it = std::find_if(row.begin(), row.end(),
                           [](const Rational& c) { return c != 0; });
    if (it == row.end()) return false;
    pivot_col.push_back(static_cast<std::size_t>(it - row.begin()));
    rows.push_back(std::move(row));
  }
  return true;
}

namespace {

// All walks of length exactly `len` from `start`; throws when some vertex
// along the way has an infinite row.
std::vector<Path> paths_of_length(const Graph& g, const VertexId& start,
                                  std::size_t len) {
  std::vector<Path> level{Path{start, {}}};
  for (std::size_t k = 0; k < len; ++k) {
    std::vector<Path> next;
    for (const Path& p : level) {
      VertexId end = path_end(g, p);
      OutCardinality oc = out_cardinality(g, end);
      if (!oc) continue;
      if (!oc->is_finite()) {
        throw DomainError(Errc::not_locally_row_finite,
                          "vertex '" + end.name +
                              "' has an infinite row; cannot enumerate paths");
      }
      for (const EdgeRef& e :
           edges_from(g, end, static_cast<std::size_t>(oc->count()))) {
        next.push_back(p);
        next.back().edges.push_back(e);
      }
      if (next.size() > kCornerPathBound) {
        throw DomainError(Errc::too_large, "more than " +
                                               std::to_string(kCornerPathBound) +
                                               " paths from '" + start.name +
                                               "'");
      }
    }
    level = std::move(next);
  }
  return level;
}

}  // namespace

std::vector<Monomial> corner_basis(const Graph& g, const VertexId& v,
                                   const VertexId& w, std::size_t maxlen) {
  require_vertex(g, v);
  require_vertex(g, w);
  std::vector<Monomial> out;
  for (std::size_t k = 0; k <= maxlen; ++k) {
    std::map<VertexId, std::vector<Path>> from_v, from_w;
    for (Path& p : paths_of_length(g, v, k)) {
      from_v[path_end(g, p)].push_back(std::move(p));
    }
    for (Path& q : paths_of_length(g, w, k)) {
      from_w[path_end(g, q)].push_back(std::move(q));
    }
    std::vector<Monomial> level;
    for (const auto& [end, ps] : from_v) {
      auto it = from_w.find(end);
      if (it == from_w.end()) continue;
      for (const Path& p : ps) {
        for (const Path& q : it->second) level.push_back(Monomial{p, q});
      }
    }
    std::sort(level.begin(), level.end());
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

AlgebraElement corner_project(const Graph& g, const LocalUnit& t,
                              const AlgebraElement& x) {
  for (const VertexId& v : t.vertices) require_vertex(g, v);
  AlgebraElement out;
  for (const auto& [m, c] : x.terms()) {
    if (t.vertices.count(m.real.start) && t.vertices.count(m.ghost.start)) {
      out.add_term(m, c);
    }
  }
  return out;
}

std::string to_string(const Rational& r) { return r.str(); }

std::string to_string(const Path& p) {
  if (p.trivial()) return p.start.name;
  std::string out;
  for (const EdgeRef& e : p.edges) {
    if (!out.empty()) out += ' ';
    out += e.bundle + "[" + std::to_string(e.index) + "]";
  }
  return out;
}

std::string to_string(const Monomial& m) {
  if (m.ghost.trivial()) return to_string(m.real);  // covers vertex units
  std::string ghost = "(" + to_string(m.ghost) + ")*";
  if (m.real.trivial()) return ghost;
  return to_string(m.real) + " " + ghost;
}

std::string to_string(const AlgebraElement& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : x.terms()) {
    if (!out.empty()) out += " + ";
    if (c != 1) out += to_string(c) + "*";
    out += to_string(m);
  }
  return out;
}

}  // namespace lpa
