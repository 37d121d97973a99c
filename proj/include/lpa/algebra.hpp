#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lpa/graph.hpp"

namespace lpa {

// Exact scalars so idempotency and independence checks never wobble.
using Rational = boost::multiprecision::cpp_rational;

// A directed walk: `start` alone when trivial, otherwise edges composing
// head to tail.  Construct through make_path, which checks composition.
struct Path {
  VertexId start;
  std::vector<EdgeRef> edges;

  auto operator<=>(const Path&) const = default;

  std::size_t length() const { return edges.size(); }
  bool trivial() const { return edges.empty(); }
};

Path make_path(const Graph& g, const VertexId& start,
               std::vector<EdgeRef> edges);
VertexId path_end(const Graph& g, const Path& p);

// A word p q* with matching ranges; the ghost half is stored unreversed.
// Products of two such words are again of this shape (or vanish) because
// e* f collapses to a vertex or to zero — no relation re-expands a vertex
// into an edge sum here.
struct Monomial {
  Path real;
  Path ghost;

  auto operator<=>(const Monomial&) const = default;
};

Monomial make_monomial(const Graph& g, Path real, Path ghost);
Monomial vertex_unit(const Graph& g, const VertexId& v);

// (p1 q1*)(p2 q2*): nonzero exactly when one of q1, p2 is a prefix of the
// other, leaving p1 t q2* or p1 (q2 t)*.  nullopt encodes zero.
std::optional<Monomial> mul_monomial(const Graph& g, const Monomial& a,
                                     const Monomial& b);

// Finite rational combination of monomials, kept in normal form (sorted
// keys, no zero coefficients).
class AlgebraElement {
 public:
  AlgebraElement() = default;

  static AlgebraElement term(const Monomial& m, const Rational& c = 1);

  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  AlgebraElement& add_term(const Monomial& m, const Rational& c);

  friend AlgebraElement operator+(const AlgebraElement& a,
                                  const AlgebraElement& b);
  friend AlgebraElement operator-(const AlgebraElement& a,
                                  const AlgebraElement& b);
  bool operator==(const AlgebraElement&) const = default;

 private:
  std::map<Monomial, Rational> terms_;
};

AlgebraElement scale(const Rational& c, const AlgebraElement& x);
AlgebraElement mul(const Graph& g, const AlgebraElement& a,
                   const AlgebraElement& b);

// Finite sets of vertices act as units on everything they cover.
struct LocalUnit {
  std::set<VertexId> vertices;

  auto operator<=>(const LocalUnit&) const = default;
};

LocalUnit local_unit_for(const Graph& g, const AlgebraElement& x);
AlgebraElement unit_element(const Graph& g, const LocalUnit& u);

bool is_idempotent(const Graph& g, const AlgebraElement& x);
bool are_orthogonal(const Graph& g, const AlgebraElement& x,
                    const AlgebraElement& y);

// e e* over the first n listed edges at v: pairwise orthogonal idempotents
// witnessing that a big row forces a big corner.
std::vector<AlgebraElement> sample_emitter_idempotents(const Graph& g,
                                                       const VertexId& v,
                                                       std::size_t n);

// Independence over the monomial coordinates (distinct words count as
// distinct basis directions).
bool linearly_independent(const std::vector<AlgebraElement>& xs);

// All p q* with s(p)=v, s(q)=w, equal length k <= maxlen and matching
// range, level by level.  Needs finite rows along the way.
std::vector<Monomial> corner_basis(const Graph& g, const VertexId& v,
                                   const VertexId& w, std::size_t maxlen);

// t·x·t for a local unit t: keeps exactly the terms whose real and ghost
// halves both start inside t.  corner_project(g, local_unit_for(g, x), x)
// returns x — that is what makes t a local unit for x.
AlgebraElement corner_project(const Graph& g, const LocalUnit& t,
                              const AlgebraElement& x);

std::string to_string(const Rational& r);
std::string to_string(const Path& p);
std::string to_string(const Monomial& m);
std::string to_string(const AlgebraElement& x);

}  // namespace lpa
