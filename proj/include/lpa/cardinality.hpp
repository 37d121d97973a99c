#ifndef LPA_CARDINALITY_HPP
#define LPA_CARDINALITY_HPP

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "lpa/errors.hpp"

namespace lpa {

// Three-level cardinality for edge bundle multiplicities: Finite(n >= 1),
// CountablyInfinite (omega), Uncountable. Empty bundles are not
// representable; absence of a bundle means no edges.
//
// Total order: Finite(n) < Finite(m) iff n < m, and every
// Finite < CountablyInfinite < Uncountable.
class Cardinality {
 public:
  enum class Kind { Finite = 0, CountablyInfinite = 1, Uncountable = 2 };

  static Cardinality finite(std::uint64_t n) {
    if (n == 0) {
      throw DomainError(Errc::bad_multiplicity,
                        "finite multiplicity must be at least 1");
    }
    return Cardinality(Kind::Finite, n);
  }
  static Cardinality omega() { return Cardinality(Kind::CountablyInfinite, 0); }
  static Cardinality uncountable() { return Cardinality(Kind::Uncountable, 0); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_countably_infinite() const {
    return kind_ == Kind::CountablyInfinite;
  }
  bool is_uncountable() const { return kind_ == Kind::Uncountable; }

  // Only meaningful for finite cardinalities.
  std::uint64_t count() const {
    if (!is_finite()) {
      throw DomainError(Errc::bad_multiplicity,
                        "count() on an infinite cardinality");
    }
    return count_;
  }

  auto operator<=>(const Cardinality&) const = default;

 private:
  Cardinality(Kind k, std::uint64_t n) : kind_(k), count_(n) {}

  Kind kind_;
  std::uint64_t count_;  // 0 unless finite, so defaulted <=> is the total order
};

// Cardinal addition: uncountable absorbs everything, omega absorbs finites.
inline Cardinality cardinal_add(const Cardinality& a, const Cardinality& b) {
  if (a.is_uncountable() || b.is_uncountable()) return Cardinality::uncountable();
  if (a.is_countably_infinite() || b.is_countably_infinite()) {
    return Cardinality::omega();
  }
  std::uint64_t x = a.count(), y = b.count();
  if (x > std::numeric_limits<std::uint64_t>::max() - y) {
    throw DomainError(Errc::bad_multiplicity, "finite multiplicity overflow");
  }
  return Cardinality::finite(x + y);
}

// Aggregate out-degree of a vertex: nullopt means zero out-edges.
using OutCardinality = std::optional<Cardinality>;

inline std::string to_string(const Cardinality& c) {
  switch (c.kind()) {
    case Cardinality::Kind::Finite:
      return std::to_string(c.count());
    case Cardinality::Kind::CountablyInfinite:
      return "omega";
    case Cardinality::Kind::Uncountable:
      return "uncountable";
  }
  return "";
}

}  // namespace lpa

#endif  // LPA_CARDINALITY_HPP
