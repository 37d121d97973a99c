#ifndef LPA_ERRORS_HPP
#define LPA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lpa {

// Failure kinds for precondition and invariant violations across the
// library. Refusals (uncountable emitter during a transform) are NOT
// errors; they are reported as values in TransformReport.
enum class Errc {
  unknown_vertex,
  bad_identifier,
  duplicate_bundle,
  bad_multiplicity,
  invalid_edge,
  non_enumerable,
  too_large,
  not_finite,
  not_a_sink,
  not_a_countable_emitter,
  has_uncountable,
  bad_policy,
  invalid_monomial,
  not_enough_edges,
  not_locally_row_finite,
  malformed_tail,
  empty_vector,
};

const char* errc_name(Errc c);

class DomainError : public std::runtime_error {
 public:
  DomainError(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace lpa

#endif  // LPA_ERRORS_HPP
