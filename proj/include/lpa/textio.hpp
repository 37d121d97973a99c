#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "lpa/graph.hpp"

namespace lpa {

// Rejection of a graph document, pinned to a 1-based line and column.
class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, DuplicateBundle, BadMultiplicity };

  ParseError(Kind kind, std::size_t line, std::size_t col,
             const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ": " + message),
        kind_(kind),
        line_(line),
        col_(col) {}

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t col_;
};

// Graph documents: one declaration per line.
//
//   # comment (whole line only)
//   vertex <id>
//   edge <bundle> : <src> -> <dst> * <mult>
//
// <mult> is a positive integer, "omega" or "uncountable"; identifiers are
// nonempty words over [A-Za-z0-9_].  '#' only starts whole-line comments, so
// generated tail names (which contain '#') cannot round-trip through text.
// Edge lines declare their endpoints implicitly; an explicit `vertex` line
// per id is allowed once.
Graph parse_graph(const std::string& text);

// Canonical text form: every vertex explicitly, sorted, then edges sorted
// by bundle id.  parse_graph(serialize_graph(g)) == g for tail-free g;
// graphs still carrying tails must be materialized first.
std::string serialize_graph(const Graph& g);

// Graphviz rendering of a tail-free graph; frontier vertices are dashed.
std::string export_dot(const Graph& g);

}  // namespace lpa
