#include "lpa/textio.hpp"

#include <charconv>
#include <set>
#include <string_view>
#include <vector>

namespace lpa {

namespace {

struct Token {
  std::string text;
  std::size_t col = 0;  // 1-based
};

std::vector<Token> split_line(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r') {
      ++i;
    }
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

// Declared identifiers: '#' is reserved for generated tail names, so a
// serialized materialization fed back in fails loudly here instead of
// silently losing its '#...' suffixes to comment handling.
bool word_chars(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
              (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

class LineParser {
 public:
  LineParser(std::size_t line_no, std::vector<Token> tokens,
             std::size_t line_len)
      : line_(line_no), tokens_(std::move(tokens)), end_col_(line_len + 1) {}

  const Token& expect(const char* what) {
    if (pos_ >= tokens_.size()) {
      throw ParseError(ParseError::Kind::Syntax, line_, end_col_,
                       std::string("expected ") + what);
    }
    return tokens_[pos_++];
  }

  void expect_literal(const char* lit) {
    const Token& t = expect(("'" + std::string(lit) + "'").c_str());
    if (t.text != lit) {
      throw ParseError(ParseError::Kind::Syntax, line_, t.col,
                       "expected '" + std::string(lit) + "', got '" + t.text +
                           "'");
    }
  }

  const Token& expect_identifier(const char* what) {
    const Token& t = expect(what);
    if (!word_chars(t.text)) {
      throw ParseError(ParseError::Kind::Syntax, line_, t.col,
                       std::string("bad ") + what + " '" + t.text + "'");
    }
    return t;
  }

  void expect_end() {
    if (pos_ < tokens_.size()) {
      throw ParseError(ParseError::Kind::Syntax, line_, tokens_[pos_].col,
                       "unexpected '" + tokens_[pos_].text + "'");
    }
  }

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
  std::vector<Token> tokens_;
  std::size_t end_col_;
  std::size_t pos_ = 0;
};

Cardinality parse_multiplicity(const Token& t, std::size_t line) {
  if (t.text == "omega") return Cardinality::omega();
  if (t.text == "uncountable") return Cardinality::uncountable();
  std::string_view s = t.text;
  bool canonical = !s.empty() && !(s.size() > 1 && s[0] == '0');
  std::uint64_t value = 0;
  if (canonical) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    canonical = ec == std::errc() && ptr == s.data() + s.size();
  }
  if (!canonical || value == 0) {
    throw ParseError(ParseError::Kind::BadMultiplicity, line, t.col,
                     "multiplicity must be a positive integer, 'omega' or "
                     "'uncountable', got '" +
                         t.text + "'");
  }
  return Cardinality::finite(value);
}

}  // namespace

Graph parse_graph(const std::string& text) {
  Graph g;
  std::set<std::string> declared;
  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t nl = text.find('\n', begin);
    std::string_view line(text.data() + begin,
                          (nl == std::string::npos ? text.size() : nl) -
                              begin);
    begin = (nl == std::string::npos) ? text.size() + 1 : nl + 1;
    ++line_no;

    std::vector<Token> tokens = split_line(line);
    if (tokens.empty() || tokens[0].text[0] == '#') continue;

    LineParser p(line_no, std::move(tokens), line.size());
    const Token& head = p.expect("'vertex' or 'edge'");
    if (head.text == "vertex") {
      const Token& id = p.expect_identifier("vertex identifier");
      p.expect_end();
      if (!declared.insert(id.text).second) {
        throw ParseError(ParseError::Kind::Syntax, line_no, id.col,
                         "vertex '" + id.text + "' already declared");
      }
      g.add_vertex(VertexId{id.text});
    } else if (head.text == "edge") {
      const Token& id = p.expect_identifier("bundle identifier");
      p.expect_literal(":");
      const Token& src = p.expect_identifier("source vertex");
      p.expect_literal("->");
      const Token& dst = p.expect_identifier("target vertex");
      p.expect_literal("*");
      const Token& mult = p.expect("multiplicity");
      p.expect_end();
      if (g.find_bundle(id.text)) {
        throw ParseError(ParseError::Kind::DuplicateBundle, line_no, id.col,
                         "bundle '" + id.text + "' already declared");
      }
      g.add_bundle(id.text, VertexId{src.text}, VertexId{dst.text},
                   parse_multiplicity(mult, line_no));
    } else {
      throw ParseError(ParseError::Kind::Syntax, line_no, head.col,
                       "expected 'vertex' or 'edge', got '" + head.text + "'");
    }
  }
  return g;
}

std::string serialize_graph(const Graph& g) {
  if (!g.tails().empty()) {
    throw DomainError(Errc::malformed_tail,
                      "cannot serialize a graph with tails; materialize first");
  }
  std::string out;
  for (const VertexId& v : g.vertices()) {
    out += "vertex " + v.name + "\n";
  }
  for (const auto& [id, b] : g.bundles()) {
    out += "edge " + id + " : " + b.source.name + " -> " + b.target.name +
           " * " + to_string(b.multiplicity) + "\n";
  }
  return out;
}

std::string export_dot(const Graph& g) {
  if (!is_finite(g)) {
    throw DomainError(Errc::not_finite,
                      "DOT export needs a finite graph; materialize first");
  }
  std::string out = "digraph G {\n";
  for (const VertexId& v : g.vertices()) {
    out += "  \"" + v.name + "\"";
    if (g.is_frontier(v)) out += " [style=dashed]";
    out += ";\n";
  }
  for (const auto& [id, b] : g.bundles()) {
    out += "  \"" + b.source.name + "\" -> \"" + b.target.name +
           "\" [label=\"" + id + " ×" + to_string(b.multiplicity) +
           "\"];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace lpa
