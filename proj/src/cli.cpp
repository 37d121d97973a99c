#include "lpa/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <sstream>

#include "lpa/algebra.hpp"
#include "lpa/monoid.hpp"
#include "lpa/textio.hpp"
#include "lpa/transform.hpp"

namespace lpa {

namespace {

// I/O problems are neither parse nor domain failures; they get exit code 1.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  while (begin <= s.size()) {
    std::size_t end = s.find(sep, begin);
    if (end == std::string::npos) end = s.size();
    out.push_back(s.substr(begin, end - begin));
    begin = end + 1;
  }
  return out;
}

void cmd_classify(const Graph& g, std::ostream& out) {
  for (const VertexId& v : g.vertices()) {
    out << v.name << ": " << vertex_class_name(classify_vertex(g, v)) << "\n";
  }
  RowFiniteness rf = is_row_finite(g);
  if (rf.row_finite) {
    out << "row-finite: yes\n";
  } else {
    out << "row-finite: no (witness: " << rf.witness->name << ")\n";
  }
}

// Shared body of `desingularize` and `rowfinite-equiv`: report header as
// '#' comment lines, then the depth-truncated materialization.
int cmd_transform(const TransformResult& result, std::uint64_t depth,
                  const std::string& dot_path, std::ostream& out,
                  std::ostream& err) {
  if (result.report.refused()) {
    err << "refused: vertex '" << result.report.refusal->name
        << "' emits uncountably many edges\n";
    return 2;
  }
  out << "# tails-added: " << result.report.tails_added.size() << "\n";
  for (const auto& [v, kind] : result.report.tails_added) {
    out << "# tail: " << v.name << " " << tail_kind_name(kind) << "\n";
  }
  out << "# untouched: " << result.report.vertices_untouched << "\n";
  Graph window = materialize(result.graph, depth);
  out << serialize_graph(window);
  if (!dot_path.empty()) write_file(dot_path, export_dot(window));
  return 0;
}

void cmd_monoid_eq(const Graph& g, const std::string& xs,
                   const std::string& ys, std::uint64_t depth,
                   std::ostream& out) {
  MonoidVector x = parse_monoid_vector(g, xs);
  MonoidVector y = parse_monoid_vector(g, ys);
  EqualityVerdict verdict = equal_up_to_depth(g, x, y, depth);
  if (verdict.equal()) {
    out << "verdict: equal\n";
    out << "steps: " << verdict.certificate.size() << "\n";
    for (const RewriteStep& s : verdict.certificate) {
      out << "step: "
          << (s.kind == RewriteStep::Kind::Expand ? "expand " : "contract ")
          << s.vertex.name << "\n";
    }
  } else {
    out << "verdict: unknown-at-depth " << verdict.depth << "\n";
  }
}

void cmd_corner_count(const Graph& g, const std::string& v,
                      const std::string& v2, std::uint64_t maxlen, bool list,
                      std::ostream& out) {
  auto basis = corner_basis(g, VertexId{v}, VertexId{v2},
                            static_cast<std::size_t>(maxlen));
  out << "count: " << basis.size() << "\n";
  if (list) {
    for (const Monomial& m : basis) out << "monomial: " << to_string(m) << "\n";
  }
}

void cmd_idem_check(const Graph& g, const std::string& w, std::uint64_t n,
                    std::ostream& out) {
  auto idems =
      sample_emitter_idempotents(g, VertexId{w}, static_cast<std::size_t>(n));
  bool all_idem = true;
  for (const AlgebraElement& x : idems) {
    all_idem = all_idem && is_idempotent(g, x);
  }
  bool all_orth = true;
  for (std::size_t i = 0; i < idems.size(); ++i) {
    for (std::size_t j = i + 1; j < idems.size(); ++j) {
      all_orth = all_orth && are_orthogonal(g, idems[i], idems[j]);
    }
  }
  out << "idempotents: " << idems.size() << "\n";
  out << "all-idempotent: " << (all_idem ? "yes" : "no") << "\n";
  out << "pairwise-orthogonal: " << (all_orth ? "yes" : "no") << "\n";
  out << "linearly-independent: "
      << (linearly_independent(idems) ? "yes" : "no") << "\n";
}

}  // namespace

EdgeOrderPolicy parse_policy(const std::string& text) {
  if (text == "default") return EdgeOrderPolicy::default_diagonal();
  if (text.rfind("concat:", 0) == 0) {
    std::vector<std::string> order = split(text.substr(7), ',');
    for (const std::string& id : order) {
      if (id.empty()) {
        throw DomainError(Errc::bad_policy,
                          "empty bundle id in policy '" + text + "'");
      }
    }
    return EdgeOrderPolicy::bundle_concat(std::move(order));
  }
  if (text.rfind("prefix:", 0) == 0) {
    std::vector<EdgeRef> prefix;
    for (const std::string& part : split(text.substr(7), ',')) {
      auto hash = part.find('#');
      if (hash == std::string::npos || hash == 0) {
        throw DomainError(Errc::bad_policy,
                          "expected '<bundle>#<index>', got '" + part + "'");
      }
      std::string_view idx(part.data() + hash + 1, part.size() - hash - 1);
      std::uint64_t index = 0;
      auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(),
                                       index);
      if (ec != std::errc() || ptr != idx.data() + idx.size() || idx.empty()) {
        throw DomainError(Errc::bad_policy,
                          "bad edge index in '" + part + "'");
      }
      prefix.push_back({part.substr(0, hash), index});
    }
    return EdgeOrderPolicy::explicit_prefix(std::move(prefix));
  }
  throw DomainError(Errc::bad_policy, "unknown policy '" + text + "'");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"graph desingularization and Leavitt monomial toolkit"};
  app.require_subcommand(1);

  std::string file, policy = "default", dot_path, xs, ys, v, v2, w;
  std::uint64_t depth = 4, maxlen = 0, n = 0;
  bool list = false;

  CLI::App* classify = app.add_subcommand("classify", "vertex classes");
  classify->add_option("file", file)->required();

  CLI::App* desing = app.add_subcommand(
      "desingularize", "tails at every sink and countable emitter");
  desing->add_option("file", file)->required();
  desing->add_option("--policy", policy, "edge enumeration policy");
  desing->add_option("--depth", depth, "materialization depth");
  desing->add_option("--dot", dot_path, "write DOT to this path");

  CLI::App* rfe = app.add_subcommand("rowfinite-equiv",
                                     "tails at countable emitters only");
  rfe->add_option("file", file)->required();
  rfe->add_option("--policy", policy, "edge enumeration policy");
  rfe->add_option("--depth", depth, "materialization depth");
  rfe->add_option("--dot", dot_path, "write DOT to this path");

  CLI::App* mat = app.add_subcommand("materialize", "finite truncation");
  mat->add_option("file", file)->required();
  mat->add_option("--depth", depth)->required();

  CLI::App* meq = app.add_subcommand("monoid-eq",
                                     "bounded graph-monoid word problem");
  meq->add_option("file", file)->required();
  meq->add_option("--x", xs, "vector like v:2,w:1")->required();
  meq->add_option("--y", ys, "vector like v:2,w:1")->required();
  meq->add_option("--depth", depth)->required();

  CLI::App* cc = app.add_subcommand("corner-count",
                                    "size of the corner spanning set");
  cc->add_option("file", file)->required();
  cc->add_option("--v", v)->required();
  cc->add_option("--v2", v2)->required();
  cc->add_option("--maxlen", maxlen)->required();
  cc->add_flag("--list", list, "also print the monomials");

  CLI::App* idem = app.add_subcommand("idem-check",
                                      "sampled emitter idempotents");
  idem->add_option("file", file)->required();
  idem->add_option("--vertex", w)->required();
  idem->add_option("--n", n)->required();

  std::vector<const char*> argv{"lpatool"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    Graph g = parse_graph(read_file(file));
    if (app.got_subcommand(classify)) {
      cmd_classify(g, out);
    } else if (app.got_subcommand(desing)) {
      return cmd_transform(desingularize(g, parse_policy(policy)), depth,
                           dot_path, out, err);
    } else if (app.got_subcommand(rfe)) {
      return cmd_transform(row_finite_equivalent(g, parse_policy(policy)),
                           depth, dot_path, out, err);
    } else if (app.got_subcommand(mat)) {
      out << serialize_graph(materialize(g, depth));
    } else if (app.got_subcommand(meq)) {
      cmd_monoid_eq(g, xs, ys, depth, out);
    } else if (app.got_subcommand(cc)) {
      cmd_corner_count(g, v, v2, maxlen, list, out);
    } else if (app.got_subcommand(idem)) {
      cmd_idem_check(g, w, n, out);
    }
    return 0;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    if (e.code() == Errc::has_uncountable) {
      err << "refused: " << e.what() << "\n";
      return 2;
    }
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace lpa
