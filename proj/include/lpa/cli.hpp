#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "lpa/graph.hpp"

namespace lpa {

// Policy strings accepted by the CLI and tests:
//   "default"                      DefaultDiagonal
//   "concat:<b1>,<b2>,..."         BundleConcat over the listed bundles
//   "prefix:<bundle>#<idx>,..."    ExplicitPrefix, then DefaultDiagonal
// Throws BadPolicy on anything else.
EdgeOrderPolicy parse_policy(const std::string& text);

// Full command surface of the tool; args exclude the program name.
// Results go to `out`, diagnostics to `err`.  Exit codes: 0 success,
// 2 refusal (uncountable emitter), 3 parse error, 4 precondition
// violation, 1 I/O failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace lpa
