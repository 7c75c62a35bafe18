#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace tc {

enum ExitCode : int {
    kVerified = 0,
    kRejected = 1,       ///< parse error or failed hypothesis
    kContradiction = 2,  ///< an identity that must hold did not
};

struct RunOptions {
    std::string command;   ///< check, basis, verify, reduce, pipeline, disjoint
    std::string element;   ///< argument of `reduce`
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::optional<std::vector<unsigned>> k_candidates;
};

/// Runs one subcommand on spec text; the report goes to `out`, diagnostics to `err`.
int run(const RunOptions& opts, const std::string& spec_text, std::ostream& out, std::ostream& err);

}  // namespace tc
