#pragma once

// Command-line front end as a library, so tests can run commands in-process.

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "heatcontent/heat_content_nd.hpp"

namespace heat::app {

using Provenance = std::vector<std::pair<std::string, std::string>>;

/// Fixed column order of every table.
inline constexpr const char* kColumns[] = {"alpha", "domain", "t",    "quantity", "method",  "value",
                                           "err",   "reference", "pass", "seed",     "n_steps", "level"};

std::string format_csv(const Provenance& prov, const std::vector<RunRecord>& rows);
/// One JSON object per line: the provenance first, then one per record.
std::string format_json(const Provenance& prov, const std::vector<RunRecord>& rows);

/// Runs a command line (argv[0] is the program name). Returns the exit code:
/// 0 iff every check in the table passed.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct Result {
    int exit_code = 0;
    std::string out;
    std::string err;
};

/// Convenience wrapper; args exclude the program name.
Result run(const std::vector<std::string>& args);

}  // namespace heat::app
