#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace abnormal {

// Runs one command. `args` excludes the program name. Exit codes: 0 on
// success, 1 for a domain error (reported as JSON on `out`), 2 for usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Materialization budget in bits: ABNORMAL_MATERIALIZE_BITS when set, else the default.
std::size_t budget_from_environment();

} // namespace abnormal
