#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace p2moduli {

// Dispatches the CLI grammar. Exit codes: 0 success, 1 usage, 2 domain
// error, 3 resource limit, 4 io. All output is deterministic for fixed
// inputs, with or without the memo cache.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace p2moduli
