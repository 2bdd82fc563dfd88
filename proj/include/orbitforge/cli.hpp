#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace orbitforge::cli {

/// Dispatches one CLI invocation. Exit codes: 0 pass/info, 1 fail verdicts,
/// 2 usage or input-parse errors.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace orbitforge::cli
