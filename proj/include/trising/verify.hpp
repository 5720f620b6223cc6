#pragma once

#include <ostream>

namespace trising {

/// Fast closed-form oracle and invariant checks over every module. Prints one
/// PASS/FAIL line per check; returns true when all pass.
bool run_verification(std::ostream& out);

}  // namespace trising
