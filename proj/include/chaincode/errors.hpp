#pragma once

#include <stdexcept>
#include <string>

namespace chaincode {

// Thrown for malformed user input: bad ring parameters, unparsable
// polynomial expressions, out-of-domain arguments.  CLI exit code 1.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when an enumeration would exceed the configured budget.
// CLI exit code 2.
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when an internal structural invariant fails.  This always
// indicates a bug, never bad input.  CLI exit code 3.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

enum exit_code {
    exit_ok = 0,
    exit_input = 1,
    exit_budget = 2,
    exit_internal = 3,
};

// Invariant checks are real control flow here, not debug assertions:
// a violated invariant must surface as a reported error, never be
// silently ignored or compiled out.
inline void check_invariant(bool ok, const std::string& what) {
    if (!ok)
        throw internal_error("invariant violated: " + what);
}

} // namespace chaincode
