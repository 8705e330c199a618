#pragma once

#include <stdexcept>
#include <string>

namespace listcol {

// Malformed input or an operation invoked outside its stated precondition.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// A structural invariant the solver relies on does not hold on the current
// instance.  On inputs from the supported graph classes this never fires; on
// other inputs the solver catches it and falls back to exhaustive search
// (or surfaces it as a hard error when freeness was verified).
struct StructureViolation : std::runtime_error {
    std::string check;
    explicit StructureViolation(const std::string& check_, const std::string& detail)
        : std::runtime_error(check_ + ": " + detail), check(check_) {}
};

// An exhaustive-search budget (node count or wall clock) ran out before an
// answer was reached.
struct ExhaustedError : std::runtime_error {
    explicit ExhaustedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace listcol
