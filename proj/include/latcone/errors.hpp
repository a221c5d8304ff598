#pragma once

#include <stdexcept>
#include <string>

namespace latcone {

// Bad input: malformed files, dimension mismatches, violated preconditions.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A mathematical invariant failed to verify. Either an implementation bug or
// a genuine counterexample; callers must surface it, never swallow it.
struct check_error : std::runtime_error {
    explicit check_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace latcone
