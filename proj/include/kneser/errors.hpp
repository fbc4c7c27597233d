#pragma once

#include <stdexcept>
#include <string>

namespace kneser {

// Malformed or precondition-violating arguments (bad instance, non-determining input family, ...).
class invalid_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class out_of_range : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// separates(a, a)
class degenerate_pair : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A procedure whose success is guaranteed by a proof failed. Always a bug, never a valid outcome.
class internal_inconsistency : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace kneser
