#pragma once

#include <stdexcept>
#include <string>

namespace qcp {

// exit code 2 at the CLI boundary
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct unsupported_mode : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct degenerate_point : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace qcp
