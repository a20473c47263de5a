#pragma once

#include <stdexcept>

namespace partsum {

// Resource or table-capacity exhaustion, as opposed to a domain error in the
// arguments. The CLI maps this to exit code 2.
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace partsum
