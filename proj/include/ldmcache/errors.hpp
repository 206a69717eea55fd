#pragma once

#include <stdexcept>
#include <string>

namespace ldmcache {

struct InvalidShift : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidChannel : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidCacheFraction : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IndivisibleCache : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RegimeMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InterpolationRange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CausalityError : std::logic_error {
    using std::logic_error::logic_error;
};

struct NotApplicable : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SearchBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ldmcache
