#ifndef ABEL_ERRORS_HPP
#define ABEL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace abel {

// Base of all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested a derivative where the basis is singular (shifted-power right endpoint).
struct singularity_error : error {
    using error::error;
};

// A grid cell held a near-zero value that refinement could not classify.
struct unresolved_zero : error {
    using error::error;
};

// Sign test entered the tolerance band without a sign change; no verdict is issued.
struct indeterminate_error : error {
    using error::error;
};

// Adaptive step size underflowed without a blow-up diagnosis.
struct step_failure : error {
    using error::error;
};

// An operation was invoked outside its stated precondition.
struct precondition_error : error {
    using error::error;
};

// Root refinement stalled.
struct unresolved_root : error {
    using error::error;
};

// The perturbation search exhausted its range.
struct search_failure : error {
    using error::error;
};

struct parse_error : error {
    int line;
    parse_error(const std::string& what, int line_) : error(what), line(line_) {}
};

struct validation_error : error {
    std::string field;
    validation_error(const std::string& what, std::string field_)
        : error(what), field(std::move(field_)) {}
};

} // namespace abel

#endif
