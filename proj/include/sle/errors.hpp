#ifndef SLE_ERRORS_HPP
#define SLE_ERRORS_HPP

#include <stdexcept>

namespace sle {

/// Input that violates a documented precondition.
struct MalformedInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Evaluation at a zero of a denominator.
struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Laurent expansion requested where none exists.
struct ExpansionError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Point outside the domain of a conformal map.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Derivative requested at a branch or critical point.
struct SingularityError : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace sle

#endif
