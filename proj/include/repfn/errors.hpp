#pragma once

#include <stdexcept>
#include <string>

namespace repfn {

// Malformed request: bad modulus, wrong number of weights, unparsable input.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Well-formed input whose values fall outside the accepted range.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// A search was asked to scan a modulus above its configured bound.
class BoundExceeded : public RangeError {
public:
    using RangeError::RangeError;
};

class ModulusMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Requested a balanced set for an instance that admits none.
class NoBalancedSet : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace repfn
