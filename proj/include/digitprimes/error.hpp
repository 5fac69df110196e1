#ifndef DIGITPRIMES_ERROR_HPP
#define DIGITPRIMES_ERROR_HPP

#include <stdexcept>
#include <string>

namespace digitprimes {

// A requested size exceeds what the library is willing to allocate or scan.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller passed arguments outside an operation's documented domain.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A digit constraint is malformed for the base it is used with.
class ConstraintError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Internal numerical fault (NaN in a product factor and the like).
class ComputationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedEstimatorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace digitprimes

#endif // DIGITPRIMES_ERROR_HPP
