#pragma once

#include <stdexcept>

namespace attrisk {

// Invalid inputs: bad counts, probabilities outside (0, 1), malformed files.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A requested computation cannot be carried out (enumeration cap exceeded,
// conditioning discarded every replication).
class ComputationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A plug-in quantity does not exist for the given table (zero denominator).
class UndefinedValueError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace attrisk
