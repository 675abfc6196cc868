#pragma once

#include <stdexcept>
#include <string>

namespace demosim {

/// Broken referential integrity or a violated event precondition.
class IntegrityError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A pre/just query that needs a snapshot the store does not hold.
class MissingSnapshotError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid model configuration (density map, parameters, event order).
class ConfigurationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed input data file. Carries the 1-based row/column of the fault
/// when known (0 otherwise).
class DataError : public std::runtime_error {
public:
    DataError(const std::string& what, int row = 0, int col = 0)
        : std::runtime_error(what), row_{row}, col_{col} {}

    int row() const noexcept { return row_; }
    int col() const noexcept { return col_; }

private:
    int row_;
    int col_;
};

} // namespace demosim
