#pragma once

#include <stdexcept>
#include <string>

namespace salp {

/// Invalid or unresolvable configuration (bad id, out-of-range parameter).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Vector lengths that do not agree with each other or with the bounds.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Collections of traces with mismatched shapes.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Filesystem or parse failure while reading/writing result files.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Refusal to replace an existing result manifest without force.
class OverwriteError : public IoError {
public:
    using IoError::IoError;
};

} // namespace salp
