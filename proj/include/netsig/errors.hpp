#pragma once

#include <stdexcept>
#include <string>

namespace netsig {

/// Problems with input data: unreadable files, malformed PGM streams,
/// invalid dataset layouts. Maps to CLI exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failures: singular systems, degenerate normalizations.
/// Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace netsig
