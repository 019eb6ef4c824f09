#ifndef LSCD_ERROR_HPP
#define LSCD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace lscd {

// Bad input on the command line or in a config file. CLI exit code 1.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent data (corpora, pair files, reports). Exit code 2.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure: divergence, zero vectors, degenerate inputs. Exit code 3.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace lscd

#endif
