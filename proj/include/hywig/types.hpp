#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace hywig {

using cd = std::complex<double>;

// Error taxonomy mapped onto process exit codes:
//   2 invalid input, 3 numeric/truncation failure, 4 verification failure.
struct error : std::runtime_error {
    int exit_code;
    error(const std::string& msg, int code) : std::runtime_error(msg), exit_code(code) {}
};

struct invalid_input : error {
    explicit invalid_input(const std::string& m) : error(m, 2) {}
};

struct numeric_failure : error {
    explicit numeric_failure(const std::string& m) : error(m, 3) {}
};

struct verification_failure : error {
    explicit verification_failure(const std::string& m) : error(m, 4) {}
};

struct truncation_failure : numeric_failure {
    int required_dim;
    truncation_failure(const std::string& m, int required)
        : numeric_failure(m), required_dim(required) {}
};

struct estimation_failure : numeric_failure {
    explicit estimation_failure(const std::string& m) : numeric_failure(m) {}
};

struct parse_failure : invalid_input {
    std::size_t byte_offset;
    parse_failure(const std::string& m, std::size_t offset)
        : invalid_input(m + " (byte offset " + std::to_string(offset) + ")"), byte_offset(offset) {}
};

enum class strictness { warn, error };

} // namespace hywig
