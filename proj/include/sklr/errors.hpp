#ifndef SKLR_ERRORS_HPP
#define SKLR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sklr {

/// Bad user input: unreadable files, malformed CSV, out-of-range flags.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Broken internal contract (solver logic); maps to exit code 2 in the CLI.
class contract_error : public std::logic_error {
public:
    explicit contract_error(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace sklr

#endif
