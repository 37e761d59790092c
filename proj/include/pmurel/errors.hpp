#pragma once

#include <stdexcept>
#include <string>

namespace pmurel {

/// Rejected configuration: bad value, unknown key, or malformed document.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A file could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum ExitCode : int {
    exit_ok = 0,
    exit_config = 2,
    exit_runtime = 3,
    exit_io = 4,
};

} // namespace pmurel
