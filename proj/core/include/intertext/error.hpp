#pragma once

#include <stdexcept>
#include <string>

namespace intertext {

// Error categories map 1:1 onto CLI exit codes.
enum class ErrorCategory {
    Config = 1,      // bad flags, unknown books, out-of-range parameters
    Parse = 2,       // malformed XML, corrupt corpus container, bad CSV
    Degenerate = 3,  // inputs that make an operation meaningless (all-zero matrix, ...)
    Io = 4,          // unreadable inputs, unwritable outputs
};

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& message)
        : std::runtime_error(message), category_(category) {}

    ErrorCategory category() const { return category_; }
    int exit_code() const { return static_cast<int>(category_); }

private:
    ErrorCategory category_;
};

[[noreturn]] inline void throw_config(const std::string& msg) { throw Error(ErrorCategory::Config, msg); }
[[noreturn]] inline void throw_parse(const std::string& msg) { throw Error(ErrorCategory::Parse, msg); }
[[noreturn]] inline void throw_degenerate(const std::string& msg) { throw Error(ErrorCategory::Degenerate, msg); }
[[noreturn]] inline void throw_io(const std::string& msg) { throw Error(ErrorCategory::Io, msg); }

}  // namespace intertext
