#pragma once

#include <stdexcept>
#include <string>

namespace tabex {

enum class ErrorCode {
    NoTableFound,
    UnbalancedMarkup,
    SpanOverflow,
    EmptyGrid,
    HasSpans,
    NoHeader,
    MissingField,
    Timeout,
    HttpStatus,
    ReplayMiss,
    ExhaustedRetries,
    TruthUnparseable,
    EmptySample,
    JoinMismatch,
    ConfigError,
    IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) +
                             (message.empty() ? "" : ": " + message)),
          code_(code) {}

    explicit Error(ErrorCode code) : Error(code, "") {}

    ErrorCode code() const { return code_; }
    const char* code_name() const { return error_code_name(code_); }

private:
    ErrorCode code_;
};

}  // namespace tabex
