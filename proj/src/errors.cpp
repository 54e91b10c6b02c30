#include "tabex/errors.hpp"

namespace tabex {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NoTableFound: return "NoTableFound";
        case ErrorCode::UnbalancedMarkup: return "UnbalancedMarkup";
        case ErrorCode::SpanOverflow: return "SpanOverflow";
        case ErrorCode::EmptyGrid: return "EmptyGrid";
        case ErrorCode::HasSpans: return "HasSpans";
        case ErrorCode::NoHeader: return "NoHeader";
        case ErrorCode::MissingField: return "MissingField";
        case ErrorCode::Timeout: return "Timeout";
        case ErrorCode::HttpStatus: return "HttpStatus";
        case ErrorCode::ReplayMiss: return "ReplayMiss";
        case ErrorCode::ExhaustedRetries: return "ExhaustedRetries";
        case ErrorCode::TruthUnparseable: return "TruthUnparseable";
        case ErrorCode::EmptySample: return "EmptySample";
        case ErrorCode::JoinMismatch: return "JoinMismatch";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Error";
}

}  // namespace tabex
