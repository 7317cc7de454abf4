#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace unlearn_eval {

// Error taxonomy shared by every module. One exception type, coded so
// callers can dispatch without string matching.
enum class ErrorCode {
    // core / config
    PreconditionFailed,
    InvalidPromptMarkup,
    // catigmu
    AmbiguousTarget,
    UnknownTask,
    InvalidReplacement,
    EmptyTemplateSet,
    // backends
    BackendUnavailable,
    DecodeError,
    // metrics
    ZeroNormEmbedding,
    NonPositiveReferenceScore,
    InsufficientSamples,
    NotPSD,
    DimensionMismatch,
    UnknownCategory,
    MetricError,
    // forgetjudge
    DegenerateLabels,
    NonFiniteLoss,
    MissingHead,
    // dataio
    ParseError,
    DuplicatePath,
    SplitLeak,
    UnrecognizedLayout,
    CorruptCacheEntry,
    IoError,
    // harness
    EmptyGeneration,
    AdapterFailure,
    EmptyTestSplit,
    // cli/report
    NoResults,
};

inline std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::PreconditionFailed: return "PreconditionFailed";
        case ErrorCode::InvalidPromptMarkup: return "InvalidPromptMarkup";
        case ErrorCode::AmbiguousTarget: return "AmbiguousTarget";
        case ErrorCode::UnknownTask: return "UnknownTask";
        case ErrorCode::InvalidReplacement: return "InvalidReplacement";
        case ErrorCode::EmptyTemplateSet: return "EmptyTemplateSet";
        case ErrorCode::BackendUnavailable: return "BackendUnavailable";
        case ErrorCode::DecodeError: return "DecodeError";
        case ErrorCode::ZeroNormEmbedding: return "ZeroNormEmbedding";
        case ErrorCode::NonPositiveReferenceScore: return "NonPositiveReferenceScore";
        case ErrorCode::InsufficientSamples: return "InsufficientSamples";
        case ErrorCode::NotPSD: return "NotPSD";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::UnknownCategory: return "UnknownCategory";
        case ErrorCode::MetricError: return "MetricError";
        case ErrorCode::DegenerateLabels: return "DegenerateLabels";
        case ErrorCode::NonFiniteLoss: return "NonFiniteLoss";
        case ErrorCode::MissingHead: return "MissingHead";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::DuplicatePath: return "DuplicatePath";
        case ErrorCode::SplitLeak: return "SplitLeak";
        case ErrorCode::UnrecognizedLayout: return "UnrecognizedLayout";
        case ErrorCode::CorruptCacheEntry: return "CorruptCacheEntry";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::EmptyGeneration: return "EmptyGeneration";
        case ErrorCode::AdapterFailure: return "AdapterFailure";
        case ErrorCode::EmptyTestSplit: return "EmptyTestSplit";
        case ErrorCode::NoResults: return "NoResults";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    // Index-carrying variant, e.g. DecodeError(1).
    Error(ErrorCode code, std::size_t index, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + "(" +
                             std::to_string(index) + "): " + message),
          code_(code), index_(static_cast<std::ptrdiff_t>(index)) {}

    ErrorCode code() const noexcept { return code_; }

    // -1 when the error carries no index.
    std::ptrdiff_t index() const noexcept { return index_; }

private:
    ErrorCode code_;
    std::ptrdiff_t index_ = -1;
};

inline void require(bool condition, ErrorCode code, const std::string& message) {
    if (!condition) throw Error(code, message);
}

}  // namespace unlearn_eval
