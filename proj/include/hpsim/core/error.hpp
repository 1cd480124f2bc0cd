#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hpsim {

enum class ErrorCode {
    NonPositiveCoverage,
    InsufficientPool,
    EmptyPool,
    EmptyDetections,
    UnknownStyle,
    UnknownMedium,
    ExhaustedFeed,
    ExhaustedStockLibrary,
    RetriesExhausted,
    AlreadySponsored,
    WrongPlan,
    WindowClosed,
    SeriesTooShort,
    DegenerateSeries,
    DegenerateData,
    MissingLevels,
    TooFewGroups,
    ConvergenceFailure,
    DivisionDomain,
    EmptyInput,
    ParseError,
    ValidationError,
    IoError,
    BudgetExhausted,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonPositiveCoverage: return "NonPositiveCoverage";
        case ErrorCode::InsufficientPool: return "InsufficientPool";
        case ErrorCode::EmptyPool: return "EmptyPool";
        case ErrorCode::EmptyDetections: return "EmptyDetections";
        case ErrorCode::UnknownStyle: return "UnknownStyle";
        case ErrorCode::UnknownMedium: return "UnknownMedium";
        case ErrorCode::ExhaustedFeed: return "ExhaustedFeed";
        case ErrorCode::ExhaustedStockLibrary: return "ExhaustedStockLibrary";
        case ErrorCode::RetriesExhausted: return "RetriesExhausted";
        case ErrorCode::AlreadySponsored: return "AlreadySponsored";
        case ErrorCode::WrongPlan: return "WrongPlan";
        case ErrorCode::WindowClosed: return "WindowClosed";
        case ErrorCode::SeriesTooShort: return "SeriesTooShort";
        case ErrorCode::DegenerateSeries: return "DegenerateSeries";
        case ErrorCode::DegenerateData: return "DegenerateData";
        case ErrorCode::MissingLevels: return "MissingLevels";
        case ErrorCode::TooFewGroups: return "TooFewGroups";
        case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorCode::DivisionDomain: return "DivisionDomain";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace hpsim
