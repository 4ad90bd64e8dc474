#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace toricstab {

enum class ErrorCode {
    ZeroVector,
    ZeroSpan,
    DimMismatch,
    NotSmoothCone,
    NotOnFacetHyperplane,
    EmptyFacet,
    InvalidFan,
    BadIndex,
    BadDimension,
    BadTwist,
    NonAmple,
    Degenerate,
    InconsistentRank,
    BadRank,
    RankMismatch,
    NotDominated,
    NotMaximal,
    InvalidLambda,
    TooManyRays,
    ParseError,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::ZeroVector: return "ZeroVector";
        case ErrorCode::ZeroSpan: return "ZeroSpan";
        case ErrorCode::DimMismatch: return "DimMismatch";
        case ErrorCode::NotSmoothCone: return "NotSmoothCone";
        case ErrorCode::NotOnFacetHyperplane: return "NotOnFacetHyperplane";
        case ErrorCode::EmptyFacet: return "EmptyFacet";
        case ErrorCode::InvalidFan: return "InvalidFan";
        case ErrorCode::BadIndex: return "BadIndex";
        case ErrorCode::BadDimension: return "BadDimension";
        case ErrorCode::BadTwist: return "BadTwist";
        case ErrorCode::NonAmple: return "NonAmple";
        case ErrorCode::Degenerate: return "Degenerate";
        case ErrorCode::InconsistentRank: return "InconsistentRank";
        case ErrorCode::BadRank: return "BadRank";
        case ErrorCode::RankMismatch: return "RankMismatch";
        case ErrorCode::NotDominated: return "NotDominated";
        case ErrorCode::NotMaximal: return "NotMaximal";
        case ErrorCode::InvalidLambda: return "InvalidLambda";
        case ErrorCode::TooManyRays: return "TooManyRays";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Exception carrying a machine-readable code. All library failures go through this.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace toricstab
