#include "mms/error.hpp"

namespace mms {

std::string_view error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NegativeValue: return "NegativeValue";
        case ErrorCode::EmptyAgents: return "EmptyAgents";
        case ErrorCode::RaggedMatrix: return "RaggedMatrix";
        case ErrorCode::IncompleteAllocation: return "IncompleteAllocation";
        case ErrorCode::NonPositiveScale: return "NonPositiveScale";
        case ErrorCode::ZeroMMS: return "ZeroMMS";
        case ErrorCode::ZeroBundles: return "ZeroBundles";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::BadPartition: return "BadPartition";
        case ErrorCode::NotAPartition: return "NotAPartition";
        case ErrorCode::NotInN21: return "NotInN21";
        case ErrorCode::BadSpec: return "BadSpec";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::BelowThreshold: return "BelowThreshold";
        case ErrorCode::IterationCapExceeded: return "IterationCapExceeded";
        case ErrorCode::Exhausted: return "Exhausted";
        case ErrorCode::InvariantViolation: return "InvariantViolation";
    }
    return "Unknown";
}

bool is_internal(ErrorCode code) {
    switch (code) {
        case ErrorCode::BelowThreshold:
        case ErrorCode::IterationCapExceeded:
        case ErrorCode::Exhausted:
        case ErrorCode::InvariantViolation:
            return true;
        default:
            return false;
    }
}

}  // namespace mms
