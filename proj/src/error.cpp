#include "rosa/error.hpp"

namespace rosa {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::UnknownParent: return "UnknownParent";
    case ErrorCode::UnknownConcept: return "UnknownConcept";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::MultipleRoots: return "MultipleRoots";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::UnknownGraph: return "UnknownGraph";
    case ErrorCode::UnknownCase: return "UnknownCase";
    case ErrorCode::UnknownRole: return "UnknownRole";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::UnresolvedPlaceholder: return "UnresolvedPlaceholder";
    case ErrorCode::IllegalTransition: return "IllegalTransition";
    case ErrorCode::InvalidPolicy: return "InvalidPolicy";
    case ErrorCode::LimitZero: return "LimitZero";
    case ErrorCode::PartialMapping: return "PartialMapping";
    case ErrorCode::InvalidMapping: return "InvalidMapping";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::StaleVersion: return "StaleVersion";
    case ErrorCode::UnknownMatch: return "UnknownMatch";
    case ErrorCode::InvalidVerdict: return "InvalidVerdict";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IntegrityError: return "IntegrityError";
    case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

} // namespace rosa
