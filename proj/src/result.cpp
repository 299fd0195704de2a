#include "rbn/result.hpp"

namespace rbn {

std::string_view errc_name(Errc code) {
    switch (code) {
    case Errc::SeedLength: return "SeedLengthError";
    case Errc::KeyFormat: return "KeyFormatError";
    case Errc::NotFound: return "NotFound";
    case Errc::Unauthorized: return "Unauthorized";
    case Errc::Deactivated: return "Deactivated";
    case Errc::BadSignature: return "BadSignature";
    case Errc::BadNonce: return "BadNonce";
    case Errc::InsufficientFunds: return "InsufficientFunds";
    case Errc::UnknownSender: return "UnknownSender";
    case Errc::DifficultyTooHigh: return "DifficultyTooHigh";
    case Errc::ConstructorError: return "ConstructorError";
    case Errc::MethodNotFound: return "MethodNotFound";
    case Errc::StateError: return "StateError";
    case Errc::StepLimitExceeded: return "StepLimitExceeded";
    case Errc::WrongAmount: return "WrongAmount";
    case Errc::BadAttestation: return "BadAttestation";
    case Errc::DoubleVote: return "DoubleVote";
    case Errc::IllegalMove: return "IllegalMove";
    case Errc::NotYourTurn: return "NotYourTurn";
    case Errc::WrongStake: return "WrongStake";
    case Errc::InsufficientTokenBalance: return "InsufficientTokenBalance";
    case Errc::Expired: return "Expired";
    case Errc::ParseError: return "ParseError";
    case Errc::UnknownAlias: return "UnknownAlias";
    case Errc::UnsortedSteps: return "UnsortedSteps";
    case Errc::FormatError: return "FormatError";
    case Errc::ValidationFailure: return "ValidationFailure";
    }
    return "UnknownError";
}

} // namespace rbn
