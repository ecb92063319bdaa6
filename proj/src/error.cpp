#include "bss/error.hpp"

namespace bss {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::IndeterminateOperand: return "IndeterminateOperand";
    case ErrorKind::BackendMismatch: return "BackendMismatch";
    case ErrorKind::NoRootInInterval: return "NoRootInInterval";
    case ErrorKind::MultipleRootsInInterval: return "MultipleRootsInInterval";
    case ErrorKind::InvalidLiteral: return "InvalidLiteral";
    case ErrorKind::UnencodableParameter: return "UnencodableParameter";
    case ErrorKind::DecodeError: return "DecodeError";
    case ErrorKind::ParameterNotEncodable: return "ParameterNotEncodable";
    case ErrorKind::UnsupportedNode: return "UnsupportedNode";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotAStrictOrder: return "NotAStrictOrder";
    case ErrorKind::DependentBasis: return "DependentBasis";
    case ErrorKind::SignatureMismatch: return "SignatureMismatch";
    case ErrorKind::TransfiniteNotSupported: return "TransfiniteNotSupported";
    case ErrorKind::InfiniteUniverse: return "InfiniteUniverse";
    case ErrorKind::UnboundedEnumerator: return "UnboundedEnumerator";
    case ErrorKind::LevelTooHigh: return "LevelTooHigh";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::InputMismatch: return "InputMismatch";
    case ErrorKind::UnboundName: return "UnboundName";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace bss
