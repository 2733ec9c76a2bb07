#include "homlab/errors.hpp"

namespace homlab {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::DuplicateSimplex: return "DuplicateSimplex";
    case ErrorKind::MissingFace: return "MissingFace";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::EmptyLayer: return "EmptyLayer";
    case ErrorKind::NotASubcomplex: return "NotASubcomplex";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::StructuralViolation: return "StructuralViolation";
    case ErrorKind::RouteDisagreement: return "RouteDisagreement";
    case ErrorKind::SpectralNormExceeded: return "SpectralNormExceeded";
    case ErrorKind::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroChain: return "ZeroChain";
    case ErrorKind::NotACycle: return "NotACycle";
    case ErrorKind::NotAFiltrationChain: return "NotAFiltrationChain";
    case ErrorKind::TrivialKernel: return "TrivialKernel";
    case ErrorKind::TrivialCocycleSpace: return "TrivialCocycleSpace";
    case ErrorKind::ConstructionFailed: return "ConstructionFailed";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

bool is_internal(ErrorKind kind)
{
    return kind == ErrorKind::StructuralViolation || kind == ErrorKind::RouteDisagreement;
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind), detail_(detail)
{
}

} // namespace homlab
