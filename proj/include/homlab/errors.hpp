#ifndef HOMLAB_ERRORS_HPP
#define HOMLAB_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace homlab {

enum class ErrorKind {
    DuplicateSimplex,
    MissingFace,
    EmptyInput,
    EmptyLayer,
    NotASubcomplex,
    BadParameter,
    StructuralViolation,
    RouteDisagreement,
    SpectralNormExceeded,
    DegreeTooHigh,
    DimensionMismatch,
    ZeroChain,
    NotACycle,
    NotAFiltrationChain,
    TrivialKernel,
    TrivialCocycleSpace,
    ConstructionFailed,
    NotFound,
    ParseError,
};

std::string_view to_string(ErrorKind kind);

/// True for kinds that signal a broken internal invariant rather than bad input.
bool is_internal(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail);

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

} // namespace homlab

#endif
