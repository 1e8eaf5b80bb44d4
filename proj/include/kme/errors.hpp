#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace kme {

// Base class for every domain error raised by the library. The code string
// is stable and machine-readable; the CLI forwards it in error reports.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define KME_ERROR_TYPE(Name)                                                   \
    class Name final : public Error {                                          \
    public:                                                                    \
        explicit Name(const std::string& message) : Error(#Name, message) {}   \
    }

KME_ERROR_TYPE(InvalidCartan);
KME_ERROR_TYPE(NotRealRoot);
KME_ERROR_TYPE(InvalidIndex);
KME_ERROR_TYPE(PoleError);
KME_ERROR_TYPE(DomainError);
KME_ERROR_TYPE(AccuracyError);
KME_ERROR_TYPE(OutsideValidityRegion);
KME_ERROR_TYPE(GodementViolation);
KME_ERROR_TYPE(NotInCone);
KME_ERROR_TYPE(TermOverflow);
KME_ERROR_TYPE(DegenerateCharacter);
KME_ERROR_TYPE(OutsideTheoremRegion);
KME_ERROR_TYPE(NotInW1);

#undef KME_ERROR_TYPE

} // namespace kme
