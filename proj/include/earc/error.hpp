#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace earc {

enum class Errc {
    DivisionByZero,
    NotPrime,
    DimensionMismatch,
    Singular,
    InvalidParams,
    NoValidPoints,
    WrongLength,
    BadShareSet,
    RepeatedPoint,
    InvalidHelperSet,
    ZeroU,
    DualContainmentViolated,
    NotAHelper,
    ModeUnavailable,
    RegenerationMismatch,
    TooLarge,
    ZeroProjection,
    NonCommuting,
    InvalidRegime,
    RegimeViolation,
    Indivisible,
    ParseError,
};

constexpr std::string_view to_string(Errc e) noexcept
{
    switch (e) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NotPrime: return "NotPrime";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::Singular: return "Singular";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::NoValidPoints: return "NoValidPoints";
    case Errc::WrongLength: return "WrongLength";
    case Errc::BadShareSet: return "BadShareSet";
    case Errc::RepeatedPoint: return "RepeatedPoint";
    case Errc::InvalidHelperSet: return "InvalidHelperSet";
    case Errc::ZeroU: return "ZeroU";
    case Errc::DualContainmentViolated: return "DualContainmentViolated";
    case Errc::NotAHelper: return "NotAHelper";
    case Errc::ModeUnavailable: return "ModeUnavailable";
    case Errc::RegenerationMismatch: return "RegenerationMismatch";
    case Errc::TooLarge: return "TooLarge";
    case Errc::ZeroProjection: return "ZeroProjection";
    case Errc::NonCommuting: return "NonCommuting";
    case Errc::InvalidRegime: return "InvalidRegime";
    case Errc::RegimeViolation: return "RegimeViolation";
    case Errc::Indivisible: return "Indivisible";
    case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    [[nodiscard]] Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

/// Internal-consistency failures (RegenerationMismatch, DualContainmentViolated
/// raised from checks that must hold for valid input) derive from this so
/// callers can tell bugs apart from bad input.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace earc
