// errors.hpp - error kinds shared by every numerical module

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace entropyne {

enum class ErrorKind {
    NotHermitian,
    NumericalFailure,
    DomainError,
    ZeroTemperature,
    OverflowGuard,
    InvalidState,
    DimensionMismatch,
    UnsupportedQ,
    SupportDeficient,
    BlochNormExceeded,
    InvalidGaussian,
    UnphysicalCovariance,
    HyperbolicDomain,
    DivergentPartition,
    NegativeBeta,
    TruncationUnstable,
    QuadratureUnstable,
    BracketError,
    UsageError,
    ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::NumericalFailure: return "NumericalFailure";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::ZeroTemperature: return "ZeroTemperature";
        case ErrorKind::OverflowGuard: return "OverflowGuard";
        case ErrorKind::InvalidState: return "InvalidState";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::UnsupportedQ: return "UnsupportedQ";
        case ErrorKind::SupportDeficient: return "SupportDeficient";
        case ErrorKind::BlochNormExceeded: return "BlochNormExceeded";
        case ErrorKind::InvalidGaussian: return "InvalidGaussian";
        case ErrorKind::UnphysicalCovariance: return "UnphysicalCovariance";
        case ErrorKind::HyperbolicDomain: return "HyperbolicDomain";
        case ErrorKind::DivergentPartition: return "DivergentPartition";
        case ErrorKind::NegativeBeta: return "NegativeBeta";
        case ErrorKind::TruncationUnstable: return "TruncationUnstable";
        case ErrorKind::QuadratureUnstable: return "QuadratureUnstable";
        case ErrorKind::BracketError: return "BracketError";
        case ErrorKind::UsageError: return "UsageError";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

// Rejects T = 0; every module that divides by a temperature goes through here.
inline void require_nonzero_temperature(double temperature) {
    if (temperature == 0.0) {
        throw Error(ErrorKind::ZeroTemperature, "temperature must be nonzero");
    }
}

}  // namespace entropyne
