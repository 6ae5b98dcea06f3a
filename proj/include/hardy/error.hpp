#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hardy {

enum class ErrorKind {
  InvalidGrid,
  NonRealDensity,
  NonIntegrableLog,
  GridMismatch,
  OrderTooLarge,
  DimMismatch,
  ZeroOnBoundary,
  RepeatedZeros,
  DivisionBlowup,
  NotUnitNorm,
  OuterDiagnosticFailed,
  DenominatorVanishing,
  NoAngularDerivative,
  NotSpecialPair,
  RepresenterSolveFailed,
  NotInRange,
  ComplementUnstable,
  OriginZero,
  EndpointAlpha,
  SymbolSingular,
  ConfigInvalid,
  InvalidPair,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidGrid: return "InvalidGrid";
    case ErrorKind::NonRealDensity: return "NonRealDensity";
    case ErrorKind::NonIntegrableLog: return "NonIntegrableLog";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::OrderTooLarge: return "OrderTooLarge";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::ZeroOnBoundary: return "ZeroOnBoundary";
    case ErrorKind::RepeatedZeros: return "RepeatedZeros";
    case ErrorKind::DivisionBlowup: return "DivisionBlowup";
    case ErrorKind::NotUnitNorm: return "NotUnitNorm";
    case ErrorKind::OuterDiagnosticFailed: return "OuterDiagnosticFailed";
    case ErrorKind::DenominatorVanishing: return "DenominatorVanishing";
    case ErrorKind::NoAngularDerivative: return "NoAngularDerivative";
    case ErrorKind::NotSpecialPair: return "NotSpecialPair";
    case ErrorKind::RepresenterSolveFailed: return "RepresenterSolveFailed";
    case ErrorKind::NotInRange: return "NotInRange";
    case ErrorKind::ComplementUnstable: return "ComplementUnstable";
    case ErrorKind::OriginZero: return "OriginZero";
    case ErrorKind::EndpointAlpha: return "EndpointAlpha";
    case ErrorKind::SymbolSingular: return "SymbolSingular";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::InvalidPair: return "InvalidPair";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hardy
