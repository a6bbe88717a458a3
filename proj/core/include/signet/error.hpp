#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace signet {

enum class Errc {
  InvalidInput,
  DimensionMismatch,
  IndexOutOfRange,
  Singular,
  NotPositiveDefinite,
  OmegaSumNotPD,
  EmptyV1WithAntagonism,
  DeltaBelowBound,
  TooLarge,
  NumericalBlowup,
  Parse,
  Io,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace signet
