#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sqz {

// Every failure the library reports carries one of these kinds. The CLI maps
// them onto exit codes, so the enumerators are stable.
enum class Errc {
  InvalidArgument,
  // signals
  NyquistViolation,
  EmptySignal,
  BadInterval,
  ZeroSignal,
  Overflow,
  // codecs / container
  CorruptStream,
  BadMagic,
  UnsupportedVersion,
  TruncatedContainer,
  ChecksumMismatch,
  UnsupportedAlgo,
  // periodic
  NoPeriodicity,
  SignalTooShort,
  // wavelet
  TooManyLevels,
  ShapeMismatch,
  RatioUnreachable,
  // hybrid
  NoFundamental,
  BandEmpty,
  // metrics
  ZeroDenominator,
  ZeroReference,
  LengthMismatch,
  // romtool
  BadChecksum,
  BadHexDigit,
  MissingEof,
  OverlappingData,
  UnsupportedRecordType,
  BadRecord,
  InvalidManifest,
  PolicyUnknownAlgo,
  // memsim
  AddressOutOfRange,
  ZeroLengthTrace,
  // io
  IoError,
  ParseError,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail);

  Errc code() const noexcept { return code_; }
  std::string_view name() const noexcept { return errc_name(code_); }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& detail);

}  // namespace sqz
