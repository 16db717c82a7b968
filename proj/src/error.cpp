#include "sqz/error.hpp"

namespace sqz {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NyquistViolation: return "NyquistViolation";
    case Errc::EmptySignal: return "EmptySignal";
    case Errc::BadInterval: return "BadInterval";
    case Errc::ZeroSignal: return "ZeroSignal";
    case Errc::Overflow: return "Overflow";
    case Errc::CorruptStream: return "CorruptStream";
    case Errc::BadMagic: return "BadMagic";
    case Errc::UnsupportedVersion: return "UnsupportedVersion";
    case Errc::TruncatedContainer: return "TruncatedContainer";
    case Errc::ChecksumMismatch: return "ChecksumMismatch";
    case Errc::UnsupportedAlgo: return "UnsupportedAlgo";
    case Errc::NoPeriodicity: return "NoPeriodicity";
    case Errc::SignalTooShort: return "SignalTooShort";
    case Errc::TooManyLevels: return "TooManyLevels";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::RatioUnreachable: return "RatioUnreachable";
    case Errc::NoFundamental: return "NoFundamental";
    case Errc::BandEmpty: return "BandEmpty";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::ZeroReference: return "ZeroReference";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::BadChecksum: return "BadChecksum";
    case Errc::BadHexDigit: return "BadHexDigit";
    case Errc::MissingEof: return "MissingEof";
    case Errc::OverlappingData: return "OverlappingData";
    case Errc::UnsupportedRecordType: return "UnsupportedRecordType";
    case Errc::BadRecord: return "BadRecord";
    case Errc::InvalidManifest: return "InvalidManifest";
    case Errc::PolicyUnknownAlgo: return "PolicyUnknownAlgo";
    case Errc::AddressOutOfRange: return "AddressOutOfRange";
    case Errc::ZeroLengthTrace: return "ZeroLengthTrace";
    case Errc::IoError: return "IoError";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

void fail(Errc code, const std::string& detail) { throw Error(code, detail); }

}  // namespace sqz
