#include "byteio.hpp"
#include "sqz/codecs.hpp"
#include "sqz/error.hpp"

namespace sqz {

Codestream Codestream::lossless(Algo algo, std::span<const std::uint8_t> source,
                                std::vector<std::uint8_t> payload) {
  Codestream c;
  c.algo = algo;
  c.flags = 0;
  c.original_len = source.size();
  c.integrity = crc32(source);
  c.payload = std::move(payload);
  return c;
}

Codestream Codestream::lossy(Algo algo, std::uint64_t original_len, std::vector<std::uint8_t> payload) {
  Codestream c;
  c.algo = algo;
  c.flags = kFlagLossy;
  c.original_len = original_len;
  c.integrity = crc32(payload);
  c.payload = std::move(payload);
  return c;
}

std::vector<std::uint8_t> wrap(const Codestream& c) {
  const bool lossy_flag = (c.flags & kFlagLossy) != 0;
  if (lossy_flag != is_lossy(c.algo)) {
    fail(Errc::InvalidArgument, "lossy flag disagrees with algorithm " + std::string(algo_name(c.algo)));
  }
  detail::ByteWriter w;
  w.buffer().reserve(kContainerHeaderSize + c.payload.size());
  w.u8('S');
  w.u8('Q');
  w.u8('Z');
  w.u8('1');
  w.u8(kContainerVersion);
  w.u8(static_cast<std::uint8_t>(c.algo));
  w.u8(c.flags);
  w.u8(0);
  w.u64(c.original_len);
  w.u32(c.integrity);
  w.u64(c.payload.size());
  w.bytes(c.payload);
  return w.take();
}

Codestream unwrap(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= 4 && !(bytes[0] == 'S' && bytes[1] == 'Q' && bytes[2] == 'Z' && bytes[3] == '1')) {
    fail(Errc::BadMagic, "not an SQZ1 container");
  }
  detail::ByteReader r(bytes, Errc::TruncatedContainer);
  r.bytes(4);
  const std::uint8_t version = r.u8();
  if (version != kContainerVersion) fail(Errc::UnsupportedVersion, "container version " + std::to_string(version));
  const std::uint8_t algo = r.u8();
  if (algo > static_cast<std::uint8_t>(Algo::Hybrid)) {
    fail(Errc::UnsupportedAlgo, "algorithm id " + std::to_string(algo));
  }
  Codestream c;
  c.algo = static_cast<Algo>(algo);
  c.flags = r.u8();
  const std::uint8_t reserved = r.u8();
  if (reserved != 0) fail(Errc::CorruptStream, "reserved header byte is not zero");
  if (((c.flags & kFlagLossy) != 0) != is_lossy(c.algo) || (c.flags & ~kFlagLossy) != 0) {
    fail(Errc::CorruptStream, "flags inconsistent with algorithm");
  }
  c.original_len = r.u64();
  c.integrity = r.u32();
  const std::uint64_t payload_len = r.u64();
  if (payload_len != r.remaining()) {
    if (payload_len > r.remaining()) fail(Errc::TruncatedContainer, "payload shorter than declared");
    fail(Errc::CorruptStream, "trailing bytes after payload");
  }
  const auto payload = r.bytes(static_cast<std::size_t>(payload_len));
  c.payload.assign(payload.begin(), payload.end());
  if (is_lossy(c.algo) && crc32(c.payload) != c.integrity) {
    fail(Errc::ChecksumMismatch, "payload CRC does not match");
  }
  return c;
}

}  // namespace sqz
