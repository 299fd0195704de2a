#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rbn {

using Bytes = std::vector<std::uint8_t>;

/// Lowercase hex, no prefix.
std::string to_hex(std::span<const std::uint8_t> data);

/// Strict inverse of to_hex: even length, lowercase [0-9a-f] only.
/// Uppercase digits are rejected so that canonical encodings round-trip
/// byte-for-byte.
std::optional<Bytes> from_hex(std::string_view hex);

/// Canonical byte encoder. All integers big-endian; strings and byte
/// blobs are u32-length-prefixed. This is the encoding signatures and
/// block hashes are computed over, so it must stay bit-exact.
class ByteWriter {
  public:
    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u32(std::uint32_t v);
    void u64(std::uint64_t v);
    void raw(std::span<const std::uint8_t> data);
    void blob(std::span<const std::uint8_t> data); // u32 length + bytes
    void str(std::string_view s);                  // u32 length + bytes
    void tag(std::string_view domain) { str(domain); }

    const Bytes& bytes() const { return buf_; }
    Bytes take() { return std::move(buf_); }

  private:
    Bytes buf_;
};

/// Strict reader over a canonical encoding. Any out-of-bounds read sets
/// the failure flag; callers must check ok() (reads after a failure
/// return zeroes/empties).
class ByteReader {
  public:
    explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

    std::uint8_t u8();
    std::uint32_t u32();
    std::uint64_t u64();
    Bytes raw(std::size_t n);
    Bytes blob(); // u32 length + bytes
    std::string str();
    bool expect_tag(std::string_view domain);

    bool ok() const { return ok_; }
    bool done() const { return ok_ && pos_ == data_.size(); }

  private:
    bool take(std::size_t n);

    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
    bool ok_ = true;
};

} // namespace rbn
