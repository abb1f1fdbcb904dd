#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tdgd {

/// A codeword fragment of at most 64 bits. The first transmitted bit is the
/// most significant of the `length` low bits of `value`.
struct Codeword {
  std::uint64_t value = 0;
  unsigned length = 0;

  /// Parses a string of '0'/'1' characters (at most 64).
  static Codeword from_string(std::string_view bits);
  std::string str() const;

  friend bool operator==(const Codeword&, const Codeword&) = default;
};

/// Arbitrary-length bit sequence, packed MSB-first. Used for codewords that
/// can exceed 64 bits (unary runs, C_{-k} and limit-code words).
class BitString {
 public:
  BitString() = default;
  BitString(Codeword c) { append(c); }  // NOLINT(google-explicit-constructor)

  static BitString from_string(std::string_view bits);

  void append(Codeword c);
  void append_bits(std::uint64_t value, unsigned n);
  void append_ones(std::uint64_t n);
  void append_zeros(std::uint64_t n);
  void append(const BitString& other);

  std::uint64_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  bool bit(std::uint64_t index) const;
  std::string str() const;

  /// Packed bytes; bits past size() in the last byte are zero.
  const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
  std::uint64_t size_ = 0;
};

class BitWriter {
 public:
  void write(Codeword c) { buf_.append(c); }
  void write_bits(std::uint64_t value, unsigned n) { buf_.append_bits(value, n); }
  void write_ones(std::uint64_t n) { buf_.append_ones(n); }
  void write(const BitString& bits) { buf_.append(bits); }

  std::uint64_t bit_count() const noexcept { return buf_.size(); }
  const BitString& bits() const noexcept { return buf_; }

  /// Returns the stream padded with zero bits to a whole number of bytes.
  std::vector<std::uint8_t> finish() const { return buf_.bytes(); }

 private:
  BitString buf_;
};

/// Reads MSB-first from a byte span. Does not own the bytes.
class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> bytes)
      : bytes_(bytes), limit_(static_cast<std::uint64_t>(bytes.size()) * 8) {}
  BitReader(std::span<const std::uint8_t> bytes, std::uint64_t bit_limit);
  explicit BitReader(const BitString& bits) : BitReader(bits.bytes(), bits.size()) {}

  /// Next n (<= 64) bits as an integer; throws Errc::stream_exhausted.
  std::uint64_t read_bits(unsigned n);
  bool read_bit();
  /// Consumes consecutive 1 bits up to (not including) the next 0 or the end.
  std::uint64_t skip_ones();

  std::uint64_t position() const noexcept { return pos_; }
  std::uint64_t remaining() const noexcept { return limit_ - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::uint64_t limit_;
  std::uint64_t pos_ = 0;
};

}  // namespace tdgd
