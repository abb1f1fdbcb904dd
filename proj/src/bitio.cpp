#include "tdgd/bitio.hpp"

#include "tdgd/errors.hpp"

namespace tdgd {

namespace {

std::uint64_t low_mask(unsigned n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

}  // namespace

Codeword Codeword::from_string(std::string_view bits) {
  if (bits.size() > 64) throw Error(Errc::parse_error, "codeword longer than 64 bits");
  Codeword c;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw Error(Errc::parse_error, "bad bit character");
    c.value = (c.value << 1) | static_cast<std::uint64_t>(ch == '1');
  }
  c.length = static_cast<unsigned>(bits.size());
  return c;
}

std::string Codeword::str() const {
  std::string out(length, '0');
  for (unsigned i = 0; i < length; ++i)
    if ((value >> (length - 1 - i)) & 1) out[i] = '1';
  return out;
}

BitString BitString::from_string(std::string_view bits) {
  BitString b;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw Error(Errc::parse_error, "bad bit character");
    b.append_bits(ch == '1', 1);
  }
  return b;
}

void BitString::append(Codeword c) { append_bits(c.value, c.length); }

void BitString::append_bits(std::uint64_t value, unsigned n) {
  value &= low_mask(n);
  while (n > 0) {
    unsigned offset = static_cast<unsigned>(size_ & 7);
    if (offset == 0) bytes_.push_back(0);
    unsigned room = 8 - offset;
    unsigned take = n < room ? n : room;
    auto chunk = static_cast<std::uint8_t>((value >> (n - take)) & low_mask(take));
    bytes_.back() |= static_cast<std::uint8_t>(chunk << (room - take));
    size_ += take;
    n -= take;
  }
}

void BitString::append_ones(std::uint64_t n) {
  while (n > 0 && (size_ & 7) != 0) {
    append_bits(1, 1);
    --n;
  }
  bytes_.insert(bytes_.end(), n / 8, 0xFF);
  size_ += (n / 8) * 8;
  append_bits(0xFF, static_cast<unsigned>(n % 8));
}

void BitString::append_zeros(std::uint64_t n) {
  while (n > 0) {
    unsigned take = n < 64 ? static_cast<unsigned>(n) : 64;
    append_bits(0, take);
    n -= take;
  }
}

void BitString::append(const BitString& other) {
  if ((size_ & 7) == 0) {
    bytes_.insert(bytes_.end(), other.bytes_.begin(), other.bytes_.end());
    size_ += other.size_;
    return;
  }
  std::uint64_t full = other.size_ / 8;
  for (std::uint64_t i = 0; i < full; ++i) append_bits(other.bytes_[i], 8);
  unsigned rest = static_cast<unsigned>(other.size_ % 8);
  if (rest) append_bits(other.bytes_[full] >> (8 - rest), rest);
}

bool BitString::bit(std::uint64_t index) const {
  if (index >= size_) throw Error(Errc::stream_exhausted, "bit index past end");
  return (bytes_[index / 8] >> (7 - index % 8)) & 1;
}

std::string BitString::str() const {
  std::string out(size_, '0');
  for (std::uint64_t i = 0; i < size_; ++i)
    if (bit(i)) out[i] = '1';
  return out;
}

BitReader::BitReader(std::span<const std::uint8_t> bytes, std::uint64_t bit_limit)
    : bytes_(bytes), limit_(bit_limit) {
  if (bit_limit > static_cast<std::uint64_t>(bytes.size()) * 8)
    throw Error(Errc::stream_exhausted, "bit limit exceeds buffer");
}

std::uint64_t BitReader::read_bits(unsigned n) {
  if (n > 64) throw Error(Errc::rank_out_of_range, "read_bits: n > 64");
  if (remaining() < n) throw Error(Errc::stream_exhausted, "need " + std::to_string(n) + " bits");
  std::uint64_t out = 0;
  while (n > 0) {
    unsigned offset = static_cast<unsigned>(pos_ & 7);
    unsigned avail = 8 - offset;
    unsigned take = n < avail ? n : avail;
    std::uint8_t byte = bytes_[pos_ / 8];
    std::uint64_t chunk = (byte >> (avail - take)) & low_mask(take);
    out = (take == 64 ? 0 : out << take) | chunk;
    pos_ += take;
    n -= take;
  }
  return out;
}

bool BitReader::read_bit() { return read_bits(1) != 0; }

std::uint64_t BitReader::skip_ones() {
  std::uint64_t start = pos_;
  while (pos_ < limit_) {
    if ((pos_ & 7) == 0 && limit_ - pos_ >= 8 && bytes_[pos_ / 8] == 0xFF) {
      pos_ += 8;
      continue;
    }
    if (!((bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1)) break;
    ++pos_;
  }
  return pos_ - start;
}

}  // namespace tdgd
