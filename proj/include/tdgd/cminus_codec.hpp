#pragma once

#include <cstdint>

#include "tdgd/bitio.hpp"
#include "tdgd/ck_codec.hpp"

namespace tdgd {

/// All s+1 pairs of signature s get length Lambda or Lambda+1.
struct SignatureLengthRow {
  std::uint64_t s = 0;
  std::uint64_t Lambda = 0;
  std::uint64_t n_short = 0;  // codewords of length Lambda
  std::uint64_t n_long = 0;   // codewords of length Lambda + 1

  friend bool operator==(const SignatureLengthRow&, const SignatureLengthRow&) = default;
};

/// Length row of C_{−k}, 2 <= k <= 32.
SignatureLengthRow signature_length_row(unsigned k, std::uint64_t s);

/// Length row of the limit code C_{−∞}.
SignatureLengthRow limit_row(std::uint64_t s);

/// Canonical allocation cursor: `free` unused nodes at depth `level`.
struct CanonicalState {
  std::uint64_t level = 0;
  std::uint64_t free = 1;

  /// Moves the cursor down to depth `length`; lengths must not decrease.
  void descend(std::uint64_t length);
};

/// C_{−k} realized as the canonical code over its length rows, enumerated by
/// signature, short lengths before long, and ascending i within a signature.
/// Encoding and decoding walk the rows from s = 0: O(s) per pair.
class CminusCodec {
 public:
  explicit CminusCodec(unsigned k);

  unsigned k() const noexcept { return k_; }

  BitString encode(SymbolPair p) const;
  void encode(BitWriter& w, SymbolPair p) const;
  SymbolPair decode(BitReader& r) const;
  std::uint64_t length(SymbolPair p) const;

 private:
  unsigned k_;
};

BitString limit_encode(SymbolPair p);
void limit_write(BitWriter& w, SymbolPair p);
SymbolPair limit_decode(BitReader& r);
std::uint64_t limit_length(SymbolPair p);

/// Signature cap for limit_decode; longer runs are reported as MalformedRun.
inline constexpr std::uint64_t kLimitMaxSignature = std::uint64_t{1} << 32;

}  // namespace tdgd
