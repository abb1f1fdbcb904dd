#pragma once

#include <cstdint>

#include "tdgd/bitio.hpp"
#include "tdgd/fringe2.hpp"

namespace tdgd {

struct SymbolPair {
  std::uint64_t i = 0;
  std::uint64_t j = 0;
  friend bool operator==(const SymbolPair&, const SymbolPair&) = default;
};

/// C_k(i,j) = T_k(i mod k, j mod k) · unary(⌊i/k⌋) · unary(⌊j/k⌋).
///
/// The top code is never materialized: a symbol's rank in A_k comes from
/// signature prefix counts, and its codeword from the canonical first-code
/// values of the three levels M−1, M, M+1.
class CkCodec {
 public:
  explicit CkCodec(std::uint64_t k);

  std::uint64_t k() const noexcept { return k_; }
  const TopCodeParams& params() const noexcept { return params_; }

  Codeword top_encode(std::uint64_t a, std::uint64_t b) const;
  SymbolPair top_decode(BitReader& r) const;
  unsigned top_length(std::uint64_t a, std::uint64_t b) const;

  BitString encode(SymbolPair p) const;
  void encode(BitWriter& w, SymbolPair p) const;
  SymbolPair decode(BitReader& r) const;
  std::uint64_t length(SymbolPair p) const;

  /// 0-based position of (a,b) in A_k ordered by (a+b, a).
  std::uint64_t top_rank(std::uint64_t a, std::uint64_t b) const;
  SymbolPair top_unrank(std::uint64_t rank) const;

 private:
  std::uint64_t before_signature(std::uint64_t s) const;

  std::uint64_t k_;
  TopCodeParams params_;
  std::uint64_t first_mid_ = 0;  // first canonical value at level M
  std::uint64_t first_hi_ = 0;   // first canonical value at level M+1
};

}  // namespace tdgd
