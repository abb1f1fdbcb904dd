#pragma once

#include <cstdint>
#include <vector>

#include "tdgd/bitio.hpp"

namespace tdgd {

/// Q_N shape. Ranks are 0-based: rank r here is the 1-based Q_N(r+1).
struct QuasiUniformSpec {
  std::uint64_t N = 1;
  unsigned floor_log = 0;  // ⌊log N⌋, length of short codewords
  unsigned ceil_log = 0;   // ⌈log N⌉, length of long codewords
  std::uint64_t short_count = 0;  // 2^⌈log N⌉ − N
};

unsigned floor_log2(std::uint64_t n);  // n >= 1
unsigned ceil_log2(std::uint64_t n);   // n >= 1

QuasiUniformSpec quasi_uniform_spec(std::uint64_t N);

/// 1^n 0. Lengths beyond 64 bits are why this returns a BitString.
BitString unary_encode(std::uint64_t n);
void write_unary(BitWriter& w, std::uint64_t n);
std::uint64_t read_unary(BitReader& r);

/// Canonical Q_N: short codewords go to the smallest ranks.
Codeword quasi_uniform_encode(std::uint64_t N, std::uint64_t rank);
std::uint64_t quasi_uniform_decode(std::uint64_t N, BitReader& r);

/// G_k(i) = Q_k(i mod k) · unary(⌊i/k⌋).
BitString golomb_encode(std::uint64_t k, std::uint64_t i);
void write_golomb(BitWriter& w, std::uint64_t k, std::uint64_t i);
std::uint64_t golomb_decode(std::uint64_t k, BitReader& r);
std::uint64_t golomb_length(std::uint64_t k, std::uint64_t i);

/// Canonical code for a length list (all lengths <= 64): symbols are ranked by
/// (length, index) and receive numerically increasing codewords.
std::vector<Codeword> canonical_assign(const std::vector<unsigned>& lengths);

}  // namespace tdgd
