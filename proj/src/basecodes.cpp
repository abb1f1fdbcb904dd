#include "tdgd/basecodes.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "tdgd/errors.hpp"

namespace tdgd {

unsigned floor_log2(std::uint64_t n) { return static_cast<unsigned>(std::bit_width(n)) - 1; }

unsigned ceil_log2(std::uint64_t n) { return n <= 1 ? 0 : static_cast<unsigned>(std::bit_width(n - 1)); }

QuasiUniformSpec quasi_uniform_spec(std::uint64_t N) {
  if (N == 0) throw Error(Errc::rank_out_of_range, "Q_N needs N >= 1");
  QuasiUniformSpec q;
  q.N = N;
  q.floor_log = floor_log2(N);
  q.ceil_log = ceil_log2(N);
  // N <= 2^63 in practice, so 2^ceil fits.
  q.short_count = (std::uint64_t{1} << q.ceil_log) - N;
  return q;
}

BitString unary_encode(std::uint64_t n) {
  BitString b;
  b.append_ones(n);
  b.append_bits(0, 1);
  return b;
}

void write_unary(BitWriter& w, std::uint64_t n) {
  w.write_ones(n);
  w.write_bits(0, 1);
}

std::uint64_t read_unary(BitReader& r) {
  std::uint64_t n = r.skip_ones();
  r.read_bit();  // the terminating 0, or StreamExhausted
  return n;
}

Codeword quasi_uniform_encode(std::uint64_t N, std::uint64_t rank) {
  if (rank >= N) throw Error(Errc::rank_out_of_range, "rank " + std::to_string(rank) + " >= N");
  auto q = quasi_uniform_spec(N);
  if (rank < q.short_count) return {rank, q.floor_log};
  return {rank + q.short_count, q.ceil_log};
}

std::uint64_t quasi_uniform_decode(std::uint64_t N, BitReader& r) {
  auto q = quasi_uniform_spec(N);
  std::uint64_t v = r.read_bits(q.floor_log);
  if (q.floor_log == q.ceil_log || v < q.short_count) return v;
  v = (v << 1) | static_cast<std::uint64_t>(r.read_bit());
  return v - q.short_count;
}

BitString golomb_encode(std::uint64_t k, std::uint64_t i) {
  BitString b(quasi_uniform_encode(k, i % k));
  b.append(unary_encode(i / k));
  return b;
}

void write_golomb(BitWriter& w, std::uint64_t k, std::uint64_t i) {
  w.write(quasi_uniform_encode(k, i % k));
  write_unary(w, i / k);
}

std::uint64_t golomb_decode(std::uint64_t k, BitReader& r) {
  std::uint64_t rem = quasi_uniform_decode(k, r);
  return read_unary(r) * k + rem;
}

std::uint64_t golomb_length(std::uint64_t k, std::uint64_t i) {
  return quasi_uniform_encode(k, i % k).length + i / k + 1;
}

std::vector<Codeword> canonical_assign(const std::vector<unsigned>& lengths) {
  std::vector<std::size_t> order(lengths.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return lengths[a] < lengths[b]; });
  std::vector<Codeword> out(lengths.size());
  std::uint64_t code = 0;
  unsigned prev = 0;
  bool first = true;
  for (std::size_t idx : order) {
    unsigned len = lengths[idx];
    if (len > 64) throw Error(Errc::rank_out_of_range, "canonical_assign: length > 64");
    if (!first) {
      ++code;
      code <<= (len - prev);
    }
    first = false;
    prev = len;
    out[idx] = {code, len};
  }
  return out;
}

}  // namespace tdgd
