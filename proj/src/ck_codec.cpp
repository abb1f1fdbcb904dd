#include "tdgd/ck_codec.hpp"

#include "tdgd/basecodes.hpp"
#include "tdgd/errors.hpp"

namespace tdgd {

CkCodec::CkCodec(std::uint64_t k) : k_(k), params_(top_code_params(k)) {
  const auto& pr = params_.profile;
  first_mid_ = pr.M == 0 ? 0 : pr.n_lo << 1;
  first_hi_ = (first_mid_ + pr.n_mid) << 1;
}

std::uint64_t CkCodec::before_signature(std::uint64_t s) const {
  if (s <= k_) return s * (s + 1) / 2;
  std::uint64_t rest = 2 * k_ - s;
  return k_ * k_ - rest * (rest - 1) / 2;
}

std::uint64_t CkCodec::top_rank(std::uint64_t a, std::uint64_t b) const {
  std::uint64_t s = a + b;
  std::uint64_t a_min = s + 1 > k_ ? s + 1 - k_ : 0;
  return before_signature(s) + (a - a_min);
}

SymbolPair CkCodec::top_unrank(std::uint64_t rank) const {
  // Largest s with before_signature(s) <= rank.
  std::uint64_t lo = 0, hi = 2 * k_ - 2;
  while (lo < hi) {
    std::uint64_t mid = (lo + hi + 1) / 2;
    if (before_signature(mid) <= rank) lo = mid;
    else hi = mid - 1;
  }
  std::uint64_t s = lo;
  std::uint64_t a_min = s + 1 > k_ ? s + 1 - k_ : 0;
  std::uint64_t a = a_min + (rank - before_signature(s));
  return {a, s - a};
}

Codeword CkCodec::top_encode(std::uint64_t a, std::uint64_t b) const {
  const auto& pr = params_.profile;
  std::uint64_t rank = top_rank(a, b);
  if (rank < pr.n_lo) return {rank, pr.M - 1};
  rank -= pr.n_lo;
  if (rank < pr.n_mid) return {first_mid_ + rank, pr.M};
  return {first_hi_ + (rank - pr.n_mid), pr.M + 1};
}

unsigned CkCodec::top_length(std::uint64_t a, std::uint64_t b) const {
  return params_.profile.length_of(top_rank(a, b));
}

SymbolPair CkCodec::top_decode(BitReader& r) const {
  const auto& pr = params_.profile;
  std::uint64_t v = 0;
  if (pr.M > 0) {
    v = r.read_bits(pr.M - 1);
    if (v < pr.n_lo) return top_unrank(v);
    v = (v << 1) | static_cast<std::uint64_t>(r.read_bit());
  }
  if (v - first_mid_ < pr.n_mid) return top_unrank(pr.n_lo + (v - first_mid_));
  v = (v << 1) | static_cast<std::uint64_t>(r.read_bit());
  return top_unrank(pr.n_lo + pr.n_mid + (v - first_hi_));
}

BitString CkCodec::encode(SymbolPair p) const {
  BitWriter w;
  encode(w, p);
  return w.bits();
}

void CkCodec::encode(BitWriter& w, SymbolPair p) const {
  w.write(top_encode(p.i % k_, p.j % k_));
  write_unary(w, p.i / k_);
  write_unary(w, p.j / k_);
}

SymbolPair CkCodec::decode(BitReader& r) const {
  auto top = top_decode(r);
  std::uint64_t qi = read_unary(r);
  std::uint64_t qj = read_unary(r);
  return {qi * k_ + top.i, qj * k_ + top.j};
}

std::uint64_t CkCodec::length(SymbolPair p) const {
  return top_length(p.i % k_, p.j % k_) + 2 + p.i / k_ + p.j / k_;
}

}  // namespace tdgd
