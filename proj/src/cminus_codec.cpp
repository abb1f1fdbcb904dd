#include "tdgd/cminus_codec.hpp"

#include <limits>
#include <stdexcept>

#include "tdgd/basecodes.hpp"
#include "tdgd/errors.hpp"

namespace tdgd {

SignatureLengthRow signature_length_row(unsigned k, std::uint64_t s) {
  if (k < 2 || k > 32) throw Error(Errc::invalid_family_param, "C_{-k} needs 2 <= k <= 32");
  const std::int64_t half = std::int64_t{1} << (k - 1);
  const std::int64_t full = std::int64_t{1} << k;
  SignatureLengthRow row;
  row.s = s;
  auto ss = static_cast<std::int64_t>(s);

  if (ss <= half - 2) {
    unsigned i = floor_log2(s + 1);
    std::int64_t j = ss + 1 - (std::int64_t{1} << i);
    row.Lambda = static_cast<std::uint64_t>((ss + 2) * (i + 1) - (std::int64_t{2} << i));
    row.n_short = static_cast<std::uint64_t>((std::int64_t{1} << i) - j - 1);
    row.n_long = static_cast<std::uint64_t>(2 * j + 1);
    return row;
  }

  std::int64_t t = ss - (half - 1);
  std::int64_t ell = t / (full - 1);
  std::int64_t j = t % (full - 1);
  std::int64_t b = (full - 1) * ell;
  row.Lambda = static_cast<std::uint64_t>((ss + 2) * k - full);
  std::int64_t n_short, n_long;
  if (j <= half - 3) {
    n_short = b + half - j - 1;
    n_long = 2 * j + 1;
  } else if (j == half - 2) {
    n_short = b;
    n_long = full - 2;
  } else if (j <= full - 4) {
    n_short = b + 3 * half - 2 - j;
    n_long = 2 * j + 2 - full;
  } else if (j == full - 3) {
    n_short = b + half + 1;
    n_long = full - 4;
  } else {
    n_short = b + half - 1;
    n_long = full - 1;
  }
  row.n_short = static_cast<std::uint64_t>(n_short);
  row.n_long = static_cast<std::uint64_t>(n_long);
  return row;
}

SignatureLengthRow limit_row(std::uint64_t s) {
  unsigned t = floor_log2(s + 1);
  std::uint64_t r = s + 1 - (std::uint64_t{1} << t);
  SignatureLengthRow row;
  row.s = s;
  // (t−1)(s+2) + 2r + 2, written to stay unsigned at t = 0.
  row.Lambda = t * (s + 2) + 2 * r + 2 - (s + 2);
  row.n_short = (std::uint64_t{1} << t) - 1 - r;
  row.n_long = 2 * r + 1;
  return row;
}

void CanonicalState::descend(std::uint64_t length) {
  if (length < level) throw std::logic_error("canonical enumeration lengths decreased");
  std::uint64_t d = length - level;
  if (d > 0 && (d >= 64 || free > (std::numeric_limits<std::uint64_t>::max() >> d)))
    throw std::overflow_error("canonical free-slot count overflows 64 bits");
  free <<= d;
  level = length;
}

namespace {

struct Block {
  std::uint64_t length;
  std::uint64_t count;
};

// Visits blocks of signatures 0..s-1 in canonical order, then returns the
// state positioned before signature s.
CanonicalState advance_to(unsigned k, std::uint64_t s) {
  CanonicalState st;
  for (std::uint64_t t = 0; t < s; ++t) {
    auto row = signature_length_row(k, t);
    for (Block blk : {Block{row.Lambda, row.n_short}, Block{row.Lambda + 1, row.n_long}}) {
      if (blk.count == 0) continue;
      st.descend(blk.length);
      if (blk.count > st.free) throw std::logic_error("C_{-k} rows violate Kraft");
      st.free -= blk.count;
    }
  }
  return st;
}

// Codeword of offset o in a block at `length` with `free` slots before it:
// the complement of u = free − 1 − o, in `length` bits.
void write_slot(BitWriter& w, std::uint64_t length, std::uint64_t free, std::uint64_t o) {
  std::uint64_t u = free - 1 - o;
  if (length > 64) {
    w.write_ones(length - 64);
    w.write_bits(~u, 64);
  } else {
    w.write_bits(~u, static_cast<unsigned>(length));
  }
}

// Extends the complemented prefix u by d bits from r.
std::uint64_t read_complement(BitReader& r, std::uint64_t u, std::uint64_t d) {
  while (d > 0) {
    unsigned take = d < 64 ? static_cast<unsigned>(d) : 64;
    std::uint64_t mask = take == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << take) - 1;
    std::uint64_t bits = r.read_bits(take);
    u = (take == 64 ? 0 : u << take) | (~bits & mask);
    d -= take;
  }
  return u;
}

}  // namespace

CminusCodec::CminusCodec(unsigned k) : k_(k) {
  if (k < 2 || k > 32) throw Error(Errc::invalid_family_param, "C_{-k} needs 2 <= k <= 32");
}

BitString CminusCodec::encode(SymbolPair p) const {
  BitWriter w;
  encode(w, p);
  return w.bits();
}

void CminusCodec::encode(BitWriter& w, SymbolPair p) const {
  std::uint64_t s = p.i + p.j;
  auto st = advance_to(k_, s);
  auto row = signature_length_row(k_, s);
  if (p.i < row.n_short) {
    st.descend(row.Lambda);
    write_slot(w, row.Lambda, st.free, p.i);
    return;
  }
  if (row.n_short) {
    st.descend(row.Lambda);
    st.free -= row.n_short;
  }
  st.descend(row.Lambda + 1);
  write_slot(w, row.Lambda + 1, st.free, p.i - row.n_short);
}

SymbolPair CminusCodec::decode(BitReader& r) const {
  CanonicalState st;
  std::uint64_t u = 0;  // complement of the bits read so far
  for (std::uint64_t s = 0;; ++s) {
    auto row = signature_length_row(k_, s);
    for (int part = 0; part < 2; ++part) {
      std::uint64_t length = row.Lambda + static_cast<std::uint64_t>(part);
      std::uint64_t count = part ? row.n_long : row.n_short;
      if (count == 0) continue;
      std::uint64_t d = length - st.level;
      st.descend(length);
      u = read_complement(r, u, d);
      if (u >= st.free - count) {
        std::uint64_t offset = st.free - 1 - u;
        std::uint64_t i = part ? row.n_short + offset : offset;
        return {i, s - i};
      }
      st.free -= count;
    }
  }
}

std::uint64_t CminusCodec::length(SymbolPair p) const {
  auto row = signature_length_row(k_, p.i + p.j);
  return p.i < row.n_short ? row.Lambda : row.Lambda + 1;
}

namespace {

std::uint64_t limit_run(std::uint64_t s) {
  unsigned t = floor_log2(s + 1);
  std::uint64_t r = s + 1 - (std::uint64_t{1} << t);
  // (t−1)(s+1) + 2r + 1
  return t * (s + 1) + 2 * r + 1 - (s + 1);
}

}  // namespace

void limit_write(BitWriter& w, SymbolPair p) {
  std::uint64_t s = p.i + p.j;
  w.write_ones(limit_run(s));
  w.write(quasi_uniform_encode(s + 2, p.i));
}

BitString limit_encode(SymbolPair p) {
  BitWriter w;
  limit_write(w, p);
  return w.bits();
}

SymbolPair limit_decode(BitReader& r) {
  // The last (all-ones) word of Q_{s+2} is the run prefix of signature s+1.
  for (std::uint64_t s = 0; s < kLimitMaxSignature; ++s) {
    std::uint64_t rank = quasi_uniform_decode(s + 2, r);
    if (rank <= s) return {rank, s - rank};
  }
  throw Error(Errc::malformed_run, "run of ones exceeds the signature cap");
}

std::uint64_t limit_length(SymbolPair p) {
  std::uint64_t s = p.i + p.j;
  return limit_run(s) + quasi_uniform_encode(s + 2, p.i).length;
}

}  // namespace tdgd
