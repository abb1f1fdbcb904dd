#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "tdgd/analysis.hpp"
#include "tdgd/basecodes.hpp"
#include "tdgd/ck_codec.hpp"

using namespace tdgd;

namespace {

SymbolPair roundtrip(const CkCodec& c, SymbolPair p) {
  auto bits = c.encode(p);
  BitReader r(bits);
  auto back = c.decode(r);
  CHECK(r.remaining() == 0);
  return back;
}

}  // namespace

TEST_CASE("C_k examples") {
  CkCodec c1(1), c3(3);
  CHECK(c1.encode({2, 1}).str() == "11010");
  CHECK(c3.encode({0, 0}).str() == "00000");
  CHECK(c3.encode({4, 1}).str() == "100100");
  for (auto p : {SymbolPair{2, 1}}) CHECK(roundtrip(c1, p) == p);
  for (auto p : {SymbolPair{0, 0}, SymbolPair{4, 1}}) CHECK(roundtrip(c3, p) == p);
}

TEST_CASE("top code matches the materialized table") {
  for (std::uint64_t k = 1; k <= 20; ++k) {
    CkCodec c(k);
    auto table = top_code_table(k);
    for (std::uint64_t a = 0; a < k; ++a)
      for (std::uint64_t b = 0; b < k; ++b) REQUIRE(c.top_encode(a, b) == table[a * k + b]);
  }
}

TEST_CASE("C_k roundtrip, k <= 32") {
  std::mt19937_64 rng(3);
  for (std::uint64_t k = 1; k <= 32; ++k) {
    CkCodec c(k);
    BitWriter w;
    std::vector<SymbolPair> pairs;
    for (int n = 0; n < 400; ++n) {
      SymbolPair p{rng() % 10001, rng() % 10001};
      if (n % 2) p = {rng() % (3 * k), rng() % (3 * k)};
      pairs.push_back(p);
      c.encode(w, p);
      REQUIRE(c.encode(p).size() == c.length(p));
    }
    BitReader r(w.bits());
    for (const auto& p : pairs) REQUIRE(c.decode(r) == p);
    CHECK(r.remaining() == 0);
  }
}

TEST_CASE("C_k Kraft sum converges to one") {
  // Exact: fold the per-length counts into a binary fraction 0.b1b2... with
  // carries. The deficit 1 − sum is <= 2^(−T) iff b1..bT are all ones.
  for (std::uint64_t k : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 32}) {
    CAPTURE(k);
    CkCodec c(k);
    std::uint64_t B = 64 * k;
    std::vector<std::uint64_t> count;
    for (std::uint64_t i = 0; i < B; ++i)
      for (std::uint64_t j = 0; j < B; ++j) {
        auto len = c.length({i, j});
        if (len >= count.size()) count.resize(len + 1, 0);
        ++count[len];
      }
    std::vector<int> bit(count.size(), 0);
    std::uint64_t carry = 0;
    for (std::size_t L = count.size() - 1; L >= 1; --L) {
      carry += count[L];
      bit[L] = static_cast<int>(carry & 1);
      carry >>= 1;
    }
    carry += count[0];
    CHECK(carry == 0);  // sum < 1
    std::size_t T = B / k - 1;  // 2·2^(−B/k) = 2^(−T)
    REQUIRE(bit.size() > T);
    bool all_ones = true;
    for (std::size_t L = 1; L <= T; ++L) all_ones = all_ones && bit[L] == 1;
    CHECK(all_ones);
  }
}

TEST_CASE("C_k series average equals the closed form, k <= 10") {
  for (std::uint64_t k = 1; k <= 10; ++k) {
    double q = std::exp2(-1.0 / k);
    CHECK(std::fabs(avg_len_by_series(LengthModel::ck(k), q, 1e-11) - avg_len_ck(q, k)) < 1e-9);
  }
}

TEST_CASE("C_2 has the length multiset of G_2 G_2") {
  CkCodec c(2);
  std::vector<std::uint64_t> a, b;
  for (std::uint64_t i = 0; i < 40; ++i)
    for (std::uint64_t j = 0; j < 40; ++j) {
      a.push_back(c.length({i, j}));
      b.push_back(golomb_length(2, i) + golomb_length(2, j));
    }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a == b);
}

TEST_CASE("G_k G_k is strictly worse than C_k at q = 2^(-1/k)") {
  for (std::uint64_t k = 3; k <= 10; ++k) {
    double q = std::exp2(-1.0 / k);
    CHECK(golomb_avg_len(q, k) - avg_len_ck(q, k) > 0);
  }
}
