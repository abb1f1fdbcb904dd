#include <doctest.h>

#include <cmath>
#include <random>

#include "tdgd/analysis.hpp"
#include "tdgd/cminus_codec.hpp"

using namespace tdgd;

namespace {

template <class Enc, class Dec>
void check_roundtrip(Enc enc, Dec dec, const std::vector<SymbolPair>& pairs) {
  BitWriter w;
  for (const auto& p : pairs) enc(w, p);
  BitReader r(w.bits());
  for (const auto& p : pairs) REQUIRE(dec(r) == p);
  CHECK(r.remaining() == 0);
}

std::vector<SymbolPair> random_pairs(std::mt19937_64& rng, int n, std::uint64_t max) {
  std::vector<SymbolPair> out;
  std::geometric_distribution<std::uint64_t> geo(0.4);
  for (int i = 0; i < n; ++i) {
    if (i % 2) out.push_back({rng() % (max + 1), rng() % (max + 1)});
    else out.push_back({geo(rng), geo(rng)});
  }
  return out;
}

}  // namespace

TEST_CASE("signature_length_row examples") {
  CHECK(signature_length_row(3, 0) == SignatureLengthRow{0, 0, 0, 1});
  CHECK(signature_length_row(3, 3) == SignatureLengthRow{3, 7, 3, 1});
  CHECK(signature_length_row(2, 2) == SignatureLengthRow{2, 4, 3, 0});
  CHECK_THROWS_AS(signature_length_row(1, 0), Error);
}

TEST_CASE("C_{-k} encode examples") {
  CminusCodec c2(2), c3(3);
  CHECK(c2.encode({0, 0}).str() == "0");
  CHECK(c3.encode({0, 0}).str() == "0");
  CHECK(c2.encode({0, 1}).size() == 3);
  CHECK(c2.encode({1, 0}).size() == 3);
  for (auto p : {SymbolPair{0, 0}, SymbolPair{0, 1}, SymbolPair{1, 0}}) {
    auto bits = c2.encode(p);
    BitReader r(bits);
    CHECK(c2.decode(r) == p);
  }
}

TEST_CASE("C_{-k} rows: counts, monotone lengths, Kraft") {
  for (unsigned k = 2; k <= 8; ++k) {
    CAPTURE(k);
    CanonicalState st;
    std::uint64_t prev_len = 0;
    for (std::uint64_t s = 0; s <= 512; ++s) {
      auto row = signature_length_row(k, s);
      REQUIRE(row.n_short + row.n_long == s + 1);
      for (auto [len, n] : {std::pair{row.Lambda, row.n_short}, std::pair{row.Lambda + 1, row.n_long}}) {
        if (!n) continue;
        REQUIRE(len >= prev_len);
        prev_len = len;
        st.descend(len);
        REQUIRE(n < st.free);  // partial Kraft sum stays below 1
        st.free -= n;
      }
      if (s == 128) {
        // 1 − sum = free·2^(−level) <= 130·2^(−Λ_128)
        CHECK(st.free <= (std::uint64_t{130} << (st.level - row.Lambda)));
      }
    }
  }
}

TEST_CASE("C_{-k} and limit roundtrip, components <= 2000") {
  std::mt19937_64 rng(5);
  for (unsigned k = 2; k <= 6; ++k) {
    CminusCodec c(k);
    auto pairs = random_pairs(rng, 300, 2000);
    check_roundtrip([&](BitWriter& w, SymbolPair p) { c.encode(w, p); }, [&](BitReader& r) { return c.decode(r); },
                    pairs);
    for (const auto& p : pairs) REQUIRE(c.encode(p).size() == c.length(p));
  }
  auto pairs = random_pairs(rng, 2000, 2000);
  check_roundtrip(limit_write, limit_decode, pairs);
  for (const auto& p : pairs) REQUIRE(limit_encode(p).size() == limit_length(p));
}

TEST_CASE("limit code examples") {
  CHECK(limit_encode({0, 0}).str() == "0");
  CHECK(limit_encode({0, 1}).str() == "10");
  CHECK(limit_encode({1, 0}).str() == "110");
  for (auto p : {SymbolPair{0, 0}, SymbolPair{0, 1}, SymbolPair{1, 0}}) {
    auto bits = limit_encode(p);
    BitReader r(bits);
    CHECK(limit_decode(r) == p);
  }
}

TEST_CASE("limit code rows match its encoder") {
  for (std::uint64_t s = 0; s <= 256; ++s) {
    auto row = limit_row(s);
    std::uint64_t n_short = 0, n_long = 0;
    for (std::uint64_t i = 0; i <= s; ++i) {
      auto len = limit_length({i, s - i});
      if (len == row.Lambda) ++n_short;
      else if (len == row.Lambda + 1) ++n_long;
      else FAIL("length outside the row");
    }
    CHECK(n_short == row.n_short);
    CHECK(n_long == row.n_long);
  }
}

TEST_CASE("C_{-k} agrees with the limit code on small signatures") {
  for (unsigned k = 3; k <= 8; ++k) {
    CminusCodec c(k);
    for (std::uint64_t s = 0; s + 2 <= (std::uint64_t{1} << (k - 1)); ++s)
      for (std::uint64_t i = 0; i <= s; ++i) REQUIRE(c.length({i, s - i}) == limit_length({i, s - i}));
  }
}

TEST_CASE("limit series equals its closed form") {
  for (double q : {0.05, 0.1, 0.2, 0.3}) {
    CHECK(std::fabs(avg_len_by_series(LengthModel::limit(), q, 1e-12) - avg_len_limit_closed(q)) < 1e-9);
  }
}

TEST_CASE("truncated stream reports StreamExhausted") {
  CminusCodec c(3);
  auto bits = c.encode({5, 9});
  BitString cut;
  for (std::uint64_t i = 0; i + 1 < bits.size(); ++i) cut.append_bits(bits.bit(i), 1);
  BitReader r(cut);
  CHECK_THROWS_AS(c.decode(r), Error);
}
