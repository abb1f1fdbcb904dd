#include <doctest.h>

#include <cmath>
#include <random>

#include "tdgd/analysis.hpp"
#include "tdgd/ck_codec.hpp"
#include "tdgd/fringe2.hpp"
#include "tdgd/oracle.hpp"

using namespace tdgd;

namespace {

// 49·p for the N = 19 worked example.
WeightedSource<long long> table1_source() {
  WeightedSource<long long> src;
  src.weights = {4, 4};
  src.weights.insert(src.weights.end(), 9, 3);
  src.weights.insert(src.weights.end(), 6, 2);
  src.weights.insert(src.weights.end(), 2, 1);
  return src;
}

struct Row {
  std::uint64_t k;
  unsigned M;
  std::int64_t j, r;
  int sigma;
  std::uint64_t c;
  std::uint64_t n_lo, n_mid, n_hi;
};

// Reference parameters, k = 1..10.
const Row kTable[] = {
    {3, 3, 0, 0, 1, 1, 0, 7, 2},    {4, 4, 1, 0, 0, 1, 1, 13, 2},  {5, 5, 3, 1, 0, 0, 7, 18, 0},
    {6, 5, 1, 0, 1, 5, 1, 25, 10},  {7, 6, 5, 0, 0, 0, 15, 34, 0}, {8, 6, 2, 2, 0, 5, 5, 49, 10},
    {9, 6, 0, 0, 1, 17, 0, 47, 34}, {10, 7, 7, 1, 0, 1, 29, 69, 2},
};

}  // namespace

TEST_CASE("profile_from") {
  auto a = profile_from(1, 4, 19);
  CHECK(a.n_lo == 1);
  CHECK(a.n_mid == 10);
  CHECK(a.n_hi == 8);
  auto b = profile_from(0, 1, 19);
  CHECK(b.n_lo == 14);
  CHECK(b.n_mid == 3);
  CHECK(b.n_hi == 2);
  auto u = profile_from(0, 0, 16);
  CHECK(u.n_lo == 0);
  CHECK(u.n_mid == 16);
  CHECK(u.n_hi == 0);
  for (auto p : {a, b, u}) CHECK(kraft_complete(p));
  CHECK_THROWS_AS(profile_from(1, 2, 19), Error);  // below ccmin(1) = 3
  CHECK_THROWS_AS(profile_from(0, 3, 19), Error);  // above ccmax(0) = 2
}

TEST_CASE("delta_sc on the N = 19 example") {
  auto src = table1_source();
  CHECK(delta_sc(src, 1, 5) == 2);
  CHECK(delta_sc(src, 1, 4) == 0);
  CHECK(delta_sc(src, 0, 2) == 2);
  CHECK_THROWS_AS(delta_sc(src, 1, 3), Error);
}

TEST_CASE("fringe2_optimal_range on the N = 19 example") {
  auto src = table1_source();
  auto range = fringe2_optimal_range(src);
  CHECK(range.first == TreeRef{1, 4});
  CHECK(range.last == TreeRef{0, 1});
  CHECK(range.min_cost == 206);
  std::int64_t total = 0;
  for (auto w : src.weights) total += w;
  CHECK(total == 49);
}

TEST_CASE("uniform source collapses to the uniform tree") {
  WeightedSource<long long> src{std::vector<long long>(8, 1)};
  auto range = fringe2_optimal_range(src);
  CHECK(range.first == TreeRef{0, 0});
  CHECK(range.last == TreeRef{0, 0});
  CHECK(range.min_cost == 24);
}

TEST_CASE("A_3 optimal range contains (1,1)") {
  auto range = fringe2_optimal_range(top_source(3));
  CHECK(range.contains({1, 1}));
}

TEST_CASE("not 4-uniform is rejected") {
  WeightedSource<double> src{{9, 2}};
  CHECK_THROWS_AS(fringe2_optimal_range(src), Error);
}

TEST_CASE("sign sequence is non-decreasing on random 4-uniform sources") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.25, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t n = 2 + rng() % 200;
    WeightedSource<double> src;
    for (std::size_t i = 0; i < n; ++i) src.weights.push_back(u(rng));
    std::sort(src.weights.rbegin(), src.weights.rend());
    auto range = fringe2_optimal_range(src);
    for (std::size_t e = 1; e < range.signs.size(); ++e) REQUIRE(range.signs[e - 1] <= range.signs[e]);
  }
}

TEST_CASE("top_code_params reproduces the reference parameters") {
  for (const auto& row : kTable) {
    CAPTURE(row.k);
    auto p = top_code_params(row.k);
    CHECK(p.M == row.M);
    CHECK(p.j == row.j);
    CHECK(p.r == row.r);
    CHECK(p.sigma == row.sigma);
    CHECK(p.c == row.c);
    CHECK(p.profile.n_lo == row.n_lo);
    CHECK(p.profile.n_mid == row.n_mid);
    CHECK(p.profile.n_hi == row.n_hi);
  }
  auto p2 = top_code_params(2);
  CHECK(p2.profile == profile_from(0, 0, 4));
  auto p1 = top_code_params(1);
  CHECK(p1.profile.n_mid == 1);
  CHECK(p1.M == 0);
}

TEST_CASE("top_code_params invariants for k <= 64") {
  for (std::uint64_t k = 1; k <= 64; ++k) {
    CAPTURE(k);
    auto p = top_code_params(k);
    CHECK(kraft_complete(p.profile));
    CHECK(p.j >= 0);
    CHECK(p.j <= static_cast<std::int64_t>(k) - 1);
    CHECK(p.r >= 0);
    CHECK(p.r <= p.j);
    CHECK(p.sigma == static_cast<int>(p.m - p.M));
    CHECK(p.c == k * k - (std::uint64_t{1} << p.M) + static_cast<std::uint64_t>(p.j * (p.j + 1) / 2 + p.r));
    CHECK(p.delta(p.xi) <= 0);
    CHECK(p.delta(p.xi + 1) > 0);
  }
}

TEST_CASE("top code table") {
  auto t1 = top_code_table(1);
  REQUIRE(t1.size() == 1);
  CHECK(t1[0].length == 0);
  auto t3 = top_code_table(3);
  CHECK(t3[0].str() == "000");
  CHECK(t3[2 * 3 + 2].str() == "1111");
  CHECK(t3[1 * 3 + 1].str() == "100");
}

TEST_CASE("top-code tree is the smallest optimal c and matches the closed form, k <= 10") {
  for (std::uint64_t k = 3; k <= 10; ++k) {
    CAPTURE(k);
    auto p = top_code_params(k);
    auto src = top_source(k);
    auto range = fringe2_optimal_range(src);
    CHECK(range.contains({p.sigma, p.c}));
    if (p.c > ccmin(p.sigma, k * k)) CHECK_FALSE(range.contains({p.sigma, p.c - 1}));

    double q = p.q, qk = std::pow(q, static_cast<double>(k));
    double cost = fringe_cost(src, p.profile);
    double avg = 2 / (1 - qk) + (1 - q) * (1 - q) / ((1 - qk) * (1 - qk)) * cost;
    CHECK(avg == doctest::Approx(avg_len_ck(q, k)).epsilon(1e-12));
  }
}

TEST_CASE("Huffman on A_k gives the top code's length multiset, k <= 6") {
  for (std::uint64_t k = 2; k <= 6; ++k) {
    CAPTURE(k);
    auto src = top_source(k);
    auto huff = huffman_lengths(src.weights);
    std::sort(huff.begin(), huff.end());
    std::vector<unsigned> top;
    for (const auto& c : top_code_table(k)) top.push_back(c.length);
    std::sort(top.begin(), top.end());
    CHECK(huff == top);
  }
}
