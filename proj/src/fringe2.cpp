#include "tdgd/fringe2.hpp"

#include <algorithm>
#include <stdexcept>

namespace tdgd {

CRange c_range(int sigma, std::uint64_t N) {
  if (N == 0) throw Error(Errc::empty_source, "N must be positive");
  if (sigma != 0 && sigma != 1) throw Error(Errc::c_out_of_range, "sigma must be 0 or 1");
  unsigned m = ceil_log2(N);
  CRange r;
  if (sigma == 1 && m == 0) return r;
  r.valid = true;
  r.M = m - static_cast<unsigned>(sigma);
  std::uint64_t pow = std::uint64_t{1} << r.M;
  r.lo = sigma ? N - pow : 0;
  r.hi = (2 * N - pow) / 3;
  return r;
}

std::uint64_t ccmin(int sigma, std::uint64_t N) { return c_range(sigma, N).lo; }
std::uint64_t ccmax(int sigma, std::uint64_t N) { return c_range(sigma, N).hi; }

CompactProfile profile_from(int sigma, std::uint64_t c, std::uint64_t N) {
  auto r = c_range(sigma, N);
  if (!r.valid || c < r.lo || c > r.hi)
    throw Error(Errc::c_out_of_range, "profile_from: c=" + std::to_string(c) + " outside [ccmin, ccmax]");
  std::uint64_t pow = std::uint64_t{1} << r.M;
  CompactProfile p;
  p.sigma = sigma;
  p.c = c;
  p.M = r.M;
  p.n_lo = pow - N + c;
  p.n_mid = 2 * N - pow - 3 * c;
  p.n_hi = 2 * c;
  return p;
}

bool kraft_complete(const CompactProfile& p) {
  if (p.M == 0 && p.n_lo != 0) return false;
  // Scale by 2^(M+1): level M−1 → 4, level M → 2, level M+1 → 1.
  return 4 * p.n_lo + 2 * p.n_mid + p.n_hi == (std::uint64_t{1} << (p.M + 1));
}

namespace {

std::uint64_t sigma1_span(std::uint64_t N) {
  auto r = c_range(1, N);
  return r.valid ? r.hi - r.lo : 0;
}

}  // namespace

std::uint64_t order_position(TreeRef t, std::uint64_t N) {
  auto r = c_range(t.sigma, N);
  if (!r.valid || t.c < r.lo || t.c > r.hi) throw Error(Errc::c_out_of_range, "tree outside admissible range");
  if (t.sigma == 1) return r.hi - t.c;
  return sigma1_span(N) + t.c;
}

std::uint64_t order_count(std::uint64_t N) { return sigma1_span(N) + ccmax(0, N) + 1; }

TreeRef tree_at(std::uint64_t pos, std::uint64_t N) {
  std::uint64_t span = sigma1_span(N);
  if (pos < span) return {1, ccmax(1, N) - pos};
  if (pos - span > ccmax(0, N)) throw Error(Errc::c_out_of_range, "order position past the last tree");
  return {0, pos - span};
}

std::int64_t TopCodeParams::delta(std::int64_t x) const {
  auto kk = static_cast<std::int64_t>(k);
  std::int64_t base = 2 * kk * kk - (std::int64_t{1} << (M + 1));
  return base + x * (x + 1) - (kk - x - 2) * (kk - x - 1) / 2;
}

TopCodeParams top_code_params(std::uint64_t k) {
  if (k == 0) throw Error(Errc::invalid_family_param, "k must be >= 1");
  TopCodeParams p;
  p.k = k;
  p.q = std::exp2(-1.0 / static_cast<double>(k));
  const std::uint64_t N = k * k;
  p.m = ceil_log2(N);
  p.Q = N - (k * (k - 1) + 3) / 4;
  p.M = ceil_log2(p.Q);
  p.sigma = static_cast<int>(p.m - p.M);

  // 2Δ(x) = x² + (2k−1)x + C; locate the largest root, then pin ξ with exact
  // integer evaluations since ⌊x0⌋ is boundary-sensitive.
  auto kd = static_cast<double>(k);
  double C = 2.0 * static_cast<double>(p.delta(0));
  double b = 2 * kd - 1;
  p.x0 = (-b + std::sqrt(b * b - 4 * C)) / 2;
  std::int64_t xi = static_cast<std::int64_t>(std::floor(p.x0));
  while (p.delta(xi + 1) <= 0) ++xi;
  while (p.delta(xi) > 0) --xi;
  p.xi = xi;
  if (p.delta(xi + 1) != p.delta(xi) + xi + static_cast<std::int64_t>(k))
    throw std::logic_error("top_code_params: Δ(x+1) = Δ(x) + x + k violated");

  if (-p.delta(xi) <= 2 * xi) {
    p.j = xi;
    p.r = (-p.delta(xi) + 1) / 2;
  } else {
    p.j = xi + 1;
    p.r = 0;
  }
  auto c = static_cast<std::int64_t>(N) - (std::int64_t{1} << p.M) + p.j * (p.j + 1) / 2 + p.r;
  p.c = static_cast<std::uint64_t>(c);
  p.profile = profile_from(p.sigma, p.c, N);
  return p;
}

std::vector<Codeword> top_code_table(std::uint64_t k) {
  auto p = top_code_params(k);
  std::vector<std::uint64_t> order(k * k);
  for (std::uint64_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [k](std::uint64_t x, std::uint64_t y) {
    return x / k + x % k < y / k + y % k;  // ties keep ascending a
  });
  std::vector<unsigned> lengths(k * k);
  for (std::uint64_t rank = 0; rank < order.size(); ++rank) lengths[rank] = p.profile.length_of(rank);
  auto by_rank = canonical_assign(lengths);
  std::vector<Codeword> table(k * k);
  for (std::uint64_t rank = 0; rank < order.size(); ++rank) table[order[rank]] = by_rank[rank];
  return table;
}

WeightedSource<double> top_source(std::uint64_t k) {
  double q = std::exp2(-1.0 / static_cast<double>(k));
  WeightedSource<double> src;
  for (std::uint64_t s = 0; s + 1 < 2 * k; ++s) {
    std::uint64_t n = s < k ? s + 1 : 2 * k - 1 - s;
    src.weights.insert(src.weights.end(), n, std::pow(q, static_cast<double>(s)));
  }
  return src;
}

}  // namespace tdgd
