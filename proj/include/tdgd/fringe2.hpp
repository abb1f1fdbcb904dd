#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>

#include "tdgd/basecodes.hpp"
#include "tdgd/bitio.hpp"
#include "tdgd/errors.hpp"

namespace tdgd {

/// Finite source with non-increasing positive weights. W may be an integer
/// type (exact arithmetic for rational inputs scaled to a common denominator)
/// or double.
template <class W>
struct WeightedSource {
  std::vector<W> weights;

  std::uint64_t size() const noexcept { return weights.size(); }
};

/// Fringe-≤2 tree shape: leaves on levels M−1, M, M+1 only.
struct CompactProfile {
  int sigma = 0;        // 1 = short (M = m−1), 0 = long (M = m)
  std::uint64_t c = 0;  // internal nodes at level M
  unsigned M = 0;
  std::uint64_t n_lo = 0;   // n_{M−1}
  std::uint64_t n_mid = 0;  // n_M
  std::uint64_t n_hi = 0;   // n_{M+1}

  /// Code length of the symbol with 0-based rank idx (weights non-increasing).
  unsigned length_of(std::uint64_t idx) const {
    if (idx < n_lo) return M - 1;
    if (idx < n_lo + n_mid) return M;
    return M + 1;
  }

  friend bool operator==(const CompactProfile&, const CompactProfile&) = default;
};

struct TreeRef {
  int sigma = 0;
  std::uint64_t c = 0;
  friend bool operator==(const TreeRef&, const TreeRef&) = default;
};

/// Bounds of the admissible c for a given σ and N. `valid` is false when
/// σ = 1 has no tree (N = 1).
struct CRange {
  bool valid = false;
  unsigned M = 0;
  std::uint64_t lo = 0, hi = 0;
};

CRange c_range(int sigma, std::uint64_t N);
std::uint64_t ccmin(int sigma, std::uint64_t N);
std::uint64_t ccmax(int sigma, std::uint64_t N);

CompactProfile profile_from(int sigma, std::uint64_t c, std::uint64_t N);

/// Exact Kraft check of a profile: n_lo·4 + n_mid·2 + n_hi == 2^(M+1).
bool kraft_complete(const CompactProfile& p);

/// Linear ≺ position: σ=1 trees by decreasing c, then σ=0 by increasing c,
/// with (1, ccmin₁) and (0, 0) sharing one position.
std::uint64_t order_position(TreeRef t, std::uint64_t N);
TreeRef tree_at(std::uint64_t pos, std::uint64_t N);
std::uint64_t order_count(std::uint64_t N);

template <class W>
struct OptimalRange {
  TreeRef first;  // ≺-first optimal tree
  TreeRef last;   // ≺-last optimal tree
  W min_cost{};   // Σ w·len at any optimal tree
  std::vector<int> signs;  // sign of each transition along ≺
  std::uint64_t N = 0;

  bool contains(TreeRef t) const {
    auto p = order_position(t, N);
    return order_position(first, N) <= p && p <= order_position(last, N);
  }
};

namespace detail {

template <class W>
int sign_of(W value, W scale) {
  if constexpr (std::is_floating_point_v<W>) {
    if (std::fabs(value) <= 1e-12 * scale) return 0;
  }
  return value > W{} ? 1 : (value < W{} ? -1 : 0);
}

template <class W>
void check_four_uniform(const WeightedSource<W>& src) {
  const auto& w = src.weights;
  if (w.empty()) throw Error(Errc::empty_source, "empty weighted source");
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] > W{})) throw Error(Errc::not_four_uniform, "non-positive weight");
    if (i && w[i] > w[i - 1]) throw Error(Errc::not_four_uniform, "weights not non-increasing");
  }
  if (w.front() > w.back() * W{4}) throw Error(Errc::not_four_uniform, "max/min weight ratio exceeds 4");
}

}  // namespace detail

/// D(σ,c) = cost(σ,c) − cost(σ,c−1): the two lightest level-M symbols drop one
/// level and one symbol rises to M−1.
template <class W>
W delta_sc(const WeightedSource<W>& src, int sigma, std::uint64_t c) {
  const std::uint64_t N = src.size();
  auto r = c_range(sigma, N);
  if (!r.valid || c <= r.lo || c > r.hi)
    throw Error(Errc::c_out_of_range, "delta_sc: c=" + std::to_string(c) + " sigma=" + std::to_string(sigma));
  const auto& w = src.weights;
  std::uint64_t up = (std::uint64_t{1} << r.M) - N + c - 1;
  return w[N - 2 * c] + w[N - 2 * c + 1] - w[up];
}

template <class W>
W fringe_cost(const WeightedSource<W>& src, const CompactProfile& p) {
  W total{};
  for (std::uint64_t i = 0; i < src.size(); ++i) total += src.weights[i] * static_cast<W>(p.length_of(i));
  return total;
}

template <class W>
OptimalRange<W> fringe2_optimal_range(const WeightedSource<W>& src) {
  detail::check_four_uniform(src);
  const std::uint64_t N = src.size();
  const W scale = src.weights.front();
  OptimalRange<W> out;
  out.N = N;

  auto r1 = c_range(1, N);
  auto r0 = c_range(0, N);
  if (r1.valid)
    for (std::uint64_t c = r1.hi; c > r1.lo; --c) out.signs.push_back(-detail::sign_of(delta_sc(src, 1, c), scale));
  for (std::uint64_t c = 1; c <= r0.hi; ++c) out.signs.push_back(detail::sign_of(delta_sc(src, 0, c), scale));

  std::uint64_t first = 0, last = out.signs.size();
  for (std::uint64_t e = 0; e < out.signs.size(); ++e) {
    if (out.signs[e] < 0) first = e + 1;
  }
  for (std::uint64_t e = 0; e < out.signs.size(); ++e) {
    if (out.signs[e] > 0) {
      last = e;
      break;
    }
  }
  out.first = tree_at(first, N);
  out.last = tree_at(last, N);
  out.min_cost = fringe_cost(src, profile_from(out.first.sigma, out.first.c, N));
  return out;
}

/// Everything that pins down the top code T_k of C_k.
struct TopCodeParams {
  std::uint64_t k = 1;
  double q = 0.5;
  unsigned m = 0;
  std::uint64_t Q = 1;
  unsigned M = 0;
  int sigma = 0;
  std::int64_t j = 0;
  std::int64_t r = 0;
  std::uint64_t c = 0;
  double x0 = 0;       // largest real root of Δ
  std::int64_t xi = 0; // ⌊x0⌋
  CompactProfile profile;

  /// Δ(x) = 2k² − 2^{M+1} + x(x+1) − (k−x−2)(k−x−1)/2, exact at integers.
  std::int64_t delta(std::int64_t x) const;
};

TopCodeParams top_code_params(std::uint64_t k);

/// T_k as a k×k table (index a·k + b). Symbols ranked by (a+b, a).
std::vector<Codeword> top_code_table(std::uint64_t k);

/// A_k weights q^(a+b), sorted non-increasing, with q = 2^(−1/k).
WeightedSource<double> top_source(std::uint64_t k);

}  // namespace tdgd
