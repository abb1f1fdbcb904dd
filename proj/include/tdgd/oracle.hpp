#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "tdgd/errors.hpp"

namespace tdgd {

/// TDGD alphabet cut after signature S: s+1 symbols of weight q^s for s <= S,
/// plus one virtual tail symbol carrying the rest of the mass.
struct TruncatedSource {
  double q = 0.5;
  double eps = 1e-9;
  std::uint64_t S = 0;
  double tail_weight = 0;   // Σ_{s>S} (s+1) q^s
  double total_weight = 0;  // (1−q)^(−2)

  std::uint64_t symbol_count() const { return (S + 1) * (S + 2) / 2 + 1; }
  /// Weights in non-increasing order; the tail symbol is placed by weight.
  std::vector<double> weights() const;
};

struct OracleOptions {
  double q_cap = 0.95;
  std::uint64_t symbol_cap = 5'000'000;
};

TruncatedSource build_truncated_source(double q, double eps, const OracleOptions& opt = {});

/// Optimal prefix-code lengths for non-increasing weights (two-queue Huffman).
/// Ties merge the lowest-index candidates first, leaves before internal nodes.
template <class W>
std::vector<unsigned> huffman_lengths(const std::vector<W>& weights) {
  const std::size_t n = weights.size();
  if (n == 0) throw Error(Errc::empty_source, "huffman_lengths: no weights");
  if (n == 1) return {0};
  // Leaves are consumed from the light end; node ids n.. are internal.
  std::vector<std::size_t> parent(2 * n - 1, 0);
  std::deque<std::pair<W, std::size_t>> merged;
  std::size_t leaf = n;  // leaves [0, leaf) remain, lightest at leaf−1
  std::size_t next_id = n;
  auto pop_min = [&]() {
    bool take_leaf = leaf > 0 && (merged.empty() || !(merged.front().first < weights[leaf - 1]));
    if (take_leaf) {
      --leaf;
      return std::pair<W, std::size_t>{weights[leaf], leaf};
    }
    auto node = merged.front();
    merged.pop_front();
    return node;
  };
  for (std::size_t step = 0; step + 1 < n; ++step) {
    auto a = pop_min();
    auto b = pop_min();
    parent[a.second] = next_id;
    parent[b.second] = next_id;
    merged.push_back({a.first + b.first, next_id});
    ++next_id;
  }
  // Root is 2n−2; depths resolve top-down because parents have larger ids.
  std::vector<unsigned> depth(2 * n - 1, 0);
  for (std::size_t id = 2 * n - 2; id-- > 0;) depth[id] = depth[parent[id]] + 1;
  return {depth.begin(), depth.begin() + static_cast<std::ptrdiff_t>(n)};
}

/// Exact Kraft equality Σ 2^(−len) == 1 via per-level counts with carries.
bool kraft_complete(const std::vector<unsigned>& lengths);

struct OracleRun {
  TruncatedSource source;
  /// lengths_by_signature[s] lists the code lengths of the s+1 pairs of signature s.
  std::vector<std::vector<unsigned>> lengths_by_signature;
  unsigned tail_length = 0;
  double avg_len = 0;       // per pair, tail included at its own depth
  double uncertainty = 0;   // heuristic: eps · (tail depth + 2)
};

OracleRun run_oracle(double q, double eps, const OracleOptions& opt = {});

struct Estimate {
  double value = 0;
  double uncertainty = 0;
};

Estimate oracle_optimal_avg_len(double q, double eps, const OracleOptions& opt = {});

struct TwoLevelResult {
  bool pass = true;
  std::optional<std::uint64_t> witness;  // first signature spanning more than two levels
};

TwoLevelResult two_level_check(const std::vector<std::vector<unsigned>>& lengths_by_signature,
                               std::uint64_t s_max_checked);

/// Largest run of leaf-free levels strictly between occupied levels, over
/// signatures s_lo..s_hi.
unsigned max_gap(const std::vector<std::vector<unsigned>>& lengths_by_signature, std::uint64_t s_lo,
                 std::uint64_t s_hi);

}  // namespace tdgd
