#include "tdgd/oracle.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace tdgd {

namespace {

// Weights of the truncated alphabet in non-increasing order, and where the
// tail symbol landed.
struct Layout {
  std::vector<double> weights;
  std::size_t tail_index = 0;
};

Layout layout(const TruncatedSource& src) {
  Layout out;
  out.weights.reserve(src.symbol_count());
  bool placed = false;
  for (std::uint64_t s = 0; s <= src.S; ++s) {
    double w = std::pow(src.q, static_cast<double>(s));
    if (!placed && src.tail_weight > w) {
      out.tail_index = out.weights.size();
      out.weights.push_back(src.tail_weight);
      placed = true;
    }
    out.weights.insert(out.weights.end(), s + 1, w);
  }
  if (!placed) {
    out.tail_index = out.weights.size();
    out.weights.push_back(src.tail_weight);
  }
  return out;
}

}  // namespace

std::vector<double> TruncatedSource::weights() const { return layout(*this).weights; }

TruncatedSource build_truncated_source(double q, double eps, const OracleOptions& opt) {
  if (!(q > 0 && q < 1)) throw Error(Errc::q_out_of_range, "q must lie in (0,1)");
  if (q > opt.q_cap) throw Error(Errc::q_out_of_range, "q above the oracle cap " + std::to_string(opt.q_cap));
  if (!(eps > 0 && eps < 1)) throw std::invalid_argument("eps must lie in (0,1)");
  TruncatedSource src;
  src.q = q;
  src.eps = eps;
  // Tail fraction Σ_{s>S}(s+1)q^s · (1−q)² = q^{S+1}((S+1)(1−q)+1).
  auto tail_fraction = [q](std::uint64_t S) {
    double n = static_cast<double>(S + 1);
    return std::pow(q, n) * (n * (1 - q) + 1);
  };
  std::uint64_t S = 0;
  while (!(tail_fraction(S) < eps)) {
    ++S;
    if ((S + 1) * (S + 2) / 2 > opt.symbol_cap)
      throw Error(Errc::source_too_large, "truncated alphabet exceeds " + std::to_string(opt.symbol_cap) + " symbols");
  }
  src.S = S;
  src.total_weight = 1 / ((1 - q) * (1 - q));
  src.tail_weight = tail_fraction(S) * src.total_weight;
  return src;
}

bool kraft_complete(const std::vector<unsigned>& lengths) {
  if (lengths.empty()) return false;
  std::map<unsigned, std::uint64_t> count;
  for (unsigned l : lengths) ++count[l];
  // Fold deepest levels upward: each pair of nodes makes one parent.
  unsigned level = count.rbegin()->first;
  std::uint64_t carry = 0;
  for (;; --level) {
    auto it = count.find(level);
    std::uint64_t here = carry + (it == count.end() ? 0 : it->second);
    if (level == 0) return here == 1;
    if (here % 2) return false;
    carry = here / 2;
  }
}

OracleRun run_oracle(double q, double eps, const OracleOptions& opt) {
  OracleRun run;
  run.source = build_truncated_source(q, eps, opt);
  auto lay = layout(run.source);
  auto lengths = huffman_lengths(lay.weights);
  run.tail_length = lengths[lay.tail_index];

  double cost = 0;
  for (std::size_t i = 0; i < lengths.size(); ++i) cost += lay.weights[i] * lengths[i];
  run.avg_len = cost * (1 - q) * (1 - q);
  run.uncertainty = eps * (run.tail_length + 2.0);

  run.lengths_by_signature.resize(run.source.S + 1);
  std::size_t idx = 0;
  for (std::uint64_t s = 0; s <= run.source.S; ++s) {
    for (std::uint64_t c = 0; c <= s; ++c, ++idx) {
      if (idx == lay.tail_index) ++idx;
      run.lengths_by_signature[s].push_back(lengths[idx]);
    }
  }
  return run;
}

Estimate oracle_optimal_avg_len(double q, double eps, const OracleOptions& opt) {
  auto run = run_oracle(q, eps, opt);
  return {run.avg_len, run.uncertainty};
}

TwoLevelResult two_level_check(const std::vector<std::vector<unsigned>>& lengths_by_signature,
                               std::uint64_t s_max_checked) {
  TwoLevelResult res;
  for (std::uint64_t s = 0; s <= s_max_checked && s < lengths_by_signature.size(); ++s) {
    const auto& ls = lengths_by_signature[s];
    if (ls.empty()) continue;
    auto [lo, hi] = std::minmax_element(ls.begin(), ls.end());
    if (*hi - *lo > 1) {
      res.pass = false;
      res.witness = s;
      return res;
    }
  }
  return res;
}

unsigned max_gap(const std::vector<std::vector<unsigned>>& lengths_by_signature, std::uint64_t s_lo,
                 std::uint64_t s_hi) {
  std::vector<bool> occupied;
  for (std::uint64_t s = s_lo; s <= s_hi && s < lengths_by_signature.size(); ++s)
    for (unsigned l : lengths_by_signature[s]) {
      if (l >= occupied.size()) occupied.resize(l + 1, false);
      occupied[l] = true;
    }
  unsigned best = 0, run = 0;
  bool seen = false;
  for (bool occ : occupied) {
    if (occ) {
      if (seen) best = std::max(best, run);
      seen = true;
      run = 0;
    } else if (seen) {
      ++run;
    }
  }
  return best;
}

}  // namespace tdgd
