#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace tdgd {

/// Per-signature length description of a pair code, for series evaluation.
struct LengthModel {
  std::string name;
  /// Σ of codeword lengths over the s+1 pairs of signature s.
  std::function<double(std::uint64_t s)> signature_total;
  /// Non-negative coefficients with max length at signature s <= a + b·s + c·s².
  double a = 0, b = 0, c = 0;

  static LengthModel ck(std::uint64_t k);
  static LengthModel cminus(unsigned k);
  static LengthModel limit();
  static LengthModel golomb_pair(std::uint64_t k);
};

struct SeriesResult {
  double value = 0;
  double error_bound = 0;  // certified bound on the omitted tail
  std::uint64_t last_signature = 0;
};

/// (1−q)² Σ_s q^s · signature_total(s), stopped once the tail bound is < eps.
SeriesResult avg_len_series(const LengthModel& model, double q, double eps);
double avg_len_by_series(const LengthModel& model, double q, double eps);

double binary_entropy(double q);
/// H(q) = h(q)/(1−q), bits per integer symbol.
double entropy_per_symbol(double q);

/// Closed form for C_k at arbitrary q, evaluated literally.
double avg_len_ck_closed(double q, std::uint64_t k);
/// The specialization at q = 2^(−1/k).
double avg_len_ck_dyadic(std::uint64_t k);
/// Exact average via the top-code profile, O(k).
double avg_len_ck_exact(double q, std::uint64_t k);
/// Closed form where its derivation applies; exact profile sum otherwise.
double avg_len_ck(double q, std::uint64_t k);
/// True when the closed form's weight-group assumption fails for this k.
bool ck_closed_form_needs_fallback(std::uint64_t k);

double avg_len_limit_closed(double q);

/// Per-pair average of G_k·G_k.
double golomb_avg_len(double q, std::uint64_t k);
std::uint64_t best_golomb_order(double q);
/// q_k: root of q^k + q^{k+1} = 1 (q_0 = 0).
double golomb_threshold(std::uint64_t k);

/// Asymptotic per-symbol redundancy of C_k as a function of λ = 2^M/k².
double asymptotic_redundancy_lambda(double lambda);
double asymptotic_redundancy(std::uint64_t k);
double lambda_of(std::uint64_t k);

struct Extremes {
  double min_value, argmin, max_value, argmax;
};
/// Extremes of asymptotic_redundancy_lambda over [lo, hi].
Extremes redundancy_extremes(double lo = 0.75, double hi = 1.5);

/// Root of f_a − f_b in [lo, hi] by bisection.
double crossover(const std::function<double(double)>& f_a, const std::function<double(double)>& f_b, double lo,
                 double hi, double tol);

struct CodeFamily {
  enum class Kind { Ck, Cminus, Limit, GolombPair };
  Kind kind = Kind::Ck;
  std::uint64_t k = 1;

  /// Accepts "ck:3", "cminus:2", "limit", "golomb:1".
  static CodeFamily parse(const std::string& text);
  /// Throws InvalidFamilyParam when k is invalid for the kind.
  void validate() const;
  std::string to_string() const;  // e.g. "ck k=1", "limit"

  friend bool operator==(const CodeFamily&, const CodeFamily&) = default;
};

/// Per-pair average length of a family at q.
double family_avg_len(const CodeFamily& f, double q);

/// Chooses a family for a sample mean via precomputed thresholds on the mean
/// axis. Candidates: C_k (k <= 64), C_{−k} (2 <= k <= 16), the limit code.
class AdaptiveSelector {
 public:
  AdaptiveSelector();

  CodeFamily select(double mean) const;

  struct Interval {
    double mean_lo;  // family applies for mean >= mean_lo (up to the next entry)
    CodeFamily family;
  };
  const std::vector<Interval>& intervals() const noexcept { return intervals_; }

  static const AdaptiveSelector& instance();
  static constexpr double kMeanLo = 1e-3;
  static constexpr double kMeanHi = 64.0;

 private:
  std::vector<Interval> intervals_;
};

/// Direct minimization of the per-pair average at q̂ over the candidate set.
CodeFamily best_family_at(double q);
CodeFamily adaptive_select(double mean);

/// Per-symbol redundancy helpers used by sweeps.
struct RedundancyPoint {
  double q = 0;
  double entropy = 0;
  double red_golomb_best = 0;
  double red_ck_best = 0;
  double red_cminus_best = 0;
  double red_limit = 0;
};
RedundancyPoint redundancy_point(double q);

}  // namespace tdgd
