#include "tdgd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "tdgd/basecodes.hpp"
#include "tdgd/ck_codec.hpp"
#include "tdgd/cminus_codec.hpp"
#include "tdgd/errors.hpp"
#include "tdgd/fringe2.hpp"

namespace tdgd {

namespace {

void check_q(double q) {
  if (!(q > 0.0 && q < 1.0)) throw Error(Errc::q_out_of_range, "q must lie in (0,1), got " + std::to_string(q));
}

double row_total(const SignatureLengthRow& row) {
  return static_cast<double>(row.Lambda) * static_cast<double>(row.s + 1) + static_cast<double>(row.n_long);
}

}  // namespace

LengthModel LengthModel::ck(std::uint64_t k) {
  auto codec = std::make_shared<CkCodec>(k);
  LengthModel m;
  m.name = "ck k=" + std::to_string(k);
  m.signature_total = [codec](std::uint64_t s) {
    double total = 0;
    for (std::uint64_t i = 0; i <= s; ++i) total += static_cast<double>(codec->length({i, s - i}));
    return total;
  };
  m.a = codec->params().M + 3.0;
  m.b = 1.0 / static_cast<double>(k);
  return m;
}

LengthModel LengthModel::cminus(unsigned k) {
  CminusCodec check(k);  // validates k
  LengthModel m;
  m.name = "cminus k=" + std::to_string(k);
  m.signature_total = [k](std::uint64_t s) { return row_total(signature_length_row(k, s)); };
  m.a = 2.0 * k + 1;
  m.b = k;
  return m;
}

LengthModel LengthModel::limit() {
  LengthModel m;
  m.name = "limit";
  m.signature_total = [](std::uint64_t s) { return row_total(limit_row(s)); };
  // (t−1)(s+2) + 2r + 3 <= s² + 4s + 3
  m.a = 3;
  m.b = 4;
  m.c = 1;
  return m;
}

LengthModel LengthModel::golomb_pair(std::uint64_t k) {
  if (k == 0) throw Error(Errc::invalid_family_param, "Golomb order must be >= 1");
  LengthModel m;
  m.name = "golomb k=" + std::to_string(k);
  m.signature_total = [k](std::uint64_t s) {
    double total = 0;
    for (std::uint64_t i = 0; i <= s; ++i) total += static_cast<double>(golomb_length(k, i));
    return 2 * total;
  };
  m.a = 2.0 * (ceil_log2(k) + 1);
  m.b = 1.0 / static_cast<double>(k);
  return m;
}

SeriesResult avg_len_series(const LengthModel& model, double q, double eps) {
  if (q >= 1.0) throw Error(Errc::no_convergence, "series diverges for q >= 1");
  check_q(q);
  if (!(eps > 0)) throw Error(Errc::no_convergence, "eps must be positive");
  const double w = (1 - q) * (1 - q);
  constexpr std::uint64_t kMaxSignature = 100'000'000;
  SeriesResult res;
  double sum = 0;
  double qs = 1;  // q^s
  for (std::uint64_t s = 0; s < kMaxSignature; ++s, qs *= q) {
    sum += qs * model.signature_total(s);
    // Tail Σ_{t>s} (t+1)·p(t)·q^t, p the length bound: consecutive terms shrink
    // by at most rho = q(1+1/n)(1+3/n) for t >= n = s+1.
    double n = static_cast<double>(s + 1);
    double rho = q * (1 + 1 / n) * (1 + 3 / n);
    if (rho >= 1) continue;
    double p = model.a + model.b * n + model.c * n * n;
    double tail = w * (n + 1) * p * qs * q / (1 - rho);
    if (tail < eps) {
      res.value = w * sum;
      res.error_bound = tail;
      res.last_signature = s;
      return res;
    }
  }
  throw Error(Errc::no_convergence, "series did not reach eps within the signature cap");
}

double avg_len_by_series(const LengthModel& model, double q, double eps) { return avg_len_series(model, q, eps).value; }

double binary_entropy(double q) { return -q * std::log2(q) - (1 - q) * std::log2(1 - q); }

double entropy_per_symbol(double q) {
  check_q(q);
  return binary_entropy(q) / (1 - q);
}

double avg_len_ck_closed(double q, std::uint64_t k) {
  check_q(q);
  auto p = top_code_params(k);
  double kd = static_cast<double>(k);
  double j = static_cast<double>(p.j), r = static_cast<double>(p.r);
  double dj = static_cast<double>(p.delta(p.j));
  double qk = std::pow(q, kd);
  double V = 1 - qk * q + (1 - q) * (qk * q * (kd - j - 1) + j) + (1 - q) * (1 - q) * (qk * (2 * r + dj) - r);
  return p.M + 1 + std::pow(q, j) * V / ((1 - qk) * (1 - qk));
}

double avg_len_ck_dyadic(std::uint64_t k) {
  auto p = top_code_params(k);
  double kd = static_cast<double>(k);
  double q = std::exp2(-1.0 / kd);
  double j = static_cast<double>(p.j);
  double dj = static_cast<double>(p.delta(p.j));
  double V = 1 + (1 - q) * (q * kd + (2 - q) * j) + (1 - q) * (1 - q) * (1 + dj);
  return p.M + 1 + 2 * std::pow(q, j) * V;
}

double avg_len_ck_exact(double q, std::uint64_t k) {
  check_q(q);
  CkCodec codec(k);
  const auto& pr = codec.params().profile;
  const std::uint64_t b1 = pr.n_lo, b2 = pr.n_lo + pr.n_mid;
  auto before = [k](std::uint64_t s) {
    if (s <= k) return s * (s + 1) / 2;
    std::uint64_t rest = 2 * k - s;
    return k * k - rest * (rest - 1) / 2;
  };
  auto overlap = [](std::uint64_t a0, std::uint64_t a1, std::uint64_t b0, std::uint64_t b1_) {
    std::uint64_t lo = std::max(a0, b0), hi = std::min(a1, b1_);
    return hi > lo ? static_cast<double>(hi - lo) : 0.0;
  };
  double top = 0;
  for (std::uint64_t s = 0; s + 1 < 2 * k; ++s) {
    std::uint64_t r0 = before(s), r1 = before(s + 1);
    double len_sum = overlap(r0, r1, 0, b1) * (pr.M - 1.0) + overlap(r0, r1, b1, b2) * pr.M +
                     overlap(r0, r1, b2, k * k) * (pr.M + 1.0);
    top += len_sum * std::pow(q, static_cast<double>(s));
  }
  double qk = std::pow(q, static_cast<double>(k));
  return 2 / (1 - qk) + (1 - q) * (1 - q) / ((1 - qk) * (1 - qk)) * top;
}

bool ck_closed_form_needs_fallback(std::uint64_t k) {
  // The closed form sums the deepest level as the j' = k−j−2 lightest
  // signature groups plus r' = 2r + Δ(j) extra symbols; that only holds when
  // r' fits inside the next group.
  auto p = top_code_params(k);
  std::int64_t r2 = 2 * p.r + p.delta(p.j);
  std::int64_t j2 = static_cast<std::int64_t>(k) - p.j - 2;
  return r2 > j2 + 1;
}

double avg_len_ck(double q, std::uint64_t k) {
  check_q(q);
  if (ck_closed_form_needs_fallback(k)) return avg_len_ck_exact(q, k);
  return avg_len_ck_closed(q, k);
}

double avg_len_limit_closed(double q) {
  check_q(q);
  double sum = 0;
  for (int t = 0; t < 64; ++t) {
    double p2 = std::ldexp(1.0, t);
    double term = std::pow(q, p2) * (p2 * (1 - q) + 2);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return 1 + sum / (1 - q);
}

double golomb_avg_len(double q, std::uint64_t k) {
  check_q(q);
  if (k == 0) throw Error(Errc::invalid_family_param, "Golomb order must be >= 1");
  auto spec = quasi_uniform_spec(k);
  double qk = std::pow(q, static_cast<double>(k));
  double qu = std::pow(q, static_cast<double>(spec.short_count));
  double per_symbol =
      1 + qk / (1 - qk) + (spec.floor_log * (1 - qu) + spec.ceil_log * (qu - qk)) / (1 - qk);
  return 2 * per_symbol;
}

std::uint64_t best_golomb_order(double q) {
  check_q(q);
  // Smallest k with q^k + q^{k+1} <= 1; a few ulps of slack keep the
  // interval endpoints q_k inclusive.
  double qk = q;
  for (std::uint64_t k = 1;; ++k, qk *= q)
    if (qk * (1 + q) <= 1 + 1e-15) return k;
}

double golomb_threshold(std::uint64_t k) {
  if (k == 0) return 0.0;
  double lo = 0, hi = 1;
  auto f = [k](double q) { return std::pow(q, static_cast<double>(k)) * (1 + q) - 1; };
  for (int it = 0; it < 200 && hi - lo > 0; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (f(mid) > 0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double asymptotic_redundancy_lambda(double lambda) {
  const double log2e = std::log2(std::exp(1.0));
  double a = std::sqrt(lambda - 0.5);
  return 0.5 * (1 + std::log2(lambda)) + std::exp2(1 - 2 * a) * (1 + 2 / log2e * a) - std::log2(std::exp(1.0) * log2e);
}

double lambda_of(std::uint64_t k) {
  auto p = top_code_params(k);
  double kd = static_cast<double>(k);
  return std::ldexp(1.0, static_cast<int>(p.M)) / (kd * kd);
}

double asymptotic_redundancy(std::uint64_t k) {
  if (k < 3) throw Error(Errc::invalid_family_param, "asymptotic redundancy needs k >= 3");
  return asymptotic_redundancy_lambda(lambda_of(k));
}

Extremes redundancy_extremes(double lo, double hi) {
  constexpr int kGrid = 200000;
  Extremes e{std::numeric_limits<double>::infinity(), lo, -std::numeric_limits<double>::infinity(), lo};
  for (int i = 0; i <= kGrid; ++i) {
    double lam = lo + (hi - lo) * i / kGrid;
    double v = asymptotic_redundancy_lambda(lam);
    if (v < e.min_value) e.min_value = v, e.argmin = lam;
    if (v > e.max_value) e.max_value = v, e.argmax = lam;
  }
  return e;
}

double crossover(const std::function<double(double)>& f_a, const std::function<double(double)>& f_b, double lo,
                 double hi, double tol) {
  auto g = [&](double q) { return f_a(q) - f_b(q); };
  double glo = g(lo), ghi = g(hi);
  if (glo == 0) return lo;
  if (ghi == 0) return hi;
  if ((glo < 0) == (ghi < 0)) throw Error(Errc::no_sign_change, "the two models do not cross on the interval");
  while (hi - lo >= tol) {
    double mid = 0.5 * (lo + hi);
    double gm = g(mid);
    if (gm == 0) return mid;
    if ((gm < 0) == (glo < 0)) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

CodeFamily CodeFamily::parse(const std::string& text) {
  auto colon = text.find(':');
  std::string name = text.substr(0, colon);
  CodeFamily f;
  if (name == "ck") f.kind = Kind::Ck;
  else if (name == "cminus") f.kind = Kind::Cminus;
  else if (name == "limit") f.kind = Kind::Limit;
  else if (name == "golomb") f.kind = Kind::GolombPair;
  else throw Error(Errc::invalid_family_param, "unknown family '" + name + "'");
  f.k = 0;
  if (colon != std::string::npos) {
    try {
      std::size_t used = 0;
      f.k = std::stoull(text.substr(colon + 1), &used);
      if (used != text.size() - colon - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(Errc::invalid_family_param, "bad family parameter in '" + text + "'");
    }
  }
  f.validate();
  return f;
}

void CodeFamily::validate() const {
  switch (kind) {
    case Kind::Ck:
    case Kind::GolombPair:
      if (k < 1) throw Error(Errc::invalid_family_param, "k must be >= 1");
      break;
    case Kind::Cminus:
      if (k < 2 || k > 32) throw Error(Errc::invalid_family_param, "cminus needs 2 <= k <= 32");
      break;
    case Kind::Limit:
      if (k != 0) throw Error(Errc::invalid_family_param, "limit takes no k");
      break;
  }
}

std::string CodeFamily::to_string() const {
  switch (kind) {
    case Kind::Ck: return "ck k=" + std::to_string(k);
    case Kind::Cminus: return "cminus k=" + std::to_string(k);
    case Kind::Limit: return "limit";
    case Kind::GolombPair: return "golomb k=" + std::to_string(k);
  }
  return "?";
}

double family_avg_len(const CodeFamily& f, double q) {
  f.validate();
  switch (f.kind) {
    case CodeFamily::Kind::Ck: return avg_len_ck(q, f.k);
    case CodeFamily::Kind::Cminus:
      return avg_len_by_series(LengthModel::cminus(static_cast<unsigned>(f.k)), q, 1e-12);
    case CodeFamily::Kind::Limit: return avg_len_limit_closed(q);
    case CodeFamily::Kind::GolombPair: return golomb_avg_len(q, f.k);
  }
  return 0;
}

namespace {

constexpr std::uint64_t kMaxCk = 64;
constexpr unsigned kMaxCminus = 16;

// C_k orders worth scanning at q: all k <= 64 on the precomputed range, and a
// window around the matching order k ≈ 1/log2(1/q) beyond it.
std::pair<std::uint64_t, std::uint64_t> ck_window(double q) {
  double k0 = 1.0 / -std::log2(q);
  if (k0 <= kMaxCk / 2.0) return {1, kMaxCk};
  auto lo = static_cast<std::uint64_t>(std::max(1.0, std::floor(k0 / 2)));
  auto hi = static_cast<std::uint64_t>(std::ceil(2 * k0 + 2));
  return {lo, hi};
}

CodeFamily best_family_in(double q, std::uint64_t ck_lo, std::uint64_t ck_hi) {
  CodeFamily best{CodeFamily::Kind::Limit, 0};
  double best_len = avg_len_limit_closed(q);
  auto consider = [&](CodeFamily f, double len) {
    if (len < best_len) best_len = len, best = f;
  };
  for (std::uint64_t k = ck_lo; k <= ck_hi; ++k) consider({CodeFamily::Kind::Ck, k}, avg_len_ck(q, k));
  // C_{−k} is built for q = 2^{−k}; past q = 1/2 it cannot compete with C_1.
  if (q < 0.5)
    for (unsigned k = 2; k <= kMaxCminus; ++k)
      consider({CodeFamily::Kind::Cminus, k}, avg_len_by_series(LengthModel::cminus(k), q, 1e-12));
  return best;
}

double q_hat(double mean) { return mean / (1 + mean); }

}  // namespace

CodeFamily best_family_at(double q) {
  check_q(q);
  auto [lo, hi] = ck_window(q);
  return best_family_in(q, lo, hi);
}

AdaptiveSelector::AdaptiveSelector() {
  constexpr int kGrid = 400;
  auto pick = [](double mean) { return best_family_in(q_hat(mean), 1, kMaxCk); };
  double log_lo = std::log(kMeanLo), log_hi = std::log(kMeanHi);
  double prev_mean = kMeanLo;
  CodeFamily prev = pick(prev_mean);
  intervals_.push_back({kMeanLo, prev});
  for (int g = 1; g <= kGrid; ++g) {
    double mean = std::exp(log_lo + (log_hi - log_lo) * g / kGrid);
    CodeFamily cur = pick(mean);
    // Refine every switch inside the cell; a cell may hold several.
    double a = prev_mean;
    while (!(cur == prev)) {
      double lo = a, hi = mean;
      CodeFamily next = cur;
      for (int it = 0; it < 60 && hi - lo > 1e-12 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        CodeFamily fm = pick(mid);
        if (fm == prev) lo = mid;
        else hi = mid, next = fm;
      }
      intervals_.push_back({hi, next});
      prev = next;
      a = hi;
    }
    prev_mean = mean;
  }
}

const AdaptiveSelector& AdaptiveSelector::instance() {
  static const AdaptiveSelector selector;
  return selector;
}

CodeFamily AdaptiveSelector::select(double mean) const {
  if (mean < kMeanLo || mean > kMeanHi) return adaptive_select(mean);
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), mean,
                             [](double m, const Interval& iv) { return m < iv.mean_lo; });
  return std::prev(it)->family;
}

CodeFamily adaptive_select(double mean) {
  if (!(mean >= 0) || std::isinf(mean)) throw Error(Errc::q_out_of_range, "mean must be finite and >= 0");
  // All mass on (0,0): every C_{−k} and the limit code spend one bit there;
  // the limit code is the q → 0 member of that family.
  if (mean == 0) return {CodeFamily::Kind::Limit, 0};
  if (mean >= AdaptiveSelector::kMeanLo && mean <= AdaptiveSelector::kMeanHi)
    return AdaptiveSelector::instance().select(mean);
  double q = q_hat(mean);
  if (q >= 1) throw Error(Errc::q_out_of_range, "mean too large for double precision");
  return best_family_at(q);
}

RedundancyPoint redundancy_point(double q) {
  check_q(q);
  RedundancyPoint pt;
  pt.q = q;
  pt.entropy = entropy_per_symbol(q);
  pt.red_golomb_best = golomb_avg_len(q, best_golomb_order(q)) / 2 - pt.entropy;
  auto [lo, hi] = ck_window(q);
  double best_ck = std::numeric_limits<double>::infinity();
  for (std::uint64_t k = lo; k <= hi; ++k) best_ck = std::min(best_ck, avg_len_ck(q, k));
  pt.red_ck_best = best_ck / 2 - pt.entropy;
  double best_cm = std::numeric_limits<double>::infinity();
  for (unsigned k = 2; k <= kMaxCminus; ++k)
    best_cm = std::min(best_cm, avg_len_by_series(LengthModel::cminus(k), q, 1e-12));
  pt.red_cminus_best = best_cm / 2 - pt.entropy;
  pt.red_limit = avg_len_limit_closed(q) / 2 - pt.entropy;
  return pt;
}

}  // namespace tdgd
