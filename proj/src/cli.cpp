#include "tdgd/cli.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "tdgd/basecodes.hpp"
#include "tdgd/errors.hpp"
#include "tdgd/fringe2.hpp"
#include "tdgd/oracle.hpp"

namespace tdgd {

std::uint8_t family_byte(CodeFamily::Kind kind) {
  switch (kind) {
    case CodeFamily::Kind::Ck: return 1;
    case CodeFamily::Kind::Cminus: return 2;
    case CodeFamily::Kind::Limit: return 3;
    case CodeFamily::Kind::GolombPair: return 4;
  }
  return 0;
}

std::vector<std::uint8_t> FileHeader::serialize() const {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  out.push_back(kVersion);
  out.push_back(family_byte(family.kind));
  out.push_back(static_cast<std::uint8_t>(family.k & 0xFF));
  out.push_back(static_cast<std::uint8_t>((family.k >> 8) & 0xFF));
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>((pair_count >> (8 * b)) & 0xFF));
  return out;
}

FileHeader FileHeader::parse(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || !std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin()))
    throw Error(Errc::bad_magic, "missing TDGD magic");
  if (bytes.size() < kSize) throw Error(Errc::stream_exhausted, "truncated header");
  if (bytes[4] != kVersion) throw Error(Errc::bad_magic, "unsupported version " + std::to_string(bytes[4]));
  FileHeader h;
  switch (bytes[5]) {
    case 1: h.family.kind = CodeFamily::Kind::Ck; break;
    case 2: h.family.kind = CodeFamily::Kind::Cminus; break;
    case 3: h.family.kind = CodeFamily::Kind::Limit; break;
    case 4: h.family.kind = CodeFamily::Kind::GolombPair; break;
    default: throw Error(Errc::bad_magic, "unknown family byte " + std::to_string(bytes[5]));
  }
  h.family.k = bytes[6] | (std::uint64_t{bytes[7]} << 8);
  h.family.validate();
  for (int b = 0; b < 8; ++b) h.pair_count |= std::uint64_t{bytes[8 + b]} << (8 * b);
  return h;
}

FamilyCodec::FamilyCodec(const CodeFamily& family) : codec_(LimitCodec{}) {
  family.validate();
  switch (family.kind) {
    case CodeFamily::Kind::Ck: codec_ = CkCodec(family.k); break;
    case CodeFamily::Kind::Cminus: codec_ = CminusCodec(static_cast<unsigned>(family.k)); break;
    case CodeFamily::Kind::Limit: codec_ = LimitCodec{}; break;
    case CodeFamily::Kind::GolombPair: codec_ = GolombPairCodec{family.k}; break;
  }
}

void FamilyCodec::encode(BitWriter& w, SymbolPair p) const {
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, LimitCodec>) {
          limit_write(w, p);
        } else if constexpr (std::is_same_v<T, GolombPairCodec>) {
          write_golomb(w, c.k, p.i);
          write_golomb(w, c.k, p.j);
        } else {
          c.encode(w, p);
        }
      },
      codec_);
}

SymbolPair FamilyCodec::decode(BitReader& r) const {
  return std::visit(
      [&](const auto& c) -> SymbolPair {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, LimitCodec>) {
          return limit_decode(r);
        } else if constexpr (std::is_same_v<T, GolombPairCodec>) {
          std::uint64_t i = golomb_decode(c.k, r);
          return {i, golomb_decode(c.k, r)};
        } else {
          return c.decode(r);
        }
      },
      codec_);
}

std::vector<std::uint8_t> encode_file(const CodeFamily& family, const std::vector<SymbolPair>& pairs,
                                      std::uint64_t* payload_bits) {
  if (family.k > 0xFFFF) throw Error(Errc::invalid_family_param, "k does not fit the 16-bit header field");
  FamilyCodec codec(family);
  BitWriter w;
  for (const auto& p : pairs) codec.encode(w, p);
  if (payload_bits) *payload_bits = w.bit_count();
  auto out = FileHeader{family, pairs.size()}.serialize();
  auto payload = w.finish();
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

DecodedFile decode_file(std::span<const std::uint8_t> bytes) {
  auto header = FileHeader::parse(bytes);
  FamilyCodec codec(header.family);
  BitReader r(bytes.subspan(FileHeader::kSize));
  DecodedFile out{header.family, {}};
  for (std::uint64_t n = 0; n < header.pair_count; ++n) out.pairs.push_back(codec.decode(r));
  std::uint64_t rest = r.remaining();
  if (rest >= 8) throw Error(Errc::trailing_garbage, std::to_string(rest) + " bits after the last pair");
  if (rest > 0 && r.read_bits(static_cast<unsigned>(rest)) != 0)
    throw Error(Errc::trailing_garbage, "non-zero padding bits");
  return out;
}

std::vector<SymbolPair> parse_pairs(const std::string& text) {
  std::vector<std::uint64_t> values;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    std::string token = text.substr(start, pos - start);
    bool ok = token.size() <= 19;
    for (char ch : token) ok = ok && std::isdigit(static_cast<unsigned char>(ch));
    if (!ok) throw Error(Errc::parse_error, "bad token '" + token + "' at offset " + std::to_string(start));
    values.push_back(std::stoull(token));
  }
  if (values.size() % 2) throw Error(Errc::odd_symbol_count, std::to_string(values.size()) + " integers");
  std::vector<SymbolPair> pairs;
  for (std::size_t i = 0; i < values.size(); i += 2) pairs.push_back({values[i], values[i + 1]});
  return pairs;
}

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  std::string s = buf;
  // A rounded-away negative (e.g. -1e-12) prints as zero, not "-0.000000".
  if (s.size() > 1 && s[0] == '-' && s.find_first_not_of("0.", 1) == std::string::npos) s.erase(0, 1);
  return s;
}

std::string read_all(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

std::string read_input(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") return read_all(in);
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open " + path);
  return read_all(f);
}

void write_output(const std::string& path, const std::string& data, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << data;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write " + path);
  f << data;
}

CodeFamily family_from(const std::string& name, std::uint64_t k) {
  CodeFamily f;
  if (name == "ck") f.kind = CodeFamily::Kind::Ck;
  else if (name == "cminus") f.kind = CodeFamily::Kind::Cminus;
  else if (name == "limit") f.kind = CodeFamily::Kind::Limit;
  else if (name == "golomb") f.kind = CodeFamily::Kind::GolombPair;
  else throw Error(Errc::invalid_family_param, "unknown family '" + name + "'");
  f.k = f.kind == CodeFamily::Kind::Limit ? 0 : k;
  f.validate();
  return f;
}

void print_params(std::uint64_t k_lo, std::uint64_t k_hi, std::ostream& out) {
  out << "k\tM\tj\tr\tsigma\tc\tprofile\n";
  for (std::uint64_t k = k_lo; k <= k_hi; ++k) {
    if (k == 1) {
      out << "1\t-\t-\t-\t-\t-\tvoid top code (C_1 = G_1 G_1)\n";
      continue;
    }
    auto p = top_code_params(k);
    out << k << '\t' << p.M << '\t' << p.j << '\t' << p.r << '\t' << p.sigma << '\t' << p.c << "\t(" << p.profile.n_lo
        << ',' << p.profile.n_mid << ',' << p.profile.n_hi << ")\n";
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal prefix codes for two-dimensional geometric distributions", "tdgd"};
  app.require_subcommand(1);

  std::string family = "ck", input, out_path;
  std::uint64_t k = 1;
  auto* enc = app.add_subcommand("encode", "encode whitespace-separated integer pairs");
  enc->add_option("--family", family, "ck | cminus | limit | golomb")->check(CLI::IsMember({"ck", "cminus", "limit", "golomb"}));
  enc->add_option("--k", k, "family parameter");
  enc->add_option("input", input, "input text file (default stdin)");
  enc->add_option("--out", out_path, "output file (default stdout)");

  auto* dec = app.add_subcommand("decode", "decode a .tdgd file to one pair per line");
  dec->add_option("input", input, "input file (default stdin)");
  dec->add_option("--out", out_path, "output file (default stdout)");

  std::uint64_t k_lo = 1, k_hi = 10;
  auto* params = app.add_subcommand("params", "top-code parameters and profiles of C_k");
  params->add_option("--k", k, "single k");
  params->add_option("--k-min", k_lo);
  params->add_option("--k-max", k_hi);

  std::uint64_t s_lo = 0, s_hi = 10;
  auto* lengths = app.add_subcommand("lengths", "per-signature length rows of C_{-k}");
  lengths->add_option("--k", k, "k >= 2")->required();
  lengths->add_option("--s-min", s_lo);
  lengths->add_option("--s-max", s_hi);

  double q_lo = 0.05, q_hi = 0.95, step = 0.05, eps = 1e-9;
  bool with_oracle = false;
  auto* sweep = app.add_subcommand("sweep", "per-symbol redundancy CSV over a q grid");
  sweep->add_option("--q-min", q_lo);
  sweep->add_option("--q-max", q_hi);
  sweep->add_option("--step", step)->check(CLI::PositiveNumber);
  sweep->add_option("--eps", eps);
  sweep->add_flag("--oracle", with_oracle, "fill opt_est from the Huffman oracle");
  sweep->add_option("--out", out_path);

  double q = 0.5;
  auto* orc = app.add_subcommand("oracle", "truncated-Huffman optimal average length per pair");
  orc->add_option("--q", q)->required();
  orc->add_option("--eps", eps);

  std::string fam_a = "limit", fam_b = "ck:1";
  double lo = 0.25, hi = 0.45, tol = 1e-9;
  auto* cross = app.add_subcommand("crossover", "q where two families' averages cross");
  cross->add_option("--a", fam_a, "family spec, e.g. limit, ck:1, cminus:2, golomb:3");
  cross->add_option("--b", fam_b);
  cross->add_option("--lo", lo);
  cross->add_option("--hi", hi);
  cross->add_option("--tol", tol);

  double mean = 1.0;
  auto* sel = app.add_subcommand("select", "pick a code family for a sample mean");
  sel->add_option("--mean", mean)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (*enc) {
      auto fam = family_from(family, k);
      auto pairs = parse_pairs(read_input(input, in));
      std::uint64_t bits = 0;
      auto bytes = encode_file(fam, pairs, &bits);
      write_output(out_path, std::string(bytes.begin(), bytes.end()), out);
      err << "pairs: " << pairs.size() << ", payload bits: " << bits << '\n';
    } else if (*dec) {
      auto data = read_input(input, in);
      auto file = decode_file(std::span(reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
      std::ostringstream text;
      for (const auto& p : file.pairs) text << p.i << ' ' << p.j << '\n';
      write_output(out_path, text.str(), out);
    } else if (*params) {
      if (params->count("--k")) k_lo = k_hi = k;
      if (k_lo < 1 || k_hi < k_lo) throw Error(Errc::invalid_family_param, "need 1 <= k-min <= k-max");
      print_params(k_lo, k_hi, out);
    } else if (*lengths) {
      if (k < 2 || k > 32) throw Error(Errc::invalid_family_param, "lengths needs 2 <= k <= 32");
      out << "s\tLambda\tn_short\tn_long\n";
      for (std::uint64_t s = s_lo; s <= s_hi; ++s) {
        auto row = signature_length_row(static_cast<unsigned>(k), s);
        out << row.s << '\t' << row.Lambda << '\t' << row.n_short << '\t' << row.n_long << '\n';
      }
    } else if (*sweep) {
      std::ostringstream csv;
      csv << "q,entropy,opt_est,red_golomb_best,red_ck_best,red_cminus_best,red_limit\n";
      OracleOptions opt;
      for (long n = 0;; ++n) {
        double qq = q_lo + static_cast<double>(n) * step;
        if (qq > q_hi + 1e-9) break;
        auto pt = redundancy_point(qq);
        std::string oracle_col;
        if (with_oracle && qq <= opt.q_cap)
          oracle_col = fmt("%.6f", oracle_optimal_avg_len(qq, eps, opt).value / 2 - pt.entropy);
        csv << fmt("%.6f", qq) << ',' << fmt("%.6f", pt.entropy) << ',' << oracle_col << ','
            << fmt("%.6f", pt.red_golomb_best) << ',' << fmt("%.6f", pt.red_ck_best) << ','
            << fmt("%.6f", pt.red_cminus_best) << ',' << fmt("%.6f", pt.red_limit) << '\n';
      }
      write_output(out_path, csv.str(), out);
    } else if (*orc) {
      auto est = oracle_optimal_avg_len(q, eps);
      out << fmt("%.6f", est.value) << " ± " << fmt("%.2e", est.uncertainty) << '\n';
    } else if (*cross) {
      auto a = CodeFamily::parse(fam_a), b = CodeFamily::parse(fam_b);
      double x = crossover([&](double v) { return family_avg_len(a, v); },
                           [&](double v) { return family_avg_len(b, v); }, lo, hi, tol);
      out << fmt("%.5f", x) << '\n';
    } else if (*sel) {
      out << adaptive_select(mean).to_string() << '\n';
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == Errc::invalid_family_param ? 1 : 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace tdgd
