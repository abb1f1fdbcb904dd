#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <tuple>
#include <vector>

#include "tdgd/analysis.hpp"
#include "tdgd/cli.hpp"
#include "tdgd/cminus_codec.hpp"
#include "tdgd/errors.hpp"
#include "tdgd/fringe2.hpp"
#include "tdgd/oracle.hpp"

namespace py = pybind11;
using namespace tdgd;

namespace {

using Pair = std::tuple<std::uint64_t, std::uint64_t>;

std::vector<SymbolPair> to_pairs(const std::vector<Pair>& in) {
  std::vector<SymbolPair> out;
  out.reserve(in.size());
  for (auto [i, j] : in) out.push_back({i, j});
  return out;
}

CodeFamily family_of(const std::string& spec) {
  auto f = CodeFamily::parse(spec);
  f.validate();
  return f;
}

}  // namespace

PYBIND11_MODULE(tdgd, m) {
  m.doc() = "Prefix codes for two-dimensional geometric sources";

  static py::exception<Error> exc(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(exc, e.what());
    }
  });

  m.def(
      "encode",
      [](const std::string& family, const std::vector<Pair>& pairs) {
        auto bytes = encode_file(family_of(family), to_pairs(pairs));
        return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
      },
      py::arg("family"), py::arg("pairs"), "Encode pairs into a self-describing container.");

  m.def(
      "decode",
      [](const py::bytes& data) {
        std::string s = data;
        auto f = decode_file(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
        std::vector<Pair> pairs;
        pairs.reserve(f.pairs.size());
        for (auto p : f.pairs) pairs.emplace_back(p.i, p.j);
        return py::make_tuple(f.family.to_string(), pairs);
      },
      py::arg("data"), "Decode a container; returns (family, pairs).");

  m.def(
      "encode_bits",
      [](const std::string& family, const std::vector<Pair>& pairs) {
        FamilyCodec codec(family_of(family));
        BitWriter w;
        for (auto p : to_pairs(pairs)) codec.encode(w, p);
        return w.bits().str();
      },
      py::arg("family"), py::arg("pairs"), "Raw payload as a '0'/'1' string, no header.");

  m.def(
      "decode_bits",
      [](const std::string& family, const std::string& bits, std::size_t count) {
        FamilyCodec codec(family_of(family));
        auto b = BitString::from_string(bits);
        BitReader r(b);
        std::vector<Pair> out;
        for (std::size_t n = 0; n < count; ++n) {
          auto p = codec.decode(r);
          out.emplace_back(p.i, p.j);
        }
        return out;
      },
      py::arg("family"), py::arg("bits"), py::arg("count"));

  m.def(
      "top_code_params",
      [](std::uint64_t k) {
        auto p = top_code_params(k);
        py::dict d;
        d["k"] = p.k;
        d["m"] = p.m;
        d["M"] = p.M;
        d["sigma"] = p.sigma;
        d["j"] = p.j;
        d["r"] = p.r;
        d["c"] = p.c;
        d["n_lo"] = p.profile.n_lo;
        d["n_mid"] = p.profile.n_mid;
        d["n_hi"] = p.profile.n_hi;
        return d;
      },
      py::arg("k"));

  m.def(
      "signature_length_row",
      [](unsigned k, std::uint64_t s) {
        auto r = k == 0 ? limit_row(s) : signature_length_row(k, s);
        return py::make_tuple(r.s, r.Lambda, r.n_short, r.n_long);
      },
      py::arg("k"), py::arg("s"), "(s, Lambda, n_short, n_long) for C_{-k}; k=0 selects the limit code.");

  m.def("entropy", &entropy_per_symbol, py::arg("q"), "Per-symbol entropy in bits.");
  m.def(
      "avg_len",
      [](const std::string& family, double q) { return family_avg_len(family_of(family), q); },
      py::arg("family"), py::arg("q"), "Average bits per pair.");
  m.def("avg_len_ck", &avg_len_ck, py::arg("q"), py::arg("k"));
  m.def("avg_len_limit", &avg_len_limit_closed, py::arg("q"));
  m.def("golomb_avg_len", &golomb_avg_len, py::arg("q"), py::arg("k"));
  m.def("best_golomb_order", &best_golomb_order, py::arg("q"));

  m.def(
      "oracle_optimal_avg_len",
      [](double q, double eps) {
        auto e = oracle_optimal_avg_len(q, eps);
        return py::make_tuple(e.value, e.uncertainty);
      },
      py::arg("q"), py::arg("eps") = 1e-9, "Huffman estimate of the optimal pair length; (value, uncertainty).");

  m.def(
      "adaptive_select",
      [](double mean) { return adaptive_select(mean).to_string(); }, py::arg("mean"));

  m.def(
      "crossover",
      [](const std::string& a, const std::string& b, double lo, double hi, double tol) {
        auto fa = family_of(a), fb = family_of(b);
        return crossover([&](double q) { return family_avg_len(fa, q); },
                         [&](double q) { return family_avg_len(fb, q); }, lo, hi, tol);
      },
      py::arg("a") = "limit", py::arg("b") = "ck:1", py::arg("lo") = 0.25, py::arg("hi") = 0.45,
      py::arg("tol") = 1e-9);
}
