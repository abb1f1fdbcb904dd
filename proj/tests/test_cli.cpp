#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "tdgd/cli.hpp"

using namespace tdgd;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string data_file(const std::string& name) {
  std::ifstream f(std::string(TDGD_TEST_DATA_DIR) + "/" + name, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string hex_to_bytes(const std::string& hex) {
  std::istringstream in(hex);
  std::string out, tok;
  while (in >> tok) out.push_back(static_cast<char>(std::stoi(tok, nullptr, 16)));
  return out;
}

std::string normalize(const std::string& text) {
  std::istringstream in(text);
  std::string out, tok;
  while (in >> tok) out += tok + " ";
  return out;
}

}  // namespace

TEST_CASE("golden encodings") {
  struct Case {
    std::string name, family, k;
  };
  for (const auto& c : {Case{"ck1", "ck", "1"}, Case{"ck3", "ck", "3"}, Case{"limit", "limit", "0"},
                        Case{"cminus2", "cminus", "2"}, Case{"golomb3", "golomb", "3"}}) {
    CAPTURE(c.name);
    auto input = data_file(c.name + ".txt");
    auto enc = run({"encode", "--family", c.family, "--k", c.k}, input);
    REQUIRE(enc.code == 0);
    CHECK(enc.out == hex_to_bytes(data_file(c.name + ".hex")));
    auto dec = run({"decode"}, enc.out);
    REQUIRE(dec.code == 0);
    CHECK(normalize(dec.out) == normalize(input));
  }
}

TEST_CASE("encode then decode reproduces the token stream for every family") {
  auto input = data_file("mixed.txt");
  for (std::string fam : {"ck:1", "ck:4", "ck:13", "cminus:2", "cminus:5", "limit:0", "golomb:1", "golomb:6"}) {
    CAPTURE(fam);
    auto colon = fam.find(':');
    auto enc = run({"encode", "--family", fam.substr(0, colon), "--k", fam.substr(colon + 1)}, input);
    REQUIRE(enc.code == 0);
    auto dec = run({"decode"}, enc.out);
    REQUIRE(dec.code == 0);
    CHECK(normalize(dec.out) == normalize(input));
  }
}

TEST_CASE("encode errors") {
  CHECK(run({"encode", "--family", "ck", "--k", "1"}, "1 2 3").code == 2);
  auto bad = run({"encode", "--family", "ck", "--k", "1"}, "1 x2");
  CHECK(bad.code == 2);
  CHECK(bad.err.find("x2") != std::string::npos);
  CHECK(bad.err.find("offset 2") != std::string::npos);
  CHECK(run({"encode", "--family", "cminus", "--k", "1"}, "1 2").code == 1);
  CHECK(run({"encode", "--family", "ck", "--k", "0"}, "1 2").code == 1);
  CHECK(run({"encode", "--family", "nope"}, "1 2").code == 1);
  CHECK(run({"bogus"}).code == 1);
  CHECK(run({}).code == 1);
}

TEST_CASE("decode errors") {
  auto enc = run({"encode", "--family", "limit"}, "0 0").out;
  auto corrupt = enc;
  corrupt[0] = 'X';
  CHECK(run({"decode"}, corrupt).code == 2);
  auto padded = enc;
  padded.back() = static_cast<char>(0x01);
  auto r = run({"decode"}, padded);
  CHECK(r.code == 2);
  CHECK(r.err.find("TrailingGarbage") != std::string::npos);
  auto extra = enc + std::string(1, '\0');
  CHECK(run({"decode"}, extra).code == 2);
  auto truncated = run({"encode", "--family", "ck", "--k", "1"}, "30 30").out;
  truncated.pop_back();
  CHECK(run({"decode"}, truncated).err.find("StreamExhausted") != std::string::npos);
}

TEST_CASE("params") {
  auto r = run({"params", "--k-min", "1", "--k-max", "10"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("void top code") != std::string::npos);
  CHECK(r.out.find("2\t2\t0\t0\t0\t0\t(0,4,0)") != std::string::npos);
  CHECK(r.out.find("3\t3\t0\t0\t1\t1\t(0,7,2)") != std::string::npos);
  CHECK(r.out.find("10\t7\t7\t1\t0\t1\t(29,69,2)") != std::string::npos);
}

TEST_CASE("lengths") {
  auto r = run({"lengths", "--k", "3", "--s-min", "0", "--s-max", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("3\t7\t3\t1\n") != std::string::npos);
  CHECK(run({"lengths", "--k", "2", "--s-min", "2", "--s-max", "2"}).out.find("2\t4\t3\t0\n") != std::string::npos);
  CHECK(run({"lengths", "--k", "1"}).code == 1);
}

TEST_CASE("sweep") {
  auto r = run({"sweep", "--q-min", "0.25", "--q-max", "0.5", "--step", "0.05"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "q,entropy,opt_est,red_golomb_best,red_ck_best,red_cminus_best,red_limit");
  int rows = 0;
  std::string last;
  while (std::getline(in, line)) ++rows, last = line;
  CHECK(rows == 6);
  CHECK(last.rfind("0.500000,2.000000,,", 0) == 0);
  CHECK(last.find(",0.000000,") != std::string::npos);

  auto o = run({"sweep", "--q-min", "0.5", "--q-max", "0.5", "--oracle"});
  CHECK(o.out.find("0.500000,2.000000,0.000000,") != std::string::npos);
}

TEST_CASE("oracle, crossover, select") {
  CHECK(run({"oracle", "--q", "0.5", "--eps", "1e-9"}).out.rfind("4.000000 ± ", 0) == 0);
  CHECK(run({"crossover"}).out == "0.33715\n");
  CHECK(run({"select", "--mean", "1.0"}).out == "ck k=1\n");
  CHECK(run({"oracle", "--q", "0.99"}).code == 2);
}
