#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tdgd/analysis.hpp"
#include "tdgd/bitio.hpp"
#include "tdgd/ck_codec.hpp"
#include "tdgd/cminus_codec.hpp"

namespace tdgd {

/// 16-byte container header: "TDGD", version, family byte, k (u16 LE),
/// pair count (u64 LE).
struct FileHeader {
  static constexpr std::uint8_t kMagic[4] = {0x54, 0x44, 0x47, 0x44};
  static constexpr std::uint8_t kVersion = 1;
  static constexpr std::size_t kSize = 16;

  CodeFamily family;
  std::uint64_t pair_count = 0;

  std::vector<std::uint8_t> serialize() const;
  static FileHeader parse(std::span<const std::uint8_t> bytes);
};

std::uint8_t family_byte(CodeFamily::Kind kind);

struct GolombPairCodec {
  std::uint64_t k;
};
struct LimitCodec {};

/// One codec per family, behind a common encode/decode surface.
class FamilyCodec {
 public:
  explicit FamilyCodec(const CodeFamily& family);

  void encode(BitWriter& w, SymbolPair p) const;
  SymbolPair decode(BitReader& r) const;

 private:
  std::variant<CkCodec, CminusCodec, LimitCodec, GolombPairCodec> codec_;
};

/// Header plus zero-padded payload; payload_bits receives the unpadded size.
std::vector<std::uint8_t> encode_file(const CodeFamily& family, const std::vector<SymbolPair>& pairs,
                                      std::uint64_t* payload_bits = nullptr);

struct DecodedFile {
  CodeFamily family;
  std::vector<SymbolPair> pairs;
};
DecodedFile decode_file(std::span<const std::uint8_t> bytes);

/// Whitespace-separated non-negative decimals, consumed as pairs.
std::vector<SymbolPair> parse_pairs(const std::string& text);

/// Entry point for the tdgd tool. args excludes the program name.
/// Returns 0 (ok), 1 (usage) or 2 (data error).
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace tdgd
