#include "tdgd/errors.hpp"

namespace tdgd {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::stream_exhausted: return "StreamExhausted";
    case Errc::rank_out_of_range: return "RankOutOfRange";
    case Errc::c_out_of_range: return "COutOfRange";
    case Errc::not_four_uniform: return "NotFourUniform";
    case Errc::q_out_of_range: return "QOutOfRange";
    case Errc::no_convergence: return "NoConvergence";
    case Errc::no_sign_change: return "NoSignChange";
    case Errc::empty_source: return "EmptySource";
    case Errc::source_too_large: return "SourceTooLarge";
    case Errc::malformed_run: return "MalformedRun";
    case Errc::odd_symbol_count: return "OddSymbolCount";
    case Errc::parse_error: return "ParseError";
    case Errc::invalid_family_param: return "InvalidFamilyParam";
    case Errc::bad_magic: return "BadMagic";
    case Errc::trailing_garbage: return "TrailingGarbage";
  }
  return "Unknown";
}

}  // namespace tdgd
