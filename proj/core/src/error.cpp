#include "framelab/error.hpp"

namespace framelab {

const char* errc_name(errc c) noexcept {
  switch (c) {
    case errc::invalid_window: return "InvalidWindow";
    case errc::grid_mismatch: return "GridMismatch";
    case errc::out_of_domain: return "OutOfDomain";
    case errc::not_painless: return "NotPainless";
    case errc::incommensurate_lattice: return "IncommensurateLattice";
    case errc::zero_signal: return "ZeroSignal";
    case errc::not_hardy: return "NotHardy";
    case errc::degenerate_v: return "DegenerateV";
    case errc::lambda_too_large: return "LambdaTooLarge";
    case errc::index_mismatch: return "IndexMismatch";
    case errc::parse_error: return "ParseError";
    case errc::validation_error: return "ValidationError";
  }
  return "Error";
}

}  // namespace framelab
