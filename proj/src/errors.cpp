#include "credalkit/errors.hpp"

namespace credalkit {

const char* errc_name(errc c) {
  switch (c) {
    case errc::empty_input: return "EmptyInput";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::context_mismatch: return "ContextMismatch";
    case errc::empty_set: return "EmptySet";
    case errc::invalid_bounds: return "InvalidBounds";
    case errc::total_conflict: return "TotalConflict";
    case errc::frame_too_large: return "FrameTooLarge";
    case errc::invalid_input: return "InvalidInput";
    case errc::numeric_failure: return "NumericFailure";
    case errc::parse_error: return "ParseError";
    case errc::unknown_reference: return "UnknownReference";
    case errc::vector_length_mismatch: return "VectorLengthMismatch";
    case errc::bound_violated: return "BoundViolated";
  }
  return "UnknownError";
}

}  // namespace credalkit
