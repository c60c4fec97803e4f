#include "swb/error.hpp"

namespace swb {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse: return "parse";
    case ErrorCode::duplicate_id: return "duplicate_id";
    case ErrorCode::dangling_taxonomy: return "dangling_taxonomy";
    case ErrorCode::motion_mismatch: return "motion_mismatch";
    case ErrorCode::not_found: return "not_found";
    case ErrorCode::missing_variant: return "missing_variant";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::out_of_bounds: return "out_of_bounds";
    case ErrorCode::dangling_ref: return "dangling_ref";
    case ErrorCode::schema: return "schema";
    case ErrorCode::render: return "render";
    case ErrorCode::empty_ink: return "empty_ink";
    case ErrorCode::empty_index: return "empty_index";
    case ErrorCode::policy: return "policy";
    case ErrorCode::validation: return "validation";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

}  // namespace swb
