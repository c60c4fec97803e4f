#pragma once

// JSON shapes shared by the HTTP service and the CLI.

#include <json.hpp>

#include "swb/acceptability.hpp"
#include "swb/closure.hpp"
#include "swb/error.hpp"
#include "swb/recognition.hpp"

namespace swb {

nlohmann::json glyph_to_json(const GlyphEntry& entry);
nlohmann::json diagnostics_to_json(const std::vector<Diagnostic>& diagnostics);
nlohmann::json verdict_to_json(const Verdict& verdict);
nlohmann::json closure_report_to_json(const ClosureReport& report);

/// {"strokes": [[[x,y], ...], ...], "canvas": [w, h]}. Without "canvas" the
/// canvas is derived as in parse_sketch. Throws Error(invalid_argument).
StrokeSketch sketch_from_json(const nlohmann::json& value);
nlohmann::json sketch_to_json(const StrokeSketch& sketch);

}  // namespace swb
