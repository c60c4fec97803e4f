#include "swb/json_io.hpp"

#include <cmath>

namespace swb {

using nlohmann::json;

json glyph_to_json(const GlyphEntry& e) {
  json out{{"id", to_string(e.id)},
           {"name", e.name},
           {"status", std::string(to_string(e.status))},
           {"taxonomy", e.taxonomy},
           {"tags", e.feature_tags},
           {"geometry", format_path(e.geometry)},
           {"width", e.width},
           {"height", e.height}};
  out["motion"] = e.motion ? json(to_string(*e.motion)) : json(nullptr);
  if (e.provenance) {
    json p{{"author", e.provenance->author}, {"created_at", e.provenance->created_at}, {"session", e.provenance->session}};
    if (e.provenance->template_id) p["template"] = to_string(*e.provenance->template_id);
    out["provenance"] = p;
  }
  return out;
}

json diagnostics_to_json(const std::vector<Diagnostic>& diagnostics) {
  json out = json::array();
  for (const auto& d : diagnostics) out.push_back({{"code", d.code}, {"message", d.message}, {"subject", d.subject}});
  return out;
}

namespace {

json check_to_json(const CheckResult& r) {
  json findings = json::array();
  for (const auto& f : r.findings) {
    findings.push_back({{"rule", f.rule_id}, {"message", f.message}, {"measured", f.measured}, {"threshold", f.threshold}});
  }
  return {{"status", std::string(to_string(r.status))}, {"findings", findings}};
}

}  // namespace

json verdict_to_json(const Verdict& v) {
  json out{{"overall", std::string(to_string(v.overall()))},
           {"coherence", check_to_json(v.coherence)},
           {"utility", check_to_json(v.utility)},
           {"legibility", check_to_json(v.legibility)}};
  out["suggestion"] = v.suggestion ? json{{"id", to_string(v.suggestion->id)}, {"distance", v.suggestion->distance}}
                                   : json(nullptr);
  return out;
}

json closure_report_to_json(const ClosureReport& report) {
  std::map<MotionCell, const GlyphEntry*> synthesized;
  for (const auto& e : report.synthesis.entries) synthesized[*e.motion] = &e;
  json added = json::array();
  for (const auto& cell : report.added) {
    json item{{"shape", cell.shape_class}, {"plane", std::string(to_string(cell.plane))}, {"repetition", cell.repetition}};
    if (auto it = synthesized.find(cell); it != synthesized.end()) {
      item["id"] = to_string(it->second->id);
      item["template"] = to_string(*it->second->provenance->template_id);
    }
    added.push_back(item);
  }
  json failures = json::array();
  for (const auto& f : report.synthesis.failures) failures.push_back({{"cell", to_string(f.cell)}, {"reason", f.reason}});
  return {{"existing", report.existing.size()},
          {"added_count", report.added.size()},
          {"total", report.total_after()},
          {"added", added},
          {"failures", failures},
          {"grid", format_grid(report)}};
}

StrokeSketch sketch_from_json(const json& value) {
  if (!value.is_object() || !value.contains("strokes") || !value.at("strokes").is_array()) {
    throw Error(ErrorCode::invalid_argument, "sketch must be an object with a strokes array");
  }
  StrokeSketch sketch;
  for (const auto& stroke : value.at("strokes")) {
    Polyline line;
    for (const auto& p : stroke) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
        throw Error(ErrorCode::invalid_argument, "sketch points must be [x, y] numbers");
      }
      line.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    sketch.strokes.push_back(std::move(line));
  }
  if (value.contains("canvas")) {
    const auto& c = value.at("canvas");
    if (!c.is_array() || c.size() != 2) throw Error(ErrorCode::invalid_argument, "canvas must be [w, h]");
    sketch.canvas_w = c[0].get<double>();
    sketch.canvas_h = c[1].get<double>();
  } else {
    for (const auto& stroke : sketch.strokes) {
      for (const auto& p : stroke) {
        sketch.canvas_w = std::max(sketch.canvas_w, std::ceil(p.x) + 1);
        sketch.canvas_h = std::max(sketch.canvas_h, std::ceil(p.y) + 1);
      }
    }
  }
  check_sketch(sketch);
  return sketch;
}

json sketch_to_json(const StrokeSketch& sketch) {
  json strokes = json::array();
  for (const auto& stroke : sketch.strokes) {
    json line = json::array();
    for (const auto& p : stroke) line.push_back({p.x, p.y});
    strokes.push_back(line);
  }
  return {{"strokes", strokes}, {"canvas", {sketch.canvas_w, sketch.canvas_h}}};
}

}  // namespace swb
