#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <mutex>
#include <optional>
#include <sstream>

#include "swb/acceptability.hpp"
#include "swb/cli.hpp"
#include "swb/closure.hpp"
#include "swb/error.hpp"
#include "swb/json_io.hpp"
#include "swb/policy.hpp"
#include "swb/recognition.hpp"
#include "swb/registry.hpp"
#include "swb/sign_document.hpp"
#include "swb/user_glyphs.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

py::object to_py(const json& value) {
  switch (value.type()) {
    case json::value_t::null:
      return py::none();
    case json::value_t::boolean:
      return py::bool_(value.get<bool>());
    case json::value_t::number_integer:
      return py::int_(value.get<std::int64_t>());
    case json::value_t::number_unsigned:
      return py::int_(value.get<std::uint64_t>());
    case json::value_t::number_float:
      return py::float_(value.get<double>());
    case json::value_t::string:
      return py::str(value.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const auto& v : value) out.append(to_py(v));
      return out;
    }
    case json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : value.items()) out[py::str(k)] = to_py(v);
      return out;
    }
    default:
      throw swb::Error(swb::ErrorCode::invalid_argument, "unsupported json value");
  }
}

// Accepts sketch text, a list of strokes, or {"strokes": ..., "canvas": ...}.
swb::StrokeSketch sketch_from_py(const py::object& obj) {
  if (py::isinstance<py::str>(obj)) return swb::parse_sketch(obj.cast<std::string>());
  auto dumps = py::module_::import("json").attr("dumps");
  auto value = json::parse(dumps(obj).cast<std::string>());
  if (value.is_array()) value = json{{"strokes", value}};
  return swb::sketch_from_json(value);
}

class PyRegistry {
 public:
  explicit PyRegistry(swb::Registry registry) : registry_(std::move(registry)) {}

  const swb::Registry& registry() const { return registry_; }

  const swb::FormIndex& index(bool catalog_only) {
    std::lock_guard lock(mutex_);
    if (!index_) index_ = swb::FormIndex::build(registry_);
    if (!catalog_index_) catalog_index_ = index_->catalog_only();
    return catalog_only ? *catalog_index_ : *index_;
  }

 private:
  swb::Registry registry_;
  std::mutex mutex_;
  std::optional<swb::FormIndex> index_;
  std::optional<swb::FormIndex> catalog_index_;
};

swb::GlyphCatalog catalog_of(const PyRegistry& r) { return {&r.registry(), nullptr}; }

py::object children(const PyRegistry& r, const std::vector<std::string>& prefix) {
  auto result = r.registry().taxonomy_children(prefix);
  if (auto* labels = std::get_if<std::vector<std::string>>(&result)) return py::cast(*labels);
  py::list out;
  for (const auto* entry : std::get<std::vector<const swb::GlyphEntry*>>(result)) {
    out.append(to_py(swb::glyph_to_json(*entry)));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "SignWriting composition workbench core";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result([&]() { return py::object(py::exception<swb::Error>(m, "SwbError")); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const swb::Error& e) {
      const py::object& type = error_type.get_stored();
      py::object exc = type(e.what());
      exc.attr("code") = std::string(swb::to_string(e.code()));
      exc.attr("diagnostics") = to_py(swb::diagnostics_to_json(e.diagnostics()));
      PyErr_SetObject(type.ptr(), exc.ptr());
    }
  });

  py::class_<PyRegistry, std::shared_ptr<PyRegistry>>(m, "Registry")
      .def_static("load", [](const std::string& path) { return std::make_shared<PyRegistry>(swb::load_manifest(std::filesystem::path(path))); },
                  py::arg("path"))
      .def_static("from_text", [](const std::string& text) { return std::make_shared<PyRegistry>(swb::load_manifest_text(text)); },
                  py::arg("text"))
      .def_property_readonly("version", [](const PyRegistry& r) { return r.registry().version(); })
      .def("__len__", [](const PyRegistry& r) { return r.registry().size(); })
      .def("__contains__",
           [](const PyRegistry& r, const std::string& id) {
             try {
               return r.registry().find(swb::parse_symbol_id(id)) != nullptr;
             } catch (const swb::Error&) {
               return false;
             }
           })
      .def("ids",
           [](const PyRegistry& r) {
             std::vector<std::string> out;
             for (const auto& e : r.registry().entries()) out.push_back(swb::to_string(e.id));
             return out;
           })
      .def("glyph", [](const PyRegistry& r, const std::string& id) {
        return to_py(swb::glyph_to_json(r.registry().at(swb::parse_symbol_id(id))));
      })
      .def("counts",
           [](const PyRegistry& r) {
             py::dict out;
             for (const auto& [status, n] : swb::count_by_status(r.registry())) out[py::str(std::string(swb::to_string(status)))] = n;
             return out;
           })
      .def("children", &children, py::arg("prefix") = std::vector<std::string>{})
      .def(
          "variant",
          [](const PyRegistry& r, const std::string& id, int rotate, bool mirror, std::optional<int> fill) {
            return swb::to_string(swb::transform_variant(r.registry(), swb::parse_symbol_id(id), rotate, mirror, fill));
          },
          py::arg("id"), py::arg("rotate") = 0, py::arg("mirror") = false, py::arg("fill") = py::none())
      .def("closure_report", [](const PyRegistry& r) { return to_py(swb::closure_report_to_json(swb::closure_report(r.registry()))); })
      .def("manifest", [](const PyRegistry& r) {
        std::ostringstream out;
        swb::write_manifest(out, r.registry());
        return out.str();
      });

  m.def(
      "closure",
      [](const std::vector<std::string>& cells) {
        swb::CellSet in;
        for (const auto& c : cells) in.insert(swb::parse_motion_cell(c));
        std::vector<std::string> out;
        for (const auto& c : swb::closure(in)) out.push_back(swb::to_string(c));
        return out;
      },
      py::arg("cells"), "Cells added by plane completion, as shape:plane:repetition strings.");

  m.def(
      "canonicalize", [](const std::string& xml) { return swb::to_xml(swb::from_xml(xml)); }, py::arg("xml"));

  m.def(
      "validate",
      [](const std::string& xml, const PyRegistry& r, const std::string& role, const std::string& session) {
        swb::Actor actor{swb::parse_role(role), session};
        return to_py(swb::diagnostics_to_json(swb::validate(swb::from_xml(xml), catalog_of(r), actor)));
      },
      py::arg("xml"), py::arg("registry"), py::arg("role") = "user", py::arg("session") = "");

  m.def(
      "render_svg",
      [](const std::string& xml, const PyRegistry& r, double scale) {
        return swb::render_svg(swb::from_xml(xml), catalog_of(r), scale);
      },
      py::arg("xml"), py::arg("registry"), py::arg("scale") = 1.0);

  m.def(
      "describe", [](const py::object& sketch) { return swb::describe(sketch_from_py(sketch)).values; }, py::arg("sketch"));

  m.def(
      "match",
      [](PyRegistry& r, const py::object& sketch, std::size_t k, bool catalog_only) {
        auto query = sketch_from_py(sketch);
        std::vector<std::pair<std::string, double>> out;
        for (const auto& hit : swb::match(r.index(catalog_only), query, k)) out.emplace_back(swb::to_string(hit.id), hit.distance);
        return out;
      },
      py::arg("registry"), py::arg("sketch"), py::arg("k") = 5, py::arg("catalog_only") = false);

  m.def(
      "evaluate",
      [](PyRegistry& r, const py::object& sketch, const std::set<std::string>& tags, std::optional<std::string> rules) {
        auto rule_set = rules ? swb::parse_rule_set(*rules) : swb::RuleSet::defaults();
        swb::UserGlyphSubmission submission{swb::geometry_from_sketch(sketch_from_py(sketch)), tags, "python", "", ""};
        auto entry = swb::make_user_entry(swb::UserGlyphId{1}, submission);
        return to_py(swb::verdict_to_json(swb::evaluate(entry, swb::PlacementContext{}, r.index(true), rule_set)));
      },
      py::arg("registry"), py::arg("sketch"), py::arg("tags") = std::set<std::string>{}, py::arg("rules") = py::none());

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = swb::run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the swb command line in-process; returns (exit code, stdout, stderr).");
}
