#include "swb/closure.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace swb {

MotionLattice lattice_from_registry(const Registry& registry) {
  MotionLattice lattice;
  lattice.shape_classes = registry.shape_classes();
  std::map<MotionCell, const GlyphEntry*> owners;
  for (const auto& e : registry.entries()) {
    if (!e.motion) continue;
    auto [it, inserted] = owners.emplace(*e.motion, &e);
    if (!inserted) {
      lattice.warnings.push_back("glyphs " + to_string(it->second->id) + " and " + to_string(e.id) +
                                 " share motion cell " + to_string(*e.motion));
    }
    lattice.cells.insert(*e.motion);
  }
  return lattice;
}

CellSet closure(const CellSet& cells) {
  std::set<std::pair<std::string, int>> present;
  for (const auto& c : cells) present.emplace(c.shape_class, c.repetition);
  CellSet added;
  for (const auto& [shape, repetition] : present) {
    for (auto plane : kAllPlanes) {
      MotionCell cell{shape, plane, repetition};
      if (!cells.contains(cell)) added.insert(std::move(cell));
    }
  }
  return added;
}

SynthesisResult synthesize_entries(const Registry& registry, const CellSet& added) {
  SynthesisResult result;
  // Template per cell: lowest id among glyphs on that cell.
  std::map<MotionCell, const GlyphEntry*> by_cell;
  for (const auto& e : registry.entries()) {
    if (!e.motion) continue;
    auto& slot = by_cell[*e.motion];
    if (slot == nullptr || e.id < slot->id) slot = &e;
  }
  std::set<SymbolId> taken;
  for (const auto& e : registry.entries()) taken.insert(*e.symbol_id());

  for (const auto& cell : added) {  // CellSet iterates in sorted order
    const GlyphEntry* tmpl = nullptr;
    for (auto plane : kAllPlanes) {
      auto it = by_cell.find(MotionCell{cell.shape_class, plane, cell.repetition});
      if (it != by_cell.end() && plane != cell.plane) {
        tmpl = it->second;
        break;
      }
    }
    if (tmpl == nullptr) {
      result.failures.push_back({cell, "no template glyph for " + cell.shape_class + " repetition " +
                                           std::to_string(cell.repetition)});
      continue;
    }
    const SymbolId& tid = *tmpl->symbol_id();
    std::optional<SymbolId> fresh;
    for (int base = kExtensionBaseStart; base <= 999 && !fresh; ++base) {
      SymbolId candidate{tid.category, tid.group, base, 1, 1, 1};
      if (!taken.contains(candidate)) fresh = candidate;
    }
    if (!fresh) {
      result.failures.push_back({cell, "extension id range exhausted for category " + std::to_string(tid.category) +
                                           " group " + std::to_string(tid.group)});
      continue;
    }
    taken.insert(*fresh);

    GlyphEntry e;
    e.id = *fresh;
    e.name = cell.shape_class + " " + std::string(to_string(cell.plane)) + " x" + std::to_string(cell.repetition);
    e.status = GlyphStatus::extension;
    e.taxonomy = tmpl->taxonomy;
    e.feature_tags = tmpl->feature_tags;
    e.motion = cell;
    e.geometry = registry.substitutions().edit(tmpl->motion->plane, cell.plane).apply(tmpl->geometry);
    if (e.geometry.empty()) e.geometry = tmpl->geometry;
    e.width = tmpl->width;
    e.height = tmpl->height;
    e.provenance = Provenance{"closure", "", "", tid};
    result.entries.push_back(std::move(e));
  }
  return result;
}

ClosureReport closure_report(const Registry& registry) {
  ClosureReport report;
  auto lattice = lattice_from_registry(registry);
  report.existing = lattice.cells;
  report.added = closure(lattice.cells);
  report.shape_classes = lattice.shape_classes;
  report.synthesis = synthesize_entries(registry, report.added);
  return report;
}

std::string format_grid(const ClosureReport& report) {
  std::ostringstream out;
  for (const auto& shape : report.shape_classes) {
    out << shape << "\n";
    out << "            1 2 3\n";
    for (auto plane : kAllPlanes) {
      std::string label(to_string(plane));
      label.resize(12, ' ');
      out << label;
      for (int rep = 1; rep <= 3; ++rep) {
        MotionCell cell{shape, plane, rep};
        char mark = report.existing.contains(cell) ? 'o' : report.added.contains(cell) ? '+' : '.';
        out << mark << (rep < 3 ? " " : "");
      }
      out << "\n";
    }
  }
  out << "existing: " << report.existing.size() << "\n";
  out << "added: " << report.added.size() << "\n";
  out << "total: " << report.total_after() << "\n";
  return out.str();
}

std::string format_records(const ClosureReport& report) {
  std::map<MotionCell, const GlyphEntry*> synthesized;
  for (const auto& e : report.synthesis.entries) synthesized[*e.motion] = &e;
  std::ostringstream out;
  for (const auto& cell : report.added) {
    out << cell.shape_class << '\t' << to_string(cell.plane) << '\t' << cell.repetition << '\t';
    auto it = synthesized.find(cell);
    if (it != synthesized.end()) {
      out << to_string(it->second->id) << '\t' << to_string(*it->second->provenance->template_id);
    } else {
      out << "-\t-";
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace swb
