#pragma once

#include <set>
#include <string>
#include <vector>

#include "swb/registry.hpp"

namespace swb {

using CellSet = std::set<MotionCell>;

struct MotionLattice {
  CellSet cells;
  std::vector<std::string> shape_classes;
  std::vector<std::string> warnings;  // e.g. two glyphs on one cell
};

/// One cell per motion-tagged glyph.
MotionLattice lattice_from_registry(const Registry& registry);

/// Plane completion: every (shape, repetition) present on some plane is added
/// on every plane where it is missing. The repetition axis is not closed.
CellSet closure(const CellSet& cells);
inline CellSet closure(const MotionLattice& lattice) { return closure(lattice.cells); }

struct SynthesisFailure {
  MotionCell cell;
  std::string reason;
};

struct SynthesisResult {
  std::vector<GlyphEntry> entries;
  std::vector<SynthesisFailure> failures;
};

/// First base number of the per-(category, group) range reserved for
/// synthesized extension glyphs.
inline constexpr int kExtensionBaseStart = 900;

/// Builds extension glyphs for `added` from templates on the same
/// (shape, repetition). Ids are allocated in sorted cell order. Cells without a
/// template or without a free id land in `failures`.
SynthesisResult synthesize_entries(const Registry& registry, const CellSet& added);

struct ClosureReport {
  CellSet existing;
  CellSet added;
  std::vector<std::string> shape_classes;
  SynthesisResult synthesis;

  std::size_t total_after() const { return existing.size() + added.size(); }
};

ClosureReport closure_report(const Registry& registry);

/// Text grid per shape: rows are planes, columns repetitions 1..3;
/// `o` existing, `+` added, `.` absent.
std::string format_grid(const ClosureReport& report);
/// One tab-separated line per added cell: shape, plane, repetition, new id, template id.
std::string format_records(const ClosureReport& report);

}  // namespace swb
