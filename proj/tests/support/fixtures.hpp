#pragma once

// Shared fixtures and generators for the unit and acceptance suites.

#include <random>
#include <string>
#include <vector>

#include "swb/closure.hpp"
#include "swb/recognition.hpp"
#include "swb/registry.hpp"
#include "swb/sign_document.hpp"

namespace swb::testing {

std::string data_path(const std::string& name);
std::string read_text(const std::string& path);

Registry sample_registry();          // data/sample.tsv, 7 glyphs
Registry motion_fixture_registry();  // data/motion_closure.tsv

/// 15 asymmetric base shapes x 4 quarter turns; ids 04-GG-001-01-01-{01,03,05,07}.
Registry recognition_registry();

/// Base 001 carries all 16 rotations at fills 1 and 2; base 002 only rotations 1,3,5,7.
Registry rotation_family_registry();

/// Motion-only registry built from a cell set (one glyph per cell).
Registry registry_from_cells(const CellSet& cells);

inline constexpr int kLatticeShapes = 13;
std::vector<std::string> lattice_shapes();
CellSet random_lattice(std::mt19937& rng);

/// Structurally valid document with catalog and user glyph references.
SignDocument random_document(std::mt19937& rng);

/// Geometry rendered to a sketch, uniformly scaled by `scale` and each point
/// displaced by up to +-`jitter` units in x and y.
StrokeSketch jittered_render(const Geometry& geometry, double scale, double jitter, std::mt19937& rng);

Geometry rotate_about_center(const Geometry& geometry, double degrees);

}  // namespace swb::testing
