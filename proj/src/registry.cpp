#include "swb/registry.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "swb/error.hpp"

namespace swb {

// ---------------------------------------------------------------------------
// Plane edits

Geometry PlaneEdit::apply(const Geometry& geometry) const {
  Geometry kept(geometry.begin(), geometry.end() - std::min<std::ptrdiff_t>(drop_last, geometry.size()));
  Geometry out = transform(kept, map);
  out.insert(out.end(), add.begin(), add.end());
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double to_double(std::string_view s) {
  s = trim(s);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw Error(ErrorCode::parse, "bad number '" + std::string(s) + "'");
  return v;
}

int to_int(std::string_view s) {
  s = trim(s);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw Error(ErrorCode::parse, "bad integer '" + std::string(s) + "'");
  return v;
}

}  // namespace

PlaneEdit parse_plane_edit(std::string_view text) {
  PlaneEdit edit;
  text = trim(text);
  if (text == "identity") return edit;
  for (auto op : split(text, ';')) {
    op = trim(op);
    auto open = op.find('(');
    if (open == std::string_view::npos || op.back() != ')') {
      throw Error(ErrorCode::parse, "bad plane edit op '" + std::string(op) + "'");
    }
    auto name = op.substr(0, open);
    auto args = op.substr(open + 1, op.size() - open - 2);
    if (name == "drop") {
      edit.drop_last = to_int(args);
      if (edit.drop_last < 0) throw Error(ErrorCode::parse, "drop count must be >= 0");
    } else if (name == "affine") {
      auto v = split(args, ',');
      if (v.size() != 6) throw Error(ErrorCode::parse, "affine needs 6 coefficients");
      edit.map = {to_double(v[0]), to_double(v[1]), to_double(v[2]), to_double(v[3]), to_double(v[4]), to_double(v[5])};
    } else if (name == "add") {
      auto extra = parse_path(args);
      edit.add.insert(edit.add.end(), extra.begin(), extra.end());
    } else {
      throw Error(ErrorCode::parse, "unknown plane edit op '" + std::string(name) + "'");
    }
  }
  // The map must keep unit-box geometry inside the unit box.
  for (Point corner : {Point{0, 0}, Point{1, 0}, Point{0, 1}, Point{1, 1}}) {
    auto p = edit.map.apply(corner);
    if (p.x < 0 || p.x > 1 || p.y < 0 || p.y > 1) {
      throw Error(ErrorCode::parse, "affine edit maps the unit box outside itself: '" + std::string(text) + "'");
    }
  }
  return edit;
}

std::string to_string(const PlaneEdit& edit) {
  if (edit.is_identity()) return "identity";
  std::vector<std::string> ops;
  if (edit.drop_last != 0) ops.push_back("drop(" + std::to_string(edit.drop_last) + ")");
  if (!(edit.map == Affine{})) {
    const auto& m = edit.map;
    ops.push_back("affine(" + format_number(m.a) + "," + format_number(m.b) + "," + format_number(m.c) + "," +
                  format_number(m.d) + "," + format_number(m.e) + "," + format_number(m.f) + ")");
  }
  if (!edit.add.empty()) ops.push_back("add(" + format_path(edit.add) + ")");
  std::string out;
  for (const auto& op : ops) out += (out.empty() ? "" : ";") + op;
  return out;
}

// ---------------------------------------------------------------------------
// Registry

Registry Registry::build(std::string version, std::vector<GlyphEntry> entries, PlaneSubstitutionTable substitutions,
                         std::vector<std::string> shape_classes) {
  Registry r;
  r.version_ = std::move(version);
  r.substitutions_ = std::move(substitutions);
  r.shapes_declared_ = !shape_classes.empty();
  std::set<std::string> shapes(shape_classes.begin(), shape_classes.end());

  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    const auto* sid = e.symbol_id();
    if (sid == nullptr) {
      throw Error(ErrorCode::invalid_argument, "registry entries need catalog ids, got " + to_string(e.id));
    }
    if (!r.by_id_.emplace(*sid, i).second) {
      throw Error(ErrorCode::duplicate_id, "duplicate id " + to_string(*sid), {{"duplicate-id", "", to_string(*sid)}});
    }
    for (const auto& label : e.taxonomy) {
      if (label.empty() || label == "-") {
        throw Error(ErrorCode::dangling_taxonomy, "glyph " + to_string(*sid) + " has an incomplete taxonomy path",
                    {{"dangling-taxonomy", "", to_string(*sid)}});
      }
    }
    if (e.has_tag(tags::motion) != e.motion.has_value()) {
      throw Error(ErrorCode::motion_mismatch,
                  "glyph " + to_string(*sid) + (e.motion ? " has a motion cell but no motion tag"
                                                         : " is tagged motion but has no motion cell"),
                  {{"motion-mismatch", "", to_string(*sid)}});
    }
    if (e.geometry.empty()) {
      throw Error(ErrorCode::invalid_argument, "glyph " + to_string(*sid) + " has no geometry");
    }
    if (e.width <= 0 || e.height <= 0) {
      throw Error(ErrorCode::invalid_argument, "glyph " + to_string(*sid) + " has a non-positive size");
    }
    if (e.motion) {
      if (r.shapes_declared_ && !shapes.contains(e.motion->shape_class)) {
        throw Error(ErrorCode::invalid_argument,
                    "glyph " + to_string(*sid) + " uses undeclared shape class '" + e.motion->shape_class + "'");
      }
      shapes.insert(e.motion->shape_class);
    }
  }
  r.entries_ = std::move(entries);
  r.shape_classes_.assign(shapes.begin(), shapes.end());

  for (std::size_t i = 0; i < r.entries_.size(); ++i) {
    const auto& t = r.entries_[i].taxonomy;
    r.taxonomy_[t[0]][t[1]].push_back(i);
  }
  for (auto& [category, groups] : r.taxonomy_) {
    for (auto& [group, members] : groups) {
      std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
        const auto& ea = r.entries_[a];
        const auto& eb = r.entries_[b];
        if (ea.taxonomy[2] != eb.taxonomy[2]) return ea.taxonomy[2] < eb.taxonomy[2];
        return ea.id < eb.id;
      });
    }
  }
  return r;
}

Registry Registry::extended(std::vector<GlyphEntry> extra) const {
  std::vector<GlyphEntry> all = entries_;
  all.insert(all.end(), std::make_move_iterator(extra.begin()), std::make_move_iterator(extra.end()));
  return build(version_, std::move(all), substitutions_, shapes_declared_ ? shape_classes_ : std::vector<std::string>{});
}

const GlyphEntry* Registry::find(const SymbolId& id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &entries_[it->second];
}

const GlyphEntry& Registry::at(const SymbolId& id) const {
  if (const auto* e = find(id)) return *e;
  throw Error(ErrorCode::not_found, "unknown glyph " + to_string(id));
}

TaxonomyChildren Registry::taxonomy_children(std::span<const std::string> prefix) const {
  auto unknown = [&] {
    std::string path;
    for (const auto& p : prefix) path += "/" + p;
    return Error(ErrorCode::not_found, "unknown taxonomy prefix " + (path.empty() ? "/" : path));
  };
  switch (prefix.size()) {
    case 0: {
      std::vector<std::string> labels;
      for (const auto& [category, _] : taxonomy_) labels.push_back(category);
      return labels;
    }
    case 1: {
      auto it = taxonomy_.find(prefix[0]);
      if (it == taxonomy_.end()) throw unknown();
      std::vector<std::string> labels;
      for (const auto& [group, _] : it->second) labels.push_back(group);
      return labels;
    }
    case 2: {
      auto it = taxonomy_.find(prefix[0]);
      if (it == taxonomy_.end()) throw unknown();
      auto git = it->second.find(prefix[1]);
      if (git == it->second.end()) throw unknown();
      std::vector<const GlyphEntry*> members;
      for (auto i : git->second) members.push_back(&entries_[i]);
      return members;
    }
    default:
      throw Error(ErrorCode::invalid_argument, "taxonomy prefix may have at most 2 levels");
  }
}

// ---------------------------------------------------------------------------
// Manifest

namespace {

GlyphEntry parse_entry(const std::vector<std::string_view>& cols) {
  GlyphEntry e;
  e.id = parse_symbol_id(trim(cols[0]));
  e.name = std::string(trim(cols[1]));
  e.status = parse_status(trim(cols[2]));
  for (int i = 0; i < 3; ++i) e.taxonomy[i] = std::string(trim(cols[3 + i]));
  auto tag_col = trim(cols[6]);
  if (tag_col != "-" && !tag_col.empty()) {
    for (auto t : split(tag_col, ',')) {
      t = trim(t);
      if (!t.empty()) e.feature_tags.emplace(t);
    }
  }
  auto motion_col = trim(cols[7]);
  if (motion_col != "-") e.motion = parse_motion_cell(motion_col);
  e.geometry = parse_path(cols[8]);
  if (cols.size() > 9) {
    auto size = trim(cols[9]);
    auto x = size.find('x');
    if (x == std::string_view::npos) throw Error(ErrorCode::parse, "size must be WxH, got '" + std::string(size) + "'");
    e.width = to_int(size.substr(0, x));
    e.height = to_int(size.substr(x + 1));
  }
  return e;
}

}  // namespace

Registry load_manifest(std::istream& in, const std::string& source_name) {
  std::string version;
  std::vector<std::string> shapes;
  PlaneSubstitutionTable substitutions;
  std::vector<GlyphEntry> entries;
  std::string line;
  int line_no = 0;
  try {
    while (std::getline(in, line)) {
      ++line_no;
      std::string_view view = line;
      if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
      if (trim(view).empty() || view.front() == '#') continue;
      auto cols = split(view, '\t');
      if (view.front() == '@') {
        auto directive = trim(cols[0]);
        if (directive == "@version" && cols.size() == 2) {
          version = std::string(trim(cols[1]));
        } else if (directive == "@shapes" && cols.size() == 2) {
          for (auto s : split(cols[1], ',')) {
            if (!trim(s).empty()) shapes.emplace_back(trim(s));
          }
        } else if (directive == "@subst" && cols.size() == 4) {
          substitutions.set(parse_plane(trim(cols[1])), parse_plane(trim(cols[2])), parse_plane_edit(cols[3]));
        } else {
          throw Error(ErrorCode::parse, "unknown or malformed directive '" + std::string(directive) + "'");
        }
        continue;
      }
      if (cols.size() != 9 && cols.size() != 10) {
        throw Error(ErrorCode::parse, "expected 9 or 10 tab-separated columns, got " + std::to_string(cols.size()));
      }
      entries.push_back(parse_entry(cols));
    }
  } catch (const Error& e) {
    throw Error(e.code(), source_name + ":" + std::to_string(line_no) + ": " + e.what(), e.diagnostics());
  }
  return Registry::build(std::move(version), std::move(entries), std::move(substitutions), std::move(shapes));
}

Registry load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot read manifest " + path.string());
  return load_manifest(in, path.string());
}

Registry load_manifest_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_manifest(in);
}

void write_manifest(std::ostream& out, const Registry& registry) {
  if (!registry.version().empty()) out << "@version\t" << registry.version() << '\n';
  if (!registry.shape_classes().empty()) {
    out << "@shapes\t";
    for (std::size_t i = 0; i < registry.shape_classes().size(); ++i) {
      out << (i ? "," : "") << registry.shape_classes()[i];
    }
    out << '\n';
  }
  for (auto from : kAllPlanes) {
    for (auto to : kAllPlanes) {
      const auto& edit = registry.substitutions().edit(from, to);
      if (!edit.is_identity()) out << "@subst\t" << to_string(from) << '\t' << to_string(to) << '\t' << to_string(edit) << '\n';
    }
  }
  for (const auto& e : registry.entries()) {
    out << to_string(e.id) << '\t' << e.name << '\t' << to_string(e.status);
    for (const auto& label : e.taxonomy) out << '\t' << label;
    out << '\t';
    if (e.feature_tags.empty()) out << '-';
    bool first = true;
    for (const auto& t : e.feature_tags) {
      out << (first ? "" : ",") << t;
      first = false;
    }
    out << '\t' << (e.motion ? to_string(*e.motion) : "-") << '\t' << format_path(e.geometry) << '\t' << e.width << 'x'
        << e.height << '\n';
  }
}

StatusCounts count_by_status(const Registry& registry) {
  StatusCounts counts;
  for (auto s : kAllStatuses) counts[s] = 0;
  for (const auto& e : registry.entries()) ++counts[e.status];
  return counts;
}

SymbolId transform_variant(const Registry& registry, const SymbolId& id, int delta_rotation, bool toggle_mirror,
                           std::optional<int> new_fill) {
  if (registry.find(id) == nullptr) throw Error(ErrorCode::not_found, "unknown glyph " + to_string(id));
  SymbolId out = id;
  out.rotation = SymbolId::encode_rotation(id.rotation_step() + delta_rotation, id.mirrored() != toggle_mirror);
  if (new_fill) {
    if (*new_fill < 1 || *new_fill > 6) throw Error(ErrorCode::invalid_argument, "fill out of range 1..6");
    out.fill = *new_fill;
  }
  if (registry.find(out) == nullptr) {
    throw Error(ErrorCode::missing_variant, "variant " + to_string(out) + " of " + to_string(id) + " is not in the registry",
                {{"missing-variant", "", to_string(out)}});
  }
  return out;
}

}  // namespace swb
