#include "swb/store.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iterator>
#include <sstream>
#include <mutex>

#include <json.hpp>

#include "swb/error.hpp"

namespace swb {

using nlohmann::json;

namespace {

constexpr const char* kJournal = "journal.jsonl";
constexpr const char* kSnapshot = "snapshot.json";

std::string utc_now() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

WorkbenchStore::WorkbenchStore(Options options) : options_(std::move(options)) {
  if (!options_.clock) options_.clock = utc_now;
  if (options_.dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(options_.dir, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create store directory " + options_.dir.string() + ": " + ec.message());

  std::size_t covered = 0;
  auto snapshot_path = options_.dir / kSnapshot;
  if (std::filesystem::exists(snapshot_path)) {
    std::ifstream in(snapshot_path);
    json snap;
    try {
      in >> snap;
    } catch (const json::exception& e) {
      throw Error(ErrorCode::io, "corrupt snapshot " + snapshot_path.string() + ": " + e.what());
    }
    for (const auto& record : snap.at("records")) replay_record(record.dump());
    covered = snap.at("seq").get<std::size_t>();
  }
  auto journal_path = options_.dir / kJournal;
  std::string raw;
  {
    std::ifstream journal(journal_path, std::ios::binary);
    raw.assign(std::istreambuf_iterator<char>(journal), std::istreambuf_iterator<char>());
  }
  std::vector<std::string> lines;
  {
    std::istringstream in(raw);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty()) lines.push_back(line);
    }
  }
  bool rewrite = !raw.empty() && raw.back() != '\n';
  for (std::size_t i = 0; i < lines.size(); ++i) {
    json record;
    try {
      record = json::parse(lines[i]);
    } catch (const json::exception&) {
      if (i + 1 < lines.size()) throw Error(ErrorCode::io, "corrupt journal record " + std::to_string(i + 1));
      lines.pop_back();  // torn tail from an interrupted append
      rewrite = true;
      break;
    }
    if (record.at("seq").get<std::size_t>() <= covered) continue;
    replay_record(lines[i]);
  }
  if (rewrite) {
    // Later appends must start on a fresh line.
    auto tmp = options_.dir / (std::string(kJournal) + ".tmp");
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      for (const auto& l : lines) out << l << '\n';
      if (!out) throw Error(ErrorCode::io, "cannot rewrite journal in " + options_.dir.string());
    }
    std::filesystem::rename(tmp, journal_path);
  }
}

void WorkbenchStore::replay_record(const std::string& line) {
  auto record = json::parse(line);
  const auto kind = record.at("kind").get<std::string>();
  if (kind == "sign") {
    SignRecord r;
    r.id = record.at("id").get<std::string>();
    r.xml = record.at("xml").get<std::string>();
    r.author = record.at("author").get<std::string>();
    r.actor = {parse_role(record.at("role").get<std::string>()), record.at("session").get<std::string>()};
    r.created_at = record.at("created_at").get<std::string>();
    from_xml(r.xml);  // must still parse
    next_sign_ = std::max(next_sign_, std::stoul(r.id.substr(2)) + 1);
    signs_.push_back(std::move(r));
  } else if (kind == "user-glyph") {
    auto id = parse_user_glyph_id(record.at("id").get<std::string>());
    auto geometry = parse_path(record.at("geometry").get<std::string>());
    UserGlyphSubmission s;
    s.geometry = geometry;
    for (const auto& t : record.at("tags")) s.function_tags.insert(t.get<std::string>());
    s.author = record.at("author").get<std::string>();
    s.session = record.at("session").get<std::string>();
    s.created_at = record.at("created_at").get<std::string>();
    s.width = record.at("w").get<int>();
    s.height = record.at("h").get<int>();
    auto entry = make_user_entry(id, std::move(s));
    entry.geometry = std::move(geometry);  // stored already normalized
    user_glyphs_.restore(std::move(entry));
  } else {
    throw Error(ErrorCode::io, "unknown journal record kind '" + kind + "'");
  }
  records_.push_back(line);
}

void WorkbenchStore::append(const std::string& json_line) {
  records_.push_back(json_line);
  if (options_.dir.empty()) return;
  std::ofstream out(options_.dir / kJournal, std::ios::app);
  out << json_line << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::io, "cannot append to journal in " + options_.dir.string());
  maybe_snapshot_locked();
}

void WorkbenchStore::maybe_snapshot_locked() {
  if (options_.snapshot_every == 0) return;
  if (++since_snapshot_ >= options_.snapshot_every) write_snapshot_locked();
}

void WorkbenchStore::write_snapshot_locked() {
  if (options_.dir.empty()) return;
  json snap;
  snap["seq"] = records_.size();
  snap["records"] = json::array();
  for (const auto& r : records_) snap["records"].push_back(json::parse(r));
  auto tmp = options_.dir / (std::string(kSnapshot) + ".tmp");
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << snap.dump() << '\n';
    if (!out) throw Error(ErrorCode::io, "cannot write snapshot in " + options_.dir.string());
  }
  std::filesystem::rename(tmp, options_.dir / kSnapshot);
  // Everything journaled so far is in the snapshot.
  std::ofstream(options_.dir / kJournal, std::ios::trunc);
  since_snapshot_ = 0;
}

void WorkbenchStore::snapshot() {
  std::unique_lock lock(mutex_);
  write_snapshot_locked();
}

std::size_t WorkbenchStore::sequence() const {
  std::shared_lock lock(mutex_);
  return records_.size();
}

std::string WorkbenchStore::save_sign(const SignDocument& doc, const Registry& registry, const Actor& actor,
                                      const std::string& author) {
  auto diagnostics = validate(doc, catalog(registry), actor);
  if (!diagnostics.empty()) throw Error(ErrorCode::validation, "sign rejected", std::move(diagnostics));
  auto xml = to_xml(doc);
  auto created = options_.clock();

  std::unique_lock lock(mutex_);
  SignRecord r{"S-" + std::to_string(next_sign_), std::move(xml), author, actor, created};
  json record{{"seq", records_.size() + 1}, {"kind", "sign"},      {"id", r.id},
              {"xml", r.xml},               {"author", r.author}, {"role", std::string(to_string(actor.role))},
              {"session", actor.session},   {"created_at", r.created_at}};
  append(record.dump());
  ++next_sign_;
  signs_.push_back(r);
  return r.id;
}

SignRecord WorkbenchStore::get_sign_record(const std::string& id) const {
  std::shared_lock lock(mutex_);
  for (const auto& r : signs_) {
    if (r.id == id) return r;
  }
  throw Error(ErrorCode::not_found, "no sign " + id);
}

SignDocument WorkbenchStore::get_sign(const std::string& id) const { return from_xml(get_sign_record(id).xml); }

std::vector<SignRecord> WorkbenchStore::sign_records() const {
  std::shared_lock lock(mutex_);
  return signs_;
}

std::vector<StoredSign> WorkbenchStore::signs() const {
  std::vector<StoredSign> out;
  for (const auto& r : sign_records()) out.push_back({r.id, from_xml(r.xml)});
  return out;
}

UserGlyphReceipt WorkbenchStore::submit_user_glyph(const StrokeSketch& sketch, const std::set<std::string>& tags,
                                                   const std::string& author, const std::string& session,
                                                   const FormIndex& index, const RuleSet& rules) {
  // Evaluated before taking the write lock.
  UserGlyphSubmission submission{geometry_from_sketch(sketch), tags, author, session, options_.clock()};
  auto candidate = make_user_entry(UserGlyphId{1}, submission);
  auto verdict = evaluate(candidate, PlacementContext{}, index, rules);

  std::unique_lock lock(mutex_);
  auto id = user_glyphs_.register_glyph(submission);
  auto stored = *user_glyphs_.find(id);
  json record{{"seq", records_.size() + 1},
              {"kind", "user-glyph"},
              {"id", to_string(id)},
              {"geometry", format_path(stored.geometry)},
              {"tags", json(std::vector<std::string>(tags.begin(), tags.end()))},
              {"author", author},
              {"session", session},
              {"created_at", submission.created_at},
              {"w", stored.width},
              {"h", stored.height}};
  append(record.dump());
  return {id, std::move(verdict)};
}

std::vector<GlyphEntry> WorkbenchStore::list_user_glyphs(const Actor& actor) const {
  std::vector<GlyphEntry> out;
  for (auto& e : user_glyphs_.all()) {
    if (actor.role == Role::researcher || may_place(actor, e)) out.push_back(std::move(e));
  }
  return out;
}

GlyphEntry WorkbenchStore::palette_user_glyph(const Actor& actor, const UserGlyphId& id) const {
  auto e = user_glyphs_.find(id);
  if (!e) throw Error(ErrorCode::not_found, "no user glyph " + to_string(id));
  if (!may_place(actor, *e)) {
    throw Error(ErrorCode::policy, "user glyph " + to_string(id) + " belongs to another sign context",
                {{"policy-violation", "users cannot reuse user glyphs from other signs", to_string(id)}});
  }
  return *e;
}

std::vector<Diagnostic> WorkbenchStore::revalidate(const Registry& registry) const {
  std::vector<Diagnostic> out;
  for (const auto& r : sign_records()) {
    for (auto d : validate(from_xml(r.xml), catalog(registry), r.actor)) {
      d.message = r.id + ": " + d.message;
      out.push_back(std::move(d));
    }
  }
  return out;
}

}  // namespace swb
