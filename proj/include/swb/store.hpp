#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "swb/acceptability.hpp"
#include "swb/policy.hpp"
#include "swb/recognition.hpp"
#include "swb/registry.hpp"
#include "swb/sign_document.hpp"
#include "swb/user_glyphs.hpp"

namespace swb {

struct SignRecord {
  std::string id;  // S-<n>
  std::string xml;  // canonical
  std::string author;
  Actor actor;     // role and session it was saved under
  std::string created_at;
};

struct UserGlyphReceipt {
  UserGlyphId id;
  Verdict verdict;
};

/// Sign and user-glyph persistence: an append-only JSON-lines journal plus a
/// periodic snapshot in `dir`, or memory only when `dir` is empty. Many
/// readers, one writer.
class WorkbenchStore {
 public:
  struct Options {
    std::filesystem::path dir;
    std::size_t snapshot_every = 64;           // records between snapshots; 0 disables
    std::function<std::string()> clock{};       // defaults to UTC ISO-8601 now
  };

  /// Replays snapshot then journal. A torn final journal line is dropped.
  explicit WorkbenchStore(Options options);
  WorkbenchStore() : WorkbenchStore(Options{}) {}

  /// Throws Error(validation) with the diagnostics when `doc` does not
  /// validate for `actor`.
  std::string save_sign(const SignDocument& doc, const Registry& registry, const Actor& actor, const std::string& author);
  /// Throws Error(not_found).
  SignDocument get_sign(const std::string& id) const;
  SignRecord get_sign_record(const std::string& id) const;
  std::vector<SignRecord> sign_records() const;
  std::vector<StoredSign> signs() const;

  /// Stores the glyph whatever the verdict. Throws Error(invalid_argument)
  /// for malformed sketches or missing tags.
  UserGlyphReceipt submit_user_glyph(const StrokeSketch& sketch, const std::set<std::string>& tags,
                                     const std::string& author, const std::string& session, const FormIndex& index,
                                     const RuleSet& rules = RuleSet::defaults());

  /// Researchers see every user glyph; users only those of their own session.
  std::vector<GlyphEntry> list_user_glyphs(const Actor& actor) const;
  /// A user glyph for palette insertion. Throws Error(policy) for a user
  /// asking for a glyph drawn in another session, Error(not_found) if absent.
  GlyphEntry palette_user_glyph(const Actor& actor, const UserGlyphId& id) const;

  const UserGlyphStore& user_glyphs() const { return user_glyphs_; }
  GlyphCatalog catalog(const Registry& registry) const { return {&registry, &user_glyphs_}; }

  /// Re-runs validation of every stored sign under the actor that saved it.
  std::vector<Diagnostic> revalidate(const Registry& registry) const;

  /// Writes the snapshot now (no-op in memory mode).
  void snapshot();

  std::size_t sequence() const;

 private:
  void append(const std::string& json_line);
  void replay_record(const std::string& line);
  void maybe_snapshot_locked();
  void write_snapshot_locked();

  Options options_;
  mutable std::shared_mutex mutex_;
  std::vector<SignRecord> signs_;
  std::vector<std::string> records_;  // every journal line, in order
  UserGlyphStore user_glyphs_;
  std::size_t next_sign_ = 1;
  std::size_t since_snapshot_ = 0;
};

}  // namespace swb
