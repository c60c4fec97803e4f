#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "swb/recognition.hpp"
#include "swb/sign_document.hpp"

namespace swb {

enum class CheckStatus { pass, warn, fail };  // ordered: worst is largest

std::string_view to_string(CheckStatus status);

struct Finding {
  std::string rule_id;
  std::string message;
  double measured = 0;
  double threshold = 0;

  bool operator==(const Finding&) const = default;
};

struct CheckResult {
  CheckStatus status = CheckStatus::pass;
  std::vector<Finding> findings;
};

/// Structural predicate (`horizontal-bar`) or placement predicate
/// (`above-anchor`) required of glyphs carrying `tag`.
struct CoherenceRule {
  std::string id;
  std::string tag;
  std::string predicate;
  std::map<std::string, std::string> params;

  double number(const std::string& key, double fallback) const;
  std::string text(const std::string& key, const std::string& fallback) const;
};

struct RuleSet {
  std::vector<CoherenceRule> coherence;
  double utility_tau = 0.3;      // descriptor distance below which a glyph is redundant
  double min_separation = 2.0;   // render units
  double max_density = 0.5;      // ink / render area
  int render_size = kRasterSide;

  /// Shipped defaults: forearm glyphs carry a full-width horizontal bar;
  /// head-movement glyphs sit directly above a face circle.
  static RuleSet defaults();
};

/// Lines: `rule <id> <tag> <predicate> k=v,...`, `utility tau=...`,
/// `legibility s_min=...,d_max=...,render_size=...` (tab or space separated).
/// Throws Error(parse) on unknown predicates and out-of-range thresholds.
RuleSet parse_rule_set(std::string_view text);

struct PlacedBox {
  int x = 0, y = 0, width = 0, height = 0;
  std::set<std::string> tags;
};

/// Where the glyph under test sits and what is around it. `self` empty means
/// the glyph is not placed yet; placement rules are then not applicable.
struct PlacementContext {
  std::optional<PlacedBox> self;
  std::vector<PlacedBox> neighbors;
};

/// Context for the glyph at `index` of `doc`; unresolvable neighbours are skipped.
PlacementContext context_for(const SignDocument& doc, std::size_t index, const GlyphCatalog& catalog);

CheckResult check_coherence(const GlyphEntry& entry, const PlacementContext& context, const RuleSet& rules = RuleSet::defaults());

struct UtilityResult {
  CheckResult result;
  std::optional<MatchResult> nearest;  // nearest official/extension glyph
};

UtilityResult check_utility(const GlyphEntry& entry, const FormIndex& index, const RuleSet& rules = RuleSet::defaults());

/// Renders the unit box at `rules.render_size` and measures near-miss stroke
/// pairs and ink density.
CheckResult check_legibility(const GlyphEntry& entry, const RuleSet& rules = RuleSet::defaults());

struct Verdict {
  CheckResult coherence;
  CheckResult utility;
  CheckResult legibility;
  std::optional<MatchResult> suggestion;  // set when utility warns

  CheckStatus overall() const;
};

Verdict evaluate(const GlyphEntry& entry, const PlacementContext& context, const FormIndex& index,
                 const RuleSet& rules = RuleSet::defaults());

}  // namespace swb
