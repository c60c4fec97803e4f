#include "swb/acceptability.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "swb/error.hpp"

namespace swb {

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::warn: return "warn";
    case CheckStatus::fail: return "fail";
  }
  return "?";
}

double CoherenceRule::number(const std::string& key, double fallback) const {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  double v = 0;
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::parse, "rule " + id + ": parameter " + key + " is not a number");
  }
  return v;
}

std::string CoherenceRule::text(const std::string& key, const std::string& fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

RuleSet RuleSet::defaults() {
  RuleSet rules;
  rules.coherence.push_back({"forearm-bar", std::string(tags::forearm), "horizontal-bar",
                             {{"min_span", "0.9"}, {"tolerance", "0.05"}}});
  rules.coherence.push_back({"head-above-face", std::string(tags::head_movement), "above-anchor",
                             {{"anchor", std::string(tags::face_circle)}, {"max_gap", "10"}}});
  return rules;
}

namespace {

std::map<std::string, std::string> parse_params(std::string_view text) {
  std::map<std::string, std::string> params;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    auto item = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    if (!item.empty()) {
      auto eq = item.find('=');
      if (eq == std::string_view::npos) throw Error(ErrorCode::parse, "parameter '" + std::string(item) + "' needs k=v");
      params[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return params;
}

double param_number(const std::map<std::string, std::string>& params, const std::string& key, double fallback) {
  CoherenceRule probe{"config", "", "", params};
  return probe.number(key, fallback);
}

}  // namespace

RuleSet parse_rule_set(std::string_view text) {
  RuleSet rules;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream words(line);
    std::vector<std::string> cols;
    std::string w;
    while (words >> w) cols.push_back(w);
    if (cols.empty() || cols[0].starts_with("#")) continue;
    auto where = "rules line " + std::to_string(line_no) + ": ";
    try {
      if (cols[0] == "rule") {
        if (cols.size() < 4 || cols.size() > 5) throw Error(ErrorCode::parse, "expected: rule <id> <tag> <predicate> [params]");
        CoherenceRule rule{cols[1], cols[2], cols[3], cols.size() == 5 ? parse_params(cols[4]) : decltype(rule.params){}};
        std::set<std::string> numeric, allowed;
        if (rule.predicate == "horizontal-bar") {
          numeric = allowed = {"min_span", "tolerance"};
        } else if (rule.predicate == "above-anchor") {
          numeric = {"max_gap"};
          allowed = {"max_gap", "anchor"};
        } else {
          throw Error(ErrorCode::parse, "unknown predicate '" + rule.predicate + "'");
        }
        for (const auto& [key, _] : rule.params) {
          if (!allowed.contains(key)) throw Error(ErrorCode::parse, "unknown parameter '" + key + "' for " + rule.predicate);
          if (numeric.contains(key)) rule.number(key, 0);  // throws when not a number
        }
        rules.coherence.push_back(std::move(rule));
      } else if (cols[0] == "utility" && cols.size() == 2) {
        rules.utility_tau = param_number(parse_params(cols[1]), "tau", rules.utility_tau);
      } else if (cols[0] == "legibility" && cols.size() == 2) {
        auto p = parse_params(cols[1]);
        rules.min_separation = param_number(p, "s_min", rules.min_separation);
        rules.max_density = param_number(p, "d_max", rules.max_density);
        rules.render_size = static_cast<int>(param_number(p, "render_size", rules.render_size));
      } else {
        throw Error(ErrorCode::parse, "unknown line '" + line + "'");
      }
    } catch (const Error& e) {
      throw Error(ErrorCode::parse, where + e.what());
    }
  }
  if (!(rules.utility_tau > 0)) throw Error(ErrorCode::parse, "utility tau must be > 0");
  if (!(rules.min_separation >= 1)) throw Error(ErrorCode::parse, "s_min must be >= 1");
  if (!(rules.max_density > 0 && rules.max_density <= 1)) throw Error(ErrorCode::parse, "d_max must be in (0,1]");
  if (rules.render_size < 8) throw Error(ErrorCode::parse, "render_size must be >= 8");
  return rules;
}

PlacementContext context_for(const SignDocument& doc, std::size_t index, const GlyphCatalog& catalog) {
  PlacementContext ctx;
  for (std::size_t i = 0; i < doc.glyphs.size(); ++i) {
    const auto& g = doc.glyphs[i];
    auto entry = catalog.lookup(g.ref);
    PlacedBox box{g.x, g.y, 0, 0, {}};
    if (entry) {
      box.width = entry->width;
      box.height = entry->height;
      box.tags = entry->feature_tags;
    } else if (g.embedded) {
      box.width = g.embedded->width;
      box.height = g.embedded->height;
    } else {
      continue;
    }
    if (i == index) ctx.self = std::move(box);
    else ctx.neighbors.push_back(std::move(box));
  }
  return ctx;
}

namespace {

void raise(CheckResult& r, CheckStatus s) { r.status = std::max(r.status, s); }

// Longest near-horizontal segment relative to the glyph width.
double horizontal_bar_span(const Geometry& geometry, double tolerance) {
  auto box = bounds(geometry);
  if (!box || box->width() <= 0) return 0;
  double best = 0;
  for (const auto& stroke : geometry) {
    for (std::size_t i = 1; i < stroke.size(); ++i) {
      double dx = std::abs(stroke[i].x - stroke[i - 1].x);
      double dy = std::abs(stroke[i].y - stroke[i - 1].y);
      if (dy <= tolerance) best = std::max(best, dx / box->width());
    }
  }
  return best;
}

}  // namespace

CheckResult check_coherence(const GlyphEntry& entry, const PlacementContext& context, const RuleSet& rules) {
  CheckResult result;
  for (const auto& rule : rules.coherence) {
    if (!entry.has_tag(rule.tag)) continue;
    if (rule.predicate == "horizontal-bar") {
      double min_span = rule.number("min_span", 0.9);
      double span = horizontal_bar_span(entry.geometry, rule.number("tolerance", 0.05));
      if (span < min_span) {
        raise(result, CheckStatus::fail);
        result.findings.push_back({rule.id, "glyph tagged " + rule.tag + " lacks a full-width horizontal bar", span, min_span});
      }
    } else if (rule.predicate == "above-anchor") {
      auto anchor = rule.text("anchor", std::string(tags::face_circle));
      double max_gap = rule.number("max_gap", 10);
      if (!context.self) {
        result.findings.push_back({rule.id, "not placed yet; placement not checked", 0, max_gap});
        continue;
      }
      const auto& self = *context.self;
      double cx = self.x + self.width / 2.0;
      double bottom = self.y + self.height;
      double best_gap = -1;
      bool ok = false;
      for (const auto& n : context.neighbors) {
        if (!n.tags.contains(anchor)) continue;
        bool centered = cx >= n.x && cx <= n.x + n.width;
        bool above = bottom <= n.y + n.height / 2.0;
        double gap = std::max(0.0, n.y - bottom);
        if (centered && above) {
          best_gap = best_gap < 0 ? gap : std::min(best_gap, gap);
          ok = ok || gap <= max_gap;
        }
      }
      if (!ok) {
        raise(result, CheckStatus::fail);
        result.findings.push_back({rule.id,
                                   best_gap < 0 ? "glyph tagged " + rule.tag + " is not placed above a " + anchor + " glyph"
                                                : "glyph tagged " + rule.tag + " is too far above the " + anchor,
                                   best_gap, max_gap});
      }
    }
  }
  return result;
}

UtilityResult check_utility(const GlyphEntry& entry, const FormIndex& index, const RuleSet& rules) {
  UtilityResult out;
  auto catalog = index.catalog_only();
  if (catalog.empty()) {
    out.result.findings.push_back({"utility", "no catalog glyphs to compare against", 0, rules.utility_tau});
    return out;
  }
  auto nearest = match(catalog, describe(entry.geometry), 1).front();
  out.nearest = nearest;
  if (nearest.distance < rules.utility_tau) {
    out.result.status = CheckStatus::warn;
    out.result.findings.push_back(
        {"utility", "redundant with catalog glyph " + to_string(nearest.id), nearest.distance, rules.utility_tau});
  }
  return out;
}

CheckResult check_legibility(const GlyphEntry& entry, const RuleSet& rules) {
  CheckResult result;
  double last = rules.render_size - 1;
  auto pixels = transform(entry.geometry, Affine{last, 0, 0, 0, last, 0});

  std::vector<std::vector<std::pair<Point, Point>>> segments;
  for (const auto& stroke : pixels) {
    auto& segs = segments.emplace_back();
    if (stroke.size() == 1) segs.emplace_back(stroke[0], stroke[0]);
    for (std::size_t i = 1; i < stroke.size(); ++i) segs.emplace_back(stroke[i - 1], stroke[i]);
  }
  double closest = -1;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    for (std::size_t j = i + 1; j < segments.size(); ++j) {
      double d = std::numeric_limits<double>::infinity();
      for (const auto& [a0, a1] : segments[i]) {
        for (const auto& [b0, b1] : segments[j]) d = std::min(d, segment_distance(a0, a1, b0, b1));
      }
      // Touching or crossing strokes are deliberate joins.
      if (d > 1e-9 && d < rules.min_separation && (closest < 0 || d < closest)) closest = d;
    }
  }
  if (closest >= 0) {
    raise(result, CheckStatus::fail);
    result.findings.push_back({"separation", "strokes nearly touch", closest, rules.min_separation});
  }

  auto bitmap = plot(pixels, rules.render_size);
  double density = static_cast<double>(bitmap.ink()) / (static_cast<double>(rules.render_size) * rules.render_size);
  if (density > rules.max_density) {
    raise(result, CheckStatus::fail);
    result.findings.push_back({"density", "too much ink", density, rules.max_density});
  }
  return result;
}

CheckStatus Verdict::overall() const { return std::max({coherence.status, utility.status, legibility.status}); }

Verdict evaluate(const GlyphEntry& entry, const PlacementContext& context, const FormIndex& index, const RuleSet& rules) {
  Verdict v;
  v.coherence = check_coherence(entry, context, rules);
  auto utility = check_utility(entry, index, rules);
  v.utility = std::move(utility.result);
  if (v.utility.status == CheckStatus::warn) v.suggestion = utility.nearest;
  v.legibility = check_legibility(entry, rules);
  return v;
}

}  // namespace swb
