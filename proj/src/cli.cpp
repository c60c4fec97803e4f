#include "swb/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "swb/closure.hpp"
#include "swb/error.hpp"
#include "swb/recognition.hpp"
#include "swb/service.hpp"
#include "swb/sign_document.hpp"
#include "swb/store.hpp"

namespace swb {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void print_diagnostics(std::ostream& err, const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) {
    err << d.code;
    if (!d.subject.empty()) err << " " << d.subject;
    if (!d.message.empty()) err << ": " << d.message;
    err << "\n";
  }
}

struct Options {
  std::string manifest;
  std::string store;
  std::string input;
  std::string output;
  std::string role = "user";
  std::string session;
  std::string format = "text";
  std::string host = "127.0.0.1";
  std::string rules;
  int port = 8080;
  std::size_t k = 5;
  double scale = 1.0;
};

int cmd_validate(const Options& o, std::ostream& err) {
  auto registry = load_manifest(std::filesystem::path(o.manifest));
  std::optional<WorkbenchStore> store;
  if (!o.store.empty()) store.emplace(WorkbenchStore::Options{o.store});
  auto doc = from_xml(read_file(o.input));
  GlyphCatalog catalog{&registry, store ? &store->user_glyphs() : nullptr};
  auto diagnostics = validate(doc, catalog, Actor{parse_role(o.role), o.session});
  print_diagnostics(err, diagnostics);
  return diagnostics.empty() ? 0 : 1;
}

int cmd_closure(const Options& o, std::ostream& out) {
  auto report = closure_report(load_manifest(std::filesystem::path(o.manifest)));
  if (o.format != "records") out << format_grid(report);
  out << format_records(report);
  for (const auto& f : report.synthesis.failures) out << "# unsynthesizable " << to_string(f.cell) << ": " << f.reason << "\n";
  return 0;
}

int cmd_stats(const Options& o, std::ostream& out) {
  auto registry = load_manifest(std::filesystem::path(o.manifest));
  WorkbenchStore store(WorkbenchStore::Options{o.store});
  auto catalog = store.catalog(registry);

  struct Row {
    std::size_t glyphs = 0;
    std::size_t signs = 0;
  };
  std::map<std::string, Row> rows;
  std::size_t total = 0, with_user = 0;
  for (const auto& sign : store.signs()) {
    ++total;
    std::set<std::string> classes;
    bool has_user = false;
    for (const auto& g : sign.doc.glyphs) {
      std::string cls = "unresolved";
      if (auto e = catalog.lookup(g.ref)) cls = e->taxonomy[0] + "/" + e->taxonomy[1];
      else if (is_user(g.ref)) cls = "user/unknown";
      has_user = has_user || is_user(g.ref);
      ++rows[cls].glyphs;
      classes.insert(cls);
    }
    for (const auto& c : classes) ++rows[c].signs;
    if (has_user) ++with_user;
  }
  if (o.format == "records") {
    for (const auto& [cls, row] : rows) out << cls << '\t' << row.glyphs << '\t' << row.signs << '\n';
    out << "#signs\t" << total << "\n#signs-with-user-glyphs\t" << with_user << '\n';
    return 0;
  }
  std::size_t width = 5;
  for (const auto& [cls, _] : rows) width = std::max(width, cls.size());
  out << std::left << std::setw(static_cast<int>(width)) << "class" << "  glyphs  signs\n";
  for (const auto& [cls, row] : rows) {
    out << std::left << std::setw(static_cast<int>(width)) << cls << "  " << std::right << std::setw(6) << row.glyphs
        << "  " << std::setw(5) << row.signs << '\n';
  }
  out << "signs: " << total << "\nsigns with user glyphs: " << with_user << '\n';
  return 0;
}

int cmd_render(const Options& o) {
  auto registry = load_manifest(std::filesystem::path(o.manifest));
  std::optional<WorkbenchStore> store;
  if (!o.store.empty()) store.emplace(WorkbenchStore::Options{o.store});
  GlyphCatalog catalog{&registry, store ? &store->user_glyphs() : nullptr};
  auto svg = render_svg(from_xml(read_file(o.input)), catalog, o.scale);
  std::ofstream file(o.output, std::ios::binary);
  file << svg;
  if (!file) throw Error(ErrorCode::io, "cannot write " + o.output);
  return 0;
}

int cmd_recognize(const Options& o, std::ostream& out) {
  auto registry = load_manifest(std::filesystem::path(o.manifest));
  auto index = FormIndex::build(registry);
  auto results = match(index, parse_sketch(read_file(o.input)), o.k);
  for (std::size_t i = 0; i < results.size(); ++i) {
    out << i + 1 << '\t' << to_string(results[i].id) << '\t' << format_number(results[i].distance) << '\n';
  }
  return 0;
}

int cmd_serve(const Options& o, std::ostream& out) {
  ServiceConfig config;
  config.manifest = o.manifest;
  config.store_dir = o.store;
  if (!o.rules.empty()) config.rules = o.rules;
  Service service(config);
  int port = service.bind(o.host, o.port);
  out << "listening on " << o.host << ":" << port << std::endl;
  service.listen();
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"SignWriting workbench"};
  app.name("swb");
  app.require_subcommand(1);
  Options o;

  auto* validate_cmd = app.add_subcommand("validate", "Check a sign file; exit 0 iff clean");
  validate_cmd->add_option("sign", o.input, "sign XML")->required();
  validate_cmd->add_option("--manifest", o.manifest, "registry manifest")->required();
  validate_cmd->add_option("--store", o.store, "store directory (user glyphs)");
  validate_cmd->add_option("--role", o.role, "user or researcher")->check(CLI::IsMember({"user", "researcher"}));
  validate_cmd->add_option("--session", o.session, "session token of the sign context");

  auto* closure_cmd = app.add_subcommand("closure", "Plane-completion report for the motion glyphs");
  closure_cmd->add_option("--manifest", o.manifest, "registry manifest")->required();
  closure_cmd->add_option("--format", o.format, "text or records")->check(CLI::IsMember({"text", "records"}));

  auto* stats_cmd = app.add_subcommand("stats", "Glyph frequency by taxonomy class");
  stats_cmd->add_option("--store", o.store, "store directory")->required();
  stats_cmd->add_option("--manifest", o.manifest, "registry manifest")->required();
  stats_cmd->add_option("--format", o.format, "text or records")->check(CLI::IsMember({"text", "records"}));

  auto* render_cmd = app.add_subcommand("render", "Render a sign to SVG");
  render_cmd->add_option("sign", o.input, "sign XML")->required();
  render_cmd->add_option("-o,--output", o.output, "SVG output path")->required();
  render_cmd->add_option("--manifest", o.manifest, "registry manifest")->required();
  render_cmd->add_option("--store", o.store, "store directory (user glyphs)");
  render_cmd->add_option("--scale", o.scale, "scale factor")->check(CLI::PositiveNumber);

  auto* recognize_cmd = app.add_subcommand("recognize", "Rank catalog glyphs against a sketch");
  recognize_cmd->add_option("sketch", o.input, "sketch file")->required();
  recognize_cmd->add_option("-k", o.k, "number of results")->check(CLI::PositiveNumber);
  recognize_cmd->add_option("--manifest", o.manifest, "registry manifest")->required();

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--manifest", o.manifest, "registry manifest")->required();
  serve_cmd->add_option("--store", o.store, "store directory")->required();
  serve_cmd->add_option("--host", o.host, "bind address");
  serve_cmd->add_option("--port", o.port, "bind port");
  serve_cmd->add_option("--rules", o.rules, "acceptability rule file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(o, err);
    if (closure_cmd->parsed()) return cmd_closure(o, out);
    if (stats_cmd->parsed()) return cmd_stats(o, out);
    if (render_cmd->parsed()) return cmd_render(o);
    if (recognize_cmd->parsed()) return cmd_recognize(o, out);
    if (serve_cmd->parsed()) return cmd_serve(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    print_diagnostics(err, e.diagnostics());
    return 1;
  }
  return 2;
}

}  // namespace swb
