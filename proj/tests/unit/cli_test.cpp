#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "swb/cli.hpp"
#include "swb/store.hpp"

using namespace swb;
using namespace swb::testing;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    std::random_device rd;
    path = std::filesystem::temp_directory_path() / ("swb-cli-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

const std::string kSample = data_path("sample.tsv");

}  // namespace

TEST_CASE("validate") {
  auto clean = run({"validate", data_path("signs/nod.xml"), "--manifest", kSample});
  CHECK(clean.code == 0);
  CHECK(clean.out.empty());
  CHECK(clean.err.empty());

  auto foreign = run({"validate", data_path("signs/user_glyph.xml"), "--manifest", kSample});
  CHECK(foreign.code == 1);
  CHECK(foreign.err.find("policy-violation U-1") != std::string::npos);
  CHECK(run({"validate", data_path("signs/user_glyph.xml"), "--manifest", kSample, "--role", "researcher"}).code == 0);

  TempDir dir;
  std::ofstream(dir.path / "bad.xml") << "<sign w=\"10\" h=\"10\">\n  <glyph ref=\"01-01-001-01-01-01\" x=\"0\" y=\"0\" z=\"1\"/>\n"
                                      << "  <glyph ref=\"08-08-008-01-01-01\" x=\"0\" y=\"0\" z=\"2\"/>\n</sign>\n";
  auto bad = run({"validate", (dir.path / "bad.xml").string(), "--manifest", kSample});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("out-of-bounds 01-01-001-01-01-01: overflow") != std::string::npos);
  CHECK(bad.err.find("dangling-ref 08-08-008-01-01-01") != std::string::npos);

  std::ofstream(dir.path / "broken.xml") << "<sign w=\"10\">";
  auto broken = run({"validate", (dir.path / "broken.xml").string(), "--manifest", kSample});
  CHECK(broken.code == 1);
  CHECK_FALSE(broken.err.empty());
  CHECK(run({"validate", "/nonexistent.xml", "--manifest", kSample}).code == 1);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"validate"}).code == 2);
  CHECK(run({"validate", data_path("signs/nod.xml")}).code == 2);  // no manifest
  CHECK(run({"validate", data_path("signs/nod.xml"), "--manifest", kSample, "--role", "admin"}).code == 2);
  CHECK(run({"recognize", data_path("sketches/check.txt"), "-k", "0", "--manifest", kSample}).code == 2);
  CHECK(run({"closure", "--manifest", kSample, "--format", "xml"}).code == 2);
  auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("closure") != std::string::npos);
}

TEST_CASE("closure report") {
  auto text = run({"closure", "--manifest", data_path("motion_closure.tsv")});
  CHECK(text.code == 0);
  CHECK(text.out.find("added: 3\n") != std::string::npos);
  CHECK(text.out.find("curve\tS_lateral\t3\t02-04-") != std::string::npos);
  auto records = run({"closure", "--manifest", data_path("motion_closure.tsv"), "--format", "records"});
  CHECK(records.code == 0);
  CHECK(records.out.find("added:") == std::string::npos);
  CHECK(std::count(records.out.begin(), records.out.end(), '\n') == 3);
  auto none = run({"closure", "--manifest", kSample});
  CHECK(none.out.find("added: 0\n") != std::string::npos);
  CHECK(run({"closure", "--manifest", "/nonexistent.tsv"}).code == 1);
}

TEST_CASE("stats counts glyph classes") {
  TempDir dir;
  auto registry = sample_registry();
  {
    WorkbenchStore store({dir.path / "store"});
    auto index = FormIndex::build(registry);
    auto g = store.submit_user_glyph(parse_sketch("0,0 10,10\n"), {"annotation"}, "ana", "s1", index);
    store.save_sign(from_xml(read_text(data_path("signs/nod.xml"))), registry, {}, "ana");
    store.save_sign(from_xml(read_text(data_path("signs/twist.xml"))), registry, {}, "ana");
    auto with_user = place(from_xml(read_text(data_path("signs/twist.xml"))), store.catalog(registry), g.id, 150, 150);
    store.save_sign(with_user, registry, {Role::user, "s1"}, "ana");
  }
  auto text = run({"stats", "--store", (dir.path / "store").string(), "--manifest", kSample});
  CHECK(text.code == 0);
  CHECK(text.out.find("signs: 3\n") != std::string::npos);
  CHECK(text.out.find("signs with user glyphs: 1\n") != std::string::npos);

  auto records = run({"stats", "--store", (dir.path / "store").string(), "--manifest", kSample, "--format", "records"});
  CHECK(records.out.find("movement/head-movement\t1\t1\n") != std::string::npos);
  CHECK(records.out.find("movement/forearm\t2\t2\n") != std::string::npos);
  CHECK(records.out.find("user/annotation\t1\t1\n") != std::string::npos);
  CHECK(records.out.find("#signs\t3\n") != std::string::npos);
}

TEST_CASE("render writes svg") {
  TempDir dir;
  auto out = (dir.path / "nod.svg").string();
  auto r = run({"render", data_path("signs/nod.xml"), "-o", out, "--manifest", kSample, "--scale", "2"});
  CHECK(r.code == 0);
  auto svg = read_text(out);
  CHECK(svg.starts_with("<svg"));
  CHECK(svg.find("width=\"400\"") != std::string::npos);
  CHECK(run({"render", data_path("signs/user_glyph.xml"), "-o", out, "--manifest", kSample}).code == 0);
  auto missing = run({"render", data_path("signs/nod.xml"), "-o", out, "--manifest", data_path("motion_closure.tsv")});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("03-01-001-01-01-01") != std::string::npos);
}

TEST_CASE("recognize ranks catalog glyphs") {
  TempDir dir;
  auto registry = sample_registry();
  auto path = (dir.path / "face.txt").string();
  std::ofstream(path) << format_sketch(sketch_from_geometry(registry.at(parse_symbol_id("03-01-001-01-01-01")).geometry));
  auto r = run({"recognize", path, "-k", "2", "--manifest", kSample});
  CHECK(r.code == 0);
  CHECK(r.out.starts_with("1\t03-01-001-01-01-01\t"));
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 2);
  auto all = run({"recognize", path, "-k", "50", "--manifest", kSample});
  CHECK(std::count(all.out.begin(), all.out.end(), '\n') == 7);
  std::ofstream(dir.path / "empty.txt") << "";
  CHECK(run({"recognize", (dir.path / "empty.txt").string(), "--manifest", kSample}).code == 1);
}
