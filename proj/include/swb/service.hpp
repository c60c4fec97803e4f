#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "swb/acceptability.hpp"
#include "swb/registry.hpp"
#include "swb/store.hpp"

namespace swb {

struct ServiceConfig {
  std::filesystem::path manifest;
  std::filesystem::path store_dir;
  std::optional<std::filesystem::path> rules;
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
};

/// HTTP front of the workbench. JSON bodies; errors are
/// {"code","message","diagnostics":[...]}. Callers identify themselves with
/// `X-Role` (user|researcher, default user), `X-Session` and `X-Author`.
///
///   GET  /registry/categories          GET /registry/children?path=a/b
///   GET  /registry/glyph/{id}          GET /registry/variant/{id}?rotate=&mirror=&fill=
///   POST /match {sketch,k}             POST /validate {xml}
///   POST /signs {xml}                  GET /signs/{id}[.xml|.svg]
///   POST /userglyphs {sketch,tags}     GET /userglyphs
///   GET  /palette/userglyphs/{id}      GET /reports/closure
///   GET  /corpus/query?class=
class Service {
 public:
  /// Throws Error(io) for unreadable manifest/rules or store.
  explicit Service(const ServiceConfig& config);
  Service(std::shared_ptr<const Registry> registry, std::shared_ptr<WorkbenchStore> store,
          RuleSet rules = RuleSet::defaults());
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds and returns the bound port. Throws Error(io) on bind failure.
  int bind(const std::string& host, int port);
  /// Blocks serving until stop().
  void listen();
  /// bind() + listen() on a background thread; returns the bound port.
  int start(const std::string& host = "127.0.0.1", int port = 0);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace swb
