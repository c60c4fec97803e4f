#include "swb/service.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "swb/closure.hpp"
#include "swb/error.hpp"
#include "swb/json_io.hpp"

namespace swb {

using nlohmann::json;

struct Service::Impl {
  std::shared_ptr<const Registry> registry;
  std::shared_ptr<WorkbenchStore> store;
  RuleSet rules;
  std::shared_ptr<const FormIndex> index;
  httplib::Server server;
  std::thread worker;

  void routes();
};

namespace {

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse:
    case ErrorCode::schema:
    case ErrorCode::invalid_argument:
    case ErrorCode::empty_ink:
      return 400;
    case ErrorCode::policy: return 403;
    case ErrorCode::not_found: return 404;
    case ErrorCode::validation:
    case ErrorCode::out_of_bounds:
    case ErrorCode::dangling_ref:
    case ErrorCode::missing_variant:
      return 422;
    default: return 500;
  }
}

void send_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view code, const std::string& message,
                const std::vector<Diagnostic>& diagnostics = {}) {
  send_json(res, {{"code", code}, {"message", message}, {"diagnostics", diagnostics_to_json(diagnostics)}}, status);
}

Actor actor_of(const httplib::Request& req) {
  Actor actor;
  if (req.has_header("X-Role")) actor.role = parse_role(req.get_header_value("X-Role"));
  actor.session = req.get_header_value("X-Session");
  return actor;
}

std::string author_of(const httplib::Request& req) {
  auto author = req.get_header_value("X-Author");
  return author.empty() ? "anonymous" : author;
}

json body_of(const httplib::Request& req) {
  try {
    return json::parse(req.body);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, std::string("request body is not JSON: ") + e.what());
  }
}

// Wraps a handler so domain errors become structured responses.
template <typename Handler>
httplib::Server::Handler guarded(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const Error& e) {
      send_error(res, http_status(e.code()), to_string(e.code()), e.what(), e.diagnostics());
    } catch (const json::exception& e) {
      send_error(res, 400, "parse", std::string("bad request body: ") + e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, "internal", e.what());
    }
  };
}

double number_param(const httplib::Request& req, const std::string& key) {
  auto text = req.get_param_value(key);
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::invalid_argument, "parameter " + key + " is not a number: '" + text + "'");
  }
  return v;
}

int integer_param(const httplib::Request& req, const std::string& key) {
  double v = number_param(req, key);
  if (v != static_cast<int>(v)) throw Error(ErrorCode::invalid_argument, "parameter " + key + " must be an integer");
  return static_cast<int>(v);
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> out;
  std::stringstream in(path);
  std::string part;
  while (std::getline(in, part, '/')) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

}  // namespace

void Service::Impl::routes() {
  server.Get("/registry/categories", guarded([this](const httplib::Request&, httplib::Response& res) {
    auto labels = std::get<std::vector<std::string>>(registry->taxonomy_children({}));
    send_json(res, {{"labels", labels}});
  }));

  server.Get("/registry/children", guarded([this](const httplib::Request& req, httplib::Response& res) {
    auto prefix = split_path(req.get_param_value("path"));
    auto children = registry->taxonomy_children(prefix);
    if (auto* labels = std::get_if<std::vector<std::string>>(&children)) {
      send_json(res, {{"labels", *labels}});
      return;
    }
    json glyphs = json::array();
    for (const auto* e : std::get<std::vector<const GlyphEntry*>>(children)) glyphs.push_back(glyph_to_json(*e));
    send_json(res, {{"glyphs", glyphs}});
  }));

  server.Get(R"(/registry/glyph/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
    send_json(res, glyph_to_json(registry->at(parse_symbol_id(req.matches[1].str()))));
  }));

  server.Get(R"(/registry/variant/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
    auto id = parse_symbol_id(req.matches[1].str());
    int rotate = req.has_param("rotate") ? integer_param(req, "rotate") : 0;
    bool mirror = req.has_param("mirror") && req.get_param_value("mirror") != "0";
    std::optional<int> fill;
    if (req.has_param("fill")) fill = integer_param(req, "fill");
    send_json(res, {{"id", to_string(transform_variant(*registry, id, rotate, mirror, fill))}});
  }));

  server.Post("/match", guarded([this](const httplib::Request& req, httplib::Response& res) {
    auto body = body_of(req);
    auto sketch = sketch_from_json(body.at("sketch"));
    auto k = body.value("k", 5);
    if (k < 1) throw Error(ErrorCode::invalid_argument, "k must be at least 1");
    json matches = json::array();
    for (const auto& m : match(*index, sketch, static_cast<std::size_t>(k))) {
      matches.push_back({{"id", to_string(m.id)}, {"distance", m.distance}});
    }
    send_json(res, {{"matches", matches}});
  }));

  server.Post("/signs", guarded([this](const httplib::Request& req, httplib::Response& res) {
    auto body = body_of(req);
    auto doc = from_xml(body.at("xml").get<std::string>());
    auto id = store->save_sign(doc, *registry, actor_of(req), author_of(req));
    send_json(res, {{"id", id}}, 201);
  }));

  server.Post("/validate", guarded([this](const httplib::Request& req, httplib::Response& res) {
    auto body = body_of(req);
    auto doc = from_xml(body.at("xml").get<std::string>());
    send_json(res, {{"diagnostics", diagnostics_to_json(validate(doc, store->catalog(*registry), actor_of(req)))}});
  }));

  server.Get(R"(/signs/([^/.]+)\.xml)", guarded([this](const httplib::Request& req, httplib::Response& res) {
    res.set_content(store->get_sign_record(req.matches[1].str()).xml, "application/xml");
  }));

  server.Get(R"(/signs/([^/.]+)\.svg)", guarded([this](const httplib::Request& req, httplib::Response& res) {
    double scale = req.has_param("scale") ? number_param(req, "scale") : 1.0;
    auto doc = store->get_sign(req.matches[1].str());
    res.set_content(render_svg(doc, store->catalog(*registry), scale), "image/svg+xml");
  }));

  server.Get(R"(/signs/([^/.]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
    auto record = store->get_sign_record(req.matches[1].str());
    send_json(res, {{"id", record.id}, {"xml", record.xml}, {"author", record.author}, {"created_at", record.created_at}});
  }));

  server.Post("/userglyphs", guarded([this](const httplib::Request& req, httplib::Response& res) {
    auto body = body_of(req);
    auto sketch = sketch_from_json(body.at("sketch"));
    auto tags = body.at("tags").get<std::set<std::string>>();
    auto actor = actor_of(req);
    if (actor.session.empty()) throw Error(ErrorCode::invalid_argument, "X-Session header required to draw glyphs");
    auto receipt = store->submit_user_glyph(sketch, tags, author_of(req), actor.session, *index, rules);
    send_json(res, {{"id", to_string(receipt.id)}, {"verdict", verdict_to_json(receipt.verdict)}}, 201);
  }));

  server.Get("/userglyphs", guarded([this](const httplib::Request& req, httplib::Response& res) {
    json glyphs = json::array();
    for (const auto& e : store->list_user_glyphs(actor_of(req))) glyphs.push_back(glyph_to_json(e));
    send_json(res, {{"glyphs", glyphs}});
  }));

  server.Get(R"(/palette/userglyphs/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
    auto id = parse_user_glyph_id(req.matches[1].str());
    send_json(res, glyph_to_json(store->palette_user_glyph(actor_of(req), id)));
  }));

  server.Get("/reports/closure", guarded([this](const httplib::Request&, httplib::Response& res) {
    send_json(res, closure_report_to_json(closure_report(*registry)));
  }));

  server.Get("/corpus/query", guarded([this](const httplib::Request& req, httplib::Response& res) {
    if (!req.has_param("class")) throw Error(ErrorCode::invalid_argument, "missing class parameter");
    auto signs = store->signs();
    send_json(res, {{"signs", corpus_query(signs, store->catalog(*registry), req.get_param_value("class"))}});
  }));

  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) send_error(res, res.status, "not_found", "no such endpoint");
  });
}

Service::Service(std::shared_ptr<const Registry> registry, std::shared_ptr<WorkbenchStore> store, RuleSet rules)
    : impl_(std::make_unique<Impl>()) {
  impl_->registry = std::move(registry);
  impl_->store = std::move(store);
  impl_->rules = std::move(rules);
  impl_->index = std::make_shared<const FormIndex>(FormIndex::build(*impl_->registry));
  impl_->routes();
}

namespace {

RuleSet load_rules(const std::optional<std::filesystem::path>& path) {
  if (!path) return RuleSet::defaults();
  std::ifstream in(*path);
  if (!in) throw Error(ErrorCode::io, "cannot read rules " + path->string());
  std::stringstream buf;
  buf << in.rdbuf();
  auto rules = parse_rule_set(buf.str());
  return rules;
}

}  // namespace

Service::Service(const ServiceConfig& config)
    : Service(std::make_shared<const Registry>(load_manifest(config.manifest)),
              std::make_shared<WorkbenchStore>(WorkbenchStore::Options{config.store_dir}), load_rules(config.rules)) {}

Service::~Service() { stop(); }

int Service::bind(const std::string& host, int port) {
  int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Error(ErrorCode::io, "cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void Service::listen() { impl_->server.listen_after_bind(); }

int Service::start(const std::string& host, int port) {
  int bound = bind(host, port);
  impl_->worker = std::thread([this] { listen(); });
  impl_->server.wait_until_ready();
  return bound;
}

void Service::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->worker.joinable()) impl_->worker.join();
}

}  // namespace swb
