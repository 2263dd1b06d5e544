#include "vtt/service.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <iostream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "vtt/composer.hpp"
#include "vtt/error.hpp"
#include "vtt/renderer.hpp"
#include "vtt/semantics.hpp"
#include "vtt/syntax.hpp"

namespace vtt {
namespace {

using json = nlohmann::ordered_json;

HttpResponse json_response(int status, const json& body) {
  return {status, "application/json", body.dump(2) + "\n"};
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::syntax:
    case ErrorCode::schema_violation:
    case ErrorCode::malformed_id:
    case ErrorCode::malformed_glyph:
      return 400;
    case ErrorCode::not_found:
      return 404;
    case ErrorCode::enumeration_refused:
      return 413;
    default:
      return 422;
  }
}

json error_body(const Error& e) {
  return {{"error", to_string(e.code())}, {"subject", e.subject()}, {"message", e.detail()}};
}

HttpResponse error_response(const Error& e) { return json_response(status_for(e.code()), error_body(e)); }

HttpResponse not_found(const std::string& what) {
  return json_response(404, {{"error", "not-found"}, {"subject", what}, {"message", "no such resource"}});
}

json literals(const LiteralConjunction& lits) {
  json arr = json::array();
  for (const auto& l : lits) arr.push_back(format_literal(l));
  return arr;
}

json radical_summary(const Radical& r) {
  json regions = json::array();
  for (const auto& g : r.schema.regions) {
    regions.push_back({{"name", g.name}, {"constraint", g.constraint}, {"expandable", g.expandable}});
  }
  return {{"id", r.id},
          {"name", r.name},
          {"family", to_string(r.family)},
          {"table1", r.table1_key ? json(*r.table1_key) : json(nullptr)},
          {"base", r.base ? json(*r.base) : json(nullptr)},
          {"regions", std::move(regions)}};
}

json radical_detail(const Radical& r, const Registry& reg) {
  json j = radical_summary(r);
  json strokes = json::array();
  for (const auto& s : r.strokes) strokes.push_back(format_stroke(s));
  j["strokes"] = std::move(strokes);
  j["limit_file"] = r.limit_file ? json(*r.limit_file) : json(nullptr);
  j["baseline"] = literals(reg.baseline(r.id));
  json rules = json::array();
  for (const auto& rule : reg.rules()) {
    if (rule_source_matches(rule, r, reg)) {
      rules.push_back({{"id", rule.id},
                       {"name", rule.name},
                       {"requires", literals(LiteralConjunction(rule.requires_literals))},
                       {"adds", literals(LiteralConjunction(rule.adds))}});
    }
  }
  j["rules"] = std::move(rules);
  j["svg"] = render_svg(Glyph::bare(r.id), reg);
  return j;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

json concept_entry(const Concept& c, const Registry& reg) {
  json glyphs = json::array();
  for (auto i : reg.bindings_of(c.id)) {
    const auto& b = reg.bindings()[i];
    glyphs.push_back({{"glyph", canonical_id(b.glyph, reg)}, {"precedence", b.precedence}});
  }
  return {{"id", c.id},
          {"name", c.name},
          {"area", c.area},
          {"crypto", c.cryptomorphism_group ? json(*c.cryptomorphism_group) : json(nullptr)},
          {"aliases", c.aliases},
          {"glyphs", std::move(glyphs)}};
}

double size_param(const HttpRequest& req) {
  auto it = req.query.find("size");
  if (it == req.query.end()) return kDefaultSize;
  char* end = nullptr;
  const double v = std::strtod(it->second.c_str(), &end);
  if (end == it->second.c_str() || *end != '\0' || !(v > 0) || v > 100000) {
    throw Error(ErrorCode::syntax, "size must be a positive number", "size");
  }
  return v;
}

[[noreturn]] void bad_request(const std::string& path, const std::string& why) {
  throw Error(ErrorCode::schema_violation, path + ": " + why, path);
}

// One compose request: {radical, assignment, rules, abbreviated?, size?}.
json compose_one(const json& req, const std::string& path, const Registry& reg, double size) {
  if (!req.is_object()) bad_request(path, "expected an object");
  for (auto it = req.begin(); it != req.end(); ++it) {
    static const char* known[] = {"radical", "assignment", "rules", "abbreviated", "size"};
    if (std::find(std::begin(known), std::end(known), it.key()) == std::end(known)) {
      bad_request(path + "." + it.key(), "unknown key");
    }
  }
  if (!req.contains("radical") || !req["radical"].is_string()) {
    bad_request(path + ".radical", "expected a radical id");
  }
  Glyph glyph = Glyph::bare(req["radical"].get<std::string>());
  reg.radical(glyph.radical);
  if (req.contains("assignment")) {
    const json& a = req["assignment"];
    if (!a.is_object()) bad_request(path + ".assignment", "expected an object");
    for (auto it = a.begin(); it != a.end(); ++it) {
      std::optional<std::string> mark;
      if (it.value().is_string()) {
        mark = it.value().get<std::string>();
      } else if (!it.value().is_null()) {
        bad_request(path + ".assignment." + it.key(), "expected a mark id or null");
      }
      glyph = place_mark(glyph, it.key(), mark, reg);
    }
  }
  if (req.contains("rules")) {
    const json& rules = req["rules"];
    if (!rules.is_array()) bad_request(path + ".rules", "expected an array");
    for (std::size_t i = 0; i < rules.size(); ++i) {
      if (!rules[i].is_string()) {
        bad_request(path + ".rules[" + std::to_string(i) + "]", "expected a rule id");
      }
      glyph = apply_derivation(glyph, rules[i].get<std::string>(), reg);
    }
  }
  if (req.contains("abbreviated")) {
    if (!req["abbreviated"].is_boolean()) bad_request(path + ".abbreviated", "expected a boolean");
    if (req["abbreviated"].get<bool>()) glyph = abbreviate(glyph, reg);
  }
  if (req.contains("size")) {
    if (!req["size"].is_number() || !(req["size"].get<double>() > 0)) {
      bad_request(path + ".size", "expected a positive number");
    }
    size = req["size"].get<double>();
  }
  const Glyph canon = canonicalize(glyph, reg);
  const Concept* c = lookup_concept(canon, reg);
  json out;
  out["glyph"] = canonical_id(canon, reg);
  out["svg"] = render_svg(canon, reg, size);
  out["constraints"] = literals(constraint_of(canon, reg));
  out["concept"] = c ? json{{"id", c->id}, {"name", c->name}} : json(nullptr);
  out["label"] = c ? c->name : std::string("unbound");
  out["irregular"] = is_irregular(canon, reg);
  return out;
}

HttpResponse compose(const HttpRequest& request, const Registry& reg) {
  json body;
  try {
    body = json::parse(request.body);
  } catch (const json::parse_error& e) {
    bad_request("$", std::string("not valid JSON (") + e.what() + ")");
  }
  const double size = size_param(request);
  if (body.is_object() && body.contains("glyphs")) {
    const json& items = body["glyphs"];
    if (!items.is_array()) bad_request("$.glyphs", "expected an array");
    if (items.size() > kComposeBatchLimit) {
      throw Error(ErrorCode::enumeration_refused,
                  "at most " + std::to_string(kComposeBatchLimit) + " glyphs per request",
                  "$.glyphs");
    }
    json out = json::array();
    for (std::size_t i = 0; i < items.size(); ++i) {
      out.push_back(compose_one(items[i], "$.glyphs[" + std::to_string(i) + "]", reg, size));
    }
    return json_response(200, {{"glyphs", std::move(out)}});
  }
  return json_response(200, compose_one(body, "$", reg, size));
}

HttpResponse dispatch(const HttpRequest& req, const Registry& reg) {
  const std::string& p = req.path;
  if (req.method == "POST") {
    if (p == "/compose") return compose(req, reg);
    return not_found(p);
  }
  if (req.method != "GET") {
    return json_response(405, {{"error", "method-not-allowed"}, {"subject", req.method},
                               {"message", "the service is read-only"}});
  }
  if (p == "/health") {
    return json_response(200, {{"status", "ok"},
                               {"radicals", reg.radicals().size()},
                               {"concepts", reg.concepts().size()},
                               {"bindings", reg.bindings().size()}});
  }
  if (p == "/radicals") {
    json arr = json::array();
    for (const auto& r : reg.radicals()) arr.push_back(radical_summary(r));
    return json_response(200, arr);
  }
  if (p.rfind("/radicals/", 0) == 0) {
    const std::string id = p.substr(10);
    const auto got = get(reg, EntityKind::radical, id);
    if (got.status == GetResult::Status::malformed_id) {
      return json_response(400, {{"error", "malformed-id"}, {"subject", id},
                                 {"message", "not a valid identifier"}});
    }
    if (!got.found()) return not_found(id);
    return json_response(200, radical_detail(*got.as<Radical>(), reg));
  }
  if (p == "/concepts") {
    auto it = req.query.find("query");
    const std::string q = it == req.query.end() ? std::string() : lower(it->second);
    json arr = json::array();
    for (const auto& c : reg.concepts()) {
      bool hit = q.empty() || lower(c.id).find(q) != std::string::npos ||
                 lower(c.name).find(q) != std::string::npos;
      for (const auto& a : c.aliases) hit = hit || lower(a).find(q) != std::string::npos;
      if (hit) arr.push_back(concept_entry(c, reg));
    }
    return json_response(200, arr);
  }
  if (p.rfind("/glyphs/", 0) == 0 && p.size() > 12 && p.ends_with(".svg")) {
    const std::string literal = p.substr(8, p.size() - 12);
    const Glyph glyph = parse_glyph(literal);
    return {200, "image/svg+xml", render_svg(glyph, reg, size_param(req))};
  }
  return not_found(p);
}

}  // namespace

Service::Service(std::shared_ptr<const Registry> registry) : registry_(std::move(registry)) {}

void Service::swap(std::shared_ptr<const Registry> registry) {
  std::atomic_store(&registry_, std::move(registry));
}

std::shared_ptr<const Registry> Service::snapshot() const { return std::atomic_load(&registry_); }

HttpResponse Service::respond(const HttpRequest& request) const {
  const auto reg = snapshot();
  try {
    return dispatch(request, *reg);
  } catch (const Error& e) {
    return error_response(e);
  }
}

// ---------------------------------------------------------------------------

namespace {

std::atomic<int> g_signal{0};

extern "C" void on_signal(int sig) { g_signal.store(sig); }

}  // namespace

bool serve(Service& service, const std::string& host, int port,
           const std::function<std::shared_ptr<const Registry>()>& reload) {
  httplib::Server server;
  auto handle = [&service](const httplib::Request& req, httplib::Response& res) {
    HttpRequest r;
    r.method = req.method;
    r.path = req.path;
    for (const auto& [k, v] : req.params) r.query.emplace(k, v);
    r.body = req.body;
    const HttpResponse out = service.respond(r);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  server.Get(".*", handle);
  server.Post(".*", handle);

  if (!server.bind_to_port(host, port)) return false;

  g_signal.store(0);
  std::signal(SIGHUP, on_signal);
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::atomic<bool> done{false};
  std::thread watcher([&] {
    while (!done.load()) {
      std::this_thread::sleep_for(std::chrono::milliseconds(100));
      const int sig = g_signal.exchange(0);
      if (sig == SIGHUP && reload) {
        try {
          service.swap(reload());
          std::cerr << "vtt: registry reloaded\n";
        } catch (const std::exception& e) {
          std::cerr << "vtt: reload failed, keeping the current registry: " << e.what() << '\n';
        }
      } else if (sig == SIGINT || sig == SIGTERM) {
        server.stop();
        return;
      }
    }
  });
  server.listen_after_bind();
  done.store(true);
  watcher.join();
  return true;
}

}  // namespace vtt
