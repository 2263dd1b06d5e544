#pragma once

// Read-only HTTP facade over a registry snapshot. respond() is a pure
// function of (snapshot, request); serve() adapts it to a socket server.

#include <functional>
#include <map>
#include <memory>
#include <string>

#include "vtt/registry.hpp"

namespace vtt {

inline constexpr std::size_t kComposeBatchLimit = 64;

struct HttpRequest {
  std::string method;  // "GET" / "POST"
  std::string path;    // decoded, without the query string
  std::map<std::string, std::string> query;
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

class Service {
 public:
  explicit Service(std::shared_ptr<const Registry> registry);

  HttpResponse respond(const HttpRequest& request) const;

  /// Publishes a new snapshot; in-flight requests keep the one they loaded.
  void swap(std::shared_ptr<const Registry> registry);
  std::shared_ptr<const Registry> snapshot() const;

 private:
  std::shared_ptr<const Registry> registry_;
};

/// Blocks serving `service` on host:port until SIGINT/SIGTERM. On SIGHUP
/// `reload` is called and a successful result is swapped in. Returns false
/// when the address cannot be bound.
bool serve(Service& service, const std::string& host, int port,
           const std::function<std::shared_ptr<const Registry>()>& reload = {});

}  // namespace vtt
