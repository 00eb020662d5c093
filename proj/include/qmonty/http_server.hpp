#pragma once

// Binds a Service to a local socket with cpp-httplib.

#include <cstdlib>
#include <optional>
#include <string>

#include "httplib.h"
#include "qmonty/service.hpp"

namespace qmonty::service {

struct Address {
  std::string host = "127.0.0.1";
  int port = 8080;
};

/// Parses "host:port", ":port" or "port".
inline Address parse_address(const std::string& text) {
  Address a;
  const auto colon = text.rfind(':');
  std::string port = text;
  if (colon != std::string::npos) {
    if (colon > 0) a.host = text.substr(0, colon);
    port = text.substr(colon + 1);
  }
  try {
    std::size_t used = 0;
    const int p = std::stoi(port, &used);
    if (used != port.size() || p < 0 || p > 65535) throw std::out_of_range("port");
    a.port = p;
  } catch (const std::exception&) {
    fail(ErrorKind::Validation, "bad address '" + text + "', expected host:port");
  }
  return a;
}

/// --addr wins over QMONTY_ADDR, which wins over the default 127.0.0.1:8080.
inline Address resolve_address(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return parse_address(*flag);
  if (const char* env = std::getenv("QMONTY_ADDR"); env && *env) return parse_address(env);
  return {};
}

class HttpServer {
 public:
  explicit HttpServer(Service& service, std::optional<std::string> static_dir = std::nullopt)
      : service_(service) {
    auto forward = [this](const httplib::Request& req, httplib::Response& res) {
      Request r{req.method, req.path, {}, req.body};
      for (const auto& [k, v] : req.params) r.query.emplace(k, v);
      const auto out = service_.handle(r);
      res.status = out.status;
      res.set_content(out.body, "application/json");
    };
    server_.Get("/health", forward);
    server_.Get("/sweep", forward);
    server_.Post("/sessions", forward);
    server_.Get(R"(/sessions/([^/]+))", forward);
    server_.Post(R"(/sessions/([^/]+)/move)", forward);
    server_.Get(R"(/sessions/([^/]+)/amplitudes)", forward);
    if (static_dir) server_.set_mount_point("/", *static_dir);
  }

  /// Binds without serving. Port 0 picks a free port; returns the bound port
  /// or -1.
  int bind(const Address& addr) {
    if (addr.port == 0) return server_.bind_to_any_port(addr.host);
    return server_.bind_to_port(addr.host, addr.port) ? addr.port : -1;
  }

  /// Serves until stop() is called.
  bool serve() { return server_.listen_after_bind(); }
  void stop() { server_.stop(); }
  void wait_until_ready() { server_.wait_until_ready(); }

 private:
  Service& service_;
  httplib::Server server_;
};

}  // namespace qmonty::service
