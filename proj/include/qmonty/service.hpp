#pragma once

// Request/response API over game sessions. Transport-independent: `handle`
// takes a method, path, query and body and returns a status and JSON body.
// http_server.hpp binds it to a socket.
//
//   POST /sessions                 {"engine": "...", "seed": N?}      -> 201
//   GET  /sessions/{id}                                               -> 200
//   POST /sessions/{id}/move       {"action": "first_pick", "door": "D1"}
//                                  {"action": "final_pick", "choice": "stick"|"switch"|"D2"}
//   GET  /sessions/{id}/amplitudes (scheme1 sessions, after the first pick)
//   GET  /sweep?scheme=1|2
//   GET  /health
//
// Errors: {"error": {"code": "...", "message": "..."}} with code one of
// bad_request (400), not_found (404), conflict (409), rule_violation (422),
// internal (500).

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "qmonty/game.hpp"
#include "qmonty/report.hpp"

namespace qmonty::service {

using json = nlohmann::json;

struct Request {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct Response {
  int status = 200;
  std::string body;
};

enum class ApiCode { BadRequest, NotFound, Conflict, RuleViolation, Internal };

inline const char* to_string(ApiCode c) {
  switch (c) {
    case ApiCode::BadRequest: return "bad_request";
    case ApiCode::NotFound: return "not_found";
    case ApiCode::Conflict: return "conflict";
    case ApiCode::RuleViolation: return "rule_violation";
    case ApiCode::Internal: return "internal";
  }
  return "internal";
}

inline int http_status(ApiCode c) {
  switch (c) {
    case ApiCode::BadRequest: return 400;
    case ApiCode::NotFound: return 404;
    case ApiCode::Conflict: return 409;
    case ApiCode::RuleViolation: return 422;
    case ApiCode::Internal: return 500;
  }
  return 500;
}

struct ApiError {
  ApiCode code;
  std::string message;
};

inline ApiCode api_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::State: return ApiCode::Conflict;
    case ErrorKind::Rule: return ApiCode::RuleViolation;
    case ErrorKind::NotFound: return ApiCode::NotFound;
    case ErrorKind::Validation:
    case ErrorKind::Parse:
    case ErrorKind::Size: return ApiCode::BadRequest;
    default: return ApiCode::Internal;
  }
}

struct Options {
  /// When set, every session is written to <data_dir>/<id>.json after each
  /// change and existing blobs are loaded at startup.
  std::optional<std::filesystem::path> data_dir;
};

class Service {
 public:
  explicit Service(Options opt = {}) : opt_(std::move(opt)) {
    if (opt_.data_dir) {
      std::filesystem::create_directories(*opt_.data_dir);
      for (const auto& entry : std::filesystem::directory_iterator(*opt_.data_dir)) {
        if (entry.path().extension() != ".json") continue;
        std::ifstream in(entry.path());
        std::stringstream buf;
        buf << in.rdbuf();
        auto s = game::deserialize(buf.str());
        const auto id = s.id();
        sessions_.emplace(id, std::make_shared<Slot>(std::move(s)));
      }
    }
  }

  Response handle(const Request& req) {
    try {
      return route(req);
    } catch (const ApiError& e) {
      return error(e.code, e.message);
    } catch (const Error& e) {
      return error(api_code(e.kind()), e.what());
    } catch (const std::exception& e) {
      return error(ApiCode::Internal, e.what());
    }
  }

  /// Storage form of a session, for tests and tooling.
  std::optional<game::Session> snapshot(const std::string& id) const {
    auto slot = find(id);
    if (!slot) return std::nullopt;
    std::lock_guard lock(slot->mu);
    return slot->session;
  }

  std::size_t size() const {
    std::shared_lock lock(map_mu_);
    return sessions_.size();
  }

 private:
  struct Slot {
    explicit Slot(game::Session s) : session(std::move(s)) {}
    std::mutex mu;
    game::Session session;
  };

  static Response ok(int status, const json& body) { return {status, body.dump(2) + "\n"}; }

  static Response error(ApiCode code, const std::string& message) {
    return ok(http_status(code), {{"error", {{"code", to_string(code)}, {"message", message}}}});
  }

  static std::vector<std::string> segments(const std::string& path) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < path.size()) {
      if (path[i] == '/') {
        ++i;
        continue;
      }
      const auto j = path.find('/', i);
      out.push_back(path.substr(i, j - i));
      if (j == std::string::npos) break;
      i = j;
    }
    return out;
  }

  static json parse_body(const std::string& body) {
    if (body.empty()) return json::object();
    try {
      auto j = json::parse(body);
      if (!j.is_object()) throw ApiError{ApiCode::BadRequest, "body must be a JSON object"};
      return j;
    } catch (const json::parse_error& e) {
      throw ApiError{ApiCode::BadRequest, std::string("malformed body: ") + e.what()};
    }
  }

  static std::string string_field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string()) {
      throw ApiError{ApiCode::BadRequest, std::string("missing string field '") + key + "'"};
    }
    return it->get<std::string>();
  }

  Response route(const Request& req) {
    const auto seg = segments(req.path);
    const auto& m = req.method;
    if (seg.size() == 1 && seg[0] == "health" && m == "GET") {
      return ok(200, {{"status", "ok"}});
    }
    if (seg.size() == 1 && seg[0] == "sweep" && m == "GET") return sweep(req);
    if (!seg.empty() && seg[0] == "sessions") {
      if (seg.size() == 1 && m == "POST") return create(req);
      if (seg.size() == 2 && m == "GET") return get(seg[1]);
      if (seg.size() == 3 && seg[2] == "move" && m == "POST") return move(seg[1], req);
      if (seg.size() == 3 && seg[2] == "amplitudes" && m == "GET") return amplitudes(seg[1]);
    }
    throw ApiError{ApiCode::NotFound, "no route for " + m + " " + req.path};
  }

  Response create(const Request& req) {
    const auto body = parse_body(req.body);
    const auto engine = game::parse_engine(string_field(body, "engine"));
    if (!engine) {
      throw ApiError{ApiCode::BadRequest, "engine must be classical, scheme1 or scheme2"};
    }
    std::uint64_t seed;
    if (auto it = body.find("seed"); it != body.end() && !it->is_null()) {
      if (!it->is_number_unsigned()) {
        throw ApiError{ApiCode::BadRequest, "seed must be a non-negative integer"};
      }
      seed = it->get<std::uint64_t>();
    } else {
      seed = draw_seed();
    }
    auto slot = std::make_shared<Slot>(game::Session::create(*engine, seed));
    json view;
    {
      std::lock_guard lock(slot->mu);
      persist(slot->session);
      view = slot->session.projection();
    }
    {
      std::unique_lock lock(map_mu_);
      sessions_.emplace(slot->session.id(), slot);
    }
    return ok(201, view);
  }

  Response get(const std::string& id) {
    auto slot = require(id);
    std::lock_guard lock(slot->mu);
    return ok(200, slot->session.projection());
  }

  Response move(const std::string& id, const Request& req) {
    auto slot = require(id);
    const auto body = parse_body(req.body);
    const auto action = string_field(body, "action");
    std::lock_guard lock(slot->mu);
    auto& s = slot->session;
    if (action == "first_pick") {
      const auto door = parse_door(string_field(body, "door"));
      if (!door) throw ApiError{ApiCode::BadRequest, "door must be D1, D2 or D3"};
      s.pick_first(*door);
    } else if (action == "final_pick") {
      const auto choice = string_field(body, "choice");
      if (choice == "stick") {
        s.pick_final(Strategy::Stick);
      } else if (choice == "switch") {
        s.pick_final(Strategy::Switch);
      } else if (const auto door = parse_door(choice)) {
        s.pick_final(*door);
      } else {
        throw ApiError{ApiCode::BadRequest, "choice must be stick, switch or a door"};
      }
    } else {
      throw ApiError{ApiCode::BadRequest, "action must be first_pick or final_pick"};
    }
    persist(s);
    return ok(200, s.projection());
  }

  Response amplitudes(const std::string& id) {
    auto slot = require(id);
    std::lock_guard lock(slot->mu);
    const auto& s = slot->session;
    if (s.engine() != game::Engine::QuantumScheme1) {
      throw ApiError{ApiCode::BadRequest, "amplitudes are only defined for scheme1 sessions"};
    }
    if (!s.first()) throw ApiError{ApiCode::Conflict, "no first pick yet"};
    return ok(200, {{"id", s.id()},
                    {"register", "A3A4"},
                    {"opened", name(*s.opened())},
                    {"amplitudes", game::amplitudes_json(s.prize(), *s.first())}});
  }

  Response sweep(const Request& req) {
    auto it = req.query.find("scheme");
    if (it == req.query.end()) throw ApiError{ApiCode::BadRequest, "scheme query is required"};
    if (it->second == "1") return ok(200, report::to_json(scheme1::sweep()));
    if (it->second == "2") return ok(200, report::to_json(scheme2::sweep()));
    throw ApiError{ApiCode::BadRequest, "scheme must be 1 or 2"};
  }

  std::shared_ptr<Slot> find(const std::string& id) const {
    std::shared_lock lock(map_mu_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
  }

  std::shared_ptr<Slot> require(const std::string& id) const {
    auto slot = find(id);
    if (!slot) throw ApiError{ApiCode::NotFound, "no session " + id};
    return slot;
  }

  void persist(const game::Session& s) const {
    if (!opt_.data_dir) return;
    const auto path = *opt_.data_dir / (s.id() + ".json");
    const auto tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      out << game::serialize(s);
      if (!out) throw Error(ErrorKind::Invariant, "cannot write " + tmp);
    }
    std::filesystem::rename(tmp, path);
  }

  std::uint64_t draw_seed() {
    std::lock_guard lock(seed_mu_);
    return seed_rng_();
  }

  Options opt_;
  mutable std::shared_mutex map_mu_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::mutex seed_mu_;
  Rng seed_rng_{std::random_device{}()};
};

}  // namespace qmonty::service
