#pragma once

// Interactive Monty Hall session: create -> first pick (host opens a door) ->
// final pick (stick / switch / explicit door) -> revealed.
//
// Session blob (schema 1) is a JSON object with the fields
//   schema, id, phase, engine, seed, prize, first, opened, final, result,
//   transcript[]
// Doors are "D1".."D3"; unset fields are null. The client projection drops
// `prize` and `seed` (the seed determines the prize) until the phase is
// "revealed". docs/session-schema.md has the full description.

#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "qmonty/classical.hpp"
#include "qmonty/scheme1.hpp"
#include "qmonty/scheme2.hpp"

namespace qmonty::game {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

enum class Phase { AwaitingFirstPick, HostOpened, AwaitingFinalPick, Revealed };
enum class Engine { Classical, QuantumScheme1, QuantumScheme2 };

inline const char* to_string(Phase p) {
  switch (p) {
    case Phase::AwaitingFirstPick: return "awaiting_first_pick";
    case Phase::HostOpened: return "host_opened";
    case Phase::AwaitingFinalPick: return "awaiting_final_pick";
    case Phase::Revealed: return "revealed";
  }
  return "?";
}

inline const char* to_string(Engine e) {
  switch (e) {
    case Engine::Classical: return "classical";
    case Engine::QuantumScheme1: return "scheme1";
    case Engine::QuantumScheme2: return "scheme2";
  }
  return "?";
}

inline std::optional<Engine> parse_engine(std::string_view s) {
  if (s == "classical") return Engine::Classical;
  if (s == "scheme1") return Engine::QuantumScheme1;
  if (s == "scheme2") return Engine::QuantumScheme2;
  return std::nullopt;
}

inline std::optional<Phase> parse_phase(std::string_view s) {
  for (Phase p : {Phase::AwaitingFirstPick, Phase::HostOpened, Phase::AwaitingFinalPick,
                  Phase::Revealed}) {
    if (s == to_string(p)) return p;
  }
  return std::nullopt;
}

/// Stick, switch, or an explicit door.
using FinalChoice = std::variant<Strategy, Door>;

struct Event {
  std::uint64_t seq = 0;
  std::string at;  // UTC, ISO-8601 with milliseconds
  std::string type;
  json detail = json::object();
  friend bool operator==(const Event&, const Event&) = default;
};

inline std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%S") << '.' << std::setw(3) << std::setfill('0')
      << ms << 'Z';
  return out.str();
}

inline std::string new_session_id() {
  static std::atomic<std::uint64_t> counter{0};
  thread_local Rng rng{std::random_device{}()};
  std::ostringstream out;
  out << std::hex << std::setfill('0') << std::setw(16) << rng() << std::setw(4)
      << (counter.fetch_add(1) & 0xffff);
  return out.str();
}

/// Prize drawn from the session seed. Same seed, same prize.
inline Door prize_for_seed(std::uint64_t seed) {
  Rng rng(seed);
  return kDoors[rng() % 3];
}

inline json amplitudes_json(Door prize, Door first) {
  const auto amps = scheme1::alice_amplitudes(prize, first);
  json out = json::array();
  for (unsigned v = 0; v < 3; ++v) {
    out.push_back({{"basis", bits(door_from_code(v))},
                   {"door", name(door_from_code(v))},
                   {"re", amps[v].real()},
                   {"im", amps[v].imag()},
                   {"p", std::norm(amps[v])}});
  }
  return out;
}

class Session {
 public:
  Session() = default;

  static Session create(Engine engine, std::uint64_t seed, std::string id = new_session_id()) {
    Session s;
    s.id_ = std::move(id);
    s.engine_ = engine;
    s.seed_ = seed;
    s.prize_ = prize_for_seed(seed);
    s.log("created", {{"engine", to_string(engine)}});
    return s;
  }

  const std::string& id() const { return id_; }
  Phase phase() const { return phase_; }
  Engine engine() const { return engine_; }
  std::uint64_t seed() const { return seed_; }
  Door prize() const { return prize_; }
  std::optional<Door> first() const { return first_; }
  std::optional<Door> opened() const { return opened_; }
  std::optional<Door> final_door() const { return final_; }
  std::optional<Outcome> result() const { return result_; }
  const std::vector<Event>& transcript() const { return transcript_; }

  void pick_first(Door door) {
    if (phase_ != Phase::AwaitingFirstPick) {
      fail(ErrorKind::State, std::string("first pick not allowed in phase ") + to_string(phase_));
    }
    first_ = door;
    opened_ = host_open(prize_, door);
    log("first_pick", {{"door", name(door)}});
    phase_ = Phase::HostOpened;
    log("host_opened", {{"door", name(*opened_)}});
    phase_ = Phase::AwaitingFinalPick;
    log("awaiting_final_pick", json::object());
  }

  void pick_final(FinalChoice choice) {
    if (phase_ != Phase::AwaitingFinalPick) {
      fail(ErrorKind::State, std::string("final pick not allowed in phase ") + to_string(phase_));
    }
    Door door;
    std::string how;
    if (const auto* s = std::get_if<Strategy>(&choice)) {
      door = final_door_for(*s);
      how = to_string(*s);
    } else {
      door = std::get<Door>(choice);
      if (door == *opened_) {
        fail(ErrorKind::Rule, "door " + name(door) + " is already open");
      }
      how = door == *first_ ? "stick" : "switch";
    }

    json detail{{"door", name(door)}, {"choice", how}};
    const Outcome r = evaluate(door, detail);
    final_ = door;
    result_ = r;
    log("final_pick", std::move(detail));
    phase_ = Phase::Revealed;
    log("revealed", {{"prize", name(prize_)}, {"result", qmonty::to_string(r)}});
  }

  Door final_door_for(Strategy s) const {
    if (!first_) fail(ErrorKind::State, "no first pick yet");
    return s == Strategy::Stick ? *first_ : switch_target(prize_, *first_);
  }

  /// Storage form: every field, including the hidden prize.
  json to_json() const {
    json t = json::array();
    for (const auto& e : transcript_) {
      t.push_back({{"seq", e.seq}, {"at", e.at}, {"type", e.type}, {"detail", e.detail}});
    }
    auto opt_door = [](const std::optional<Door>& d) { return d ? json(name(*d)) : json(); };
    return {{"schema", kSchemaVersion},
            {"id", id_},
            {"phase", to_string(phase_)},
            {"engine", to_string(engine_)},
            {"seed", seed_},
            {"prize", name(prize_)},
            {"first", opt_door(first_)},
            {"opened", opt_door(opened_)},
            {"final", opt_door(final_)},
            {"result", result_ ? json(qmonty::to_string(*result_)) : json()},
            {"transcript", std::move(t)}};
  }

  /// Client-facing form: prize and seed withheld until revealed; scheme1
  /// sessions carry the A3A4 amplitudes once revealed.
  json projection() const {
    json j = to_json();
    j.erase("schema");
    if (phase_ != Phase::Revealed) {
      j.erase("prize");
      j.erase("seed");
    } else if (engine_ == Engine::QuantumScheme1) {
      j["amplitudes"] = amplitudes_json(prize_, *first_);
    }
    return j;
  }

  static Session from_json(const json& j);

  friend bool operator==(const Session&, const Session&) = default;

 private:
  void log(std::string type, json detail) {
    transcript_.push_back({transcript_.size(), utc_now(), std::move(type), std::move(detail)});
  }

  Outcome evaluate(Door door, json& detail) const {
    switch (engine_) {
      case Engine::Classical:
        return outcome(prize_, *first_, door);
      case Engine::QuantumScheme1: {
        Rng rng(seed_);
        const auto prep = scheme1::prepare(prize_, *first_);
        detail["circuit"] = {{"scheme", 1}, {"prize", name(prize_)}, {"first", name(*first_)}};
        detail["amplitudes"] = amplitudes_json(prize_, *first_);
        return scheme1::door_flag(prep, door, rng) ? Outcome::Win : Outcome::Lose;
      }
      case Engine::QuantumScheme2: {
        Rng rng(seed_);
        const auto v = scheme2::verdict(prize_, *first_, door, rng);
        detail["circuit"] = {{"scheme", 2},
                             {"prize", name(prize_)},
                             {"first", name(*first_)},
                             {"second", name(door)}};
        detail["ancilla"] = v.ancilla_bits;
        return v.result;
      }
    }
    fail(ErrorKind::Invariant, "unknown engine");
  }

  std::string id_;
  Phase phase_ = Phase::AwaitingFirstPick;
  Engine engine_ = Engine::Classical;
  std::uint64_t seed_ = 0;
  Door prize_ = Door::D1;
  std::optional<Door> first_, opened_, final_;
  std::optional<Outcome> result_;
  std::vector<Event> transcript_;
};

namespace detail {

[[noreturn]] inline void schema_error(const std::string& what) {
  throw ParseError(0, "session blob: " + what);
}

inline const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) schema_error(std::string("missing field '") + key + "'");
  return *it;
}

inline std::optional<Door> opt_door(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (v.is_null()) return std::nullopt;
  if (!v.is_string()) schema_error(std::string("field '") + key + "' must be a door or null");
  const auto d = parse_door(v.get<std::string>());
  if (!d) schema_error(std::string("field '") + key + "' is not a door");
  return d;
}

}  // namespace detail

inline Session Session::from_json(const json& j) {
  using detail::field;
  using detail::schema_error;
  if (!j.is_object()) schema_error("not an object");
  if (field(j, "schema") != kSchemaVersion) schema_error("unsupported schema version");
  Session s;
  try {
    s.id_ = field(j, "id").get<std::string>();
    const auto phase = parse_phase(field(j, "phase").get<std::string>());
    const auto engine = parse_engine(field(j, "engine").get<std::string>());
    if (!phase) schema_error("unknown phase");
    if (!engine) schema_error("unknown engine");
    s.phase_ = *phase;
    s.engine_ = *engine;
    s.seed_ = field(j, "seed").get<std::uint64_t>();
    const auto prize = detail::opt_door(j, "prize");
    if (!prize) schema_error("prize is required in storage form");
    s.prize_ = *prize;
    s.first_ = detail::opt_door(j, "first");
    s.opened_ = detail::opt_door(j, "opened");
    s.final_ = detail::opt_door(j, "final");
    const auto& res = field(j, "result");
    if (!res.is_null()) {
      const auto r = res.get<std::string>();
      if (r != "win" && r != "lose") schema_error("result must be win, lose or null");
      s.result_ = r == "win" ? Outcome::Win : Outcome::Lose;
    }
    for (const auto& e : field(j, "transcript")) {
      s.transcript_.push_back({field(e, "seq").get<std::uint64_t>(),
                               field(e, "at").get<std::string>(),
                               field(e, "type").get<std::string>(), field(e, "detail")});
    }
  } catch (const json::type_error& e) {
    schema_error(e.what());
  }

  const bool picked = s.phase_ != Phase::AwaitingFirstPick;
  const bool done = s.phase_ == Phase::Revealed;
  if (picked != s.first_.has_value() || picked != s.opened_.has_value()) {
    schema_error("first/opened inconsistent with phase");
  }
  if (done != s.final_.has_value() || done != s.result_.has_value()) {
    schema_error("final/result inconsistent with phase");
  }
  if (picked && *s.opened_ != host_open(s.prize_, *s.first_)) {
    schema_error("opened door does not follow the host rule");
  }
  return s;
}

inline std::string serialize(const Session& s) { return s.to_json().dump(2); }

inline Session deserialize(std::string_view blob) {
  json j;
  try {
    j = json::parse(blob);
  } catch (const json::parse_error& e) {
    throw ParseError(e.byte, std::string("session blob: ") + e.what());
  }
  return Session::from_json(j);
}

}  // namespace qmonty::game
