#pragma once

// Exhaustive classical Monty Hall evaluator. The host opens the lowest door
// that is neither the prize nor the player's first pick.

#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qmonty/error.hpp"

namespace qmonty {

/// Door with its two-bit register encoding as the enumerator value:
/// D1 = 00, D2 = 01, D3 = 10. The pattern 11 is never a door.
enum class Door : std::uint8_t { D1 = 0, D2 = 1, D3 = 2 };

inline constexpr std::array<Door, 3> kDoors{Door::D1, Door::D2, Door::D3};

inline constexpr std::uint8_t code(Door d) { return static_cast<std::uint8_t>(d); }
inline constexpr std::size_t index(Door d) { return static_cast<std::size_t>(d); }

inline Door door_from_code(unsigned bits) {
  if (bits > 2) fail(ErrorKind::Validation, "encoding " + std::to_string(bits) + " is not a door");
  return static_cast<Door>(bits);
}

inline std::string name(Door d) { return "D" + std::to_string(index(d) + 1); }

/// Two-bit register pattern, high bit first ("00", "01", "10").
inline std::string bits(Door d) {
  return std::string{static_cast<char>('0' + ((code(d) >> 1) & 1)),
                     static_cast<char>('0' + (code(d) & 1))};
}

/// Accepts "D1".."D3", "d1".."d3" or "1".."3".
inline std::optional<Door> parse_door(std::string_view s) {
  if (s.size() == 2 && (s[0] == 'D' || s[0] == 'd')) s.remove_prefix(1);
  if (s.size() != 1 || s[0] < '1' || s[0] > '3') return std::nullopt;
  return static_cast<Door>(s[0] - '1');
}

enum class Outcome { Win, Lose };
enum class Strategy { Stick, Switch };

inline const char* to_string(Outcome o) { return o == Outcome::Win ? "win" : "lose"; }
inline const char* to_string(Strategy s) { return s == Strategy::Stick ? "stick" : "switch"; }

inline Door host_open(Door prize, Door first) {
  for (Door d : kDoors) {
    if (d != prize && d != first) return d;
  }
  fail(ErrorKind::Invariant, "no door left for the host");  // unreachable with 3 doors
}

/// The unopened door that is not the first pick.
inline Door switch_target(Door prize, Door first) {
  const Door opened = host_open(prize, first);
  for (Door d : kDoors) {
    if (d != first && d != opened) return d;
  }
  fail(ErrorKind::Invariant, "no switch target");
}

inline Door final_door(Door prize, Door first, Strategy s) {
  return s == Strategy::Stick ? first : switch_target(prize, first);
}

inline Outcome outcome(Door prize, Door first, Door second) {
  if (second == host_open(prize, first)) {
    fail(ErrorKind::Rule, "door " + name(second) + " was opened by the host");
  }
  return second == prize ? Outcome::Win : Outcome::Lose;
}

struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Fraction make(std::int64_t n, std::int64_t d) {
    if (d == 0) fail(ErrorKind::Validation, "zero denominator");
    if (d < 0) n = -n, d = -d;
    const auto g = std::gcd(n, d);
    return g ? Fraction{n / g, d / g} : Fraction{0, 1};
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend Fraction operator+(Fraction a, Fraction b) {
    return make(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Fraction operator-(Fraction a, Fraction b) {
    return make(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

inline std::string to_string(Fraction f) {
  return std::to_string(f.num) + "/" + std::to_string(f.den);
}

/// Exact win probability of a fixed strategy, averaged over a uniform prize
/// and a uniform first pick.
inline Fraction strategy_payoff(Strategy s) {
  std::int64_t wins = 0, total = 0;
  for (Door prize : kDoors) {
    for (Door first : kDoors) {
      ++total;
      if (outcome(prize, first, final_door(prize, first, s)) == Outcome::Win) ++wins;
    }
  }
  return Fraction::make(wins, total);
}

struct CaseRow {
  Door prize, first, opened, second;
  bool win;
  friend bool operator==(const CaseRow&, const CaseRow&) = default;
};

using CaseTable = std::vector<CaseRow>;

/// All 18 legal (prize, first, second) rows, prize-major then first then second.
inline CaseTable full_table() {
  CaseTable t;
  for (Door prize : kDoors) {
    for (Door first : kDoors) {
      const Door opened = host_open(prize, first);
      for (Door second : kDoors) {
        if (second == opened) continue;
        t.push_back({prize, first, opened, second,
                     outcome(prize, first, second) == Outcome::Win});
      }
    }
  }
  return t;
}

inline std::string to_csv(const CaseTable& t) {
  std::ostringstream out;
  out << "prize,first,opened,second,win\n";
  for (const auto& r : t) {
    out << name(r.prize) << ',' << name(r.first) << ',' << name(r.opened) << ','
        << name(r.second) << ',' << (r.win ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace qmonty
