#pragma once

// Probability-of-winning circuit. Twelve qubits:
//
//   D1 D2 D3      prize flags (one-hot, classical input)
//   D1' D2' D3'   copies of the prize flags, read by the final controlled
//                 measurement
//   B1 B2         Bob's door register
//   A1 A2         Alice's first pick
//   A3 A4         Alice's final-choice register
//
// Stages:
//   1. X on the prize flag, CNOT each flag onto its copy; X-encode the pick.
//   2. Three-state superposition on B1B2 and on A3A4.
//   3. Remove Alice's pick from B1B2 (controlled on A1A2).
//   4. Remove the host-opened door from A3A4 (controlled on the prize flag and
//      A1A2, one gadget per (prize, pick) case).
//   5. Uncompute B1B2 back to |00>, then CNOT A3 -> B1 and A4 -> B2, leaving
//      Bob's register perfectly correlated with Alice's.
//
// Measuring A3A4 can never return the opened door or |11>; the measured
// door's copy flag then tells whether it hides the prize.

#include <array>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qmonty/classical.hpp"
#include "qmonty/door_register.hpp"
#include "qmonty/gates.hpp"

namespace qmonty::scheme1 {

struct Layout {
  std::array<std::size_t, 3> prize{0, 1, 2};
  std::array<std::size_t, 3> prize_copy{3, 4, 5};
  DoorRegister bob{6, 7};
  DoorRegister first{8, 9};
  DoorRegister alice{10, 11};

  static constexpr std::size_t kQubits = 12;

  static std::vector<std::string> labels() {
    return {"D1", "D2", "D3", "D1'", "D2'", "D3'", "B1", "B2", "A1", "A2", "A3", "A4"};
  }
};

inline const Layout kLayout{};

struct Options {
  /// Include stage 5. Without it A3A4 is still a pure product factor.
  bool entangle = true;
  /// Include Bob's stages 2-3 on B1B2. Off leaves every qubit except A3A4 in
  /// a basis state, so the A3A4 factor can be read off with its phases.
  bool bob_register = true;
};

inline Circuit build(Door prize, Door first, Options opt = {}) {
  const auto& L = kLayout;
  Circuit c(Layout::kQubits, Layout::labels());

  c.add(std_gate(GateKind::X, L.prize[index(prize)]));
  for (std::size_t k = 0; k < 3; ++k) {
    c.add(controlled(GateKind::X, {on(L.prize[k])}, L.prize_copy[k]));
  }
  append_all(c, encode_door(first, L.first));

  if (opt.bob_register) append_all(c, three_state_prep(L.bob));
  append_all(c, three_state_prep(L.alice));

  if (opt.bob_register) {
    for (Door f : kDoors) {
      append_all(c, removal_gadget(f, L.bob), door_controls(f, L.first));
    }
  }

  for (Door p : kDoors) {
    for (Door f : kDoors) {
      append_all(c, removal_gadget(host_open(p, f), L.alice),
                 concat({on(L.prize[index(p)])}, door_controls(f, L.first)));
    }
  }

  if (opt.entangle) {
    if (!opt.bob_register) fail(ErrorKind::Validation, "entangling stage needs the Bob register");
    for (Door f : kDoors) {
      append_all(c, inverse(removal_gadget(f, L.bob)), door_controls(f, L.first));
    }
    append_all(c, inverse(three_state_prep(L.bob)));
    c.add(controlled(GateKind::X, {on(L.alice.hi)}, L.bob.hi));
    c.add(controlled(GateKind::X, {on(L.alice.lo)}, L.bob.lo));
  }

  c.measure({L.alice.hi, L.alice.lo}, "final");
  c.measure({L.prize_copy[0], L.prize_copy[1], L.prize_copy[2]}, "prize_copy");
  return c;
}

/// Amplitudes of the A3A4 factor indexed by its two-bit value (00, 01, 10, 11),
/// read before the entangling stage. Bob's gates never touch A3A4, so they are
/// left out here.
inline std::array<Amplitude, 4> alice_amplitudes(Door prize, Door first) {
  const auto& L = kLayout;
  const auto state = simulate(build(prize, first, {.entangle = false, .bob_register = false}));
  std::size_t peak = 0;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if (std::norm(state[i]) > std::norm(state[peak])) peak = i;
  }
  const std::uint64_t hi = std::uint64_t{1} << L.alice.hi;
  const std::uint64_t lo = std::uint64_t{1} << L.alice.lo;
  const std::uint64_t rest = peak & ~(hi | lo);
  std::array<Amplitude, 4> out{};
  for (unsigned v = 0; v < 4; ++v) {
    out[v] = state[rest | ((v & 2) ? hi : 0) | ((v & 1) ? lo : 0)];
  }
  return out;
}

/// Doors carried by A3A4 with probability above `threshold`.
inline std::set<Door> alice_support(Door prize, Door first, double threshold = 1e-10) {
  const auto amps = alice_amplitudes(prize, first);
  std::set<Door> out;
  for (unsigned v = 0; v < 3; ++v) {
    if (std::norm(amps[v]) > threshold) out.insert(door_from_code(v));
  }
  return out;
}

struct Prepared {
  Door prize;
  Door first;
  StateVector state;
  /// Joint probabilities of (A3, A4, D1', D2', D3'), A3 as the top bit.
  std::vector<double> readout;
};

inline std::array<std::size_t, 5> readout_qubits() {
  const auto& L = kLayout;
  return {L.alice.hi, L.alice.lo, L.prize_copy[0], L.prize_copy[1], L.prize_copy[2]};
}

inline Prepared prepare(Door prize, Door first) {
  auto state = simulate(build(prize, first));
  const auto q = readout_qubits();
  auto readout = qmonty::detail::marginal_dense(state, q);
  return {prize, first, std::move(state), std::move(readout)};
}

struct Result {
  Distribution alice_marginal;  // over A3A4, keyed "A3A4"
  Door opened;
  Door final_door;
  bool win;
};

namespace detail {

inline Door checked_final(unsigned v, Door opened, const std::string& outcome) {
  if (v == 3 || v == code(opened)) {
    fail(ErrorKind::Invariant, "final register collapsed onto " + outcome);
  }
  return door_from_code(v);
}

}  // namespace detail

/// Measures A3A4, then the copy flag of the door it names. Samples from the
/// precomputed joint readout table; draws match restricted_measurement_collapse.
inline Result restricted_measurement(const Prepared& prep, Rng& rng) {
  std::array<double, 4> pa{};
  for (std::size_t i = 0; i < prep.readout.size(); ++i) pa[i >> 3] += prep.readout[i];
  Result r{{}, host_open(prep.prize, prep.first), Door::D1, false};
  for (unsigned a = 0; a < 4; ++a) {
    if (pa[a] >= kAmplitudeFloor * kAmplitudeFloor) r.alice_marginal.entries[to_bitstring(a, 2)] = pa[a];
  }
  const auto v = static_cast<unsigned>(qmonty::detail::sample_index(pa, rng));
  r.final_door = detail::checked_final(v, r.opened, to_bitstring(v, 2));
  const unsigned flag_bit = 2 - static_cast<unsigned>(index(r.final_door));
  std::array<double, 2> pf{};
  for (unsigned f = 0; f < 8; ++f) pf[(f >> flag_bit) & 1] += prep.readout[(v << 3) | f];
  r.win = qmonty::detail::sample_index(pf, rng) == 1;
  return r;
}

/// Same measurement done by collapsing the full state twice.
inline Result restricted_measurement_collapse(const Prepared& prep, Rng& rng) {
  const auto& L = kLayout;
  const std::array<std::size_t, 2> alice{L.alice.hi, L.alice.lo};
  Result r{marginal(prep.state, alice), host_open(prep.prize, prep.first), Door::D1, false};
  const auto m = measure_subset(prep.state, alice, rng);
  const unsigned v = static_cast<unsigned>(m.bits[0] * 2 + m.bits[1]);
  r.final_door = detail::checked_final(v, r.opened, m.outcome);
  const std::array<std::size_t, 1> flag{L.prize_copy[index(r.final_door)]};
  r.win = measure_subset(m.post, flag, rng).bits[0] == 1;
  return r;
}

inline Result restricted_measurement(Door prize, Door first, Rng& rng) {
  return restricted_measurement(prepare(prize, first), rng);
}

/// Reads the copy flag of a door the player chose directly (stick/switch).
inline bool door_flag(const Prepared& prep, Door door, Rng& rng) {
  const std::array<std::size_t, 1> flag{kLayout.prize_copy[index(door)]};
  return measure_subset(prep.state, flag, rng).bits[0] == 1;
}

enum class Strategy { Stick, Switch, MeasureQuantum };

inline double win_probability(Door prize, Door first, Strategy s) {
  switch (s) {
    case Strategy::Stick: return prize == first ? 1.0 : 0.0;
    case Strategy::Switch: return prize == switch_target(prize, first) ? 1.0 : 0.0;
    case Strategy::MeasureQuantum: return std::norm(alice_amplitudes(prize, first)[code(prize)]);
  }
  return 0.0;
}

struct SweepRow {
  Door prize, first, opened;
  std::set<Door> support;
  double p_stick, p_switch, p_measure;
};

inline std::vector<SweepRow> sweep() {
  std::vector<SweepRow> rows;
  for (Door p : kDoors) {
    for (Door f : kDoors) {
      rows.push_back({p, f, host_open(p, f), alice_support(p, f),
                      win_probability(p, f, Strategy::Stick),
                      win_probability(p, f, Strategy::Switch),
                      win_probability(p, f, Strategy::MeasureQuantum)});
    }
  }
  return rows;
}

}  // namespace qmonty::scheme1
