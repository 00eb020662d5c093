#pragma once

// Win/lose verdict circuit. Twelve qubits:
//
//   D1 D2 D3     prize flags (one-hot)
//   I11 I12      first pick          I21 I22   second pick
//   S1 S2        door-state register
//   A1 A2 A3     verdict ancillas (green / blue / purple stage)
//
// Stages:
//   1. X-encode prize and both picks; three-state superposition on S1S2.
//   2. Bob stage: remove the host-opened door from S1S2 (NineCase or the
//      merged MergedFour form, which are statevector-identical).
//   3. Pair transforms. When the second pick equals the prize, collapse S1S2 to
//      a basis pattern that identifies (pair, prize):
//        pair {D1,D2} (A): ACH(S1->S2), then X(S2) if the prize is D1
//        pair {D1,D3} (B): ACH(S2->S1), then X(S1) if the prize is D1
//        pair {D2,D3} (C): CNOT(S1->S2), H(S1), then X(S1),X(S2) if the prize is D3
//      Losing picks leave S1S2 untouched.
//   4. Two multi-controlled NOTs per pair flip that pair's ancilla. Each uses
//      five controls: prize flag, I21I22 and S1S2.
//
// The verdict is Win iff the ancilla readout is one-hot.

#include <array>
#include <set>
#include <string>
#include <vector>

#include "qmonty/classical.hpp"
#include "qmonty/door_register.hpp"
#include "qmonty/gates.hpp"

namespace qmonty::scheme2 {

struct Layout {
  std::array<std::size_t, 3> prize{0, 1, 2};
  DoorRegister first{3, 4};
  DoorRegister second{5, 6};
  DoorRegister s{7, 8};
  std::array<std::size_t, 3> ancilla{9, 10, 11};
  /// Scratch qubits appended only for the decomposed multi-controlled NOTs.
  std::array<std::size_t, 3> work{12, 13, 14};

  static constexpr std::size_t kQubits = 12;
  static constexpr std::size_t kQubitsWithWork = 15;

  static std::vector<std::string> labels(bool with_work) {
    std::vector<std::string> l{"D1", "D2", "D3", "I11", "I12", "I21", "I22",
                               "S1", "S2", "A1", "A2", "A3"};
    if (with_work) l.insert(l.end(), {"W1", "W2", "W3"});
    return l;
  }
};

inline const Layout kLayout{};

enum class BobStageForm { NineCase, MergedFour };
enum class McxForm { Native, Decomposed };

/// The three door pairs left after the host opens a door, named after the
/// green / blue / purple ancilla stage that reports them.
enum class Pair { A, B, C };

inline Pair pair_after_opening(Door opened) {
  switch (opened) {
    case Door::D3: return Pair::A;
    case Door::D2: return Pair::B;
    case Door::D1: return Pair::C;
  }
  fail(ErrorKind::Validation, "bad door");
}

inline std::array<Door, 2> doors_of(Pair p) {
  switch (p) {
    case Pair::A: return {Door::D1, Door::D2};
    case Pair::B: return {Door::D1, Door::D3};
    case Pair::C: return {Door::D2, Door::D3};
  }
  fail(ErrorKind::Validation, "bad pair");
}

inline const char* to_string(Pair p) {
  switch (p) {
    case Pair::A: return "A";
    case Pair::B: return "B";
    case Pair::C: return "C";
  }
  return "?";
}

/// S1S2 value (2*S1 + S2) after the pair transform when `winner` is the prize
/// and the second pick.
inline unsigned collapsed_pattern(Pair p, Door winner) {
  switch (p) {
    case Pair::A: return winner == Door::D1 ? 0b01 : 0b00;
    case Pair::B: return winner == Door::D1 ? 0b10 : 0b00;
    case Pair::C: return winner == Door::D2 ? 0b01 : 0b10;
  }
  return 0;
}

inline std::vector<GateOp> pair_transform(Pair p, Door winner, DoorRegister s) {
  std::vector<GateOp> ops;
  switch (p) {
    case Pair::A:
      ops.push_back(controlled(GateKind::H, {anti(s.hi)}, s.lo));
      if (winner == Door::D1) ops.push_back(std_gate(GateKind::X, s.lo));
      break;
    case Pair::B:
      ops.push_back(controlled(GateKind::H, {anti(s.lo)}, s.hi));
      if (winner == Door::D1) ops.push_back(std_gate(GateKind::X, s.hi));
      break;
    case Pair::C:
      ops.push_back(controlled(GateKind::X, {on(s.hi)}, s.lo));
      ops.push_back(std_gate(GateKind::H, s.hi));
      if (winner == Door::D3) {
        ops.push_back(std_gate(GateKind::X, s.hi));
        ops.push_back(std_gate(GateKind::X, s.lo));
      }
      break;
  }
  return ops;
}

/// Removal of the host-opened door from S1S2, controlled on the prize flags and
/// the first pick. Acts on a register of `n_qubits` (12 or 15).
inline Circuit build_bob_stage(BobStageForm form, std::size_t n_qubits = Layout::kQubits) {
  const auto& L = kLayout;
  Circuit c(n_qubits, Layout::labels(n_qubits > Layout::kQubits));
  if (form == BobStageForm::NineCase) {
    for (Door p : kDoors) {
      for (Door f : kDoors) {
        append_all(c, removal_gadget(host_open(p, f), L.s),
                   concat({on(L.prize[index(p)])}, door_controls(f, L.first)));
      }
    }
    return c;
  }

  // MergedFour. Group predicates go into A1/A2, which are |0> during this
  // stage, and are uncomputed afterwards:
  //   not_first_d1 (A1) = first != D1
  //   opens_d3     (A2) = (prize D1, first D2) or (prize D2, first D1)
  // Remove-|00> cases are exactly prize != D1 and first != D1.
  const std::size_t not_first_d1 = L.ancilla[0];
  const std::size_t opens_d3 = L.ancilla[1];
  std::vector<GateOp> predicates{
      std_gate(GateKind::X, not_first_d1),
      mcx({anti(L.first.hi), anti(L.first.lo)}, not_first_d1),
      mcx({on(L.prize[0]), anti(L.first.hi), on(L.first.lo)}, opens_d3),
      mcx({on(L.prize[1]), anti(L.first.hi), anti(L.first.lo)}, opens_d3),
  };
  append_all(c, predicates);
  // ACZ shared by the 4 remove-|00> cases
  c.add(controlled(GateKind::Z, {anti(L.s.hi), anti(L.prize[0]), on(not_first_d1)}, L.s.lo));
  // ACH shared by the remove-|00> and remove-|01> cases (everything but opens_d3)
  c.add(controlled(GateKind::H, {anti(L.s.hi), anti(opens_d3)}, L.s.lo));
  // remove-|10>
  c.add(controlled(GateKind::H, {on(L.s.hi), on(opens_d3)}, L.s.lo));
  c.add(controlled(GateKind::H, {on(opens_d3)}, L.s.hi));
  append_all(c, inverse(predicates));
  return c;
}

/// Gates in a Bob stage that act on S1S2 (the controlled operations proper).
inline std::size_t register_ops(const Circuit& bob_stage) {
  std::size_t n = 0;
  for (const auto& g : bob_stage.ops()) {
    if (g.target == kLayout.s.hi || g.target == kLayout.s.lo) ++n;
  }
  return n;
}

/// The five controls of the ancilla flip for `winner` in `pair`.
inline std::vector<ControlSpec> ancilla_controls(Pair p, Door winner) {
  const auto& L = kLayout;
  const unsigned s = collapsed_pattern(p, winner);
  return concat(concat({on(L.prize[index(winner)])}, door_controls(winner, L.second)),
                {(s & 2) ? on(L.s.hi) : anti(L.s.hi), (s & 1) ? on(L.s.lo) : anti(L.s.lo)});
}

struct Options {
  BobStageForm bob = BobStageForm::NineCase;
  McxForm mcx = McxForm::Native;
};

enum class Stage { Prepare, Bob, Transform, Ancilla };

/// Builds the circuit up to and including `last`.
inline Circuit build_until(Door prize, Door first, Door second, Stage last, Options opt = {}) {
  if (second == host_open(prize, first)) {
    fail(ErrorKind::Rule, "second pick " + name(second) + " is the opened door");
  }
  const auto& L = kLayout;
  const bool work = opt.mcx == McxForm::Decomposed;
  const std::size_t n = work ? Layout::kQubitsWithWork : Layout::kQubits;
  Circuit c(n, Layout::labels(work));

  c.add(std_gate(GateKind::X, L.prize[index(prize)]));
  append_all(c, encode_door(first, L.first));
  append_all(c, encode_door(second, L.second));
  append_all(c, three_state_prep(L.s));
  if (last == Stage::Prepare) return c;

  c.append(build_bob_stage(opt.bob, n));
  if (last == Stage::Bob) return c;

  for (Door w : kDoors) {
    for (Door f : kDoors) {
      const Pair p = pair_after_opening(host_open(w, f));
      append_all(c, pair_transform(p, w, L.s),
                 concat(concat({on(L.prize[index(w)])}, door_controls(f, L.first)),
                        door_controls(w, L.second)));
    }
  }
  if (last == Stage::Transform) return c;

  for (Pair p : {Pair::A, Pair::B, Pair::C}) {
    for (Door w : doors_of(p)) {
      const auto g = mcx(ancilla_controls(p, w), L.ancilla[static_cast<std::size_t>(p)]);
      if (work) {
        c.append(decompose_mcx(g, L.work, n));
      } else {
        c.add(g);
      }
    }
  }
  c.measure({L.ancilla[0], L.ancilla[1], L.ancilla[2]}, "verdict");
  return c;
}

inline Circuit build(Door prize, Door first, Door second, Options opt = {}) {
  return build_until(prize, first, second, Stage::Ancilla, opt);
}

/// Control count of each ancilla stage's multi-controlled NOTs (green, blue,
/// purple).
inline std::array<std::size_t, 3> ancilla_stage_control_counts() {
  std::array<std::size_t, 3> out{};
  for (Pair p : {Pair::A, Pair::B, Pair::C}) {
    for (Door w : doors_of(p)) {
      out[static_cast<std::size_t>(p)] =
          std::max(out[static_cast<std::size_t>(p)], ancilla_controls(p, w).size());
    }
  }
  return out;
}

inline std::set<std::string> bob_stage_support(Door prize, Door first, Options opt = {}) {
  // any legal second pick; the Bob stage does not read it
  const Door second = first;
  const auto st = simulate(build_until(prize, first, second, Stage::Bob, opt));
  const auto m = marginal(st, {kLayout.s.hi, kLayout.s.lo});
  std::set<std::string> out;
  for (const auto& [k, p] : m.entries) {
    if (p > 1e-10) out.insert(k);
  }
  return out;
}

/// 1 - max basis probability of S1S2 after the pair transform. Zero (up to
/// rounding) when the transform collapses the pair exactly.
inline double collapse_residual(Door prize, Door first, Door second) {
  const auto st = simulate(build_until(prize, first, second, Stage::Transform));
  const auto m = marginal(st, {kLayout.s.hi, kLayout.s.lo});
  double peak = 0;
  for (const auto& [k, p] : m.entries) peak = std::max(peak, p);
  return 1.0 - peak;
}

/// Pre-measurement distribution of A1A2A3 (keys list A1 first).
inline Distribution ancilla_distribution(Door prize, Door first, Door second,
                                         Options opt = {}) {
  const auto& L = kLayout;
  return marginal(simulate(build(prize, first, second, opt)),
                  {L.ancilla[0], L.ancilla[1], L.ancilla[2]});
}

inline bool is_one_hot(const std::string& bits) {
  return bits == "100" || bits == "010" || bits == "001";
}

struct Verdict {
  std::string ancilla_bits;  // A1A2A3
  Outcome result;
};

inline Verdict verdict(Door prize, Door first, Door second, Rng& rng, Options opt = {}) {
  const auto& L = kLayout;
  const auto st = simulate(build(prize, first, second, opt));
  const auto m = measure_subset(st, {L.ancilla[0], L.ancilla[1], L.ancilla[2]}, rng);
  if (m.bits[0] + m.bits[1] + m.bits[2] > 1) {
    fail(ErrorKind::Invariant, "more than one ancilla set: " + m.outcome);
  }
  return {m.outcome, is_one_hot(m.outcome) ? Outcome::Win : Outcome::Lose};
}

struct SweepRow {
  Door prize, first, second;
  std::string ancilla;
  bool win_quantum, win_classical;
  bool agree() const { return win_quantum == win_classical; }
};

inline std::vector<SweepRow> sweep(Options opt = {}, std::uint64_t seed = 0) {
  std::vector<SweepRow> rows;
  Rng rng(seed);
  for (const auto& r : full_table()) {
    const auto v = verdict(r.prize, r.first, r.second, rng, opt);
    rows.push_back({r.prize, r.first, r.second, v.ancilla_bits, v.result == Outcome::Win, r.win});
  }
  return rows;
}

}  // namespace qmonty::scheme2
