#pragma once

// Gate gadgets on a two-qubit door register (hi, lo) holding D1 = |00>,
// D2 = |01>, D3 = |10>.

#include <vector>

#include "qmonty/classical.hpp"
#include "qmonty/gates.hpp"

namespace qmonty {

struct DoorRegister {
  std::size_t hi = 0;
  std::size_t lo = 0;
};

/// H on both qubits, then CH(hi -> lo) folds |11> away, leaving
/// |00>/2 + |01>/2 + |10>/sqrt2.
inline std::vector<GateOp> three_state_prep(DoorRegister r) {
  return {std_gate(GateKind::H, r.hi), std_gate(GateKind::H, r.lo),
          controlled(GateKind::H, {on(r.hi)}, r.lo)};
}

/// Gates that take the three-state superposition to the uniform superposition
/// of the two other doors.
///   D1: ACZ(hi -> lo), ACH(hi -> lo)
///   D2: ACH(hi -> lo)
///   D3: CH(hi -> lo), H(hi)
/// A single ACH(lo -> hi) does not clear |10> here because the |00>, |10>
/// amplitudes differ (1/2 vs 1/sqrt2); undoing the CH first restores the
/// uniform four-state register, where H on the high qubit clears both |1x>.
inline std::vector<GateOp> removal_gadget(Door removed, DoorRegister r) {
  switch (removed) {
    case Door::D1:
      return {controlled(GateKind::Z, {anti(r.hi)}, r.lo),
              controlled(GateKind::H, {anti(r.hi)}, r.lo)};
    case Door::D2:
      return {controlled(GateKind::H, {anti(r.hi)}, r.lo)};
    case Door::D3:
      return {controlled(GateKind::H, {on(r.hi)}, r.lo), std_gate(GateKind::H, r.hi)};
  }
  fail(ErrorKind::Validation, "bad door");
}

/// X gates writing the door's pattern into a register that starts at |00>.
inline std::vector<GateOp> encode_door(Door d, DoorRegister r) {
  std::vector<GateOp> ops;
  if (code(d) & 2) ops.push_back(std_gate(GateKind::X, r.hi));
  if (code(d) & 1) ops.push_back(std_gate(GateKind::X, r.lo));
  return ops;
}

/// Controls that are active exactly when the register holds `d`.
inline std::vector<ControlSpec> door_controls(Door d, DoorRegister r) {
  return {(code(d) & 2) ? on(r.hi) : anti(r.hi), (code(d) & 1) ? on(r.lo) : anti(r.lo)};
}

inline void append_all(Circuit& c, const std::vector<GateOp>& ops,
                       const std::vector<ControlSpec>& extra = {}) {
  for (const auto& g : ops) c.add_with_controls(g, extra);
}

inline std::vector<ControlSpec> concat(std::vector<ControlSpec> a,
                                       const std::vector<ControlSpec>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace qmonty
