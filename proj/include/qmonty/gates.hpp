#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qmonty/state_vector.hpp"

namespace qmonty {

inline Matrix2 matrix_of(GateKind kind) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (kind) {
    case GateKind::H: return {r, r, r, -r};
    case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Z: return {1.0, 0.0, 0.0, -1.0};
    case GateKind::Custom: break;
  }
  fail(ErrorKind::Validation, "gate kind has no standard matrix");
}

inline GateKind gate_kind_from_name(const std::string& name) {
  if (name == "H" || name == "h") return GateKind::H;
  if (name == "X" || name == "x") return GateKind::X;
  if (name == "Z" || name == "z") return GateKind::Z;
  fail(ErrorKind::Validation, "unknown gate name '" + name + "'");
}

inline GateOp std_gate(GateKind kind, std::size_t target) {
  return GateOp{target, matrix_of(kind), {}, kind};
}

inline GateOp std_gate(const std::string& name, std::size_t target) {
  return std_gate(gate_kind_from_name(name), target);
}

inline void check_controls(std::span<const ControlSpec> controls, std::size_t target) {
  for (std::size_t i = 0; i < controls.size(); ++i) {
    if (controls[i].qubit == target) {
      fail(ErrorKind::Validation, "control overlaps target q" + std::to_string(target));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (controls[j].qubit == controls[i].qubit) {
        fail(ErrorKind::Validation,
             "duplicate control q" + std::to_string(controls[i].qubit));
      }
    }
  }
}

inline GateOp controlled(GateKind kind, std::vector<ControlSpec> controls,
                         std::size_t target) {
  check_controls(controls, target);
  return GateOp{target, matrix_of(kind), std::move(controls), kind};
}

inline GateOp controlled(const std::string& name, std::vector<ControlSpec> controls,
                         std::size_t target) {
  return controlled(gate_kind_from_name(name), std::move(controls), target);
}

inline constexpr std::size_t kMaxMcxControls = 5;

/// Multi-controlled NOT with 2 to 5 controls of either polarity.
inline GateOp mcx(std::vector<ControlSpec> controls, std::size_t target) {
  if (controls.size() < 2) {
    fail(ErrorKind::Validation, "mcx needs at least 2 controls; use controlled()");
  }
  if (controls.size() > kMaxMcxControls) {
    fail(ErrorKind::Validation, "mcx supports at most 5 controls");
  }
  check_controls(controls, target);
  return GateOp{target, matrix_of(GateKind::X), std::move(controls), GateKind::X};
}

struct MeasureSpec {
  std::vector<std::size_t> qubits;
  std::string tag;
  friend bool operator==(const MeasureSpec&, const MeasureSpec&) = default;
};

/// Ordered gate list over a labeled register. Every added gate is validated
/// against the register size.
class Circuit {
 public:
  explicit Circuit(std::size_t n_qubits, std::vector<std::string> labels = {})
      : n_(n_qubits), labels_(std::move(labels)) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
      fail(ErrorKind::Size, "circuit size " + std::to_string(n_qubits) + " out of range");
    }
    if (labels_.empty()) {
      for (std::size_t q = 0; q < n_; ++q) labels_.push_back("q" + std::to_string(q));
    }
    if (labels_.size() != n_) fail(ErrorKind::Validation, "label count != qubit count");
    for (std::size_t i = 0; i < n_; ++i) {
      if (labels_[i].empty()) fail(ErrorKind::Validation, "empty qubit label");
      for (std::size_t j = 0; j < i; ++j) {
        if (labels_[i] == labels_[j]) {
          fail(ErrorKind::Validation, "duplicate label " + labels_[i]);
        }
      }
    }
  }

  std::size_t n_qubits() const { return n_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<GateOp>& ops() const { return ops_; }
  const std::vector<MeasureSpec>& measurements() const { return measurements_; }
  std::size_t size() const { return ops_.size(); }

  std::optional<std::size_t> index_of(const std::string& label) const {
    for (std::size_t i = 0; i < n_; ++i) {
      if (labels_[i] == label) return i;
    }
    return std::nullopt;
  }

  Circuit& add(GateOp g) {
    validate(g, n_);
    ops_.push_back(std::move(g));
    return *this;
  }

  /// Appends every gate of `other`, which must act on the same register size.
  Circuit& append(const Circuit& other) {
    if (other.n_ != n_) fail(ErrorKind::Validation, "appending circuit of different size");
    for (const auto& g : other.ops_) ops_.push_back(g);
    return *this;
  }

  /// Appends `g` with `extra` controls added to it.
  Circuit& add_with_controls(const GateOp& g, std::span<const ControlSpec> extra) {
    GateOp c = g;
    c.controls.insert(c.controls.begin(), extra.begin(), extra.end());
    return add(std::move(c));
  }

  Circuit& measure(std::vector<std::size_t> qubits, std::string tag) {
    detail::check_subset(qubits, n_);
    measurements_.push_back({std::move(qubits), std::move(tag)});
    return *this;
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::size_t n_;
  std::vector<std::string> labels_;
  std::vector<GateOp> ops_;
  std::vector<MeasureSpec> measurements_;
};

/// Inverse of a gate sequence: reversed order, each matrix replaced by its
/// conjugate transpose.
inline std::vector<GateOp> inverse(std::span<const GateOp> ops) {
  std::vector<GateOp> inv(ops.rbegin(), ops.rend());
  for (auto& g : inv) {
    g.u = {std::conj(g.u[0]), std::conj(g.u[2]), std::conj(g.u[1]), std::conj(g.u[3])};
  }
  return inv;
}

inline void apply_circuit(StateVector& state, const Circuit& c) {
  if (state.n_qubits() != c.n_qubits()) {
    fail(ErrorKind::Validation, "state and circuit sizes differ");
  }
  for (const auto& g : c.ops()) state.apply(g);
}

inline StateVector simulate(const Circuit& c) {
  StateVector s(c.n_qubits());
  apply_circuit(s, c);
  return s;
}

inline StateVector simulate(const Circuit& c, std::uint64_t basis_index) {
  std::vector<Amplitude> amps(std::size_t{1} << c.n_qubits(), Amplitude{0});
  if (basis_index >= amps.size()) fail(ErrorKind::Validation, "basis index out of range");
  amps[basis_index] = 1.0;
  auto s = StateVector::from_amplitudes(std::move(amps));
  apply_circuit(s, c);
  return s;
}

/// Dense square matrix over the full register, row-major.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(std::size_t dim) : dim_(dim), m_(dim * dim, Amplitude{0}) {
    for (std::size_t i = 0; i < dim; ++i) m_[i * dim + i] = 1.0;
  }
  std::size_t dim() const { return dim_; }
  Amplitude& operator()(std::size_t r, std::size_t c) { return m_[r * dim_ + c]; }
  const Amplitude& operator()(std::size_t r, std::size_t c) const { return m_[r * dim_ + c]; }

  /// Largest deviation of U^dagger U from the identity.
  double unitarity_error() const {
    double worst = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) {
        Amplitude acc = 0;
        for (std::size_t k = 0; k < dim_; ++k) acc += std::conj((*this)(k, i)) * (*this)(k, j);
        worst = std::max(worst, std::abs(acc - (i == j ? 1.0 : 0.0)));
      }
    }
    return worst;
  }

 private:
  std::size_t dim_;
  std::vector<Amplitude> m_;
};

inline constexpr std::size_t kMaxOracleQubits = 10;

/// Full-register matrix of a circuit, built gate by gate from each gate's
/// matrix definition (row r of a controlled gate has one nonzero when the
/// controls are inactive on r, else two). Independent of StateVector::apply.
inline UnitaryMatrix circuit_unitary(const Circuit& c) {
  if (c.n_qubits() > kMaxOracleQubits) {
    fail(ErrorKind::Capacity, "circuit_unitary is capped at 10 qubits");
  }
  const std::size_t dim = std::size_t{1} << c.n_qubits();
  UnitaryMatrix u(dim);
  for (const auto& g : c.ops()) {
    UnitaryMatrix next(dim);
    const std::uint64_t tbit = std::uint64_t{1} << g.target;
    for (std::size_t r = 0; r < dim; ++r) {
      bool active = true;
      for (const auto& ctl : g.controls) active = active && ctl.active_on(r);
      const std::size_t row_bit = (r & tbit) ? 1 : 0;
      for (std::size_t col = 0; col < dim; ++col) {
        Amplitude v;
        if (!active) {
          v = u(r, col);
        } else {
          // G[r][r with target=b] = g.u[row_bit][b]
          v = g.u[row_bit * 2 + 0] * u(r & ~tbit, col) + g.u[row_bit * 2 + 1] * u(r | tbit, col);
        }
        next(r, col) = v;
      }
    }
    u = std::move(next);
  }
  return u;
}

/// Rewrites a gate with three or more controls into gates with at most two
/// controls using the compute-AND ancilla ladder. Needs at least k-2 ancillas
/// that are |0> when the sub-circuit runs; they are returned to |0>. Negative
/// controls are X-conjugated around the ladder.
inline Circuit decompose_mcx(const GateOp& g, std::span<const std::size_t> ancilla,
                             std::size_t n_qubits = 0) {
  const std::size_t k = g.controls.size();
  if (k < 3) fail(ErrorKind::Validation, "decompose_mcx needs at least 3 controls");
  if (ancilla.size() < k - 2) {
    fail(ErrorKind::Capacity, "decomposing " + std::to_string(k) + " controls needs " +
                                  std::to_string(k - 2) + " ancillas, got " +
                                  std::to_string(ancilla.size()));
  }
  std::size_t needed = g.target + 1;
  for (const auto& ctl : g.controls) needed = std::max(needed, ctl.qubit + 1);
  for (std::size_t i = 0; i < ancilla.size(); ++i) {
    needed = std::max(needed, ancilla[i] + 1);
    bool clash = ancilla[i] == g.target;
    for (const auto& ctl : g.controls) clash = clash || ancilla[i] == ctl.qubit;
    for (std::size_t j = 0; j < i; ++j) clash = clash || ancilla[i] == ancilla[j];
    if (clash) {
      fail(ErrorKind::Validation, "ancilla q" + std::to_string(ancilla[i]) +
                                      " overlaps controls, target or another ancilla");
    }
  }
  if (n_qubits == 0) n_qubits = needed;
  if (n_qubits < needed) fail(ErrorKind::Validation, "register too small for decomposition");

  Circuit out(n_qubits);
  std::vector<GateOp> flips;
  for (const auto& ctl : g.controls) {
    if (ctl.polarity == Polarity::Negative) flips.push_back(std_gate(GateKind::X, ctl.qubit));
  }
  for (const auto& f : flips) out.add(f);

  std::vector<GateOp> ladder;
  const auto& c = g.controls;
  ladder.push_back(mcx({on(c[0].qubit), on(c[1].qubit)}, ancilla[0]));
  for (std::size_t i = 2; i + 1 < k; ++i) {
    ladder.push_back(mcx({on(ancilla[i - 2]), on(c[i].qubit)}, ancilla[i - 1]));
  }
  for (const auto& l : ladder) out.add(l);
  out.add(GateOp{g.target, g.u, {on(ancilla[k - 3]), on(c[k - 1].qubit)}, g.kind});
  for (const auto& l : inverse(ladder)) out.add(l);

  for (const auto& f : flips) out.add(f);
  return out;
}

}  // namespace qmonty
