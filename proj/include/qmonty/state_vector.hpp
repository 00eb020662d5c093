#pragma once

// Dense statevector simulation of a small qubit register.
//
// Basis-index convention (shared by every module in this library): bit i of a
// basis index is the value of qubit i, so qubit 0 is the least-significant
// bit. Bitstrings are printed with the highest qubit on the left, e.g. for a
// two-qubit register "01" means q1 = 0, q0 = 1. A two-qubit door register
// written |B1B2> stores B1 as the high bit and B2 as the low bit.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "qmonty/error.hpp"

namespace qmonty {

using Amplitude = std::complex<double>;

/// Row-major 2x2 matrix {u00, u01, u10, u11}.
using Matrix2 = std::array<Amplitude, 4>;

using Rng = std::mt19937_64;

inline constexpr std::size_t kMaxQubits = 16;
/// Amplitudes with magnitude below this are treated as zero.
inline constexpr double kAmplitudeFloor = 1e-12;
inline constexpr double kUnitarityTol = 1e-12;

/// Uniform double in [0, 1) from the top 53 bits of one draw. Unlike
/// std::uniform_real_distribution this is identical across standard libraries.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

enum class Polarity { Positive, Negative };

struct ControlSpec {
  std::size_t qubit = 0;
  Polarity polarity = Polarity::Positive;

  bool active_on(std::uint64_t index) const {
    const bool bit = (index >> qubit) & 1U;
    return polarity == Polarity::Positive ? bit : !bit;
  }
  friend bool operator==(const ControlSpec&, const ControlSpec&) = default;
};

inline ControlSpec on(std::size_t q) { return {q, Polarity::Positive}; }
inline ControlSpec anti(std::size_t q) { return {q, Polarity::Negative}; }

enum class GateKind { H, X, Z, Custom };

inline const char* to_string(GateKind k) {
  switch (k) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::Z: return "z";
    case GateKind::Custom: return "u";
  }
  return "?";
}

/// A single-qubit unitary on `target`, applied only when every control is
/// active (Positive: control reads 1, Negative: control reads 0).
struct GateOp {
  std::size_t target = 0;
  Matrix2 u{Amplitude{1}, Amplitude{0}, Amplitude{0}, Amplitude{1}};
  std::vector<ControlSpec> controls;
  GateKind kind = GateKind::Custom;

  friend bool operator==(const GateOp&, const GateOp&) = default;
};

inline bool is_unitary(const Matrix2& u, double tol = kUnitarityTol) {
  // columns orthonormal <=> u^dagger u = I
  const Amplitude c00 = std::conj(u[0]) * u[0] + std::conj(u[2]) * u[2];
  const Amplitude c11 = std::conj(u[1]) * u[1] + std::conj(u[3]) * u[3];
  const Amplitude c01 = std::conj(u[0]) * u[1] + std::conj(u[2]) * u[3];
  return std::abs(c00 - 1.0) < tol && std::abs(c11 - 1.0) < tol &&
         std::abs(c01) < tol;
}

inline void validate(const GateOp& g, std::size_t n_qubits) {
  if (g.target >= n_qubits) {
    fail(ErrorKind::Validation, "gate target q" + std::to_string(g.target) +
                                    " out of range for " +
                                    std::to_string(n_qubits) + " qubits");
  }
  for (std::size_t i = 0; i < g.controls.size(); ++i) {
    const auto q = g.controls[i].qubit;
    if (q >= n_qubits) {
      fail(ErrorKind::Validation,
           "control q" + std::to_string(q) + " out of range");
    }
    if (q == g.target) {
      fail(ErrorKind::Validation,
           "control q" + std::to_string(q) + " coincides with target");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (g.controls[j].qubit == q) {
        fail(ErrorKind::Validation, "duplicate control q" + std::to_string(q));
      }
    }
  }
  for (const auto& a : g.u) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      fail(ErrorKind::Validation, "gate matrix has non-finite entry");
    }
  }
  if (!is_unitary(g.u)) fail(ErrorKind::Validation, "gate matrix not unitary");
}

/// Bitstring of `index` over `n` qubits, highest qubit first.
inline std::string to_bitstring(std::uint64_t index, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t q = 0; q < n; ++q) {
    if ((index >> q) & 1U) s[n - 1 - q] = '1';
  }
  return s;
}

/// Probability mass keyed by bitstring.
struct Distribution {
  std::map<std::string, double> entries;

  double operator()(const std::string& key) const {
    auto it = entries.find(key);
    return it == entries.end() ? 0.0 : it->second;
  }
  double total() const {
    double t = 0;
    for (const auto& [k, p] : entries) t += p;
    return t;
  }
  friend bool operator==(const Distribution&, const Distribution&) = default;
};

class StateVector {
 public:
  explicit StateVector(std::size_t n_qubits) : n_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
      fail(ErrorKind::Size, "register size " + std::to_string(n_qubits) +
                                " outside 1.." + std::to_string(kMaxQubits));
    }
    amps_.assign(std::size_t{1} << n_qubits, Amplitude{0});
    amps_[0] = 1.0;
  }

  /// Builds a state from explicit amplitudes. The length must be a power of
  /// two and the vector normalized within 1e-9.
  static StateVector from_amplitudes(std::vector<Amplitude> amps) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < amps.size()) ++n;
    if (amps.empty() || (std::size_t{1} << n) != amps.size()) {
      fail(ErrorKind::Size, "amplitude count is not a power of two");
    }
    StateVector s(n);
    s.amps_ = std::move(amps);
    if (std::abs(s.norm_squared() - 1.0) > 1e-9) {
      fail(ErrorKind::Validation, "amplitudes not normalized");
    }
    return s;
  }

  std::size_t n_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const {
    double t = 0;
    for (const auto& a : amps_) t += std::norm(a);
    return t;
  }

  void apply(const GateOp& g) {
    validate(g, n_);
    std::uint64_t ctrl_mask = 0, ctrl_value = 0;
    for (const auto& c : g.controls) {
      ctrl_mask |= std::uint64_t{1} << c.qubit;
      if (c.polarity == Polarity::Positive) ctrl_value |= std::uint64_t{1} << c.qubit;
    }
    const std::uint64_t tbit = std::uint64_t{1} << g.target;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
      if ((i & tbit) || (i & ctrl_mask) != ctrl_value) continue;
      const Amplitude a0 = amps_[i];
      const Amplitude a1 = amps_[i | tbit];
      amps_[i] = g.u[0] * a0 + g.u[1] * a1;
      amps_[i | tbit] = g.u[2] * a0 + g.u[3] * a1;
    }
  }

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  std::size_t n_;
  std::vector<Amplitude> amps_;
};

inline StateVector new_state(std::size_t n_qubits) { return StateVector(n_qubits); }

inline StateVector apply_gate(StateVector state, const GateOp& g) {
  state.apply(g);
  return state;
}

/// Largest |a - b| over all amplitudes; registers must match in size.
inline double max_abs_diff(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) {
    fail(ErrorKind::Validation, "register sizes differ");
  }
  double m = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline Distribution probabilities(const StateVector& state) {
  Distribution d;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if (std::abs(state[i]) < kAmplitudeFloor) continue;
    d.entries[to_bitstring(i, state.n_qubits())] = std::norm(state[i]);
  }
  return d;
}

namespace detail {

inline void check_subset(std::span<const std::size_t> qubits, std::size_t n) {
  if (qubits.empty()) fail(ErrorKind::Validation, "empty qubit subset");
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] >= n) {
      fail(ErrorKind::Validation, "qubit q" + std::to_string(qubits[i]) + " out of range");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (qubits[j] == qubits[i]) {
        fail(ErrorKind::Validation, "duplicate qubit q" + std::to_string(qubits[i]));
      }
    }
  }
}

/// Value of the listed qubits packed with qubits[0] as the most significant bit.
inline std::uint64_t gather(std::uint64_t index, std::span<const std::size_t> qubits) {
  std::uint64_t v = 0;
  for (auto q : qubits) v = (v << 1) | ((index >> q) & 1U);
  return v;
}

inline std::vector<double> marginal_dense(const StateVector& state,
                                          std::span<const std::size_t> qubits) {
  std::vector<double> p(std::size_t{1} << qubits.size(), 0.0);
  for (std::size_t i = 0; i < state.dim(); ++i) {
    p[gather(i, qubits)] += std::norm(state[i]);
  }
  return p;
}

/// Draws an index with probability proportional to p[i]. One uniform01 draw.
inline std::uint64_t sample_index(std::span<const double> p, Rng& rng) {
  const double u = uniform01(rng) * std::accumulate(p.begin(), p.end(), 0.0);
  std::uint64_t chosen = p.size();
  double acc = 0;
  for (std::uint64_t v = 0; v < p.size(); ++v) {
    if (p[v] <= 0) continue;
    chosen = v;  // falls back to the last nonzero branch on rounding overshoot
    acc += p[v];
    if (u < acc) break;
  }
  if (chosen == p.size() || p[chosen] < kAmplitudeFloor) {
    fail(ErrorKind::Invariant, "sampled a zero-probability measurement branch");
  }
  return chosen;
}

}  // namespace detail

/// Joint distribution of the listed qubits. Keys list the qubits in the given
/// order, left to right: marginal(s, {q1, q0}) is keyed like probabilities(s)
/// on a two-qubit register.
inline Distribution marginal(const StateVector& state,
                             std::span<const std::size_t> qubits) {
  detail::check_subset(qubits, state.n_qubits());
  const auto p = detail::marginal_dense(state, qubits);
  Distribution d;
  for (std::size_t v = 0; v < p.size(); ++v) {
    if (p[v] < kAmplitudeFloor * kAmplitudeFloor) continue;
    d.entries[to_bitstring(v, qubits.size())] = p[v];
  }
  return d;
}

inline Distribution marginal(const StateVector& state,
                             std::initializer_list<std::size_t> qubits) {
  return marginal(state, std::span<const std::size_t>(qubits.begin(), qubits.size()));
}

struct Measurement {
  std::vector<int> bits;  // one per measured qubit, in the requested order
  std::string outcome;    // the same bits as a string
  StateVector post;
};

/// Samples the listed qubits jointly, zeroes inconsistent amplitudes and
/// renormalizes. Deterministic for a given generator state.
inline Measurement measure_subset(const StateVector& state,
                                  std::span<const std::size_t> qubits, Rng& rng) {
  detail::check_subset(qubits, state.n_qubits());
  const auto p = detail::marginal_dense(state, qubits);
  const auto chosen = detail::sample_index(p, rng);
  std::vector<Amplitude> amps(state.amplitudes().begin(), state.amplitudes().end());
  const double scale = 1.0 / std::sqrt(p[chosen]);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    amps[i] = detail::gather(i, qubits) == chosen ? amps[i] * scale : Amplitude{0};
  }
  Measurement m{{}, to_bitstring(chosen, qubits.size()),
                StateVector::from_amplitudes(std::move(amps))};
  for (char c : m.outcome) m.bits.push_back(c == '1');
  return m;
}

inline Measurement measure_subset(const StateVector& state,
                                  std::initializer_list<std::size_t> qubits, Rng& rng) {
  return measure_subset(state, std::span<const std::size_t>(qubits.begin(), qubits.size()),
                        rng);
}

/// Basis states whose probability exceeds `threshold`.
inline std::set<std::string> support(const StateVector& state, double threshold = 1e-10) {
  if (threshold < 0) fail(ErrorKind::Validation, "negative support threshold");
  std::set<std::string> s;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if (std::norm(state[i]) > threshold) s.insert(to_bitstring(i, state.n_qubits()));
  }
  return s;
}

}  // namespace qmonty
