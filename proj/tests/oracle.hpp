#pragma once

// Dense reference simulator for tests. Builds each gate as a full 2^n matrix
// from Kronecker products of 2x2 blocks and multiplies it into the state.
// Shares no code with StateVector::apply or circuit_unitary.

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "qmonty/gates.hpp"

namespace oracle {

using C = std::complex<double>;
using Mat = std::vector<std::vector<C>>;
using Vec = std::vector<C>;

inline Mat identity(std::size_t d) {
  Mat m(d, std::vector<C>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i) m[i][i] = 1.0;
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  const auto ra = a.size(), rb = b.size();
  Mat out(ra * rb, std::vector<C>(ra * rb, 0.0));
  for (std::size_t i = 0; i < ra; ++i)
    for (std::size_t j = 0; j < ra; ++j)
      for (std::size_t k = 0; k < rb; ++k)
        for (std::size_t l = 0; l < rb; ++l) out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
  return out;
}

inline Mat add(const Mat& a, const Mat& b, C sb = 1.0) {
  Mat out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) out[i][j] += sb * b[i][j];
  return out;
}

inline Mat mul(const Mat& a, const Mat& b) {
  const auto d = a.size();
  Mat out(d, std::vector<C>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      if (a[i][k] != C{0})
        for (std::size_t j = 0; j < d; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

inline Vec apply(const Mat& m, const Vec& v) {
  Vec out(v.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

// Tensor product over qubits n-1 .. 0 (qubit 0 is the rightmost factor).
inline Mat tensor(const std::vector<Mat>& per_qubit) {
  Mat out{{1.0}};
  for (std::size_t q = per_qubit.size(); q-- > 0;) out = kron(out, per_qubit[q]);
  return out;
}

inline const Mat kP0{{1.0, 0.0}, {0.0, 0.0}};
inline const Mat kP1{{0.0, 0.0}, {0.0, 1.0}};
inline const Mat kI2{{1.0, 0.0}, {0.0, 1.0}};

inline Mat block(const qmonty::Matrix2& u) { return {{u[0], u[1]}, {u[2], u[3]}}; }

// G = I + P_ctrl (x) (U - I)_target
inline Mat full_gate(const qmonty::GateOp& g, std::size_t n) {
  std::vector<Mat> factors(n, kI2);
  for (const auto& c : g.controls) {
    factors[c.qubit] = c.polarity == qmonty::Polarity::Positive ? kP1 : kP0;
  }
  factors[g.target] = add(block(g.u), kI2, -1.0);
  return add(identity(std::size_t{1} << n), tensor(factors));
}

inline Mat circuit_matrix(const qmonty::Circuit& c) {
  Mat m = identity(std::size_t{1} << c.n_qubits());
  for (const auto& g : c.ops()) m = mul(full_gate(g, c.n_qubits()), m);
  return m;
}

inline Vec basis(std::size_t n, std::size_t index = 0) {
  Vec v(std::size_t{1} << n, 0.0);
  v[index] = 1.0;
  return v;
}

inline Vec run(const qmonty::Circuit& c, std::size_t index = 0) {
  Vec v = basis(c.n_qubits(), index);
  for (const auto& g : c.ops()) v = oracle::apply(full_gate(g, c.n_qubits()), v);
  return v;
}

inline double max_diff(const Vec& a, std::span<const C> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// Random circuit over {h,x,z} with 0..max_controls random-polarity controls.
inline qmonty::Circuit random_circuit(std::size_t n, std::size_t depth, std::mt19937_64& rng,
                                      std::size_t max_controls = 3) {
  using namespace qmonty;
  Circuit c(n);
  const GateKind kinds[] = {GateKind::H, GateKind::X, GateKind::Z};
  for (std::size_t d = 0; d < depth; ++d) {
    const auto target = rng() % n;
    std::vector<std::size_t> pool;
    for (std::size_t q = 0; q < n; ++q)
      if (q != target) pool.push_back(q);
    std::shuffle(pool.begin(), pool.end(), rng);
    const auto k = std::min<std::size_t>(rng() % (max_controls + 1), pool.size());
    std::vector<ControlSpec> ctl;
    for (std::size_t i = 0; i < k; ++i) ctl.push_back(rng() % 2 ? on(pool[i]) : anti(pool[i]));
    const auto kind = kinds[rng() % 3];
    c.add(k ? controlled(kind, ctl, target) : std_gate(kind, target));
  }
  return c;
}

}  // namespace oracle
