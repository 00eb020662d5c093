// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failures.

#include <chrono>
#include <cstdio>
#include <map>
#include <set>
#include <string>

#include "hand_matrices.hpp"
#include "oracle.hpp"
#include "qmonty/circuit_text.hpp"
#include "qmonty/game.hpp"
#include "qmonty/scheme1.hpp"
#include "qmonty/scheme2.hpp"

using namespace qmonty;

namespace {

int failures = 0;

void report(const char* name, bool ok, const std::string& detail) {
  std::printf("%s  %-28s %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void support_fidelity() {
  const auto& L = scheme1::kLayout;
  bool ok = true;
  double worst = 0.0;
  for (Door p : kDoors) {
    for (Door f : kDoors) {
      const Door opened = host_open(p, f);
      std::set<std::string> want;
      for (Door d : kDoors)
        if (d != opened) want.insert(bits(d));

      const auto m = marginal(simulate(scheme1::build(p, f)), {L.alice.hi, L.alice.lo});
      std::set<std::string> got;
      for (const auto& [k, prob] : m.entries)
        if (std::sqrt(prob) > 1e-10) got.insert(k);
      ok = ok && got == want;
      worst = std::max({worst, std::sqrt(m(bits(opened))), std::sqrt(m("11"))});

      const auto amps = scheme1::alice_amplitudes(p, f);
      worst = std::max({worst, std::abs(amps[code(opened)]), std::abs(amps[3])});
    }
  }
  ok = ok && worst < 1e-10;
  report("support-set fidelity", ok, "9 cases, max |amp| on opened/11 = " + fmt("%.2e", worst));
}

void verdict_equivalence() {
  bool ok = true;
  int rows = 0;
  std::set<std::string> wins;
  for (auto bob : {scheme2::BobStageForm::NineCase, scheme2::BobStageForm::MergedFour}) {
    for (auto mcx : {scheme2::McxForm::Native, scheme2::McxForm::Decomposed}) {
      Rng rng(0);
      for (const auto& r : full_table()) {
        const auto v = scheme2::verdict(r.prize, r.first, r.second, rng, {bob, mcx});
        ok = ok && (v.result == Outcome::Win) == r.win;
        if (v.result == Outcome::Win) wins.insert(v.ancilla_bits);
        ok = ok && (v.ancilla_bits == "000" || scheme2::is_one_hot(v.ancilla_bits));
        ++rows;
      }
    }
  }
  ok = ok && wins == std::set<std::string>{"100", "010", "001"};
  report("verdict equivalence", ok,
         std::to_string(rows / 4) + " triples x 4 circuit forms, win patterns {100,010,001}");
}

void classical_payoffs() {
  const auto stick = strategy_payoff(Strategy::Stick);
  const auto sw = strategy_payoff(Strategy::Switch);
  bool ok = stick == Fraction{1, 3} && sw == Fraction{2, 3};

  Rng rng(20240601);
  double rate[2];
  for (int s = 0; s < 2; ++s) {
    const auto strategy = s ? Strategy::Switch : Strategy::Stick;
    int w = 0;
    for (int i = 0; i < 10000; ++i) {
      auto g = game::Session::create(game::Engine::Classical, rng(), "mc");
      g.pick_first(kDoors[rng() % 3]);
      g.pick_final(strategy);
      w += *g.result() == Outcome::Win;
    }
    rate[s] = w / 10000.0;
  }
  ok = ok && std::abs(rate[0] - 1.0 / 3) < 0.02 && std::abs(rate[1] - 2.0 / 3) < 0.02;
  report("classical payoffs", ok,
         "stick " + to_string(stick) + " switch " + to_string(sw) + ", engine MC stick " +
             fmt("%.4f", rate[0]) + " switch " + fmt("%.4f", rate[1]));
}

void merge_equivalence() {
  const auto& L = scheme2::kLayout;
  double worst = 0.0;
  for (Door p : kDoors) {
    for (Door f : kDoors) {
      auto prefix = [&](scheme2::BobStageForm form) {
        Circuit c(scheme2::Layout::kQubits, scheme2::Layout::labels(false));
        c.add(std_gate(GateKind::X, L.prize[index(p)]));
        append_all(c, encode_door(f, L.first));
        append_all(c, three_state_prep(L.s));
        c.append(scheme2::build_bob_stage(form));
        return simulate(c);
      };
      worst = std::max(worst, max_abs_diff(prefix(scheme2::BobStageForm::NineCase),
                                           prefix(scheme2::BobStageForm::MergedFour)));
    }
  }
  const auto ops = scheme2::register_ops(scheme2::build_bob_stage(scheme2::BobStageForm::MergedFour));
  report("bob-stage merge", worst < 1e-10 && ops == 4,
         "9 cases, 12-qubit max diff " + fmt("%.2e", worst) + ", " + std::to_string(ops) +
             " controlled ops on S");
}

void three_state() {
  const auto ref = hand::three_state();
  Circuit c(2);
  append_all(c, three_state_prep({1, 0}));
  const auto st = simulate(c);
  const double want[4] = {0.25, 0.25, 0.5, 0.0};
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    worst = std::max(worst, std::abs(std::norm(st[i]) - want[i]));
    worst = std::max(worst, std::abs(ref[i] * ref[i] - want[i]));
    worst = std::max(worst, std::abs(st[i] - Amplitude{ref[i]}));
  }
  // same register inside the scheme-2 circuit
  const auto s2 = simulate(scheme2::build_until(Door::D1, Door::D1, Door::D1, scheme2::Stage::Prepare));
  const auto m = marginal(s2, {scheme2::kLayout.s.hi, scheme2::kLayout.s.lo});
  const char* keys[4] = {"00", "01", "10", "11"};
  for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(m(keys[i]) - want[i]));
  report("three-state superposition", worst < 1e-10,
         "(0.25, 0.25, 0.5, 0) vs hand product, max err " + fmt("%.2e", worst));
}

void decomposition() {
  double worst = 0.0;
  for (std::size_t k = 3; k <= 5; ++k) {
    const std::size_t n_work = k - 2, n = k + 1 + n_work;
    std::vector<ControlSpec> ctl;
    for (std::size_t i = 0; i < k; ++i) ctl.push_back(i % 2 ? anti(i + 1) : on(i + 1));
    const auto g = mcx(ctl, 0);
    std::vector<std::size_t> anc;
    for (std::size_t i = 0; i < n_work; ++i) anc.push_back(k + 1 + i);
    Circuit direct(n);
    direct.add(g);
    const auto ud = circuit_unitary(decompose_mcx(g, anc, n));
    const auto ug = circuit_unitary(direct);
    const std::size_t mask = ((std::size_t{1} << n_work) - 1) << (k + 1);
    for (std::size_t col = 0; col < ud.dim(); ++col) {
      if (col & mask) continue;
      for (std::size_t row = 0; row < ud.dim(); ++row)
        worst = std::max(worst, std::abs(ud(row, col) - ug(row, col)));
    }
  }
  report("mcx decomposition", worst < 1e-10, "k = 3,4,5, max diff " + fmt("%.2e", worst));
}

void properties() {
  Rng rng(77);
  double drift = 0.0;
  for (int t = 0; t < 200; ++t) {
    const auto n = 1 + rng() % 10;
    const auto s = simulate(oracle::random_circuit(n, 50, rng, std::min<std::size_t>(n - 1, 5)));
    drift = std::max(drift, std::abs(s.norm_squared() - 1.0));
  }

  double anti_err = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto n = 2 + rng() % 5;
    auto base = oracle::random_circuit(n, 10, rng, n - 1);
    const auto target = rng() % n;
    const auto ctl = (target + 1 + rng() % (n - 1)) % n;
    const GateKind kinds[] = {GateKind::H, GateKind::X, GateKind::Z};
    const auto kind = kinds[rng() % 3];
    Circuit a(n), b(n);
    a.append(base).add(controlled(kind, {anti(ctl)}, target));
    b.append(base)
        .add(std_gate(GateKind::X, ctl))
        .add(controlled(kind, {on(ctl)}, target))
        .add(std_gate(GateKind::X, ctl));
    anti_err = std::max(anti_err, max_abs_diff(simulate(a), simulate(b)));
  }

  bool deterministic = true;
  for (int t = 0; t < 50; ++t) {
    const auto seed = rng();
    const auto st = simulate(oracle::random_circuit(6, 30, rng));
    Rng a(seed), b(seed);
    for (int i = 0; i < 100; ++i) {
      const auto ma = measure_subset(st, {5, 1, 3}, a);
      const auto mb = measure_subset(st, {5, 1, 3}, b);
      deterministic = deterministic && ma.outcome == mb.outcome && ma.post == mb.post;
    }
  }
  Rng sa(3), sb(3);
  for (const auto& r : full_table()) {
    deterministic = deterministic && scheme1::restricted_measurement(r.prize, r.first, sa).final_door ==
                                         scheme1::restricted_measurement(r.prize, r.first, sb).final_door;
  }

  double trip = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto n = 1 + rng() % 8;
    const auto c = oracle::random_circuit(n, 40, rng, std::min<std::size_t>(n - 1, 5));
    trip = std::max(trip, max_abs_diff(simulate(c), simulate(parse_circuit(to_text(c)))));
  }
  for (const auto& r : full_table()) {
    const auto c = scheme2::build(r.prize, r.first, r.second);
    trip = std::max(trip, max_abs_diff(simulate(c), simulate(parse_circuit(to_text(c)))));
  }

  const bool ok = drift < 1e-9 && anti_err < 1e-12 && deterministic && trip < 1e-10;
  report("property suites", ok,
         "norm drift " + fmt("%.1e", drift) + ", anti-control " + fmt("%.1e", anti_err) +
             ", determinism " + (deterministic ? "bit-exact" : "BROKEN") + ", round trip " +
             fmt("%.1e", trip));
}

void sampling() {
  constexpr int kShots = 100000;
  const auto& L = scheme1::kLayout;
  double worst = 0.0;
  bool ok = true;
  Rng rng(99);
  for (Door p : kDoors) {
    for (Door f : kDoors) {
      const auto prep = scheme1::prepare(p, f);
      const auto exact = marginal(prep.state, {L.alice.hi, L.alice.lo});
      std::map<std::string, int> counts;
      int wins = 0;
      for (int i = 0; i < kShots; ++i) {
        const auto r = scheme1::restricted_measurement(prep, rng);
        ++counts[bits(r.final_door)];
        wins += r.win;
        ok = ok && r.win == (r.final_door == p);
      }
      for (const auto& key : {"00", "01", "10", "11"}) {
        const auto it = counts.find(key);
        const double emp = it == counts.end() ? 0.0 : it->second / double(kShots);
        worst = std::max(worst, std::abs(emp - exact(key)));
      }
    }
  }
  report("sampling consistency", ok && worst < 0.01,
         "9 cases x 100000 shots, max |emp - exact| " + fmt("%.4f", worst));
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  support_fidelity();
  verdict_equivalence();
  classical_payoffs();
  merge_equivalence();
  three_state();
  decomposition();
  properties();
  sampling();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d of 8 criteria failed (%.1f s)\n", failures, secs);
  return failures;
}
