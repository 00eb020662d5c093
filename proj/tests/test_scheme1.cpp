#include <catch_amalgamated.hpp>

#include <set>

#include "hand_matrices.hpp"
#include "qmonty/scheme1.hpp"

using namespace qmonty;
using Catch::Matchers::WithinAbs;

namespace {

std::set<Door> unopened(Door p, Door f) {
  std::set<Door> s(kDoors.begin(), kDoors.end());
  s.erase(host_open(p, f));
  return s;
}

}  // namespace

TEST_CASE("layout has 12 distinct qubits") {
  const auto& L = scheme1::kLayout;
  std::set<std::size_t> q{L.prize.begin(), L.prize.end()};
  q.insert(L.prize_copy.begin(), L.prize_copy.end());
  for (auto r : {L.bob, L.first, L.alice}) q.insert({r.hi, r.lo});
  CHECK(q.size() == 12);
  CHECK(*q.rbegin() == 11);
  const auto c = scheme1::build(Door::D1, Door::D1);
  CHECK(c.n_qubits() == 12);
  CHECK(c.labels()[L.alice.hi] == "A3");
  CHECK(c.labels()[L.prize_copy[2]] == "D3'");
}

TEST_CASE("hand-computed three-state preparation") {
  const auto v = hand::three_state();
  CHECK_THAT(v[0] * v[0], WithinAbs(0.25, 1e-15));
  CHECK_THAT(v[1] * v[1], WithinAbs(0.25, 1e-15));
  CHECK_THAT(v[2] * v[2], WithinAbs(0.5, 1e-15));
  CHECK_THAT(v[3], WithinAbs(0.0, 1e-15));
}

TEST_CASE("A3A4 support is the two unopened doors") {
  CHECK(scheme1::alice_support(Door::D3, Door::D1) == std::set<Door>{Door::D1, Door::D3});
  CHECK(scheme1::alice_support(Door::D2, Door::D1) == std::set<Door>{Door::D1, Door::D2});
  CHECK(scheme1::alice_support(Door::D3, Door::D2) == std::set<Door>{Door::D2, Door::D3});
  CHECK(scheme1::alice_support(Door::D1, Door::D1) == std::set<Door>{Door::D1, Door::D3});
  for (Door p : kDoors) {
    for (Door f : kDoors) {
      CHECK(scheme1::alice_support(p, f) == unopened(p, f));
    }
  }
}

TEST_CASE("alice_amplitudes match the hand matrix product") {
  for (Door p : kDoors) {
    for (Door f : kDoors) {
      const auto amps = scheme1::alice_amplitudes(p, f);
      const auto ref = hand::after_removal(code(host_open(p, f)));
      for (int i = 0; i < 4; ++i) {
        INFO(name(p) << name(f) << " basis " << i);
        CHECK(std::abs(amps[i] - Amplitude{ref[i]}) < 1e-12);
      }
    }
  }
  const auto a = scheme1::alice_amplitudes(Door::D3, Door::D1);
  CHECK_THAT(a[0].real(), WithinAbs(M_SQRT1_2, 1e-12));
  CHECK_THAT(a[2].real(), WithinAbs(M_SQRT1_2, 1e-12));
  CHECK_THAT(std::abs(a[1]) + std::abs(a[3]), WithinAbs(0.0, 1e-12));
}

TEST_CASE("entangling CNOTs leave the A3A4 marginal unchanged") {
  const auto& L = scheme1::kLayout;
  for (Door p : kDoors) {
    for (Door f : kDoors) {
      const auto with = simulate(scheme1::build(p, f));
      const auto without = simulate(scheme1::build(p, f, {false, true}));
      const auto a = marginal(with, {L.alice.hi, L.alice.lo});
      const auto b = marginal(without, {L.alice.hi, L.alice.lo});
      for (const auto& k : {"00", "01", "10", "11"}) CHECK(std::abs(a(k) - b(k)) < 1e-12);
    }
  }
}

TEST_CASE("Bob and Alice registers are perfectly correlated") {
  const auto& L = scheme1::kLayout;
  for (Door p : kDoors) {
    for (Door f : kDoors) {
      const auto st = simulate(scheme1::build(p, f));
      const auto m = marginal(st, {L.bob.hi, L.bob.lo, L.alice.hi, L.alice.lo});
      for (const auto& [k, prob] : m.entries) {
        if (prob > 1e-12) CHECK(k.substr(0, 2) == k.substr(2, 2));
      }
    }
  }
}

TEST_CASE("restricted measurement stays on unopened doors") {
  Rng rng(42);
  for (Door p : kDoors) {
    for (Door f : kDoors) {
      const auto prep = scheme1::prepare(p, f);
      for (int i = 0; i < 50; ++i) {
        const auto r = scheme1::restricted_measurement(prep, rng);
        CHECK(r.opened == host_open(p, f));
        CHECK(r.final_door != r.opened);
        CHECK(r.win == (r.final_door == p));
      }
    }
  }
}

TEST_CASE("win probabilities") {
  double stick = 0, sw = 0;
  for (Door p : kDoors) {
    for (Door f : kDoors) {
      const double ps = scheme1::win_probability(p, f, scheme1::Strategy::Stick);
      const double pw = scheme1::win_probability(p, f, scheme1::Strategy::Switch);
      CHECK(ps == (outcome(p, f, f) == Outcome::Win ? 1.0 : 0.0));
      CHECK(pw == (outcome(p, f, switch_target(p, f)) == Outcome::Win ? 1.0 : 0.0));
      stick += ps / 9;
      sw += pw / 9;
      const auto amps = scheme1::alice_amplitudes(p, f);
      CHECK_THAT(scheme1::win_probability(p, f, scheme1::Strategy::MeasureQuantum),
                 WithinAbs(std::norm(amps[code(p)]), 1e-15));
    }
  }
  CHECK_THAT(stick, WithinAbs(1.0 / 3, 1e-12));
  CHECK_THAT(sw, WithinAbs(2.0 / 3, 1e-12));
}

TEST_CASE("door flag reads the prize copy") {
  Rng rng(1);
  for (Door p : kDoors) {
    const auto prep = scheme1::prepare(p, Door::D1);
    for (Door d : kDoors) CHECK(scheme1::door_flag(prep, d, rng) == (d == p));
  }
}

TEST_CASE("sweep has 9 rows") {
  const auto rows = scheme1::sweep();
  REQUIRE(rows.size() == 9);
  CHECK(rows[0].prize == Door::D1);
  CHECK(rows[0].first == Door::D1);
  CHECK(rows[0].opened == Door::D2);
  CHECK_THAT(rows[0].p_measure, WithinAbs(0.5, 1e-12));
}

TEST_CASE("table sampling matches state collapse draw for draw") {
  for (Door p : kDoors) {
    for (Door f : kDoors) {
      const auto prep = scheme1::prepare(p, f);
      Rng a(p == f ? 5 : 6), b(p == f ? 5 : 6);
      for (int i = 0; i < 200; ++i) {
        const auto x = scheme1::restricted_measurement(prep, a);
        const auto y = scheme1::restricted_measurement_collapse(prep, b);
        REQUIRE(x.final_door == y.final_door);
        REQUIRE(x.win == y.win);
        for (const auto& k : {"00", "01", "10", "11"})
          REQUIRE(std::abs(x.alice_marginal(k) - y.alice_marginal(k)) < 1e-12);
      }
    }
  }
}
