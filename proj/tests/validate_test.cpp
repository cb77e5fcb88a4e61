#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "q1ca/transform.hpp"
#include "q1ca/validate.hpp"
#include "q1ca/zoo.hpp"
#include "test_support.hpp"

using namespace q1ca;
using namespace q1ca::testing;

namespace {

const Violation* find_condition(const ValidationReport& rep,
                                const std::string& id) {
  for (const Violation& v : rep.violations)
    if (v.condition == id) return &v;
  return nullptr;
}

Machine mutate_all_signs(const Machine& m, int state, int sym, int index,
                         const Amplitude& delta) {
  Machine out = m;
  for (CounterSign s :
       {CounterSign::zero, CounterSign::plus, CounterSign::minus})
    out = with_amplitude_delta(out, {state, sym, s, index}, delta);
  return out;
}

/// One-state one-register rtq1ca whose only input symbol maps the state to
/// the given superposition of counter increments.
Machine one_state_rtq1ca(const std::vector<std::pair<int, Amplitude>>& row) {
  Machine m;
  m.kind = MachineKind::rtq1ca;
  m.states = {"s"};
  m.input_alphabet = {"a"};
  m.register_alphabet = {"w"};
  m.initial_register = 0;
  m.reserve_tables();
  for (int sym : {m.cent(), m.dollar()}) {
    Target t;
    t.state = 0;
    t.reg = 0;
    t.amplitude = 1.0;
    m.add_target_all_signs(0, sym, t);
  }
  for (const auto& [inc, amp] : row) {
    Target t;
    t.state = 0;
    t.increment = inc;
    t.reg = 0;
    t.amplitude = amp;
    m.add_target_all_signs(0, 0, t);
  }
  m.check_structure();
  return m;
}

}  // namespace

TEST_SUITE_BEGIN("validate");

TEST_CASE("stochastic rows must sum to one") {
  std::mt19937 rng(kSeed);
  const Machine m = make_random_rtp1ca(rng, 3);
  CHECK(check_stochastic(m).ok);
  CHECK(validate_machine(m).ok);

  const Machine low = with_amplitude_delta(m, {0, 0, CounterSign::zero, 0}, -0.1);
  const ValidationReport rep = check_stochastic(low);
  CHECK_FALSE(rep.ok);
  const Violation* v = find_condition(rep, "prob-sum");
  REQUIRE(v != nullptr);
  CHECK(v->magnitude == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("stochastic entries must stay within [0,1]") {
  std::mt19937 rng(kSeed + 1);
  const Machine m = make_random_rtp1ca(rng, 2);
  const Machine hot = with_amplitude_delta(m, {1, 1, CounterSign::plus, 0}, 1.0);
  const ValidationReport rep = check_stochastic(hot);
  CHECK_FALSE(rep.ok);
  CHECK(find_condition(rep, "prob-range") != nullptr);
  CHECK(find_condition(rep, "prob-sum") != nullptr);
}

TEST_CASE("m1 passes the general and blind checks") {
  const Machine m1 = build_m1();
  CHECK(check_general_q(m1).ok);
  CHECK(check_blind(m1).ok);
  CHECK(validate_machine(m1).ok);
}

TEST_CASE("broken column orthogonality is an eq1 violation") {
  const Machine m1 = build_m1();
  // flip the completed -1/sqrt(2) entry of the CENT column of p1, making
  // the two CENT columns parallel
  const Machine bad =
      mutate_all_signs(m1, 1, m1.cent(), 1, Amplitude(std::sqrt(2.0), 0));
  const ValidationReport rep = check_general_q(bad);
  CHECK_FALSE(rep.ok);
  const Violation* v = find_condition(rep, "eq1");
  REQUIRE(v != nullptr);
  CHECK(v->magnitude == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(check_blind(bad).ok);
}

TEST_CASE("cross-increment interference is an eq2/eq3 violation") {
  const double r = 1.0 / std::sqrt(2.0);
  const Machine plus_zero = one_state_rtq1ca({{+1, r}, {0, r}});
  const ValidationReport rep2 = check_general_q(plus_zero);
  CHECK_FALSE(rep2.ok);
  const Violation* v2 = find_condition(rep2, "eq2");
  REQUIRE(v2 != nullptr);
  CHECK(v2->magnitude == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(find_condition(rep2, "eq3") == nullptr);

  const Machine plus_minus = one_state_rtq1ca({{+1, r}, {-1, r}});
  const ValidationReport rep3 = check_general_q(plus_minus);
  CHECK_FALSE(rep3.ok);
  const Violation* v3 = find_condition(rep3, "eq3");
  REQUIRE(v3 != nullptr);
  CHECK(v3->magnitude == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(find_condition(rep3, "eq2") == nullptr);
}

TEST_CASE("simple admissibility measures operator deviation") {
  Machine m;
  m.kind = MachineKind::rtq1ca;
  m.simple = true;
  m.states = {"s"};
  m.input_alphabet = {"a"};
  m.register_alphabet = {"w"};
  m.initial_register = 0;
  m.reserve_tables();
  for (int sym = 0; sym < m.tape_symbol_count(); ++sym) m.set_dc(0, sym, 0);
  for (int sym = 0; sym < m.tape_symbol_count(); ++sym) {
    Target t;
    t.state = 0;
    t.reg = 0;
    t.amplitude = 1.0;
    m.add_target_all_signs(0, sym, t);
  }
  m.check_structure();
  CHECK(check_simple_q(m).ok);

  const Machine bad = mutate_all_signs(m, 0, 0, 0, 0.1);
  const ValidationReport rep = check_simple_q(bad);
  CHECK_FALSE(rep.ok);
  const Violation* v = find_condition(rep, "admissible");
  REQUIRE(v != nullptr);
  CHECK(v->magnitude == doctest::Approx(0.21).epsilon(1e-9));
}

TEST_CASE("m2 family passes the one-way checks") {
  for (int n : {2, 3, 4}) {
    const Machine m2 = build_m2(n);
    CHECK(check_one_way_q(m2).ok);
    CHECK(check_blind(m2).ok);
    CHECK(validate_machine(m2).ok);
  }
}

TEST_CASE("one-way norm break is a c1 violation") {
  const Machine m2 = build_m2(2);
  const Machine bad = mutate_all_signs(m2, 1, 0, 0, 0.1);
  const ValidationReport rep = check_one_way_q(bad);
  CHECK_FALSE(rep.ok);
  CHECK(find_condition(rep, "c1") != nullptr);
}

TEST_CASE("sign-dependent rows break blindness") {
  const Machine m1 = build_m1();
  const Machine bad =
      with_amplitude_delta(m1, {0, 0, CounterSign::plus, 0}, 0.1);
  const ValidationReport rep = check_blind(bad);
  CHECK_FALSE(rep.ok);
  CHECK(find_condition(rep, "blind") != nullptr);
  CHECK_FALSE(validate_machine(bad).ok);

  Machine checked = build_m1();
  checked.counter_mode = CounterMode::checked;
  CHECK_THROWS_AS(check_blind(checked), PreconditionError);
}

TEST_CASE("complete_unitary extends partial column sets") {
  const double r = 1.0 / std::sqrt(2.0);
  SUBCASE("hadamard-style completion") {
    const ColumnMatrix u = complete_unitary({{0, {r, r}}}, 2);
    REQUIRE(u.size() == 2);
    CHECK(u[1][0].real() == doctest::Approx(r).epsilon(1e-12));
    CHECK(u[1][1].real() == doctest::Approx(-r).epsilon(1e-12));
  }
  SUBCASE("empty input yields the identity") {
    const ColumnMatrix u = complete_unitary({}, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(u[i][j] == Amplitude(i == j ? 1 : 0, 0));
  }
  SUBCASE("complex columns complete to a unitary") {
    const ColumnMatrix u = complete_unitary({{0, {r, Amplitude(0, r)}}}, 2);
    Amplitude dot = 0;
    double norm = 0;
    for (int i = 0; i < 2; ++i) {
      dot += std::conj(u[0][i]) * u[1][i];
      norm += std::norm(u[1][i]);
    }
    CHECK(std::abs(dot) <= 1e-12);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("rejects bad inputs") {
    CHECK_THROWS_AS(complete_unitary({{0, {0.9, 0}}}, 2), CompletionError);
    CHECK_THROWS_AS(complete_unitary({{0, {1, 0}}, {1, {1, 0}}}, 2),
                    CompletionError);
    CHECK_THROWS_AS(complete_unitary({{0, {1, 0}}, {0, {0, 1}}}, 2),
                    CompletionError);
    CHECK_THROWS_AS(complete_unitary({{5, {1, 0}}}, 2), CompletionError);
    CHECK_THROWS_AS(complete_unitary({{0, {1, 0, 0}}}, 2), CompletionError);
  }
}

TEST_CASE("completed machines are isometries per symbol and sign") {
  for (const Machine& m : {build_m1(), build_m2(2), build_m2(5)}) {
    const int dim = m.register_count() * m.state_count();
    for (int sym = 0; sym < m.tape_symbol_count(); ++sym) {
      for (CounterSign s :
           {CounterSign::zero, CounterSign::plus, CounterSign::minus}) {
        std::vector<std::vector<Amplitude>> cols(
            m.state_count(), std::vector<Amplitude>(dim, 0.0));
        for (int q = 0; q < m.state_count(); ++q)
          for (const Target& t : m.targets(q, sym, s))
            cols[q][t.reg * m.state_count() + t.state] += t.amplitude;
        for (int q1 = 0; q1 < m.state_count(); ++q1)
          for (int q2 = q1; q2 < m.state_count(); ++q2) {
            Amplitude dot = 0;
            for (int i = 0; i < dim; ++i)
              dot += std::conj(cols[q1][i]) * cols[q2][i];
            const double want = q1 == q2 ? 1.0 : 0.0;
            CHECK(std::abs(dot - want) <= 1e-9);
          }
      }
    }
  }
}

TEST_CASE("complete_machine rejects inconsistent sectors") {
  SUBCASE("non-quantum input") {
    std::mt19937 rng(kSeed);
    CHECK_THROWS_AS(complete_machine(make_random_rtp1ca(rng, 2)),
                    PreconditionError);
  }
  SUBCASE("conflicting increments for one destination") {
    const double r = 1.0 / std::sqrt(2.0);
    CHECK_THROWS_AS(complete_machine(one_state_rtq1ca({{+1, r}, {-1, r}})),
                    CompletionError);
  }
  SUBCASE("two head directions for one destination") {
    Machine m;
    m.kind = MachineKind::oneq1ca;
    m.states = {"s", "t"};
    m.input_alphabet = {"a"};
    m.register_alphabet = {"wn", "wa", "wr"};
    m.initial_register = 0;
    m.accept_registers = {1};
    m.reject_registers = {2};
    m.reserve_tables();
    Target move;
    move.state = 1;
    move.move = HeadMove::right;
    move.reg = 0;
    move.amplitude = 1.0;
    m.add_target_all_signs(0, 0, move);
    Target stay = move;
    stay.move = HeadMove::stay;
    m.add_target_all_signs(1, 0, stay);
    CHECK_THROWS_AS(complete_machine(m), CompletionError);
  }
  SUBCASE("blind machine with sign-dependent rows") {
    Machine m;
    m.kind = MachineKind::rtq1ca;
    m.counter_mode = CounterMode::blind;
    m.states = {"s"};
    m.input_alphabet = {"a"};
    m.register_alphabet = {"w"};
    m.initial_register = 0;
    m.reserve_tables();
    Target t;
    t.state = 0;
    t.reg = 0;
    t.amplitude = 1.0;
    m.add_target(0, 0, CounterSign::zero, t);
    CHECK_THROWS_AS(complete_machine(m), CompletionError);
  }
  SUBCASE("overfull column") {
    const double big = 1.1;
    CHECK_THROWS_AS(complete_machine(one_state_rtq1ca({{0, big}})),
                    CompletionError);
  }
}

TEST_CASE("simple and general checks agree on lifted machines") {
  std::mt19937 rng(kSeed + 7);
  for (int it = 0; it < 10; ++it) {
    const Machine lifted =
        lift_p_to_q(simplify_rtp1ca(make_random_rtp1ca(rng, 3)));
    CHECK(check_simple_q(lifted).ok);
    CHECK(check_general_q(as_general(lifted)).ok);

    const auto slots = all_slots(lifted);
    const TargetSlot& slot = slots[it % slots.size()];
    Machine bad = lifted;
    for (CounterSign s :
         {CounterSign::zero, CounterSign::plus, CounterSign::minus})
      bad = with_amplitude_delta(bad, {slot.state, slot.sym, s, slot.index},
                                 0.1);
    CHECK_FALSE(check_simple_q(bad).ok);
    CHECK_FALSE(check_general_q(as_general(bad)).ok);
  }
}

TEST_CASE("report rendering") {
  ValidationReport rep;
  CHECK(rep.to_text() == "OK\n");
  rep.add("eq1", "(a, zero, q1, q2)", 0.25);
  CHECK_FALSE(rep.ok);
  CHECK(rep.to_text() == "COND eq1 WITNESS (a, zero, q1, q2) DEV 0.25\n");
}

TEST_SUITE_END();
