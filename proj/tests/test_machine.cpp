// test_machine.cpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an 'AS IS' BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support/test_support.hpp"

using namespace ntwfsm;
using namespace ntwfsm::testing;

TEST_CASE("builder normalizes zero weights away") {
  MachineBuilder b(2, SemiringId::kTropical);
  b.add_states(2);
  b.set_initial(0, 0);
  b.set_final(1, 0);
  b.set_final(0, Semiring::tropical().zero());  // dropped
  b.add_transition(0, 1, 3, {"a", "b"});
  b.add_transition(0, 1, Semiring::tropical().zero(), {"a", "a"});  // dropped
  Machine m = b.build();
  CHECK(m.transitions().size() == 1);
  CHECK(m.final_weights().size() == 1);
  CHECK(m.alphabet() == std::set<Symbol>{"a", "b"});
  CHECK(validate(m).empty());
}

TEST_CASE("builder rejects structural garbage") {
  MachineBuilder missing(1, SemiringId::kTropical);
  missing.add_state();
  missing.set_initial(0, 0);
  missing.add_transition(0, 7, 1, {"a"});
  CHECK_THROWS_AS(missing.build(), InvalidMachineError);

  MachineBuilder arity(2, SemiringId::kTropical);
  arity.add_state();
  arity.add_transition(0, 0, 1, {"a"});
  CHECK_THROWS_AS(arity.build(), InvalidMachineError);

  MachineBuilder symbol(1, SemiringId::kTropical);
  symbol.add_state();
  symbol.add_transition(0, 0, 1, {"<eps>"});
  CHECK_THROWS_AS(symbol.build(), InvalidMachineError);

  CHECK_THROWS_AS(MachineBuilder(0, SemiringId::kTropical),
                  InvalidMachineError);
}

TEST_CASE("multi-symbol components expand into chains") {
  MachineBuilder b(2, SemiringId::kTropical);
  StateId s = b.add_state();
  StateId e = b.add_state();
  b.set_initial(s, 0);
  b.set_final(e, 0);
  b.add_transition_seq(s, e, 5, {syms("abc"), syms("x")});
  Machine m = b.build();
  CHECK(m.num_states() == 4);  // two fresh chain states
  CHECK(m.transitions().size() == 3);
  for (const Transition& t : m.transitions()) {
    for (const Symbol& c : t.label) CHECK(c.size() <= 1);
  }
  WeightedTupleSet tuples = enum_exact(m);
  CHECK(tuples.size() == 1);
  CHECK(tuples.weight(tup({"abc", "x"})) == 5);
}

TEST_CASE("validate reports breaches without throwing") {
  SUBCASE("well-formed single state") {
    MachineBuilder b(1, SemiringId::kTropical);
    b.add_state();
    b.set_initial(0, 0);
    b.set_final(0, 0);
    CHECK(validate(b.build()).empty());
  }
  SUBCASE("missing state") {
    MachineBuilder b(1, SemiringId::kTropical);
    b.add_state();
    b.add_transition(0, 7, 1, {"a"});
    auto violations = validate(b.build_unchecked());
    REQUIRE(!violations.empty());
    CHECK(violations[0].code == "missing-state");
  }
  SUBCASE("label arity") {
    MachineBuilder b(2, SemiringId::kTropical);
    b.add_state();
    b.add_transition(0, 0, 1, {"a", "b", "c"});
    auto violations = validate(b.build_unchecked());
    REQUIRE(!violations.empty());
    CHECK(violations[0].code == "arity");
  }
  SUBCASE("zero weights and NaN") {
    MachineBuilder b(1, SemiringId::kTropical);
    b.add_state();
    b.set_initial(0, Semiring::tropical().zero());
    b.add_transition(0, 0, std::nan(""), {"a"});
    auto violations = validate(b.build_unchecked());
    CHECK(violations.size() == 2);
  }
}

TEST_CASE("trim drops useless states and keeps the relation") {
  MachineBuilder b(1, SemiringId::kTropical);
  b.add_states(4);  // 0 -> 1 accepting; 2 unreachable; 3 a dead end
  b.set_initial(0, 0);
  b.set_final(1, 2);
  b.add_transition(0, 1, 1, {"a"});
  b.add_transition(2, 1, 1, {"b"});
  b.add_transition(0, 3, 1, {"b"});
  Machine m = b.build();
  Machine t = trim(m);
  CHECK(t.num_states() == 2);
  CHECK(t.transitions().size() == 1);
  CHECK(enumerate_tuples(m, 4) == enumerate_tuples(t, 4));

  SUBCASE("no useful path gives the empty machine") {
    MachineBuilder dead(1, SemiringId::kTropical);
    dead.add_state();
    dead.set_initial(0, 0);
    Machine trimmed = trim(dead.build());
    CHECK(trimmed.is_empty());
  }
  SUBCASE("already trim machines are unchanged") {
    CHECK(same_structure(trim(t), t));
  }
}

TEST_CASE("tuple weights") {
  Machine m = tuple_machine(tup({"a", "b"}), 3, SemiringId::kTropical);
  CHECK(tuple_weight(m, tup({"a", "b"}), 4) == 3);
  CHECK(tuple_weight(m, tup({"b", "a"}), 4) == Semiring::tropical().zero());
  CHECK_THROWS_AS(tuple_weight(m, tup({"a"}), 4), ArityMismatchError);

  SUBCASE("parallel paths aggregate") {
    Machine two = union_of(tuple_machine(tup({"a"}), 2, SemiringId::kTropical),
                           tuple_machine(tup({"a"}), 5, SemiringId::kTropical));
    CHECK(tuple_weight(two, tup({"a"}), 4) == 2);
  }
}

TEST_CASE("enumeration matches the examples") {
  SUBCASE("empty machine") {
    Machine m(1, SemiringId::kTropical);
    CHECK(enumerate_tuples(m, 5).empty());
  }
  SUBCASE("single tuple") {
    Machine m = tuple_machine(tup({"a", "b"}), 3, SemiringId::kTropical);
    WeightedTupleSet tuples = enumerate_tuples(m, 3);
    CHECK(tuples.size() == 1);
    CHECK(tuples.weight(tup({"a", "b"})) == 3);
  }
  SUBCASE("loop truncated by the hop limit") {
    MachineBuilder b(1, SemiringId::kTropical);
    b.add_state();
    b.set_initial(0, 0);
    b.set_final(0, 0);
    b.add_transition(0, 0, 1, {"a"});
    WeightedTupleSet tuples = enumerate_tuples(b.build(), 2);
    CHECK(tuples.size() == 3);
    CHECK(tuples.weight(tup({""})) == 0);
    CHECK(tuples.weight(tup({"a"})) == 1);
    CHECK(tuples.weight(tup({"aa"})) == 2);
  }
  SUBCASE("budget overflow is an explicit error") {
    MachineBuilder b(1, SemiringId::kBoolean);
    b.add_state();
    b.set_initial(0, 1);
    b.set_final(0, 1);
    b.add_transition(0, 0, 1, {"a"});
    b.add_transition(0, 0, 1, {"b"});
    CHECK_THROWS_AS(enumerate_tuples(b.build(), 30, 1000),
                    BudgetExceededError);
  }
}

TEST_CASE("tuple_weight agrees with enumeration on random machines") {
  std::mt19937 rng(11);
  for (int it = 0; it < 60; ++it) {
    RandomMachineOptions opts;
    opts.semiring = it % 2 == 0 ? SemiringId::kTropical : SemiringId::kReal;
    Machine m = random_machine(rng, opts);
    const std::size_t hops = 5;
    WeightedTupleSet tuples = enumerate_tuples(m, hops);
    for (const auto& [t, w] : tuples.entries()) {
      CHECK(tuple_weight(m, t, hops) == doctest::Approx(w).epsilon(1e-9));
    }
    // A tuple that is almost surely absent.
    StringTuple absent(m.arity(), syms("zzzzzz"));
    if (!tuples.contains(absent)) {
      CHECK(m.semiring().is_zero(tuple_weight(m, absent, hops)));
    }
  }
}

TEST_CASE("trim preserves enumeration on random machines") {
  std::mt19937 rng(12);
  for (int it = 0; it < 60; ++it) {
    Machine m = random_machine(rng, {});
    Machine t = trim(m);
    CHECK(validate(t).empty());
    CHECK(enumerate_tuples(m, 6) == enumerate_tuples(t, 6));
  }
}
