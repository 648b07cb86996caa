// test_applications.cpp
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

namespace {

SymbolString random_word(std::mt19937& rng, std::size_t max_len,
                         const std::vector<Symbol>& alphabet) {
  SymbolString out;
  const std::size_t len = rng() % (max_len + 1);
  for (std::size_t i = 0; i < len; ++i) {
    out.push_back(alphabet[rng() % alphabet.size()]);
  }
  return out;
}

}  // namespace

TEST_CASE("utf-8 splitting") {
  SymbolString s = split_utf8_symbols("naïve");
  CHECK(s.size() == 5);
  CHECK(s[2] == "ï");
  CHECK(split_utf8_symbols("").empty());
  CHECK_THROWS_AS(split_utf8_symbols("\xff"), Error);
  CHECK_THROWS_AS(split_utf8_symbols("\xc3"), Error);  // truncated
}

TEST_CASE("edit machine columns") {
  SUBCASE("two tapes over one symbol") {
    Machine m = build_edit_machine({"a"}, 2);
    CHECK(m.num_states() == 1);
    REQUIRE(m.transitions().size() == 3);
    WeightedTupleSet cols(SemiringId::kTropical, 2);
    for (const Transition& t : m.transitions()) {
      StringTuple col;
      for (const Symbol& c : t.label) {
        col.push_back(c.empty() ? SymbolString{} : SymbolString{c});
      }
      cols.add(col, t.weight);
    }
    CHECK(cols.weight(tup({"a", "a"})) == 0);
    CHECK(cols.weight(tup({"a", ""})) == 1);
    CHECK(cols.weight(tup({"", "a"})) == 1);
  }
  SUBCASE("substitution column") {
    Machine m = build_edit_machine({"a", "b"}, 2);
    bool found = false;
    for (const Transition& t : m.transitions()) {
      if (t.label == LabelTuple{"a", "b"}) {
        CHECK(t.weight == 1);
        found = true;
      }
    }
    CHECK(found);
  }
  SUBCASE("three tapes sum over pairs") {
    Machine m = build_edit_machine({"a"}, 3);
    for (const Transition& t : m.transitions()) {
      if (t.label == LabelTuple{"a", "a", ""}) CHECK(t.weight == 2);
      if (t.label == LabelTuple{"a", "", ""}) CHECK(t.weight == 2);
      if (t.label == LabelTuple{"a", "a", "a"}) CHECK(t.weight == 0);
    }
  }
  SUBCASE("bad parameters") {
    CHECK_THROWS_AS(build_edit_machine({"a"}, 1), Error);
    CHECK_THROWS_AS(build_edit_machine({}, 2), Error);
  }
}

TEST_CASE("align basics") {
  SUBCASE("equal strings align for free") {
    Alignment a = align({"a", "a"});
    CHECK(a.weight == 0);
    REQUIRE(a.columns.size() == 1);
    CHECK(a.columns[0] == LabelTuple{"a", "a"});
  }
  SUBCASE("kitten to sitting costs 3") {
    Alignment a = align({"kitten", "sitting"});
    CHECK(a.weight == 3);
    auto rows = aligned_rows(a);
    REQUIRE(rows.size() == 2);
    // Gaps removed, the rows are the inputs again.
    auto strip = [](std::string s) {
      std::string out;
      for (char c : s) {
        if (c != '-') out += c;
      }
      return out;
    };
    CHECK(strip(rows[0]) == "kitten");
    CHECK(strip(rows[1]) == "sitting");
    CHECK(rows[0].size() == rows[1].size());
  }
  SUBCASE("empty inputs") {
    CHECK(align({"", ""}).weight == 0);
    CHECK(align({"", "ab"}).weight == 2);
  }
  SUBCASE("custom costs feed through") {
    EditCostModel costs;
    costs.substitution_cost = 10;  // cheaper to delete + insert
    CHECK(align({"a", "b"}, costs).weight == 2);
  }
  SUBCASE("needs two strings") {
    CHECK_THROWS_AS(align({"solo"}), Error);
  }
}

TEST_CASE("align matches the DP oracle on random pairs") {
  std::mt19937 rng(71);
  const std::vector<Symbol> alphabet = {"a", "b", "c"};
  for (int it = 0; it < 50; ++it) {
    SymbolString s = random_word(rng, 10, alphabet);
    SymbolString t = random_word(rng, 10, alphabet);
    Alignment got = align_symbols({s, t});
    CHECK(got.weight == edit_distance_dp(s, t));
  }
}

TEST_CASE("three-way alignment matches exhaustive column search") {
  std::mt19937 rng(72);
  const std::vector<Symbol> alphabet = {"a", "b"};
  for (int it = 0; it < 25; ++it) {
    std::vector<SymbolString> strings = {random_word(rng, 4, alphabet),
                                         random_word(rng, 4, alphabet),
                                         random_word(rng, 4, alphabet)};
    Alignment got = align_symbols(strings);
    CHECK(got.weight == nway_alignment_cost(strings));
  }
}

TEST_CASE("cognate pairs") {
  SUBCASE("identical lists pair with themselves first") {
    auto ranked = cognate_pairs({"uno", "dos"}, {"uno", "dos"}, {}, 2);
    REQUIRE(ranked.size() == 2);
    CHECK(ranked[0].weight == 0);
    CHECK(ranked[1].weight == 0);
    CHECK(ranked[0].word1 == ranked[0].word2);
    CHECK(ranked[0].word1 == "dos");  // lexicographic among weight ties
  }
  SUBCASE("closer spelling ranks first") {
    auto ranked = cognate_pairs({"abc"}, {"abd", "xyz"}, {}, 2);
    REQUIRE(ranked.size() == 2);
    CHECK(ranked[0].word2 == "abd");
    CHECK(ranked[0].weight == 1);
    CHECK(ranked[1].weight == 3);
  }
  SUBCASE("top_k larger than the pair count returns everything") {
    auto ranked = cognate_pairs({"a"}, {"b"}, {}, 100);
    CHECK(ranked.size() == 1);
  }
  SUBCASE("top_k of zero is an error") {
    CHECK_THROWS_AS(cognate_pairs({"a"}, {"b"}, {}, 0), Error);
  }
}

TEST_CASE("cascades keep their intermediate tapes") {
  auto t = [](std::string_view in, std::string_view out, Weight w) {
    return tuple_machine(tup({in, out}), w, SemiringId::kTropical);
  };
  SUBCASE("two stages reproduce compose with intermediates") {
    Machine c = cascade_with_intermediates({t("a", "b", 1), t("b", "c", 2)});
    CHECK(c.arity() == 3);
    CHECK(enum_exact(c) == enum_exact(compose(t("a", "b", 1), t("b", "c", 2),
                                              true)));
  }
  SUBCASE("identity cascade keeps all tapes equal") {
    MachineBuilder id(2, SemiringId::kTropical);
    id.add_state();
    id.set_initial(0, 0);
    id.set_final(0, 0);
    id.add_transition(0, 0, 0, {"a", "a"});
    Machine identity = id.build();
    Machine c = cascade_with_intermediates({identity, identity, identity});
    CHECK(c.arity() == 4);
    WeightedTupleSet tuples = enumerate_tuples(c, 6);
    CHECK(!tuples.empty());
    for (const auto& [tuple, w] : tuples.entries()) {
      for (const SymbolString& tape : tuple) CHECK(tape == tuple[0]);
    }
  }
  SUBCASE("coprojecting the middles equals plain composition") {
    std::mt19937 rng(73);
    for (int it = 0; it < 100; ++it) {
      RandomMachineOptions opts;
      opts.acyclic = true;
      opts.max_states = 3;
      opts.min_arity = opts.max_arity = 2;
      Machine t1 = random_machine(rng, opts);
      Machine t2 = random_machine(rng, opts);
      Machine c = cascade_with_intermediates({t1, t2});
      CHECK(enum_exact(coproject(c, {2})) == enum_exact(compose(t1, t2)));
    }
  }
  SUBCASE("input checks") {
    CHECK_THROWS_AS(cascade_with_intermediates({t("a", "b", 1)}), Error);
    CHECK_THROWS_AS(
        cascade_with_intermediates(
            {t("a", "b", 1),
             tuple_machine(tup({"a"}), 1, SemiringId::kTropical)}),
        ArityMismatchError);
  }
}
