// acceptance.cpp
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
//
// End-to-end acceptance suite. Each criterion is self-contained, checks
// against an independent oracle, enforces its runtime budget, and prints
// exactly one PASS/FAIL line. Run all criteria by default or a single one
// with `--only N`.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/cli_runner.hpp"
#include "support/test_support.hpp"

using namespace ntwfsm;
using namespace ntwfsm::testing;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) {
      ok = false;
      detail = why;
    }
  }
  void require(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

Machine one_tuple(std::initializer_list<std::string_view> tapes, Weight w,
                  SemiringId sr = SemiringId::kTropical) {
  return tuple_machine(tup(tapes), w, sr);
}

std::string describe_tuple(const StringTuple& t) {
  std::string out = "<";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i > 0) out += ",";
    for (const Symbol& s : t[i]) out += s;
  }
  return out + ">";
}

// ---- criterion 1: semiring axioms --------------------------------------

Weight axiom_sample(std::mt19937& rng, const Semiring& sr) {
  switch (sr.id()) {
    case SemiringId::kBoolean:
      return rng() % 2 ? 1.0 : 0.0;
    case SemiringId::kTropical:
      if (rng() % 12 == 0) return sr.zero();
      return static_cast<Weight>(rng() % 400) / 8.0;
    case SemiringId::kLog:
      if (rng() % 12 == 0) return sr.zero();
      return static_cast<Weight>(rng() % 400) / 8.0 - 25.0;
    case SemiringId::kReal:
      return static_cast<Weight>(rng() % 400) / 8.0 - 25.0;
  }
  return 0.0;
}

void criterion_semiring_axioms(Check& check) {
  // 1e-9 relative with a unit floor: intermediate results may legitimately
  // land near zero, where a pure relative bound degenerates.
  auto close = [](Weight a, Weight b, double tol) {
    if (a == b) return true;
    if (tol == 0.0 || std::isinf(a) || std::isinf(b)) return false;
    return std::fabs(a - b) <=
           tol * std::max(1.0, std::max(std::fabs(a), std::fabs(b)));
  };
  for (const Semiring* srp :
       {&Semiring::boolean(), &Semiring::tropical(), &Semiring::real(),
        &Semiring::log()}) {
    const Semiring& sr = *srp;
    const double tol = sr.id() == SemiringId::kBoolean ||
                               sr.id() == SemiringId::kTropical
                           ? 0.0
                           : 1e-9;
    std::mt19937 rng(1001);
    for (int it = 0; it < 1000; ++it) {
      Weight a = axiom_sample(rng, sr), b = axiom_sample(rng, sr),
             c = axiom_sample(rng, sr);
      const std::string where = sr.name() + " triple #" + std::to_string(it);
      check.require(close(sr.plus(sr.plus(a, b), c), sr.plus(a, sr.plus(b, c)),
                          tol),
                    where + ": (+) associativity");
      check.require(sr.plus(a, b) == sr.plus(b, a),
                    where + ": (+) commutativity");
      check.require(sr.plus(a, sr.zero()) == a, where + ": (+) identity");
      check.require(close(sr.times(sr.times(a, b), c),
                          sr.times(a, sr.times(b, c)), tol),
                    where + ": (*) associativity");
      check.require(sr.times(a, sr.one()) == a && sr.times(sr.one(), a) == a,
                    where + ": (*) identity");
      check.require(sr.times(a, sr.zero()) == sr.zero() &&
                        sr.times(sr.zero(), a) == sr.zero(),
                    where + ": annihilation");
      check.require(close(sr.times(a, sr.plus(b, c)),
                          sr.plus(sr.times(a, b), sr.times(a, c)), tol),
                    where + ": left distributivity");
      check.require(close(sr.times(sr.plus(a, b), c),
                          sr.plus(sr.times(a, c), sr.times(b, c)), tol),
                    where + ": right distributivity");
      if (sr.is_idempotent()) {
        check.require(sr.plus(a, a) == a, where + ": idempotence");
      }
      if (!check.ok) return;
    }
  }
}

// ---- criterion 2: auto-intersection soundness & completeness ------------

void criterion_auto_intersection(Check& check) {
  std::mt19937 rng(1002);
  int complete_count = 0, incomplete_count = 0, nonempty_count = 0;
  for (int it = 0; it < 200; ++it) {
    RandomMachineOptions opts;
    opts.max_states = 5;
    opts.min_arity = 2;
    opts.max_arity = 3;
    opts.alphabet = {"a", "b"};
    opts.semiring = SemiringId::kTropical;
    Machine m = random_machine(rng, opts);
    const int i = 1;
    const int j = 2 + static_cast<int>(rng() % (m.arity() - 1));
    AutoIntersectionResult r = auto_intersect(m, i, j);
    const std::size_t hops = 8;
    WeightedTupleSet got = enumerate_tuples(r.machine, hops, 4000000);
    WeightedTupleSet want =
        equal_tapes_filter(enumerate_tuples(m, hops, 4000000), i, j);
    const std::string where = "machine #" + std::to_string(it);
    if (!want.empty()) ++nonempty_count;
    if (r.complete) {
      ++complete_count;
      check.require(got == want, where + ": complete result must equal the "
                                         "equal-tapes filter");
    } else {
      ++incomplete_count;
      for (const auto& [t, w] : got.entries()) {
        check.require(want.contains(t),
                      where + ": invented tuple " + describe_tuple(t));
        check.require(want.weight(t) == w,
                      where + ": weight drift on " + describe_tuple(t));
      }
    }
    if (!check.ok) return;
  }
  check.require(complete_count >= 20 && incomplete_count >= 20,
                "generator must produce both complete and incomplete runs, "
                "got " +
                    std::to_string(complete_count) + "/" +
                    std::to_string(incomplete_count));
  check.require(nonempty_count >= 50,
                "degenerate generator: only " +
                    std::to_string(nonempty_count) +
                    " filtered relations were non-empty");
}

// ---- criterion 3: join differential -------------------------------------

void criterion_join_differential(Check& check) {
  std::mt19937 rng(1003);
  int checked = 0, nonempty = 0;
  for (int it = 0; checked < 200 && it < 1000; ++it) {
    RandomMachineOptions opts;
    opts.acyclic = true;
    opts.min_arity = 1;
    opts.max_arity = 2;
    opts.max_states = 5;
    opts.semiring = SemiringId::kTropical;
    // A one-letter alphabet on half the draws makes tape matches, and so
    // multi-path joins, much more likely.
    if (it % 2 == 0) opts.alphabet = {"a"};
    Machine a = random_machine(rng, opts);
    Machine b = random_machine(rng, opts);
    const JoinSpec spec{{{1 + static_cast<int>(rng() % a.arity()),
                          1 + static_cast<int>(rng() % b.arity())}}};
    if (!join_direct_applicable(a, spec, b)) continue;
    ++checked;
    const std::string where = "join #" + std::to_string(checked);
    Machine direct = join_direct(a, spec, b);
    AutoIntersectionResult sigma = join_via_sigma(a, spec, b);
    check.require(sigma.complete, where + ": sigma route incomplete on "
                                          "acyclic operands");
    WeightedTupleSet want = set_join(enum_exact(a), spec, enum_exact(b));
    if (!want.empty()) ++nonempty;
    check.require(enum_exact(direct) == want,
                  where + ": join_direct differs from the brute-force join");
    check.require(enum_exact(sigma.machine) == want,
                  where + ": join_via_sigma differs from the brute-force join");
    if (!check.ok) return;
  }
  check.require(checked >= 200, "only " + std::to_string(checked) +
                                    " guard-satisfying joins generated");
  check.require(nonempty >= 50, "degenerate generator: only " +
                                    std::to_string(nonempty) +
                                    " joins were non-empty");
}

// ---- criterion 4: composition --------------------------------------------

void criterion_composition(Check& check) {
  std::mt19937 rng(1004);
  int nonempty = 0;
  for (int it = 0; it < 100; ++it) {
    RandomMachineOptions opts;
    opts.acyclic = true;
    opts.min_arity = opts.max_arity = 2;
    opts.semiring = SemiringId::kTropical;
    Machine t1 = random_machine(rng, opts);
    Machine t2 = random_machine(rng, opts);
    const std::string where = "pair #" + std::to_string(it);
    WeightedTupleSet want = set_compose(enum_exact(t1), enum_exact(t2));
    if (!want.empty()) ++nonempty;
    check.require(enum_exact(compose(t1, t2)) == want,
                  where + ": compose differs from relation composition");
    Machine kept = compose(t1, t2, true);
    check.require(enum_exact(coproject(kept, {2})) == want,
                  where + ": keep_intermediate then coproject differs");
    if (!check.ok) return;
  }
  check.require(nonempty >= 25, "degenerate generator: only " +
                                    std::to_string(nonempty) +
                                    " compositions were non-empty");
}

// ---- criterion 5: incompleteness detection -------------------------------

void criterion_incompleteness(Check& check) {
  auto one = [](std::initializer_list<std::string_view> t) {
    return tuple_machine(tup(t), 0, SemiringId::kTropical);
  };
  Machine lossy = concat(concat(closure(one({"a", ""})), one({"b", ""})),
                         concat(closure(one({"", "a"})), one({"", "b"})));
  AutoIntersectionResult by_default = auto_intersect(lossy, 1, 2);
  check.require(!by_default.complete,
                "opposite-sign delay loops must flag incompleteness at the "
                "default cap");
  for (std::size_t cap = 1; cap <= 20; ++cap) {
    AutoIntersectionConfig cfg;
    cfg.delta_max = cap;
    check.require(!auto_intersect(lossy, 1, 2, cfg).complete,
                  "cap " + std::to_string(cap) + " must flag incompleteness");
  }
  // Sound even when incomplete.
  WeightedTupleSet got = enumerate_tuples(by_default.machine, 10);
  WeightedTupleSet want = equal_tapes_filter(enumerate_tuples(lossy, 10), 1, 2);
  for (const auto& [t, w] : got.entries()) {
    check.require(want.contains(t) && want.weight(t) == w,
                  "incomplete result drifted on " + describe_tuple(t));
  }

  Machine zero_delay = concat(closure(one({"a", "a"})), one({"b", "b"}));
  AutoIntersectionResult exact = auto_intersect(zero_delay, 1, 2);
  check.require(exact.complete, "zero-delay cycles must stay complete");
  const std::size_t hops = 9;
  check.require(enumerate_tuples(exact.machine, hops) ==
                    equal_tapes_filter(enumerate_tuples(zero_delay, hops), 1,
                                       2),
                "zero-delay variant must be oracle-exact");
}

// ---- criterion 6: alignment ----------------------------------------------

void criterion_alignment(Check& check) {
  check.require(align({"kitten", "sitting"}).weight == 3,
                "kitten/sitting must cost 3 with unit costs");
  std::mt19937 rng(1006);
  const std::vector<Symbol> alphabet = {"a", "b", "c"};
  for (int it = 0; it < 50; ++it) {
    SymbolString s, t;
    for (std::size_t k = rng() % 11; k > 0; --k) {
      s.push_back(alphabet[rng() % 3]);
    }
    for (std::size_t k = rng() % 11; k > 0; --k) {
      t.push_back(alphabet[rng() % 3]);
    }
    Weight got = align_symbols({s, t}).weight;
    double want = edit_distance_dp(s, t);
    check.require(got == want, "pair #" + std::to_string(it) +
                                   ": align weight " + std::to_string(got) +
                                   " vs DP " + std::to_string(want));
    if (!check.ok) return;
  }
  for (int it = 0; it < 15; ++it) {
    std::vector<SymbolString> strings(3);
    for (auto& w : strings) {
      for (std::size_t k = rng() % 5; k > 0; --k) {
        w.push_back(alphabet[rng() % 2]);
      }
    }
    Weight got = align_symbols(strings).weight;
    double want = nway_alignment_cost(strings);
    check.require(got == want,
                  "3-way #" + std::to_string(it) + ": align weight " +
                      std::to_string(got) + " vs exhaustive " +
                      std::to_string(want));
    if (!check.ok) return;
  }
}

// ---- criterion 7: round trips ---------------------------------------------

void criterion_round_trip(Check& check) {
  std::mt19937 rng(1007);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const SemiringId semirings[] = {SemiringId::kBoolean, SemiringId::kTropical,
                                  SemiringId::kReal, SemiringId::kLog};
  for (int it = 0; it < 500; ++it) {
    const SemiringId sr_id = semirings[it % 4];
    auto weight = [&]() -> Weight {
      switch (sr_id) {
        case SemiringId::kBoolean:
          return 1.0;
        case SemiringId::kTropical:
          return uniform(rng) * 1e3;
        case SemiringId::kReal:
          return uniform(rng) * 4.0 - 2.0;
        case SemiringId::kLog:
          return uniform(rng) * 40.0 - 20.0;
      }
      return 1.0;
    };
    RandomMachineOptions opts;
    opts.semiring = sr_id;
    opts.max_states = 5;
    Machine skeleton = random_machine(rng, opts);
    MachineBuilder b(skeleton.arity(), sr_id);
    b.add_states(skeleton.num_states());
    for (const auto& [q, w] : skeleton.initial_weights()) {
      b.set_initial(q, weight());
    }
    for (const auto& [q, w] : skeleton.final_weights()) {
      b.set_final(q, weight());
    }
    for (const Transition& t : skeleton.transitions()) {
      b.add_transition(t.src, t.dst, weight(), t.label);
    }
    Machine m = b.build();
    const std::string text = serialize(m);
    Machine reparsed = parse(text);
    const std::string again = serialize(reparsed);
    const std::string where = "machine #" + std::to_string(it);
    check.require(again == text, where + ": serialize is not idempotent");
    check.require(reparsed.num_states() == m.num_states() &&
                      reparsed.transitions().size() ==
                          m.transitions().size() &&
                      reparsed.initial_weights() == m.initial_weights() &&
                      reparsed.final_weights() == m.final_weights(),
                  where + ": reparse changed the structure");
    if (!check.ok) return;
  }
}

// ---- criterion 8: CLI golden ----------------------------------------------

void criterion_cli_golden(Check& check) {
  Machine a = one_tuple({"a"}, 1);
  Machine b = one_tuple({"b"}, 2);
  Machine ab = one_tuple({"a", "b"}, 3);
  Machine bc = one_tuple({"b", "c"}, 2);
  TempFile fa(serialize(a)), fb(serialize(b)), fab(serialize(ab)),
      fbc(serialize(bc));

  auto golden = [&check](const std::string& args, const std::string& want,
                         int status = 0) {
    CommandResult r = run_cli(args);
    check.require(r.status == status,
                  "`" + args + "` exited " + std::to_string(r.status) +
                      ", expected " + std::to_string(status));
    check.require(r.out == want, "`" + args + "` stdout differs");
  };

  golden("print " + fab.arg(), serialize(ab));
  golden("compile " + fab.arg() + " --semiring tropical", serialize(ab));
  golden("dot " + fab.arg(), to_dot(ab));
  golden("union " + fa.arg() + " " + fb.arg(), serialize(union_of(a, b)));
  golden("concat " + fa.arg() + " " + fb.arg(), serialize(concat(a, b)));
  golden("closure " + fa.arg(), serialize(closure(a)));
  golden("cross " + fa.arg() + " " + fb.arg(),
         serialize(cross_product(a, b)));
  golden("project " + fab.arg() + " --tapes 2", serialize(project(ab, {2})));
  golden("coproject " + fab.arg() + " --tapes 2",
         serialize(coproject(ab, {2})));
  Machine bridged = concat(a, b);
  TempFile fbr(serialize(bridged));
  golden("rmeps " + fbr.arg(), serialize(remove_epsilon_tuples(bridged)));

  Machine diag = one_tuple({"a", "a"}, 0);
  TempFile fd(serialize(diag));
  golden("autointersect " + fd.arg() + " --tape-i 1 --tape-j 2",
         "# complete true\n" + serialize(auto_intersect(diag, 1, 2).machine));

  auto one = [](std::initializer_list<std::string_view> t) {
    return tuple_machine(tup(t), 0, SemiringId::kTropical);
  };
  Machine lossy = concat(concat(closure(one({"a", ""})), one({"b", ""})),
                         concat(closure(one({"", "a"})), one({"", "b"})));
  TempFile fl(serialize(lossy));
  AutoIntersectionResult sigma = auto_intersect(lossy, 1, 2);
  golden("autointersect " + fl.arg() + " --tape-i 1 --tape-j 2",
         "# complete false\n" + serialize(sigma.machine));
  golden("autointersect " + fl.arg() + " --tape-i 1 --tape-j 2 --strict",
         "# complete false\n" + serialize(sigma.machine), 2);

  golden("join " + fab.arg() + " " + fbc.arg() + " --pairs 2=1",
         "# complete true\n" +
             serialize(join_via_sigma(ab, JoinSpec{{{2, 1}}}, bc).machine));
  golden("compose " + fab.arg() + " " + fbc.arg(),
         serialize(compose(ab, bc)));
  golden("compose " + fab.arg() + " " + fbc.arg() + " --keep-intermediate",
         serialize(compose(ab, bc, true)));
  golden("bestpath " + fab.arg(), "3\ta\tb\n");
  Machine two = union_of(one_tuple({"a"}, 2), one_tuple({"b"}, 5));
  TempFile ft(serialize(two));
  golden("enumerate " + ft.arg() + " --hop-limit 3", "2\ta\n5\tb\n");
  golden("align kitten sitting", "3\tkitten-\tsitting\n");

  TempFile l1("abc\n", ".txt");
  TempFile l2("abd\nxyz\n", ".txt");
  golden("cognates " + l1.arg() + " " + l2.arg() + " --top 2",
         "1\tabc\tabd\n3\tabc\txyz\n");
  golden("cascade " + fab.arg() + " " + fbc.arg(),
         serialize(cascade_with_intermediates({ab, bc})));
  golden("union " + fa.arg() + " " + fab.arg(), "", 1);  // arity mismatch
}

struct Criterion {
  int id;
  const char* name;
  double time_limit_seconds;
  std::function<void(Check&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--only" && i + 1 < argc) {
      only = std::atoi(argv[i + 1]);
    }
  }

  const std::vector<Criterion> criteria = {
      {1, "semiring axioms on 1000 random triples per semiring", 1.0,
       criterion_semiring_axioms},
      {2, "auto-intersection soundness and completeness on 200 random "
          "machines",
       30.0, criterion_auto_intersection},
      {3, "join differential (direct vs sigma vs brute force) on 200 joins",
       30.0, criterion_join_differential},
      {4, "composition against brute-force relation composition on 100 pairs",
       15.0, criterion_composition},
      {5, "incompleteness detection on opposite-sign and zero-delay loops",
       30.0, criterion_incompleteness},
      {6, "alignment weights against DP and exhaustive column search", 10.0,
       criterion_alignment},
      {7, "serialization round trips on 500 random machines", 5.0,
       criterion_round_trip},
      {8, "CLI golden outputs, complete header and --strict exit code", 30.0,
       criterion_cli_golden},
  };

  bool all_ok = true;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(check);
    } catch (const std::exception& e) {
      check.fail(std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (elapsed > c.time_limit_seconds) {
      check.fail("exceeded the " + std::to_string(c.time_limit_seconds) +
                 "s budget");
    }
    std::printf("%s  criterion %d: %s (%.2fs)\n", check.ok ? "PASS" : "FAIL",
                c.id, c.name, elapsed);
    if (!check.ok) {
      std::printf("      %s\n", check.detail.c_str());
      all_ok = false;
    }
  }
  return all_ok ? 0 : 1;
}
