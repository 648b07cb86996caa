// join.cpp
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

#include "ntwfsm/join.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>

#include "ntwfsm/errors.hpp"
#include "ntwfsm/rational_ops.hpp"

namespace ntwfsm {

namespace {

void check_spec(const Machine& a, const JoinSpec& spec, const Machine& b) {
  if (a.semiring_id() != b.semiring_id()) {
    throw SemiringMismatchError("join operands live over semirings '" +
                                a.semiring().name() + "' and '" +
                                b.semiring().name() + "'");
  }
  if (spec.pairs.empty()) {
    throw IndexError("join needs at least one tape pair");
  }
  std::set<int> left, right;
  for (const auto& [i, j] : spec.pairs) {
    if (i < 1 || i > a.arity()) {
      throw IndexError("left tape index " + std::to_string(i) +
                       " out of range 1.." + std::to_string(a.arity()));
    }
    if (j < 1 || j > b.arity()) {
      throw IndexError("right tape index " + std::to_string(j) +
                       " out of range 1.." + std::to_string(b.arity()));
    }
    if (!left.insert(i).second) {
      throw IndexError("left tape " + std::to_string(i) + " matched twice");
    }
    if (!right.insert(j).second) {
      throw IndexError("right tape " + std::to_string(j) + " matched twice");
    }
  }
}

// True iff some transition is epsilon on every matched tape, i.e. can move
// without the other operand moving.
bool has_lone_move(const Machine& m, const std::set<int>& matched) {
  for (const Transition& t : m.transitions()) {
    bool all_eps = true;
    for (int tape : matched) {
      if (!t.label[tape - 1].empty()) {
        all_eps = false;
        break;
      }
    }
    if (all_eps) return true;
  }
  return false;
}

// True iff every transition writes the matched tapes in lockstep: all of
// them or none of them. Then the machine's matched content advances in
// whole columns and the product construction can align both operands
// column by column. (With a single matched tape this always holds.)
bool matched_tapes_aligned(const Machine& m, const std::set<int>& matched) {
  for (const Transition& t : m.transitions()) {
    int symbols = 0;
    for (int tape : matched) {
      if (!t.label[tape - 1].empty()) ++symbols;
    }
    if (symbols != 0 && symbols != static_cast<int>(matched.size())) {
      return false;
    }
  }
  return true;
}

}  // namespace

AutoIntersectionResult join_via_sigma(const Machine& a, const JoinSpec& spec,
                                      const Machine& b) {
  check_spec(a, spec, b);
  Machine x = cross_product(a, b);
  bool complete = true;
  for (const auto& [i, j] : spec.pairs) {
    AutoIntersectionResult r = auto_intersect(x, i, a.arity() + j);
    x = std::move(r.machine);
    complete = complete && r.complete;
  }
  TapeIndexList duplicates;
  for (const auto& [i, j] : spec.pairs) {
    duplicates.push_back(a.arity() + j);
  }
  x = remove_epsilon_tuples(coproject(x, duplicates));
  return AutoIntersectionResult{trim(x), complete};
}

bool join_direct_applicable(const Machine& a, const JoinSpec& spec,
                            const Machine& b) {
  check_spec(a, spec, b);
  std::set<int> left, right;
  for (const auto& [i, j] : spec.pairs) {
    left.insert(i);
    right.insert(j);
  }
  if (spec.pairs.size() > 1 && (!matched_tapes_aligned(a, left) ||
                                !matched_tapes_aligned(b, right))) {
    // A transition writing only some matched tapes lets the two operands
    // produce equal strings without any per-transition alignment; the
    // product construction would miss those pairs.
    return false;
  }
  if (a.semiring().is_idempotent()) return true;
  return !(has_lone_move(a, left) && has_lone_move(b, right));
}

Machine join_direct(const Machine& a, const JoinSpec& spec, const Machine& b) {
  check_spec(a, spec, b);
  if (!join_direct_applicable(a, spec, b)) {
    throw JoinGuardError(
        "join_direct cannot realize this join exactly (multi-pair operands "
        "must write their matched tapes in lockstep, and in non-idempotent "
        "semirings only one operand may move epsilon-only on the matched "
        "tapes); use join_via_sigma instead");
  }
  const Semiring& sr = a.semiring();

  std::vector<int> matched_of_b(b.arity() + 1, 0);  // b tape -> a tape
  std::set<int> left, right;
  for (const auto& [i, j] : spec.pairs) {
    matched_of_b[j] = i;
    left.insert(i);
    right.insert(j);
  }
  std::vector<int> b_unmatched;
  for (int j = 1; j <= b.arity(); ++j) {
    if (right.count(j) == 0) b_unmatched.push_back(j);
  }
  const int out_arity = a.arity() + static_cast<int>(b_unmatched.size());

  auto lone_a = [&](const Transition& t) {
    for (int i : left) {
      if (!t.label[i - 1].empty()) return false;
    }
    return true;
  };
  auto lone_b = [&](const Transition& t) {
    for (int j : right) {
      if (!t.label[j - 1].empty()) return false;
    }
    return true;
  };
  auto make_label = [&](const LabelTuple* la, const LabelTuple* lb) {
    LabelTuple label(out_arity);
    if (la != nullptr) {
      for (int i = 0; i < a.arity(); ++i) label[i] = (*la)[i];
    }
    for (std::size_t k = 0; k < b_unmatched.size(); ++k) {
      if (lb != nullptr) label[a.arity() + k] = (*lb)[b_unmatched[k] - 1];
    }
    return label;
  };

  MachineBuilder out(out_arity, a.semiring_id());
  using Pair = std::pair<StateId, StateId>;
  std::map<Pair, StateId> ids;
  std::deque<Pair> frontier;
  auto intern = [&](Pair key) -> StateId {
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    StateId id = out.add_state();
    ids.emplace(key, id);
    frontier.push_back(key);
    return id;
  };

  for (const auto& [p, wa] : a.initial_weights()) {
    for (const auto& [q, wb] : b.initial_weights()) {
      StateId id = intern({p, q});
      out.set_initial(id, sr.times(wa, wb));
    }
  }

  while (!frontier.empty()) {
    auto [p, q] = frontier.front();
    frontier.pop_front();
    const StateId id = ids.at({p, q});

    Weight ra = a.final_weight(p), rb = b.final_weight(q);
    if (!sr.is_zero(ra) && !sr.is_zero(rb)) {
      out.set_final(id, sr.times(ra, rb));
    }

    for (std::uint32_t ia : a.out(p)) {
      const Transition& ta = a.transitions()[ia];
      if (lone_a(ta)) {
        out.add_transition(id, intern({ta.dst, q}), ta.weight,
                           make_label(&ta.label, nullptr));
      }
    }
    for (std::uint32_t ib : b.out(q)) {
      const Transition& tb = b.transitions()[ib];
      if (lone_b(tb)) {
        out.add_transition(id, intern({p, tb.dst}), tb.weight,
                           make_label(nullptr, &tb.label));
      }
    }
    for (std::uint32_t ia : a.out(p)) {
      const Transition& ta = a.transitions()[ia];
      for (std::uint32_t ib : b.out(q)) {
        const Transition& tb = b.transitions()[ib];
        if (lone_a(ta) && lone_b(tb)) continue;  // covered by lone moves
        bool sync = true;
        for (const auto& [i, j] : spec.pairs) {
          if (ta.label[i - 1] != tb.label[j - 1]) {
            sync = false;
            break;
          }
        }
        if (!sync) continue;
        out.add_transition(id, intern({ta.dst, tb.dst}),
                           sr.times(ta.weight, tb.weight),
                           make_label(&ta.label, &tb.label));
      }
    }
  }

  return trim(out.build());
}

Machine compose(const Machine& t1, const Machine& t2, bool keep_intermediate) {
  if (t1.arity() != 2 || t2.arity() != 2) {
    throw ArityMismatchError("compose needs two arity-2 machines, got " +
                             std::to_string(t1.arity()) + " and " +
                             std::to_string(t2.arity()));
  }
  const JoinSpec spec{{{2, 1}}};
  Machine joined(3, t1.semiring_id());
  if (join_direct_applicable(t1, spec, t2)) {
    joined = join_direct(t1, spec, t2);
  } else {
    AutoIntersectionResult r = join_via_sigma(t1, spec, t2);
    if (!r.complete) {
      throw Error(
          "composition is not representable exactly here: the sigma route "
          "hit its delay bound and the product route's epsilon guard "
          "rejected the operands");
    }
    joined = std::move(r.machine);
  }
  if (keep_intermediate) return joined;
  return coproject(joined, {2});
}

}  // namespace ntwfsm
