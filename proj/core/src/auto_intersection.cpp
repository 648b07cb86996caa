// auto_intersection.cpp
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

#include "ntwfsm/auto_intersection.hpp"

#include <cstdlib>
#include <deque>
#include <map>
#include <string>
#include <tuple>

#include "ntwfsm/errors.hpp"

namespace ntwfsm {

namespace {

void check_tape_pair(int arity, int tape_i, int tape_j) {
  for (int t : {tape_i, tape_j}) {
    if (t < 1 || t > arity) {
      throw IndexError("tape index " + std::to_string(t) +
                       " out of range 1.." + std::to_string(arity));
    }
  }
  if (tape_i == tape_j) {
    throw IndexError("auto-intersection needs two distinct tapes, got " +
                     std::to_string(tape_i) + " twice");
  }
}

// Search state: a base state of the input plus the string one tape is
// ahead by. After common-prefix stripping at most one side is non-empty.
struct Leftover {
  StateId base;
  SymbolString ahead_i;  // tape i read but not yet matched on tape j
  SymbolString ahead_j;

  bool operator<(const Leftover& other) const {
    return std::tie(base, ahead_i, ahead_j) <
           std::tie(other.base, other.ahead_i, other.ahead_j);
  }
};

void strip_common_prefix(SymbolString& u, SymbolString& v) {
  std::size_t k = 0;
  while (k < u.size() && k < v.size() && u[k] == v[k]) ++k;
  if (k > 0) {
    u.erase(u.begin(), u.begin() + k);
    v.erase(v.begin(), v.begin() + k);
  }
}

}  // namespace

int transition_delay(const Transition& t, int tape_i, int tape_j) {
  check_tape_pair(static_cast<int>(t.label.size()), tape_i, tape_j);
  const int li = t.label[tape_i - 1].empty() ? 0 : 1;
  const int lj = t.label[tape_j - 1].empty() ? 0 : 1;
  return li - lj;
}

std::size_t default_delta_max(const Machine& m, int tape_i, int tape_j) {
  check_tape_pair(m.arity(), tape_i, tape_j);
  int d_max = 0;
  for (const Transition& t : m.transitions()) {
    d_max = std::max(d_max, std::abs(transition_delay(t, tape_i, tape_j)));
  }
  return static_cast<std::size_t>(m.num_states() + 1) *
         static_cast<std::size_t>(d_max);
}

AutoIntersectionResult auto_intersect(const Machine& m, int tape_i, int tape_j,
                                      const AutoIntersectionConfig& config) {
  check_tape_pair(m.arity(), tape_i, tape_j);
  const std::size_t delta_max =
      config.delta_max.value_or(default_delta_max(m, tape_i, tape_j));
  const Machine a = trim(m);
  const int ci = tape_i - 1, cj = tape_j - 1;

  MachineBuilder out(a.arity(), a.semiring_id());
  std::map<Leftover, StateId> ids;
  std::deque<Leftover> frontier;
  bool complete = true;

  auto intern = [&](Leftover key, bool* created) -> StateId {
    auto it = ids.find(key);
    if (it != ids.end()) {
      *created = false;
      return it->second;
    }
    StateId id = out.add_state();
    ids.emplace(std::move(key), id);
    *created = true;
    return id;
  };

  for (const auto& [q, w] : a.initial_weights()) {
    bool created = false;
    StateId id = intern(Leftover{q, {}, {}}, &created);
    out.set_initial(id, w);
    if (created) frontier.push_back(Leftover{q, {}, {}});
  }

  while (!frontier.empty()) {
    Leftover cur = std::move(frontier.front());
    frontier.pop_front();
    const StateId cur_id = ids.at(cur);
    if (cur.ahead_i.empty() && cur.ahead_j.empty()) {
      Weight rho = a.final_weight(cur.base);
      if (!a.semiring().is_zero(rho)) out.set_final(cur_id, rho);
    }
    for (std::uint32_t idx : a.out(cur.base)) {
      const Transition& t = a.transitions()[idx];
      SymbolString u = cur.ahead_i;
      SymbolString v = cur.ahead_j;
      if (!t.label[ci].empty()) u.push_back(t.label[ci]);
      if (!t.label[cj].empty()) v.push_back(t.label[cj]);
      strip_common_prefix(u, v);
      if (!u.empty() && !v.empty()) {
        // The two tapes already disagree; no extension can repair that.
        continue;
      }
      if (u.size() + v.size() > delta_max) {
        // The discarded path might have contributed; the result can no
        // longer be guaranteed exhaustive.
        complete = false;
        continue;
      }
      Leftover next{t.dst, std::move(u), std::move(v)};
      bool created = false;
      StateId next_id = intern(next, &created);
      if (created) frontier.push_back(std::move(next));
      out.add_transition(cur_id, next_id, t.weight, t.label);
    }
  }

  return AutoIntersectionResult{trim(out.build()), complete};
}

WeightedTupleSet equal_tapes_filter(const WeightedTupleSet& tuples, int tape_i,
                                    int tape_j) {
  for (int t : {tape_i, tape_j}) {
    if (t < 1 || t > tuples.arity()) {
      throw IndexError("tape index " + std::to_string(t) +
                       " out of range 1.." + std::to_string(tuples.arity()));
    }
  }
  WeightedTupleSet out(tuples.semiring_id(), tuples.arity());
  for (const auto& [tuple, w] : tuples.entries()) {
    if (tuple[tape_i - 1] == tuple[tape_j - 1]) out.add(tuple, w);
  }
  return out;
}

}  // namespace ntwfsm
