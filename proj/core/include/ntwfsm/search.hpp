// search.hpp
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
// Shortest distance and best path over the naturally ordered semirings
// (boolean, tropical). The priority-driven relaxation terminates because
// (+) selects one argument and weights never improve along a transition.

#ifndef NTWFSM_SEARCH_HPP_
#define NTWFSM_SEARCH_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ntwfsm/machine.hpp"

namespace ntwfsm {

// For each state q, the (+)-sum over all paths from the initial weights to
// q of their (*)-weights. States unreachable from any initial state carry
// no entry. Requires the boolean or tropical semiring; tropical machines
// must not have negative transition weights.
std::map<StateId, Weight> shortest_distance(const Machine& m);

struct BestPath {
  std::vector<StateId> states;                     // q0 .. qk
  std::vector<std::uint32_t> transition_indexes;   // into m.transitions()
  StringTuple tuple;                               // per-tape concatenations
  Weight weight;
};

// An accepting path achieving the (+)-sum over all accepting paths (the
// minimum, under the natural order). Returns nullopt when the machine
// accepts nothing. Ties are broken deterministically: smallest weight,
// then fewest transitions, then lexicographically smallest state-id
// sequence. Same semiring requirements as shortest_distance.
std::optional<BestPath> best_path(const Machine& m);

}  // namespace ntwfsm

#endif  // NTWFSM_SEARCH_HPP_
