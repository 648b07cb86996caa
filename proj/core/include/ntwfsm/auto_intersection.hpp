// auto_intersection.hpp
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
// Auto-intersection: restricts a machine's relation to the tuples whose
// tapes i and j carry equal strings. The construction walks the machine
// while tracking the leftover string one tape is ahead of the other; the
// leftover length (the delay) is capped, and any path discarded at the cap
// clears the `complete` flag, since the exact result might then not be
// finite-state at all.

#ifndef NTWFSM_AUTO_INTERSECTION_HPP_
#define NTWFSM_AUTO_INTERSECTION_HPP_

#include <cstddef>
#include <optional>

#include "ntwfsm/machine.hpp"

namespace ntwfsm {

// |label[i]| - |label[j]| with epsilon counting 0 and a symbol 1.
// Tape indices are 1-based and must be distinct and within the label.
int transition_delay(const Transition& t, int tape_i, int tape_j);

// Conservative default delay cap: (|Q| + 1) * max |transition delay|
// (zero for machines without transitions). Any cap keeps the construction
// sound; the cap only decides when the completeness flag can stay true.
std::size_t default_delta_max(const Machine& m, int tape_i, int tape_j);

struct AutoIntersectionConfig {
  // Cap on the leftover length. Defaults to default_delta_max(m, i, j).
  std::optional<std::size_t> delta_max;
};

struct AutoIntersectionResult {
  Machine machine;
  // True when no path was discarded at the delay cap, in which case the
  // machine denotes exactly the auto-intersection of the input's relation.
  bool complete;
};

// sigma_{i,j}: keeps exactly the tuples whose tapes i and j are equal.
// The result has the same arity as the input (callers typically coproject
// the duplicate tape afterwards) and carries the input's original labels.
AutoIntersectionResult auto_intersect(const Machine& m, int tape_i, int tape_j,
                                      const AutoIntersectionConfig& config = {});

// Relation-level definition of sigma_{i,j} on a finite enumeration: keeps
// exactly the entries whose i-th and j-th strings are equal. This is the
// brute-force oracle for auto_intersect.
WeightedTupleSet equal_tapes_filter(const WeightedTupleSet& tuples, int tape_i,
                                    int tape_j);

}  // namespace ntwfsm

#endif  // NTWFSM_AUTO_INTERSECTION_HPP_
