// join.hpp
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
// Join: combines two relations on equality constraints between selected
// tape pairs, generalizing both composition and intersection. Two
// independent constructions are provided so they can check each other:
//
//   join_via_sigma  cross-product, then one auto-intersection per matched
//                   pair, then complementary projection of the duplicated
//                   tapes. Fully general, but inherits auto-intersection's
//                   completeness caveat.
//   join_direct     a pairwise product construction that synchronizes
//                   matched tapes transition by transition. Exact and
//                   always complete, but restricted by an epsilon guard
//                   (see below).
//
// Result tapes are a's tapes followed by b's unmatched tapes in ascending
// order; the result arity is n_a + n_b - (number of pairs).

#ifndef NTWFSM_JOIN_HPP_
#define NTWFSM_JOIN_HPP_

#include <utility>
#include <vector>

#include "ntwfsm/auto_intersection.hpp"
#include "ntwfsm/machine.hpp"

namespace ntwfsm {

// Equality constraints: (tape of a, tape of b), 1-based. All a-tapes
// distinct, all b-tapes distinct.
struct JoinSpec {
  std::vector<std::pair<int, int>> pairs;
};

// The sigma route. Completeness flags of the per-pair auto-intersections
// are ANDed; when the flag is false the machine denotes a weight-exact
// subset of the join.
AutoIntersectionResult join_via_sigma(const Machine& a, const JoinSpec& spec,
                                      const Machine& b);

// The product route. Two guards keep it exact:
//  - multi-pair specs additionally require each operand to write its
//    matched tapes in lockstep (per transition, all matched tapes carry a
//    symbol or all carry epsilon), so the operands can be synchronized
//    column by column;
//  - path multiplicity must not distort weights: the semiring is
//    idempotent, or at most one operand has transitions that are epsilon
//    on every matched tape.
// Violations throw JoinGuardError directing the caller to join_via_sigma.
Machine join_direct(const Machine& a, const JoinSpec& spec, const Machine& b);

// True when join_direct accepts these operands.
bool join_direct_applicable(const Machine& a, const JoinSpec& spec,
                            const Machine& b);

// Transducer composition (both operands arity 2): joins a's output tape to
// b's input tape. With keep_intermediate the arity-3 result retains the
// intermediate string as its middle tape. Uses join_direct when its guard
// allows and the sigma route otherwise; throws when neither route yields
// the exact relation.
Machine compose(const Machine& t1, const Machine& t2,
                bool keep_intermediate = false);

}  // namespace ntwfsm

#endif  // NTWFSM_JOIN_HPP_
