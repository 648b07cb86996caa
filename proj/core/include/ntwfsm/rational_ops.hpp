// rational_ops.hpp
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
// Rational operations on n-tape machines. All functions are pure: operands
// are never modified and results are freshly built, normalized machines.

#ifndef NTWFSM_RATIONAL_OPS_HPP_
#define NTWFSM_RATIONAL_OPS_HPP_

#include <vector>

#include "ntwfsm/machine.hpp"

namespace ntwfsm {

// 1-based tape indices; repetition and reordering are permitted where the
// operation says so.
using TapeIndexList = std::vector<int>;

// R(a) u R(b), weights (+)-combined on overlap. Requires equal arity and
// semiring. Realized by disjoint state union.
Machine union_of(const Machine& a, const Machine& b);

// Tape-wise concatenation {u.v : u in R(a), v in R(b)}, weights
// (*)-combined. Realized with epsilon-tuple bridges weighted
// rho_a(q) (*) lambda_b(q').
Machine concat(const Machine& a, const Machine& b);

// Kleene star of the relation under tape-wise concatenation; accepts the
// all-epsilon tuple with weight one. Refuses operands that already accept
// the all-epsilon tuple when the semiring is not idempotent, since the
// star would then need a divergent infinite sum.
Machine closure(const Machine& a);

// {(u,v) : u in R(a), v in R(b)} of arity n_a + n_b, weights (*)-combined.
// Realized as the concatenation of a padded with epsilon on b's tapes and
// b padded with epsilon on a's tapes, so each path pair yields exactly one
// result path.
Machine cross_product(const Machine& a, const Machine& b);

// Keeps/reorders tapes; `keep` may repeat indices to duplicate a tape.
// Weights are untouched; tuples colliding after projection are
// (+)-aggregated at evaluation time. May create all-epsilon labels (use
// remove_epsilon_tuples to get rid of them).
Machine project(const Machine& a, const TapeIndexList& keep);

// Drops the listed tapes, keeping the complement in ascending order.
Machine coproject(const Machine& a, const TapeIndexList& remove);

// Removes all-epsilon-labeled transitions without changing the relation,
// folding their weights into successor transitions and final weights.
// Epsilon-tuple cycles are accepted only where the folded sum converges:
// boolean always, tropical when no cycle is negative. Otherwise throws
// EpsilonCycleError.
Machine remove_epsilon_tuples(const Machine& a);

}  // namespace ntwfsm

#endif  // NTWFSM_RATIONAL_OPS_HPP_
