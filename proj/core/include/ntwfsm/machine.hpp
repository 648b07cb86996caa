// machine.hpp
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
// The n-tape weighted machine: a finite set of states carrying initial and
// final weights, connected by transitions labeled with an n-tuple of tokens
// (one per tape, each a symbol or epsilon). A machine denotes a weighted
// relation on n strings: a tuple's weight is the (+)-sum over all accepting
// paths reading it of lambda(start) (*) transition weights (*) rho(end).
//
// Machines are immutable values. They are assembled through MachineBuilder,
// which normalizes them on build(): multi-symbol label components are
// expanded into transition chains, zero-weight transitions and zero
// initial/final entries are dropped, boolean weights are clamped to {0,1},
// and transitions are sorted into a canonical order.

#ifndef NTWFSM_MACHINE_HPP_
#define NTWFSM_MACHINE_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ntwfsm/semiring.hpp"

namespace ntwfsm {

using StateId = std::uint32_t;

// A symbol is any non-empty whitespace-free token, treated atomically.
// The empty string represents epsilon inside label tuples.
using Symbol = std::string;

// A string over the alphabet: a sequence of symbols (not characters).
using SymbolString = std::vector<Symbol>;

// Transition label: exactly one component per tape, "" meaning epsilon.
using LabelTuple = std::vector<Symbol>;

// An n-tuple of tape strings, e.g. an element of the denoted relation.
using StringTuple = std::vector<SymbolString>;

struct Transition {
  StateId src;
  StateId dst;
  LabelTuple label;
  Weight weight;
};

bool operator==(const Transition& a, const Transition& b);
// Canonical transition order: (src, dst, label, weight).
bool transition_less(const Transition& a, const Transition& b);

// True when every component of the label is epsilon.
bool is_epsilon_tuple(const LabelTuple& label);

class Machine {
 public:
  // The empty machine (no states, empty relation).
  Machine(int arity, SemiringId semiring);

  int arity() const { return arity_; }
  SemiringId semiring_id() const { return semiring_; }
  const Semiring& semiring() const { return Semiring::get(semiring_); }

  StateId num_states() const { return num_states_; }
  bool is_empty() const { return num_states_ == 0; }

  const std::vector<Transition>& transitions() const { return transitions_; }
  const std::map<StateId, Weight>& initial_weights() const { return initial_; }
  const std::map<StateId, Weight>& final_weights() const { return final_; }

  // Zero when the state carries no entry.
  Weight initial_weight(StateId q) const;
  Weight final_weight(StateId q) const;

  const std::set<Symbol>& alphabet() const { return alphabet_; }

  // Indexes into transitions() of the transitions leaving q.
  const std::vector<std::uint32_t>& out(StateId q) const { return out_[q]; }

 private:
  friend class MachineBuilder;

  int arity_;
  SemiringId semiring_;
  StateId num_states_ = 0;
  std::vector<Transition> transitions_;
  std::map<StateId, Weight> initial_;
  std::map<StateId, Weight> final_;
  std::set<Symbol> alphabet_;
  std::vector<std::vector<std::uint32_t>> out_;

  void rebuild_out_index();
};

class MachineBuilder {
 public:
  MachineBuilder(int arity, SemiringId semiring);

  int arity() const { return arity_; }
  StateId num_states() const;

  StateId add_state();
  StateId add_states(StateId count);

  // Overwrites any previous weight for the state.
  void set_initial(StateId q, Weight w);
  void set_final(StateId q, Weight w);
  // (+)-accumulates onto any previous weight.
  void add_initial(StateId q, Weight w);
  void add_final(StateId q, Weight w);

  // Adds a normal-form transition: one token per tape, "" for epsilon.
  void add_transition(StateId src, StateId dst, Weight w, LabelTuple label);

  // Adds a transition whose components may be multi-symbol strings; it is
  // expanded into a chain of normal-form transitions through fresh states.
  // The given weight rides on the first transition of the chain.
  void add_transition_seq(StateId src, StateId dst, Weight w,
                          const std::vector<SymbolString>& components);

  // Validates, normalizes and assembles the machine.
  // Throws InvalidMachineError on structural problems.
  Machine build();

  // Assembles without validation or normalization. Intended for tests and
  // for exercising validate() on broken machines.
  Machine build_unchecked();

 private:
  int arity_;
  SemiringId semiring_;
  StateId num_states_ = 0;
  std::vector<Transition> transitions_;
  std::map<StateId, Weight> initial_;
  std::map<StateId, Weight> final_;

  Machine assemble(bool checked);
};

// One invariant breach found by validate().
struct Violation {
  std::string code;  // "missing-state", "arity", "zero-weight", ...
  std::string message;
};

// Checks every representation invariant and reports breaches instead of
// throwing. Machines produced by build() and by library operations always
// validate clean.
std::vector<Violation> validate(const Machine& m);

// Restricts the machine to states lying on some path from an initial to a
// final state. The result denotes the same relation; surviving states are
// renumbered densely, preserving relative order.
Machine trim(const Machine& m);

// Finite map from n-string-tuples to non-zero weights. The result type of
// enumerate_tuples() and the currency of all brute-force oracles.
class WeightedTupleSet {
 public:
  WeightedTupleSet(SemiringId semiring, int arity);

  SemiringId semiring_id() const { return semiring_; }
  const Semiring& semiring() const { return Semiring::get(semiring_); }
  int arity() const { return arity_; }

  // (+)-accumulates; entries whose weight becomes zero are removed.
  void add(const StringTuple& tuple, Weight w);
  // Zero when absent.
  Weight weight(const StringTuple& tuple) const;
  bool contains(const StringTuple& tuple) const;

  const std::map<StringTuple, Weight>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Exact comparison (same tuples, bit-equal weights).
  bool operator==(const WeightedTupleSet& other) const;
  bool operator!=(const WeightedTupleSet& other) const {
    return !(*this == other);
  }

 private:
  SemiringId semiring_;
  int arity_;
  std::map<StringTuple, Weight> entries_;
};

// Same keys and weights within |a-b| <= rel_tol * max(|a|,|b|) (and exactly
// equal infinities). Used for the inexact semirings.
bool approx_equal(const WeightedTupleSet& x, const WeightedTupleSet& y,
                  double rel_tol);

// (+)-sum over all accepting paths of at most hop_limit transitions whose
// per-tape label concatenations equal the tuple. Exact (covers all paths)
// whenever the machine has no epsilon-tuple cycle and hop_limit is at least
// |Q| * (1 + total tuple length); otherwise a truncation.
Weight tuple_weight(const Machine& m, const StringTuple& tuple,
                    std::size_t hop_limit);

// Enumerates every tuple read by an accepting path of at most hop_limit
// transitions, (+)-aggregating weights across paths. Throws
// BudgetExceededError once more than `budget` paths have been expanded.
WeightedTupleSet enumerate_tuples(const Machine& m, std::size_t hop_limit,
                                  std::size_t budget = 1000000);

}  // namespace ntwfsm

#endif  // NTWFSM_MACHINE_HPP_
