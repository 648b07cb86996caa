// applications.hpp
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
// Demo-scale applications assembled purely from library operations:
// multi-string alignment, cognate search across two word lists, and
// transducer cascades that keep their intermediate tapes.

#ifndef NTWFSM_APPLICATIONS_HPP_
#define NTWFSM_APPLICATIONS_HPP_

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "ntwfsm/machine.hpp"

namespace ntwfsm {

// Tropical edit costs per alignment-column tape pair.
struct EditCostModel {
  double match_cost = 0;
  double substitution_cost = 1;
  double insertion_cost = 1;
  double deletion_cost = 1;
};

// Splits UTF-8 text into one single-codepoint symbol per character.
// Throws Error on malformed UTF-8.
SymbolString split_utf8_symbols(std::string_view text);

// Single-tape chain machine accepting exactly `symbols` with weight one.
Machine string_acceptor(const SymbolString& symbols, SemiringId semiring);

// One-state closure machine over every alignment column in
// (alphabet u {eps})^tapes except the all-epsilon column. A column's
// weight is the sum over all tape pairs (p < q) of the pairwise cost:
// match when both symbols are equal, substitution when both are present
// and differ, deletion/insertion when exactly one side is epsilon, and
// nothing for two epsilons. Tropical.
Machine build_edit_machine(const std::set<Symbol>& alphabet, int tapes,
                           const EditCostModel& costs = {});

struct Alignment {
  // One label tuple per alignment column.
  std::vector<LabelTuple> columns;
  // Optimal sum-of-pairs edit cost (tropical).
  Weight weight;
};

// Optimal n-way alignment: each string is joined onto its tape of the edit
// machine and the best path is extracted. Needs at least two strings.
Alignment align(const std::vector<std::string>& strings,
                const EditCostModel& costs = {});
Alignment align_symbols(const std::vector<SymbolString>& strings,
                        const EditCostModel& costs = {});

// Renders an alignment as one gap-padded row per tape.
std::vector<std::string> aligned_rows(const Alignment& alignment,
                                      const std::string& gap = "-");

struct CognatePair {
  std::string word1;
  std::string word2;
  Weight weight;
};

// Scores every cross pair by its alignment cost and returns the best
// `top_k` pairs, ascending by weight, ties broken lexicographically.
std::vector<CognatePair> cognate_pairs(const std::vector<std::string>& list1,
                                       const std::vector<std::string>& list2,
                                       const EditCostModel& costs,
                                       std::size_t top_k);

// Chains at least two arity-2 machines, keeping one tape per stage: k
// machines yield an arity-(k+1) machine whose tapes are input,
// intermediate_1, ..., output. Projecting onto the first and last tape
// gives the plain composition of the cascade.
Machine cascade_with_intermediates(const std::vector<Machine>& transducers);

}  // namespace ntwfsm

#endif  // NTWFSM_APPLICATIONS_HPP_
