// applications.cpp
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

#include "ntwfsm/applications.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "ntwfsm/errors.hpp"
#include "ntwfsm/join.hpp"
#include "ntwfsm/rational_ops.hpp"
#include "ntwfsm/search.hpp"

namespace ntwfsm {

SymbolString split_utf8_symbols(std::string_view text) {
  SymbolString out;
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char lead = static_cast<unsigned char>(text[i]);
    std::size_t len;
    if (lead < 0x80) {
      len = 1;
    } else if ((lead & 0xE0) == 0xC0) {
      len = 2;
    } else if ((lead & 0xF0) == 0xE0) {
      len = 3;
    } else if ((lead & 0xF8) == 0xF0) {
      len = 4;
    } else {
      throw Error("malformed UTF-8 at byte " + std::to_string(i));
    }
    if (i + len > text.size()) {
      throw Error("truncated UTF-8 sequence at byte " + std::to_string(i));
    }
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80) {
        throw Error("malformed UTF-8 at byte " + std::to_string(i + k));
      }
    }
    out.emplace_back(text.substr(i, len));
    i += len;
  }
  return out;
}

Machine string_acceptor(const SymbolString& symbols, SemiringId semiring) {
  const Semiring& sr = Semiring::get(semiring);
  MachineBuilder b(1, semiring);
  StateId cur = b.add_state();
  b.set_initial(cur, sr.one());
  for (const Symbol& s : symbols) {
    StateId next = b.add_state();
    b.add_transition(cur, next, sr.one(), {s});
    cur = next;
  }
  b.set_final(cur, sr.one());
  return b.build();
}

Machine build_edit_machine(const std::set<Symbol>& alphabet, int tapes,
                           const EditCostModel& costs) {
  if (tapes < 2) {
    throw Error("an edit machine needs at least 2 tapes, got " +
                std::to_string(tapes));
  }
  if (alphabet.empty()) {
    throw Error("an edit machine needs a non-empty alphabet");
  }
  std::vector<Symbol> choices;  // "" first, then the alphabet
  choices.emplace_back();
  choices.insert(choices.end(), alphabet.begin(), alphabet.end());

  auto pair_cost = [&costs](const Symbol& x, const Symbol& y) -> double {
    if (x.empty() && y.empty()) return 0;
    if (x.empty()) return costs.insertion_cost;
    if (y.empty()) return costs.deletion_cost;
    return x == y ? costs.match_cost : costs.substitution_cost;
  };

  MachineBuilder b(tapes, SemiringId::kTropical);
  StateId q = b.add_state();
  b.set_initial(q, 0);
  b.set_final(q, 0);

  std::vector<std::size_t> odometer(tapes, 0);
  while (true) {
    LabelTuple column(tapes);
    bool all_eps = true;
    for (int t = 0; t < tapes; ++t) {
      column[t] = choices[odometer[t]];
      if (!column[t].empty()) all_eps = false;
    }
    if (!all_eps) {
      double cost = 0;
      for (int p = 0; p < tapes; ++p) {
        for (int r = p + 1; r < tapes; ++r) {
          cost += pair_cost(column[p], column[r]);
        }
      }
      b.add_transition(q, q, cost, std::move(column));
    }
    int t = tapes - 1;
    while (t >= 0 && ++odometer[t] == choices.size()) {
      odometer[t] = 0;
      --t;
    }
    if (t < 0) break;
  }
  return b.build();
}

Alignment align_symbols(const std::vector<SymbolString>& strings,
                        const EditCostModel& costs) {
  const int n = static_cast<int>(strings.size());
  if (n < 2) {
    throw Error("alignment needs at least 2 strings, got " +
                std::to_string(n));
  }
  std::set<Symbol> alphabet;
  for (const SymbolString& s : strings) {
    alphabet.insert(s.begin(), s.end());
  }
  if (alphabet.empty()) {
    // All strings empty: the empty column sequence aligns them at no cost.
    return Alignment{{}, 0};
  }

  Machine lattice = build_edit_machine(alphabet, n, costs);
  for (int k = 0; k < n; ++k) {
    // The acceptor is epsilon-free on the matched tape, so the product
    // construction applies and stays exact even on the cyclic lattice.
    lattice = join_direct(lattice, JoinSpec{{{k + 1, 1}}},
                          string_acceptor(strings[k], SemiringId::kTropical));
  }
  auto best = best_path(lattice);
  if (!best) {
    throw Error("alignment lattice has no accepting path");
  }
  Alignment out;
  out.weight = best->weight;
  out.columns.reserve(best->transition_indexes.size());
  for (std::uint32_t i : best->transition_indexes) {
    out.columns.push_back(lattice.transitions()[i].label);
  }
  return out;
}

Alignment align(const std::vector<std::string>& strings,
                const EditCostModel& costs) {
  std::vector<SymbolString> symbols;
  symbols.reserve(strings.size());
  for (const std::string& s : strings) {
    symbols.push_back(split_utf8_symbols(s));
  }
  return align_symbols(symbols, costs);
}

std::vector<std::string> aligned_rows(const Alignment& alignment,
                                      const std::string& gap) {
  std::size_t tapes = 0;
  for (const LabelTuple& c : alignment.columns) {
    tapes = std::max(tapes, c.size());
  }
  std::vector<std::string> rows(tapes);
  for (const LabelTuple& column : alignment.columns) {
    for (std::size_t t = 0; t < tapes; ++t) {
      rows[t] += column[t].empty() ? gap : column[t];
    }
  }
  return rows;
}

std::vector<CognatePair> cognate_pairs(const std::vector<std::string>& list1,
                                       const std::vector<std::string>& list2,
                                       const EditCostModel& costs,
                                       std::size_t top_k) {
  if (top_k == 0) {
    throw Error("cognate search needs top_k >= 1");
  }
  if (list1.empty() || list2.empty()) {
    throw Error("cognate search needs two non-empty word lists");
  }
  std::vector<CognatePair> pairs;
  pairs.reserve(list1.size() * list2.size());
  for (const std::string& w1 : list1) {
    for (const std::string& w2 : list2) {
      pairs.push_back(CognatePair{w1, w2, align({w1, w2}, costs).weight});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const CognatePair& a, const CognatePair& b) {
                     if (a.weight != b.weight) return a.weight < b.weight;
                     if (a.word1 != b.word1) return a.word1 < b.word1;
                     return a.word2 < b.word2;
                   });
  if (pairs.size() > top_k) pairs.resize(top_k);
  return pairs;
}

Machine cascade_with_intermediates(const std::vector<Machine>& transducers) {
  if (transducers.size() < 2) {
    throw Error("a cascade needs at least 2 machines, got " +
                std::to_string(transducers.size()));
  }
  for (const Machine& t : transducers) {
    if (t.arity() != 2) {
      throw ArityMismatchError("cascade stages must have arity 2, got " +
                               std::to_string(t.arity()));
    }
    if (t.semiring_id() != transducers.front().semiring_id()) {
      throw SemiringMismatchError("cascade stages mix semirings");
    }
  }
  Machine chain = transducers.front();
  for (std::size_t k = 1; k < transducers.size(); ++k) {
    const JoinSpec spec{{{chain.arity(), 1}}};
    if (join_direct_applicable(chain, spec, transducers[k])) {
      chain = join_direct(chain, spec, transducers[k]);
    } else {
      AutoIntersectionResult r = join_via_sigma(chain, spec, transducers[k]);
      if (!r.complete) {
        throw Error("cascade stage " + std::to_string(k + 1) +
                    " is not representable exactly here (delay bound hit and "
                    "the product route's epsilon guard rejected it)");
      }
      chain = std::move(r.machine);
    }
  }
  return chain;
}

}  // namespace ntwfsm
