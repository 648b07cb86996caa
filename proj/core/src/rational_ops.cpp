// rational_ops.cpp
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

#include "ntwfsm/rational_ops.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

#include "ntwfsm/errors.hpp"

namespace ntwfsm {

namespace {

void require_same_arity(const Machine& a, const Machine& b) {
  if (a.arity() != b.arity()) {
    throw ArityMismatchError("operands have arities " +
                             std::to_string(a.arity()) + " and " +
                             std::to_string(b.arity()));
  }
}

void require_same_semiring(const Machine& a, const Machine& b) {
  if (a.semiring_id() != b.semiring_id()) {
    throw SemiringMismatchError("operands live over semirings '" +
                                a.semiring().name() + "' and '" +
                                b.semiring().name() + "'");
  }
}

void copy_into(MachineBuilder& b, const Machine& m, StateId offset) {
  for (const Transition& t : m.transitions()) {
    b.add_transition(t.src + offset, t.dst + offset, t.weight, t.label);
  }
}

// Does some accepting path read the all-epsilon tuple? Reachability from
// initial to final states through epsilon-tuple transitions only (the empty
// path counts, so an initial+final state qualifies).
bool accepts_epsilon_tuple(const Machine& m, StateId* initial_out,
                           StateId* final_out) {
  std::vector<char> seen(m.num_states(), 0);
  std::vector<StateId> origin(m.num_states(), 0);
  std::deque<StateId> queue;
  for (const auto& [q, w] : m.initial_weights()) {
    if (!seen[q]) {
      seen[q] = 1;
      origin[q] = q;
      queue.push_back(q);
    }
  }
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    if (!m.semiring().is_zero(m.final_weight(q))) {
      if (initial_out != nullptr) *initial_out = origin[q];
      if (final_out != nullptr) *final_out = q;
      return true;
    }
    for (std::uint32_t i : m.out(q)) {
      const Transition& t = m.transitions()[i];
      if (is_epsilon_tuple(t.label) && !seen[t.dst]) {
        seen[t.dst] = 1;
        origin[t.dst] = origin[q];
        queue.push_back(t.dst);
      }
    }
  }
  return false;
}

// Widens every label of m to `total` components, placing the original
// components at [offset, offset + arity).
Machine widen(const Machine& m, int total, int offset) {
  MachineBuilder b(total, m.semiring_id());
  b.add_states(m.num_states());
  for (const auto& [q, w] : m.initial_weights()) b.set_initial(q, w);
  for (const auto& [q, w] : m.final_weights()) b.set_final(q, w);
  for (const Transition& t : m.transitions()) {
    LabelTuple label(total);
    for (int i = 0; i < m.arity(); ++i) label[offset + i] = t.label[i];
    b.add_transition(t.src, t.dst, t.weight, std::move(label));
  }
  return b.build();
}

}  // namespace

Machine union_of(const Machine& a, const Machine& b) {
  require_same_arity(a, b);
  require_same_semiring(a, b);
  MachineBuilder out(a.arity(), a.semiring_id());
  out.add_states(a.num_states() + b.num_states());
  const StateId offset = a.num_states();
  for (const auto& [q, w] : a.initial_weights()) out.set_initial(q, w);
  for (const auto& [q, w] : a.final_weights()) out.set_final(q, w);
  for (const auto& [q, w] : b.initial_weights()) out.set_initial(q + offset, w);
  for (const auto& [q, w] : b.final_weights()) out.set_final(q + offset, w);
  copy_into(out, a, 0);
  copy_into(out, b, offset);
  return out.build();
}

Machine concat(const Machine& a, const Machine& b) {
  require_same_arity(a, b);
  require_same_semiring(a, b);
  const Semiring& sr = a.semiring();
  MachineBuilder out(a.arity(), a.semiring_id());
  out.add_states(a.num_states() + b.num_states());
  const StateId offset = a.num_states();
  for (const auto& [q, w] : a.initial_weights()) out.set_initial(q, w);
  for (const auto& [q, w] : b.final_weights()) out.set_final(q + offset, w);
  copy_into(out, a, 0);
  copy_into(out, b, offset);
  const LabelTuple eps(a.arity());
  for (const auto& [q, wq] : a.final_weights()) {
    for (const auto& [r, wr] : b.initial_weights()) {
      out.add_transition(q, r + offset, sr.times(wq, wr), eps);
    }
  }
  return out.build();
}

Machine closure(const Machine& a) {
  const Semiring& sr = a.semiring();
  if (!sr.is_idempotent()) {
    StateId from = 0, to = 0;
    if (accepts_epsilon_tuple(a, &from, &to)) {
      throw DivergentClosureError(
          "closure would diverge: the operand accepts the all-epsilon tuple "
          "(initial state " +
          std::to_string(from) + " reaches final state " + std::to_string(to) +
          " through epsilon-tuple transitions) and semiring '" + sr.name() +
          "' is not idempotent");
    }
  }
  MachineBuilder out(a.arity(), a.semiring_id());
  out.add_states(a.num_states());
  const StateId hub = out.add_state();
  out.set_initial(hub, sr.one());
  out.set_final(hub, sr.one());
  copy_into(out, a, 0);
  const LabelTuple eps(a.arity());
  for (const auto& [q, w] : a.initial_weights()) {
    out.add_transition(hub, q, w, eps);
  }
  for (const auto& [q, w] : a.final_weights()) {
    out.add_transition(q, hub, w, eps);
  }
  return out.build();
}

Machine cross_product(const Machine& a, const Machine& b) {
  require_same_semiring(a, b);
  const int total = a.arity() + b.arity();
  return concat(widen(a, total, 0), widen(b, total, a.arity()));
}

Machine project(const Machine& a, const TapeIndexList& keep) {
  if (keep.empty()) {
    throw IndexError("projection needs at least one tape index");
  }
  for (int i : keep) {
    if (i < 1 || i > a.arity()) {
      throw IndexError("tape index " + std::to_string(i) +
                       " out of range 1.." + std::to_string(a.arity()));
    }
  }
  MachineBuilder out(static_cast<int>(keep.size()), a.semiring_id());
  out.add_states(a.num_states());
  for (const auto& [q, w] : a.initial_weights()) out.set_initial(q, w);
  for (const auto& [q, w] : a.final_weights()) out.set_final(q, w);
  for (const Transition& t : a.transitions()) {
    LabelTuple label(keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k) {
      label[k] = t.label[keep[k] - 1];
    }
    out.add_transition(t.src, t.dst, t.weight, std::move(label));
  }
  return out.build();
}

Machine coproject(const Machine& a, const TapeIndexList& remove) {
  if (remove.empty()) {
    throw IndexError("complementary projection needs at least one tape index");
  }
  std::set<int> removed;
  for (int i : remove) {
    if (i < 1 || i > a.arity()) {
      throw IndexError("tape index " + std::to_string(i) +
                       " out of range 1.." + std::to_string(a.arity()));
    }
    removed.insert(i);
  }
  TapeIndexList keep;
  for (int i = 1; i <= a.arity(); ++i) {
    if (removed.count(i) == 0) keep.push_back(i);
  }
  if (keep.empty()) {
    throw IndexError("cannot remove all " + std::to_string(a.arity()) +
                     " tapes");
  }
  return project(a, keep);
}

namespace {

// All-pairs epsilon-closure weights C[p][q]: the (+)-sum over all
// epsilon-tuple paths from p to q of their (*)-weights (one() on the
// diagonal for the empty path). Throws when the sum does not converge.
std::vector<std::vector<Weight>> epsilon_closure_weights(
    const Machine& m, const std::vector<std::uint32_t>& eps_transitions) {
  const Semiring& sr = m.semiring();
  const StateId n = m.num_states();

  // Cycle detection on the epsilon subgraph.
  std::vector<std::vector<std::pair<StateId, Weight>>> eps_out(n);
  for (std::uint32_t i : eps_transitions) {
    const Transition& t = m.transitions()[i];
    eps_out[t.src].push_back({t.dst, t.weight});
  }
  std::vector<int> color(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<StateId> order;    // reverse topological
  bool cyclic = false;
  {
    std::vector<std::pair<StateId, std::size_t>> stack;
    for (StateId s = 0; s < n && !cyclic; ++s) {
      if (color[s] != 0) continue;
      stack.push_back({s, 0});
      color[s] = 1;
      while (!stack.empty()) {
        auto& [q, next] = stack.back();
        if (next < eps_out[q].size()) {
          StateId d = eps_out[q][next++].first;
          if (color[d] == 0) {
            color[d] = 1;
            stack.push_back({d, 0});
          } else if (color[d] == 1) {
            cyclic = true;
            break;
          }
        } else {
          color[q] = 2;
          order.push_back(q);
          stack.pop_back();
        }
      }
    }
  }

  std::vector<std::vector<Weight>> closure(
      n, std::vector<Weight>(n, sr.zero()));

  if (!cyclic) {
    // Exact path-sum in reverse topological order, valid in any semiring.
    for (StateId q : order) {
      closure[q][q] = sr.plus(closure[q][q], sr.one());
      for (const auto& [d, w] : eps_out[q]) {
        for (StateId r = 0; r < n; ++r) {
          if (!sr.is_zero(closure[d][r])) {
            closure[q][r] =
                sr.plus(closure[q][r], sr.times(w, closure[d][r]));
          }
        }
      }
    }
    return closure;
  }

  if (sr.id() != SemiringId::kBoolean && sr.id() != SemiringId::kTropical) {
    throw EpsilonCycleError(
        "epsilon-tuple cycle in semiring '" + sr.name() +
        "': the folded weight sum does not converge; restrict the input or "
        "use an idempotent semiring");
  }

  // Idempotent case: Floyd-Warshall closure. For tropical this is min-plus
  // shortest distance, exact as long as no cycle is negative.
  for (StateId q = 0; q < n; ++q) closure[q][q] = sr.one();
  for (std::uint32_t i : eps_transitions) {
    const Transition& t = m.transitions()[i];
    closure[t.src][t.dst] = sr.plus(closure[t.src][t.dst], t.weight);
  }
  for (StateId k = 0; k < n; ++k) {
    for (StateId p = 0; p < n; ++p) {
      if (sr.is_zero(closure[p][k])) continue;
      for (StateId q = 0; q < n; ++q) {
        if (sr.is_zero(closure[k][q])) continue;
        closure[p][q] = sr.plus(closure[p][q],
                                sr.times(closure[p][k], closure[k][q]));
      }
    }
  }
  if (sr.id() == SemiringId::kTropical) {
    for (StateId q = 0; q < n; ++q) {
      if (closure[q][q] < 0.0) {
        throw EpsilonCycleError(
            "negative-weight epsilon-tuple cycle through state " +
            std::to_string(q) + ": the min-plus sum diverges");
      }
    }
  }
  return closure;
}

}  // namespace

Machine remove_epsilon_tuples(const Machine& a) {
  std::vector<std::uint32_t> eps;
  for (std::uint32_t i = 0; i < a.transitions().size(); ++i) {
    if (is_epsilon_tuple(a.transitions()[i].label)) eps.push_back(i);
  }
  if (eps.empty()) return a;

  const Semiring& sr = a.semiring();
  const StateId n = a.num_states();
  auto closure = epsilon_closure_weights(a, eps);

  MachineBuilder out(a.arity(), a.semiring_id());
  out.add_states(n);
  for (const auto& [q, w] : a.initial_weights()) out.set_initial(q, w);
  for (StateId p = 0; p < n; ++p) {
    Weight rho = sr.zero();
    for (StateId q = 0; q < n; ++q) {
      if (sr.is_zero(closure[p][q])) continue;
      Weight fq = a.final_weight(q);
      if (!sr.is_zero(fq)) rho = sr.plus(rho, sr.times(closure[p][q], fq));
      for (std::uint32_t i : a.out(q)) {
        const Transition& t = a.transitions()[i];
        if (is_epsilon_tuple(t.label)) continue;
        out.add_transition(p, t.dst, sr.times(closure[p][q], t.weight),
                           t.label);
      }
    }
    if (!sr.is_zero(rho)) out.set_final(p, rho);
  }
  return trim(out.build());
}

}  // namespace ntwfsm
