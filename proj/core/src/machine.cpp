// machine.cpp
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

#include "ntwfsm/machine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <utility>

#include "ntwfsm/errors.hpp"

namespace ntwfsm {

namespace {

bool symbol_has_whitespace(const Symbol& s) {
  for (unsigned char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
        c == '\f') {
      return true;
    }
  }
  return false;
}

// "" is epsilon and always fine; anything else must be a usable token.
std::string check_component(const Symbol& s) {
  if (s.empty()) return {};
  if (s == "<eps>") return "symbol must not be the reserved token <eps>";
  if (symbol_has_whitespace(s)) return "symbol contains whitespace";
  return {};
}

}  // namespace

bool operator==(const Transition& a, const Transition& b) {
  return a.src == b.src && a.dst == b.dst && a.label == b.label &&
         a.weight == b.weight;
}

bool transition_less(const Transition& a, const Transition& b) {
  if (a.src != b.src) return a.src < b.src;
  if (a.dst != b.dst) return a.dst < b.dst;
  if (a.label != b.label) return a.label < b.label;
  return a.weight < b.weight;
}

bool is_epsilon_tuple(const LabelTuple& label) {
  for (const Symbol& s : label) {
    if (!s.empty()) return false;
  }
  return true;
}

Machine::Machine(int arity, SemiringId semiring)
    : arity_(arity), semiring_(semiring) {
  if (arity < 1) {
    throw InvalidMachineError("machine arity must be at least 1, got " +
                              std::to_string(arity));
  }
}

Weight Machine::initial_weight(StateId q) const {
  auto it = initial_.find(q);
  return it == initial_.end() ? semiring().zero() : it->second;
}

Weight Machine::final_weight(StateId q) const {
  auto it = final_.find(q);
  return it == final_.end() ? semiring().zero() : it->second;
}

void Machine::rebuild_out_index() {
  out_.assign(num_states_, {});
  for (std::uint32_t i = 0; i < transitions_.size(); ++i) {
    if (transitions_[i].src < num_states_) {
      out_[transitions_[i].src].push_back(i);
    }
  }
}

MachineBuilder::MachineBuilder(int arity, SemiringId semiring)
    : arity_(arity), semiring_(semiring) {
  if (arity < 1) {
    throw InvalidMachineError("machine arity must be at least 1, got " +
                              std::to_string(arity));
  }
}

StateId MachineBuilder::num_states() const { return num_states_; }

StateId MachineBuilder::add_state() { return num_states_++; }

StateId MachineBuilder::add_states(StateId count) {
  StateId first = num_states_;
  num_states_ += count;
  return first;
}

void MachineBuilder::set_initial(StateId q, Weight w) { initial_[q] = w; }

void MachineBuilder::set_final(StateId q, Weight w) { final_[q] = w; }

void MachineBuilder::add_initial(StateId q, Weight w) {
  const Semiring& sr = Semiring::get(semiring_);
  auto it = initial_.find(q);
  initial_[q] = it == initial_.end() ? w : sr.plus(it->second, w);
}

void MachineBuilder::add_final(StateId q, Weight w) {
  const Semiring& sr = Semiring::get(semiring_);
  auto it = final_.find(q);
  final_[q] = it == final_.end() ? w : sr.plus(it->second, w);
}

void MachineBuilder::add_transition(StateId src, StateId dst, Weight w,
                                    LabelTuple label) {
  transitions_.push_back(Transition{src, dst, std::move(label), w});
}

void MachineBuilder::add_transition_seq(
    StateId src, StateId dst, Weight w,
    const std::vector<SymbolString>& components) {
  if (static_cast<int>(components.size()) != arity_) {
    throw InvalidMachineError(
        "transition has " + std::to_string(components.size()) +
        " components in an arity-" + std::to_string(arity_) + " machine");
  }
  std::size_t steps = 0;
  for (const SymbolString& c : components) {
    for (const Symbol& s : c) {
      if (s.empty()) {
        throw InvalidMachineError(
            "empty symbol inside a multi-symbol component");
      }
    }
    steps = std::max(steps, c.size());
  }
  const Semiring& sr = Semiring::get(semiring_);
  if (steps <= 1) {
    LabelTuple label(arity_);
    for (int i = 0; i < arity_; ++i) {
      if (!components[i].empty()) label[i] = components[i][0];
    }
    add_transition(src, dst, w, std::move(label));
    return;
  }
  StateId cur = src;
  for (std::size_t k = 0; k < steps; ++k) {
    LabelTuple label(arity_);
    for (int i = 0; i < arity_; ++i) {
      if (k < components[i].size()) label[i] = components[i][k];
    }
    StateId next = (k + 1 == steps) ? dst : add_state();
    add_transition(cur, next, k == 0 ? w : sr.one(), std::move(label));
    cur = next;
  }
}

Machine MachineBuilder::assemble(bool checked) {
  const Semiring& sr = Semiring::get(semiring_);
  Machine m(arity_, semiring_);
  m.num_states_ = num_states_;

  if (checked) {
    for (const Transition& t : transitions_) {
      if (t.src >= num_states_ || t.dst >= num_states_) {
        throw InvalidMachineError("transition references missing state " +
                                  std::to_string(std::max(t.src, t.dst)));
      }
      if (static_cast<int>(t.label.size()) != arity_) {
        throw InvalidMachineError(
            "label has " + std::to_string(t.label.size()) +
            " components in an arity-" + std::to_string(arity_) + " machine");
      }
      for (const Symbol& s : t.label) {
        std::string err = check_component(s);
        if (!err.empty()) throw InvalidMachineError(err);
      }
      if (std::isnan(t.weight)) {
        throw InvalidMachineError("transition weight is NaN");
      }
    }
    for (const auto* weights : {&initial_, &final_}) {
      for (const auto& [q, w] : *weights) {
        if (q >= num_states_) {
          throw InvalidMachineError("weight entry references missing state " +
                                    std::to_string(q));
        }
        if (std::isnan(w)) {
          throw InvalidMachineError("state weight is NaN");
        }
      }
    }
    for (const Transition& t : transitions_) {
      Weight w = sr.normalize(t.weight);
      if (sr.is_zero(w)) continue;
      Transition kept = t;
      kept.weight = w;
      for (const Symbol& s : kept.label) {
        if (!s.empty()) m.alphabet_.insert(s);
      }
      m.transitions_.push_back(std::move(kept));
    }
    for (const auto& [q, w] : initial_) {
      Weight nw = sr.normalize(w);
      if (!sr.is_zero(nw)) m.initial_[q] = nw;
    }
    for (const auto& [q, w] : final_) {
      Weight nw = sr.normalize(w);
      if (!sr.is_zero(nw)) m.final_[q] = nw;
    }
    std::stable_sort(m.transitions_.begin(), m.transitions_.end(),
                     transition_less);
  } else {
    m.transitions_ = transitions_;
    m.initial_ = initial_;
    m.final_ = final_;
    for (const Transition& t : m.transitions_) {
      for (const Symbol& s : t.label) {
        if (!s.empty()) m.alphabet_.insert(s);
      }
    }
  }
  m.rebuild_out_index();
  return m;
}

Machine MachineBuilder::build() { return assemble(true); }

Machine MachineBuilder::build_unchecked() { return assemble(false); }

std::vector<Violation> validate(const Machine& m) {
  std::vector<Violation> out;
  const Semiring& sr = m.semiring();
  auto report = [&out](const char* code, std::string message) {
    out.push_back(Violation{code, std::move(message)});
  };

  std::size_t index = 0;
  for (const Transition& t : m.transitions()) {
    std::string where = "transition #" + std::to_string(index++);
    if (t.src >= m.num_states()) {
      report("missing-state",
             where + " leaves missing state " + std::to_string(t.src));
    }
    if (t.dst >= m.num_states()) {
      report("missing-state",
             where + " enters missing state " + std::to_string(t.dst));
    }
    if (static_cast<int>(t.label.size()) != m.arity()) {
      report("arity", where + " has a label of arity " +
                          std::to_string(t.label.size()) + " in an arity-" +
                          std::to_string(m.arity()) + " machine");
    }
    for (const Symbol& s : t.label) {
      std::string err = check_component(s);
      if (!err.empty()) report("bad-symbol", where + ": " + err);
      if (!s.empty() && m.alphabet().count(s) == 0) {
        report("alphabet", where + ": symbol '" + s + "' not in alphabet");
      }
    }
    if (std::isnan(t.weight)) {
      report("bad-weight", where + " has NaN weight");
    } else if (sr.is_zero(t.weight)) {
      report("zero-weight", where + " has zero weight");
    } else if (sr.id() == SemiringId::kBoolean && t.weight != 1.0) {
      report("bad-weight", where + " has non-boolean weight");
    }
  }

  auto check_state_weights = [&](const std::map<StateId, Weight>& weights,
                                 const char* kind) {
    for (const auto& [q, w] : weights) {
      if (q >= m.num_states()) {
        report("missing-state", std::string(kind) + " weight on missing state " +
                                    std::to_string(q));
      }
      if (std::isnan(w)) {
        report("bad-weight",
               std::string(kind) + " weight on state " + std::to_string(q) +
                   " is NaN");
      } else if (sr.is_zero(w)) {
        report("zero-weight",
               std::string(kind) + " weight on state " + std::to_string(q) +
                   " is zero");
      } else if (sr.id() == SemiringId::kBoolean && w != 1.0) {
        report("bad-weight",
               std::string(kind) + " weight on state " + std::to_string(q) +
                   " is non-boolean");
      }
    }
  };
  check_state_weights(m.initial_weights(), "initial");
  check_state_weights(m.final_weights(), "final");
  return out;
}

Machine trim(const Machine& m) {
  const StateId n = m.num_states();
  std::vector<char> forward(n, 0), backward(n, 0);

  std::deque<StateId> queue;
  for (const auto& [q, w] : m.initial_weights()) {
    if (q < n && !forward[q]) {
      forward[q] = 1;
      queue.push_back(q);
    }
  }
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    for (std::uint32_t i : m.out(q)) {
      StateId d = m.transitions()[i].dst;
      if (!forward[d]) {
        forward[d] = 1;
        queue.push_back(d);
      }
    }
  }

  std::vector<std::vector<StateId>> in(n);
  for (const Transition& t : m.transitions()) {
    in[t.dst].push_back(t.src);
  }
  for (const auto& [q, w] : m.final_weights()) {
    if (q < n && !backward[q]) {
      backward[q] = 1;
      queue.push_back(q);
    }
  }
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    for (StateId p : in[q]) {
      if (!backward[p]) {
        backward[p] = 1;
        queue.push_back(p);
      }
    }
  }

  std::vector<StateId> remap(n, 0);
  StateId kept = 0;
  for (StateId q = 0; q < n; ++q) {
    if (forward[q] && backward[q]) remap[q] = kept++;
  }
  MachineBuilder b(m.arity(), m.semiring_id());
  b.add_states(kept);
  for (const auto& [q, w] : m.initial_weights()) {
    if (forward[q] && backward[q]) b.set_initial(remap[q], w);
  }
  for (const auto& [q, w] : m.final_weights()) {
    if (forward[q] && backward[q]) b.set_final(remap[q], w);
  }
  for (const Transition& t : m.transitions()) {
    if (forward[t.src] && backward[t.src] && forward[t.dst] &&
        backward[t.dst]) {
      b.add_transition(remap[t.src], remap[t.dst], t.weight, t.label);
    }
  }
  return b.build();
}

WeightedTupleSet::WeightedTupleSet(SemiringId semiring, int arity)
    : semiring_(semiring), arity_(arity) {}

void WeightedTupleSet::add(const StringTuple& tuple, Weight w) {
  if (static_cast<int>(tuple.size()) != arity_) {
    throw ArityMismatchError("tuple of arity " + std::to_string(tuple.size()) +
                             " added to an arity-" + std::to_string(arity_) +
                             " set");
  }
  const Semiring& sr = semiring();
  auto it = entries_.find(tuple);
  Weight combined = it == entries_.end() ? w : sr.plus(it->second, w);
  if (sr.is_zero(combined)) {
    if (it != entries_.end()) entries_.erase(it);
    return;
  }
  if (it == entries_.end()) {
    entries_.emplace(tuple, combined);
  } else {
    it->second = combined;
  }
}

Weight WeightedTupleSet::weight(const StringTuple& tuple) const {
  auto it = entries_.find(tuple);
  return it == entries_.end() ? semiring().zero() : it->second;
}

bool WeightedTupleSet::contains(const StringTuple& tuple) const {
  return entries_.count(tuple) != 0;
}

bool WeightedTupleSet::operator==(const WeightedTupleSet& other) const {
  return semiring_ == other.semiring_ && arity_ == other.arity_ &&
         entries_ == other.entries_;
}

bool approx_equal(const WeightedTupleSet& x, const WeightedTupleSet& y,
                  double rel_tol) {
  if (x.semiring_id() != y.semiring_id() || x.arity() != y.arity()) {
    return false;
  }
  if (x.size() != y.size()) return false;
  auto xi = x.entries().begin();
  auto yi = y.entries().begin();
  for (; xi != x.entries().end(); ++xi, ++yi) {
    if (xi->first != yi->first) return false;
    const Weight a = xi->second, b = yi->second;
    if (a == b) continue;
    if (std::isinf(a) || std::isinf(b)) return false;
    if (std::fabs(a - b) > rel_tol * std::max(std::fabs(a), std::fabs(b))) {
      return false;
    }
  }
  return true;
}

Weight tuple_weight(const Machine& m, const StringTuple& tuple,
                    std::size_t hop_limit) {
  if (static_cast<int>(tuple.size()) != m.arity()) {
    throw ArityMismatchError("tuple of arity " + std::to_string(tuple.size()) +
                             " evaluated on an arity-" +
                             std::to_string(m.arity()) + " machine");
  }
  const Semiring& sr = m.semiring();

  // Layered dynamic program over (state, per-tape positions): layer k holds
  // the (+)-sum over paths of exactly k transitions from the initial seeds.
  using Positions = std::vector<std::uint32_t>;
  using Config = std::pair<StateId, Positions>;
  std::map<Config, Weight> layer;
  const Positions start(m.arity(), 0);
  Positions full(m.arity());
  for (int i = 0; i < m.arity(); ++i) {
    full[i] = static_cast<std::uint32_t>(tuple[i].size());
  }
  for (const auto& [q, w] : m.initial_weights()) {
    layer[{q, start}] = w;
  }

  Weight result = sr.zero();
  for (std::size_t hops = 0;; ++hops) {
    for (const auto& [cfg, w] : layer) {
      if (cfg.second == full) {
        Weight rho = m.final_weight(cfg.first);
        if (!sr.is_zero(rho)) result = sr.plus(result, sr.times(w, rho));
      }
    }
    if (hops == hop_limit || layer.empty()) break;
    std::map<Config, Weight> next;
    for (const auto& [cfg, w] : layer) {
      const auto& [q, pos] = cfg;
      for (std::uint32_t i : m.out(q)) {
        const Transition& t = m.transitions()[i];
        Positions advanced = pos;
        bool ok = true;
        for (int tape = 0; tape < m.arity(); ++tape) {
          const Symbol& c = t.label[tape];
          if (c.empty()) continue;
          if (advanced[tape] >= tuple[tape].size() ||
              tuple[tape][advanced[tape]] != c) {
            ok = false;
            break;
          }
          ++advanced[tape];
        }
        if (!ok) continue;
        Config key{t.dst, std::move(advanced)};
        Weight add = sr.times(w, t.weight);
        auto it = next.find(key);
        next[std::move(key)] =
            it == next.end() ? add : sr.plus(it->second, add);
      }
    }
    layer = std::move(next);
  }
  return result;
}

namespace {

struct Enumerator {
  const Machine& m;
  const Semiring& sr;
  std::size_t hop_limit;
  std::size_t budget;
  std::size_t paths = 0;
  StringTuple tapes;
  WeightedTupleSet result;

  Enumerator(const Machine& machine, std::size_t limit, std::size_t budget)
      : m(machine),
        sr(machine.semiring()),
        hop_limit(limit),
        budget(budget),
        tapes(machine.arity()),
        result(machine.semiring_id(), machine.arity()) {}

  void walk(StateId q, std::size_t hops, Weight w) {
    if (++paths > budget) {
      throw BudgetExceededError(
          "enumerate_tuples exceeded its path budget of " +
          std::to_string(budget));
    }
    Weight rho = m.final_weight(q);
    if (!sr.is_zero(rho)) result.add(tapes, sr.times(w, rho));
    if (hops == hop_limit) return;
    for (std::uint32_t i : m.out(q)) {
      const Transition& t = m.transitions()[i];
      for (int tape = 0; tape < m.arity(); ++tape) {
        if (!t.label[tape].empty()) tapes[tape].push_back(t.label[tape]);
      }
      walk(t.dst, hops + 1, sr.times(w, t.weight));
      for (int tape = 0; tape < m.arity(); ++tape) {
        if (!t.label[tape].empty()) tapes[tape].pop_back();
      }
    }
  }
};

}  // namespace

WeightedTupleSet enumerate_tuples(const Machine& m, std::size_t hop_limit,
                                  std::size_t budget) {
  Enumerator e(m, hop_limit, budget);
  for (const auto& [q, w] : m.initial_weights()) {
    e.walk(q, 0, w);
  }
  return std::move(e.result);
}

}  // namespace ntwfsm
