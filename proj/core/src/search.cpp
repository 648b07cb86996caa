// search.cpp
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

#include "ntwfsm/search.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <queue>
#include <string>

#include "ntwfsm/errors.hpp"

namespace ntwfsm {

namespace {

void check_searchable(const Machine& m) {
  const Semiring& sr = m.semiring();
  if (!sr.has_natural_order()) {
    throw UnsupportedSemiringError(
        "shortest distance needs a naturally ordered semiring (boolean or "
        "tropical), got '" +
        sr.name() + "'");
  }
  if (sr.id() == SemiringId::kTropical) {
    for (const Transition& t : m.transitions()) {
      if (t.weight < 0.0) {
        throw Error("negative tropical transition weight " +
                    std::to_string(t.weight) + " on transition " +
                    std::to_string(t.src) + " -> " + std::to_string(t.dst));
      }
    }
  }
}

struct Edge {
  StateId to;
  Weight weight;
  std::uint32_t transition;
};

// Dijkstra over an explicit adjacency, seeded with `seeds`. Works for both
// supported semirings: boolean relaxation is plain reachability.
std::map<StateId, Weight> relax(
    const Machine& m, const std::vector<std::vector<Edge>>& adjacency,
    const std::map<StateId, Weight>& seeds) {
  const Semiring& sr = m.semiring();
  std::map<StateId, Weight> dist;
  using Item = std::pair<Weight, StateId>;
  auto better = [&sr](const Item& a, const Item& b) {
    if (a.first != b.first) return !sr.natural_less_equal(a.first, b.first);
    return a.second > b.second;
  };
  std::priority_queue<Item, std::vector<Item>, decltype(better)> queue(better);
  std::vector<char> settled(m.num_states(), 0);
  for (const auto& [q, w] : seeds) {
    dist[q] = w;
    queue.push({w, q});
  }
  while (!queue.empty()) {
    auto [w, q] = queue.top();
    queue.pop();
    if (settled[q]) continue;
    settled[q] = 1;
    for (const Edge& e : adjacency[q]) {
      Weight cand = sr.times(w, e.weight);
      auto it = dist.find(e.to);
      if (it == dist.end() || sr.plus(cand, it->second) != it->second) {
        Weight merged = it == dist.end() ? cand : sr.plus(it->second, cand);
        dist[e.to] = merged;
        queue.push({merged, e.to});
      }
    }
  }
  return dist;
}

std::vector<std::vector<Edge>> forward_edges(const Machine& m) {
  std::vector<std::vector<Edge>> adj(m.num_states());
  for (std::uint32_t i = 0; i < m.transitions().size(); ++i) {
    const Transition& t = m.transitions()[i];
    adj[t.src].push_back(Edge{t.dst, t.weight, i});
  }
  return adj;
}

std::vector<std::vector<Edge>> backward_edges(const Machine& m) {
  std::vector<std::vector<Edge>> adj(m.num_states());
  for (std::uint32_t i = 0; i < m.transitions().size(); ++i) {
    const Transition& t = m.transitions()[i];
    adj[t.dst].push_back(Edge{t.src, t.weight, i});
  }
  return adj;
}

}  // namespace

std::map<StateId, Weight> shortest_distance(const Machine& m) {
  check_searchable(m);
  return relax(m, forward_edges(m), m.initial_weights());
}

std::optional<BestPath> best_path(const Machine& m) {
  check_searchable(m);
  if (m.is_empty()) return std::nullopt;
  const Semiring& sr = m.semiring();

  // Backward distances: beta[q] = best completion weight from q to a final
  // state ((*)-commutativity lets the reversed relaxation reuse relax()).
  const auto beta = relax(m, backward_edges(m), m.final_weights());
  if (beta.empty()) return std::nullopt;

  Weight best = sr.zero();
  for (const auto& [q, b] : beta) {
    Weight lam = m.initial_weight(q);
    if (!sr.is_zero(lam)) best = sr.plus(best, sr.times(lam, b));
  }
  if (sr.is_zero(best)) return std::nullopt;

  // Minimal remaining hop counts over the optimality subgraph (transitions
  // that preserve beta exactly), so the greedy walk below terminates even
  // across weight-neutral cycles.
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> hops(m.num_states(), kUnset);
  std::deque<StateId> queue;
  for (const auto& [q, b] : beta) {
    if (m.final_weight(q) == b) {
      hops[q] = 0;
      queue.push_back(q);
    }
  }
  const auto backward = backward_edges(m);
  auto optimal_edge = [&](const Transition& t) {
    auto bq = beta.find(t.src);
    auto br = beta.find(t.dst);
    return bq != beta.end() && br != beta.end() &&
           bq->second == sr.times(t.weight, br->second);
  };
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    for (const Edge& e : backward[q]) {
      const Transition& t = m.transitions()[e.transition];
      if (hops[t.src] == kUnset && optimal_edge(t)) {
        hops[t.src] = hops[q] + 1;
        queue.push_back(t.src);
      }
    }
  }

  StateId start = 0;
  std::size_t start_hops = kUnset;
  bool found = false;
  for (const auto& [q, lam] : m.initial_weights()) {
    auto b = beta.find(q);
    if (b == beta.end() || sr.times(lam, b->second) != best) continue;
    if (hops[q] < start_hops) {
      start = q;
      start_hops = hops[q];
      found = true;
    }
  }
  if (!found || start_hops == kUnset) return std::nullopt;

  BestPath path;
  path.weight = best;
  path.states.push_back(start);
  path.tuple.assign(m.arity(), {});
  StateId cur = start;
  while (hops[cur] != 0) {
    bool stepped = false;
    for (std::uint32_t i : m.out(cur)) {
      const Transition& t = m.transitions()[i];
      if (hops[t.dst] != kUnset && hops[t.dst] + 1 == hops[cur] &&
          optimal_edge(t)) {
        // m.out() is ordered by (dst, label, weight), so the first hit is
        // the lexicographic choice.
        path.transition_indexes.push_back(i);
        path.states.push_back(t.dst);
        for (int tape = 0; tape < m.arity(); ++tape) {
          if (!t.label[tape].empty()) path.tuple[tape].push_back(t.label[tape]);
        }
        cur = t.dst;
        stepped = true;
        break;
      }
    }
    if (!stepped) return std::nullopt;  // defensive; cannot happen
  }
  return path;
}

}  // namespace ntwfsm
