// io.cpp
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

#include "ntwfsm/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>
#include <vector>

#include "ntwfsm/errors.hpp"

namespace ntwfsm {

namespace {

constexpr Weight kInf = std::numeric_limits<Weight>::infinity();

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

StateId parse_state_id(const std::string& tok, int line) {
  StateId value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected a state id, got '" + tok + "'");
  }
  return value;
}

std::string escape_dot(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string format_weight(Weight w, const Semiring& sr) {
  if (sr.id() == SemiringId::kBoolean) return w != 0.0 ? "1" : "0";
  if (w == kInf) return "inf";
  if (w == -kInf) return "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), w);
  return std::string(buf, ptr);
}

Weight parse_weight(std::string_view token, const Semiring& sr) {
  Weight value;
  if (token == "inf" || token == "+inf") {
    value = kInf;
  } else if (token == "-inf") {
    value = -kInf;
  } else {
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(),
                                     value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw ParseError("not a weight: '" + std::string(token) + "'");
    }
  }
  if (std::isnan(value)) {
    throw ParseError("NaN is not a valid weight");
  }
  return sr.normalize(value);
}

Machine parse(std::string_view text,
              std::optional<SemiringId> semiring_override) {
  std::optional<int> arity;
  std::optional<SemiringId> semiring;
  bool saw_magic = false;

  struct StateLine {
    StateId file_id;
    std::optional<Weight> initial, final;
    int line;
  };
  struct TransLine {
    StateId src, dst;
    std::string weight;
    LabelTuple label;
    int line;
  };
  std::vector<StateLine> states;
  std::vector<TransLine> transitions;
  std::map<StateId, int> declared;  // file id -> declaring line

  std::istringstream stream{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(stream, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<std::string> tok = tokenize(line);
    const std::string& kind = tok[0];

    if (!saw_magic) {
      if (kind != "ntwfsm" || tok.size() != 2 || tok[1] != "1") {
        throw ParseError(lineno, "expected header 'ntwfsm 1'");
      }
      saw_magic = true;
      continue;
    }

    if (kind == "arity") {
      if (arity) throw ParseError(lineno, "duplicate arity line");
      if (tok.size() != 2) throw ParseError(lineno, "usage: arity N");
      int value = 0;
      auto [ptr, ec] = std::from_chars(tok[1].data(),
                                       tok[1].data() + tok[1].size(), value);
      if (ec != std::errc() || ptr != tok[1].data() + tok[1].size() ||
          value < 1) {
        throw ParseError(lineno, "arity must be a positive integer, got '" +
                                     tok[1] + "'");
      }
      arity = value;
    } else if (kind == "semiring") {
      if (semiring) throw ParseError(lineno, "duplicate semiring line");
      if (tok.size() != 2) throw ParseError(lineno, "usage: semiring NAME");
      const Semiring* sr = Semiring::find(tok[1]);
      if (sr == nullptr) {
        throw ParseError(lineno, "unknown semiring '" + tok[1] + "'");
      }
      semiring = sr->id();
    } else if (kind == "state") {
      if (!arity || (!semiring && !semiring_override)) {
        throw ParseError(lineno,
                         "arity and semiring must be declared before states");
      }
      if (tok.size() != 2 && tok.size() != 4 && tok.size() != 6) {
        throw ParseError(lineno, "usage: state ID [initial W] [final W]");
      }
      StateLine s{parse_state_id(tok[1], lineno), {}, {}, lineno};
      const Semiring& sr = Semiring::get(semiring ? *semiring
                                                  : *semiring_override);
      for (std::size_t k = 2; k + 1 < tok.size(); k += 2) {
        Weight w;
        try {
          w = parse_weight(tok[k + 1], sr);
        } catch (const ParseError& e) {
          throw ParseError(lineno, e.what());
        }
        if (tok[k] == "initial" && !s.initial) {
          s.initial = w;
        } else if (tok[k] == "final" && !s.final) {
          s.final = w;
        } else {
          throw ParseError(lineno, "unexpected token '" + tok[k] +
                                       "' in state line");
        }
      }
      if (declared.count(s.file_id) != 0) {
        throw ParseError(lineno, "duplicate state " +
                                     std::to_string(s.file_id) +
                                     " (first declared on line " +
                                     std::to_string(declared[s.file_id]) +
                                     ")");
      }
      declared[s.file_id] = lineno;
      states.push_back(std::move(s));
    } else if (kind == "trans") {
      if (!arity || (!semiring && !semiring_override)) {
        throw ParseError(
            lineno, "arity and semiring must be declared before transitions");
      }
      if (static_cast<int>(tok.size()) != 4 + *arity) {
        throw ParseError(lineno, "expected 'trans SRC DST W' followed by " +
                                     std::to_string(*arity) + " tokens");
      }
      TransLine t;
      t.src = parse_state_id(tok[1], lineno);
      t.dst = parse_state_id(tok[2], lineno);
      t.weight = tok[3];
      t.line = lineno;
      for (int i = 0; i < *arity; ++i) {
        const std::string& sym = tok[4 + i];
        t.label.push_back(sym == "<eps>" ? Symbol{} : sym);
      }
      transitions.push_back(std::move(t));
    } else {
      throw ParseError(lineno, "unknown directive '" + kind + "'");
    }
  }

  if (!saw_magic) throw ParseError("empty input: missing 'ntwfsm 1' header");
  if (!arity) throw ParseError("missing arity line");
  if (!semiring && !semiring_override) {
    throw ParseError("missing semiring line (and no override given)");
  }
  if (semiring && semiring_override && *semiring != *semiring_override) {
    throw ParseError("file declares semiring '" +
                     Semiring::get(*semiring).name() +
                     "' but '" + Semiring::get(*semiring_override).name() +
                     "' was requested");
  }
  const SemiringId sr_id = semiring ? *semiring : *semiring_override;
  const Semiring& sr = Semiring::get(sr_id);

  // Renumber: declared ids ascending -> dense 0..n-1.
  std::map<StateId, StateId> remap;
  for (const auto& [file_id, _] : declared) {
    StateId dense = static_cast<StateId>(remap.size());
    remap.emplace(file_id, dense);
  }

  MachineBuilder b(*arity, sr_id);
  b.add_states(static_cast<StateId>(remap.size()));
  for (const StateLine& s : states) {
    if (s.initial) b.set_initial(remap.at(s.file_id), *s.initial);
    if (s.final) b.set_final(remap.at(s.file_id), *s.final);
  }
  for (const TransLine& t : transitions) {
    auto src = remap.find(t.src);
    auto dst = remap.find(t.dst);
    if (src == remap.end() || dst == remap.end()) {
      throw ParseError(t.line, "transition references undeclared state " +
                                   std::to_string(src == remap.end() ? t.src
                                                                     : t.dst));
    }
    Weight w;
    try {
      w = parse_weight(t.weight, sr);
    } catch (const ParseError& e) {
      throw ParseError(t.line, e.what());
    }
    b.add_transition(src->second, dst->second, w, t.label);
  }

  Machine m = b.build();
  std::vector<Violation> violations = validate(m);
  if (!violations.empty()) {
    throw ParseError("invalid machine: " + violations.front().message);
  }
  return m;
}

std::string serialize(const Machine& m) {
  const Semiring& sr = m.semiring();
  std::ostringstream out;
  out << "ntwfsm 1\n";
  out << "arity " << m.arity() << "\n";
  out << "semiring " << sr.name() << "\n";
  for (StateId q = 0; q < m.num_states(); ++q) {
    out << "state " << q;
    Weight lam = m.initial_weight(q);
    if (!sr.is_zero(lam)) out << " initial " << format_weight(lam, sr);
    Weight rho = m.final_weight(q);
    if (!sr.is_zero(rho)) out << " final " << format_weight(rho, sr);
    out << "\n";
  }
  std::vector<Transition> sorted = m.transitions();
  std::stable_sort(sorted.begin(), sorted.end(), transition_less);
  for (const Transition& t : sorted) {
    out << "trans " << t.src << " " << t.dst << " "
        << format_weight(t.weight, sr);
    for (const Symbol& s : t.label) {
      out << " " << (s.empty() ? "<eps>" : s);
    }
    out << "\n";
  }
  return out.str();
}

std::string to_dot(const Machine& m) {
  const Semiring& sr = m.semiring();
  std::ostringstream out;
  out << "digraph ntwfsm {\n";
  if (!m.is_empty()) {
    out << "  rankdir = LR;\n";
    out << "  node [shape = circle];\n";
  }
  for (StateId q = 0; q < m.num_states(); ++q) {
    Weight rho = m.final_weight(q);
    if (!sr.is_zero(rho)) {
      out << "  " << q << " [shape = doublecircle, label = \"" << q << "/"
          << format_weight(rho, sr) << "\"];\n";
    } else {
      out << "  " << q << ";\n";
    }
  }
  std::size_t entry = 0;
  for (const auto& [q, w] : m.initial_weights()) {
    std::string phantom = "_start" + std::to_string(entry++);
    out << "  " << phantom << " [shape = point];\n";
    out << "  " << phantom << " -> " << q << " [label = \""
        << format_weight(w, sr) << "\"];\n";
  }
  std::vector<Transition> sorted = m.transitions();
  std::stable_sort(sorted.begin(), sorted.end(), transition_less);
  for (const Transition& t : sorted) {
    out << "  " << t.src << " -> " << t.dst << " [label = \"";
    for (int i = 0; i < m.arity(); ++i) {
      if (i > 0) out << ":";
      out << (t.label[i].empty() ? "ε" : escape_dot(t.label[i]));
    }
    out << "/" << format_weight(t.weight, sr) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace ntwfsm
