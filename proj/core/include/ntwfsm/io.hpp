// io.hpp
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
// Text serialization (.ntw) and Graphviz export.
//
// The .ntw format is line-oriented; lines whose first token starts the line
// (after optional leading blanks) with '#' are comments:
//
//   ntwfsm 1
//   arity N
//   semiring boolean|tropical|real|log
//   state ID [initial W] [final W]
//   trans SRC DST W TOK1 ... TOKN
//
// Tokens are whitespace-delimited UTF-8; `<eps>` denotes epsilon. Weights
// are shortest round-trip decimals (`1`/`0` for boolean, `inf` for the
// additive identity of tropical/log, which is only ever read, never
// written). serialize() is canonical: states are emitted in ascending
// order and transitions sorted by (src, dst, label, weight), so
// serialize . parse . serialize == serialize.

#ifndef NTWFSM_IO_HPP_
#define NTWFSM_IO_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "ntwfsm/machine.hpp"

namespace ntwfsm {

// Parses and validates a machine. State ids in the file may be sparse; they
// are renumbered densely in ascending order. `semiring_override` supplies
// the semiring when the file omits its `semiring` line; if both are present
// they must agree. Throws ParseError with a 1-based line number.
Machine parse(std::string_view text,
              std::optional<SemiringId> semiring_override = std::nullopt);

// Canonical text form; ends with a newline unless the machine is headerless
// (never: the three header lines are always present).
std::string serialize(const Machine& m);

// Graphviz digraph with one edge per transition labeled t1:...:tn/w,
// epsilon rendered as a Greek epsilon. Initial states get an entry arrow
// annotated with lambda; final states are double circles labeled ID/rho.
std::string to_dot(const Machine& m);

// Weight formatting/parsing used by the text format and the CLI.
std::string format_weight(Weight w, const Semiring& sr);
Weight parse_weight(std::string_view token, const Semiring& sr);

}  // namespace ntwfsm

#endif  // NTWFSM_IO_HPP_
