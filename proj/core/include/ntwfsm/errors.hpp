// errors.hpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Exception hierarchy shared by the whole library.

#ifndef NTWFSM_ERRORS_HPP_
#define NTWFSM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ntwfsm {

// Base class for every error the library raises.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Structural problem while assembling a machine (missing state, bad label
// arity, bad symbol, NaN weight).
class InvalidMachineError : public Error {
 public:
  using Error::Error;
};

// Two operands do not have the same number of tapes.
class ArityMismatchError : public Error {
 public:
  using Error::Error;
};

// Two operands do not live over the same semiring.
class SemiringMismatchError : public Error {
 public:
  using Error::Error;
};

// A tape index is out of range, duplicated where uniqueness is required,
// or an index list is otherwise unusable.
class IndexError : public Error {
 public:
  using Error::Error;
};

// closure() refused its operand: the relation accepts the all-epsilon tuple
// and the semiring cannot absorb the resulting infinite sum.
class DivergentClosureError : public Error {
 public:
  using Error::Error;
};

// remove_epsilon_tuples() hit an epsilon-tuple cycle whose weight sum does
// not converge in the operand's semiring.
class EpsilonCycleError : public Error {
 public:
  using Error::Error;
};

// enumerate_tuples() exceeded its path budget.
class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

// join_direct() cannot handle the operands; callers should fall back to
// join_via_sigma().
class JoinGuardError : public Error {
 public:
  using Error::Error;
};

// The requested operation does not support the machine's semiring.
class UnsupportedSemiringError : public Error {
 public:
  using Error::Error;
};

// Text-format syntax or consistency error. Messages carry 1-based line
// numbers where available.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what), line_(0) {}
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace ntwfsm

#endif  // NTWFSM_ERRORS_HPP_
