// semiring.hpp
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
// Weight algebras. A semiring bundles the two weight operations (+) and (*)
// with their identities; machines and all operations over them are generic
// in the semiring. Four instances are provided:
//
//   boolean   ({0,1}, or, and, 0, 1)
//   tropical  (R+ u {inf}, min, +, inf, 0)
//   real      (R, +, *, 0, 1)
//   log       (R u {inf}, -log(e^-x + e^-y), +, inf, 0)
//
// Weights are stored as doubles under all four interpretations; the boolean
// semiring normalizes values to exactly 0.0 or 1.0.

#ifndef NTWFSM_SEMIRING_HPP_
#define NTWFSM_SEMIRING_HPP_

#include <string>
#include <string_view>

namespace ntwfsm {

using Weight = double;

enum class SemiringId { kBoolean, kTropical, kReal, kLog };

class Semiring {
 public:
  static const Semiring& boolean();
  static const Semiring& tropical();
  static const Semiring& real();
  static const Semiring& log();

  static const Semiring& get(SemiringId id);
  // Returns nullptr when the name is not one of boolean/tropical/real/log.
  static const Semiring* find(std::string_view name);
  // Like find() but throws UnsupportedSemiringError on unknown names.
  static const Semiring& by_name(std::string_view name);

  SemiringId id() const { return id_; }
  const std::string& name() const { return name_; }

  Weight plus(Weight a, Weight b) const;
  Weight times(Weight a, Weight b) const;
  Weight zero() const { return zero_; }
  Weight one() const { return one_; }

  // w (+) w == w for all w.
  bool is_idempotent() const { return idempotent_; }

  // True when (+) selects one of its arguments, inducing the natural total
  // order a <= b  iff  a (+) b == a (boolean and tropical).
  bool has_natural_order() const { return ordered_; }
  bool natural_less_equal(Weight a, Weight b) const;

  bool is_zero(Weight w) const { return w == zero_; }
  bool is_one(Weight w) const { return w == one_; }

  // Maps a raw double into the semiring's value domain. Only the boolean
  // semiring is affected: any non-zero value becomes 1.
  Weight normalize(Weight w) const;

  bool operator==(const Semiring& other) const { return id_ == other.id_; }
  bool operator!=(const Semiring& other) const { return id_ != other.id_; }

 private:
  Semiring(SemiringId id, std::string name, Weight zero, Weight one,
           bool idempotent, bool ordered);

  SemiringId id_;
  std::string name_;
  Weight zero_;
  Weight one_;
  bool idempotent_;
  bool ordered_;
};

}  // namespace ntwfsm

#endif  // NTWFSM_SEMIRING_HPP_
