// semiring.cpp
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

#include "ntwfsm/semiring.hpp"

#include <cmath>
#include <limits>

#include "ntwfsm/errors.hpp"

namespace ntwfsm {

namespace {
constexpr Weight kInf = std::numeric_limits<Weight>::infinity();
}  // namespace

Semiring::Semiring(SemiringId id, std::string name, Weight zero, Weight one,
                   bool idempotent, bool ordered)
    : id_(id),
      name_(std::move(name)),
      zero_(zero),
      one_(one),
      idempotent_(idempotent),
      ordered_(ordered) {}

const Semiring& Semiring::boolean() {
  static const Semiring s(SemiringId::kBoolean, "boolean", 0.0, 1.0, true,
                          true);
  return s;
}

const Semiring& Semiring::tropical() {
  static const Semiring s(SemiringId::kTropical, "tropical", kInf, 0.0, true,
                          true);
  return s;
}

const Semiring& Semiring::real() {
  static const Semiring s(SemiringId::kReal, "real", 0.0, 1.0, false, false);
  return s;
}

const Semiring& Semiring::log() {
  static const Semiring s(SemiringId::kLog, "log", kInf, 0.0, false, false);
  return s;
}

const Semiring& Semiring::get(SemiringId id) {
  switch (id) {
    case SemiringId::kBoolean:
      return boolean();
    case SemiringId::kTropical:
      return tropical();
    case SemiringId::kReal:
      return real();
    case SemiringId::kLog:
      return log();
  }
  return tropical();  // unreachable
}

const Semiring* Semiring::find(std::string_view name) {
  if (name == "boolean") return &boolean();
  if (name == "tropical") return &tropical();
  if (name == "real") return &real();
  if (name == "log") return &log();
  return nullptr;
}

const Semiring& Semiring::by_name(std::string_view name) {
  const Semiring* s = find(name);
  if (s == nullptr) {
    throw UnsupportedSemiringError("unknown semiring '" + std::string(name) +
                                   "' (expected boolean, tropical, real or "
                                   "log)");
  }
  return *s;
}

Weight Semiring::plus(Weight a, Weight b) const {
  switch (id_) {
    case SemiringId::kBoolean:
      return (a != 0.0 || b != 0.0) ? 1.0 : 0.0;
    case SemiringId::kTropical:
      return a < b ? a : b;
    case SemiringId::kReal:
      return a + b;
    case SemiringId::kLog: {
      // -log(e^-a + e^-b) in the log-sum-exp form that cannot overflow.
      if (a == kInf) return b;
      if (b == kInf) return a;
      const Weight m = a < b ? a : b;
      return m - std::log1p(std::exp(-std::fabs(a - b)));
    }
  }
  return zero_;
}

Weight Semiring::times(Weight a, Weight b) const {
  switch (id_) {
    case SemiringId::kBoolean:
      return (a != 0.0 && b != 0.0) ? 1.0 : 0.0;
    case SemiringId::kTropical:
    case SemiringId::kLog:
      // inf is the zero element and must annihilate even against -inf.
      if (a == kInf || b == kInf) return kInf;
      return a + b;
    case SemiringId::kReal:
      if (a == 0.0 || b == 0.0) return 0.0;
      return a * b;
  }
  return zero_;
}

bool Semiring::natural_less_equal(Weight a, Weight b) const {
  if (!ordered_) {
    throw UnsupportedSemiringError("semiring '" + name_ +
                                   "' has no natural order");
  }
  return plus(a, b) == a;
}

Weight Semiring::normalize(Weight w) const {
  if (id_ == SemiringId::kBoolean) return w != 0.0 ? 1.0 : 0.0;
  return w;
}

}  // namespace ntwfsm
