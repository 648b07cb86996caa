// ntwfsm.hpp
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
// Convenience umbrella for the whole library.

#ifndef NTWFSM_NTWFSM_HPP_
#define NTWFSM_NTWFSM_HPP_

#include "ntwfsm/applications.hpp"
#include "ntwfsm/auto_intersection.hpp"
#include "ntwfsm/errors.hpp"
#include "ntwfsm/io.hpp"
#include "ntwfsm/join.hpp"
#include "ntwfsm/machine.hpp"
#include "ntwfsm/rational_ops.hpp"
#include "ntwfsm/search.hpp"
#include "ntwfsm/semiring.hpp"

#endif  // NTWFSM_NTWFSM_HPP_
