// Copyright 2026-present the provlog project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "provlog/ast.hpp"
#include "provlog/store.hpp"

namespace provlog {

/// Dependency graph over IDB predicates: an edge (R, R') for every rule whose
/// head is R' and whose body mentions the IDB predicate R.
struct PrecedenceGraph {
    std::vector<std::string> nodes;  // IDB relations, declaration order
    std::set<std::pair<std::string, std::string>> edges;
};

PrecedenceGraph precedence_graph(const Program& program);

/// SCCs of the precedence graph in a topological order of the condensation.
/// Deterministic: ties are broken by the lexicographically least relation name
/// in each component; names inside a component are sorted.
struct Stratification {
    std::vector<std::vector<std::string>> components;
};

Stratification stratify(const PrecedenceGraph& g);

/// One rule instantiation: the (interned) ground head, the ground body atoms,
/// and the ⊗-product of their current values in body order.
struct GroundInstance {
    AtomId head;
    std::vector<AtomId> body;
    Value product;
};

/// Streams rule instantiations against the settled store.
///
/// Without a trigger: every instantiation whose body atoms are all settled
/// (used for seeding from the extensional database).
///
/// With a trigger: one pass per occurrence m of the trigger's relation in the
/// body; position m is bound to the trigger atom itself, positions before m
/// draw from settled ∪ {trigger} and positions after m from settled \ {trigger}.
/// This is the duplicate-elimination split of semi-naïve relaxation: across a
/// run, an instantiation fires exactly once — when the last-settled body atom
/// it uses is the trigger. A trigger whose relation does not occur in the body
/// yields nothing.
void instantiate_from(const Rule& rule, FactStore& store, const Semiring& ring, std::optional<AtomId> trigger,
                      const std::function<void(GroundInstance&&)>& emit);

}  // namespace provlog
