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

#include <set>

#include "provlog/ast.hpp"
#include "provlog/engine.hpp"

namespace provlog {

// Brute-force reference implementations, deliberately a different algorithm
// family from the engine: proof-tree enumeration with nested-loop grounding
// and matrix closure, no indexes, no priority queue. Agreement between these
// and the engine is the evidence the test suites rely on.
namespace oracle {

/// All derivable ground atoms (EDB included) by naive repeated nested-loop
/// grounding. Throws when the universe exceeds `bound` atoms.
std::set<GroundKey> derivable_atoms(const Program& program, const std::vector<AnnotatedFact>& edb,
                                    size_t bound = 20000);

/// ⊕ over all proof trees of `atom` (no atom repeated on a root-to-leaf path,
/// exact for 0-closed semirings) of the ⊗ of their leaf annotations; 0̄ when no
/// tree exists.
Value prov_by_enumeration(const Program& program, const std::vector<AnnotatedFact>& edb, const Semiring& ring,
                          const GroundKey& atom, size_t bound = 20000);

/// prov_by_enumeration for every derivable intensional atom, with 0̄-valued
/// atoms omitted — directly comparable to an EvalReport's value map.
ValueMap full_provenance(const Program& program, const std::vector<AnnotatedFact>& edb, const Semiring& ring,
                         size_t bound = 20000);

/// Number of proof trees of `atom` of size ≤ max_size, where a tree's size is
/// the number of rule applications plus the number of leaf facts (mirroring
/// derivation sizes under the hypergraph bijection).
uint64_t count_proof_trees(const Program& program, const std::vector<AnnotatedFact>& edb, const GroundKey& atom,
                           uint64_t max_size);

/// Floyd–Warshall closure over a binary edge relation with non-negative
/// tropical weights; result keyed by `out_relation` so it compares directly
/// against transitive-closure EvalReports.
ValueMap tropical_tc_reference(const std::vector<AnnotatedFact>& edges, const std::string& out_relation = "path");

}  // namespace oracle

}  // namespace provlog
