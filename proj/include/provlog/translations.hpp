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

#include <string>
#include <string_view>
#include <vector>

#include "provlog/ast.hpp"
#include "provlog/hypergraph.hpp"

namespace provlog {

struct DatalogInstance {
    Program program;
    std::vector<AnnotatedFact> facts;
};

/// Straightforward hypergraph → Datalog translation: a unary intensional
/// predicate R plus one extensional predicate E_{i+1} and one rule
///   R(x) :- E_{i+1}(x, x1, ..., xi), R(x1), ..., R(xi).
/// per hyperedge arity i actually present (degenerating to R(x) :- E_1(x) for
/// nullary edges, which carry the source constants). The best weight of every
/// vertex v equals the engine's value for R(v).
DatalogInstance hg_to_datalog_simple(const WeightedHypergraph& h);

/// Fixed-schema translation: the five rules over R, H, N with extensional
/// E, Nullary, First, Next, End; one fresh constant `__e<k>` per hyperedge,
/// tail lists encoded as First/Next/End chains. Tails that repeat a vertex
/// are first split through fresh copy vertices (the chain encoding addresses
/// positions by vertex, so repeats would conflate them); best weights are
/// unchanged by the split.
DatalogInstance hg_to_datalog_fixed(const WeightedHypergraph& h);

/// The Datalog constant naming a vertex in both translations (the label when
/// all labels are unique and non-empty, `v<id>` otherwise).
std::string vertex_constant(const WeightedHypergraph& h, VertexId v);

/// AND/OR graph text format:
///   semiring <name>
///   or <id>
///   and <id> -> <or-head> : <or-child> ...
///   leaf <or-id> <value-literal>
/// OR nodes become vertices, AND nodes hyperedges, leaves nullary edges.
WeightedHypergraph parse_andor(std::string_view text, const Semiring& ring);

}  // namespace provlog
