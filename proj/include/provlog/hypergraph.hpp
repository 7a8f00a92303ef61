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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "provlog/ast.hpp"
#include "provlog/store.hpp"

namespace provlog {

using VertexId = uint32_t;

/// A hyperedge: one head, an ordered tail, and a weight function that is
/// either ⊗ of the tail weights (arity ≥ 1) or a nullary constant. A vertex
/// with a nullary edge is a source; at most one nullary edge per vertex.
struct Hyperedge {
    VertexId head = 0;
    std::vector<VertexId> tail;
    std::optional<Value> constant;  // set iff nullary

    bool nullary() const { return tail.empty(); }
    size_t arity() const { return tail.size(); }
    bool operator==(const Hyperedge&) const = default;
};

struct WeightedHypergraph {
    Semiring ring;
    std::vector<std::string> labels;  // vertex id → label
    std::vector<Hyperedge> edges;

    explicit WeightedHypergraph(Semiring r) : ring(std::move(r)) {}

    size_t vertex_count() const { return labels.size(); }

    VertexId add_vertex(std::string label) {
        labels.push_back(std::move(label));
        return static_cast<VertexId>(labels.size() - 1);
    }
    /// Adds the nullary edge of `v`; rejects a second one.
    void add_source(VertexId v, Value constant);
    /// Adds a ⊗-edge of arity ≥ 1.
    void add_edge(VertexId head, std::vector<VertexId> tail);

    /// Incoming edge indices per vertex.
    std::vector<std::vector<uint32_t>> backward_star() const;
};

/// Hypergraph representation of a Datalog instance: one vertex per derivable
/// ground atom, one ⊗-edge per rule instantiation over derivable atoms, one
/// nullary edge per EDB fact carrying its annotation. `universe` must be the
/// boolean-saturated store of derivable atoms.
WeightedHypergraph from_program(const Program& program, const std::vector<AnnotatedFact>& edb, FactStore& universe,
                                const Semiring& ring);
/// Convenience overload that runs the boolean saturation itself.
WeightedHypergraph from_program(const Program& program, const std::vector<AnnotatedFact>& edb, const Semiring& ring);

/// Directed graph with an edge (u, v) for every u in the tail of an edge
/// pointing at v; adjacency lists are deduplicated and sorted.
std::vector<std::vector<VertexId>> graph_projection(const WeightedHypergraph& h);
bool is_acyclic(const WeightedHypergraph& h);

struct Derivation {
    uint32_t edge = 0;
    std::vector<Derivation> children;
    uint64_t size = 0;
    Value weight;
};

/// All derivations of v with |D| ≤ size_bound, ordered by (size, edge-id
/// preorder sequence). With prune_repeats, derivations repeating a vertex on
/// some root-to-leaf path are skipped — sound for best weights in 0-closed
/// semirings, and what keeps cyclic instances finite.
std::vector<Derivation> enumerate_derivations(const WeightedHypergraph& h, VertexId v, uint64_t size_bound,
                                              bool prune_repeats = true);

/// Number of derivations of v with |D| ≤ size_bound (no pruning).
uint64_t count_derivations(const WeightedHypergraph& h, VertexId v, uint64_t size_bound);

/// ⊗ of the nullary-edge constants at the leaves of D.
Value derivation_leaf_product(const WeightedHypergraph& h, const Derivation& d);

/// Best weight δ(v): ⊕ over all (path-pruned) derivations of v; 0̄ when there
/// are none. Exact for 0-closed semirings; anything else is unsupported here.
Value best_weight_by_enumeration(const WeightedHypergraph& h, VertexId v);

/// Line-oriented text format:
///   semiring <name>
///   vertex <id> <label>
///   source <id> <value-literal>
///   edge <head-id> <- <t1> <t2> ...
/// `#` starts a comment. Vertex ids are dense on output; arbitrary unique
/// non-negative integers are accepted on input.
WeightedHypergraph parse_hypergraph(std::string_view text, const Semiring& ring);
std::string format_hypergraph(const WeightedHypergraph& h);

}  // namespace provlog
