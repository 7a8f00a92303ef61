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
#include <map>
#include <string>
#include <vector>

#include "provlog/ast.hpp"
#include "provlog/grounding.hpp"
#include "provlog/store.hpp"

namespace provlog {

struct EvalStats {
    uint64_t extractions = 0;
    uint64_t rule_instantiations = 0;
    uint64_t queue_pushes = 0;
    uint64_t stale_pops = 0;
    uint64_t kleene_rounds = 0;

    EvalStats& operator+=(const EvalStats& o) {
        extractions += o.extractions;
        rule_instantiations += o.rule_instantiations;
        queue_pushes += o.queue_pushes;
        stale_pops += o.stale_pops;
        kleene_rounds += o.kleene_rounds;
        return *this;
    }
};

/// (relation name, ground argument tuple); orders numbers before symbols.
using GroundKey = std::pair<std::string, std::vector<Constant>>;
using ValueMap = std::map<GroundKey, Value>;

/// Result of one evaluation: ν restricted to the settled intensional atoms
/// (every reported value is ≠ 0̄; underivable atoms are omitted) plus exact
/// event counters.
struct EvalReport {
    std::string strategy;
    ValueMap values;
    EvalStats stats;
    std::vector<EvalReport> dimensions;  // per-dimension sub-reports of run_lattice
};

struct EngineOptions {
    /// Kleene round bound for naive_fixpoint; 0 means automatic
    /// (#derivable atoms + 1), which requires a 0-closed semiring.
    uint64_t max_rounds = 0;

    /// Called on every settlement, in settlement order. run_id identifies the
    /// best-first run the settlement belongs to (one per stratum and per
    /// lattice dimension). When set, lattice dimensions execute serially.
    std::function<void(size_t run_id, const GroundKey& atom, const Value& value)> on_settle;
};

/// Kleene iteration of the immediate consequence operator from the all-0̄
/// assignment until a round changes nothing. Works on any semiring given a
/// finite max_rounds; reports kleene_rounds.
EvalReport naive_fixpoint(const Program& program, const std::vector<AnnotatedFact>& edb, const Semiring& ring,
                          const EngineOptions& opts = {});

/// Knuth-style best-first settlement recomputing all candidates from the
/// settled set at every step. Requires a 0-closed totally ordered semiring.
EvalReport best_first_naive(const Program& program, const std::vector<AnnotatedFact>& edb, const Semiring& ring,
                            const EngineOptions& opts = {});

/// Semi-naïve best-first settlement: a lazy-deletion priority queue plus
/// trigger-driven relaxation, so each rule instantiation is produced once.
EvalReport best_first_seminaive(const Program& program, const std::vector<AnnotatedFact>& edb, const Semiring& ring,
                                const EngineOptions& opts = {});

/// best_first_seminaive per strongly connected component of the precedence
/// graph, in topological order, with earlier components treated as extensional.
EvalReport run_stratified(const Program& program, const std::vector<AnnotatedFact>& edb, const Semiring& ring,
                          const EngineOptions& opts = {});

/// Generalized driver for decomposable distributive lattices: decomposes every
/// EDB annotation into chain coordinates, runs run_stratified independently per
/// dimension (in parallel when OpenMP is available), and recomposes.
EvalReport run_lattice(const Program& program, const std::vector<AnnotatedFact>& edb, const Semiring& ring,
                       const EngineOptions& opts = {});

/// Dispatch by CLI strategy name: naive, best-first, seminaive, stratified, lattice.
EvalReport run_strategy(const std::string& strategy, const Program& program, const std::vector<AnnotatedFact>& edb,
                        const Semiring& ring, const EngineOptions& opts = {});

/// Throws UsageError when `strategy` cannot run on `ring` (or is unknown),
/// without evaluating anything.
void require_strategy_support(const std::string& strategy, const Semiring& ring, const EngineOptions& opts = {});

/// Boolean saturation: the set of derivable ground atoms (EDB facts annotated
/// 0̄ count as absent). The returned store has every derivable atom settled.
FactStore boolean_saturate(const Program& program, const std::vector<AnnotatedFact>& edb, const Semiring& ring);

/// Writes `<relation>.csv` for every output relation (argument columns then
/// the provenance literal) and `stats.txt` into `dir`.
void write_outputs(const EvalReport& report, const Program& program, const std::vector<AnnotatedFact>& edb,
                   const Semiring& ring, const std::string& dir);

}  // namespace provlog
