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

#include "provlog/engine.hpp"

#include <algorithm>
#include <deque>
#include <exception>
#include <fstream>
#include <queue>

#include "provlog/parser.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace provlog {

namespace {

void require_valid(const Program& program) {
    for (const auto& d : validate(program))
        if (d.severity == Diagnostic::Severity::Error) throw InputError("invalid program: " + d.message);
}

void require_best_first_ring(const Semiring& ring) {
    if (!ring.flags.zero_closed || !ring.flags.totally_ordered)
        throw UsageError("best-first strategies require a 0-closed totally ordered semiring; '" + ring.name() +
                         "' is not");
}

GroundKey key_of(const FactStore& store, AtomId id) {
    const GroundAtom& a = store.atom(id);
    return {store.relation_name(a.relation), a.args};
}

/// ν restricted to the settled intensional atoms.
ValueMap settled_values(const FactStore& store, const Program& program) {
    ValueMap out;
    for (const auto& name : program.idb_relations()) {
        uint32_t rel = store.relation_index(name);
        for (AtomId id : store.settled_list(rel)) out.emplace(key_of(store, id), *store.value(id));
    }
    return out;
}

struct PqEntry {
    Value value;
    AtomId atom;
    uint64_t generation;
};

// Min-heap order: (natural order on value, atom id, push generation).
struct PqCmp {
    const Semiring* ring;
    bool operator()(const PqEntry& a, const PqEntry& b) const {
        if (!(a.value == b.value)) return ring->natural_less(b.value, a.value);
        if (a.atom != b.atom) return b.atom < a.atom;
        return b.generation < a.generation;
    }
};

/// One best-first run over a set of rules against a shared store. Atoms already
/// settled in the store (EDB facts, previous strata) act as extensional inputs.
class SemiNaiveRun {
public:
    SemiNaiveRun(FactStore& store, const Semiring& ring, std::vector<const Rule*> rules, EvalStats& stats,
                 const EngineOptions& opts, size_t run_id)
            : store_(store), ring_(ring), rules_(std::move(rules)), stats_(stats), opts_(opts), run_id_(run_id),
              queue_(PqCmp{&ring_}) {}

    void run() {
        for (const Rule* r : rules_)
            instantiate_from(*r, store_, ring_, std::nullopt, [this](GroundInstance&& inst) {
                ++stats_.rule_instantiations;
                merge(inst.head, inst.product);
            });

        while (!queue_.empty()) {
            PqEntry top = queue_.top();
            queue_.pop();
            if (store_.settled(top.atom) || !(*store_.value(top.atom) == top.value)) {
                ++stats_.stale_pops;
                continue;
            }
            if (last_settled_ && !ring_.natural_leq(*last_settled_, top.value))
                throw InternalError("settlement order not monotone at " + store_.atom_text(top.atom));
            last_settled_ = top.value;
            ++stats_.extractions;
            store_.settle(top.atom);
            if (opts_.on_settle) opts_.on_settle(run_id_, key_of(store_, top.atom), top.value);
            for (const Rule* r : rules_)
                instantiate_from(*r, store_, ring_, top.atom, [this](GroundInstance&& inst) {
                    ++stats_.rule_instantiations;
                    merge(inst.head, inst.product);
                });
        }
    }

private:
    void merge(AtomId head, const Value& product) {
        const Value* old = store_.value(head);
        Value neu = old ? ring_.plus(*old, product) : product;
        if (old && neu == *old) return;
        if (store_.settled(head))
            throw InternalError("value of settled atom " + store_.atom_text(head) + " would change");
        if (neu == ring_.zero()) return;  // 0̄-valued atoms are never pushed
        store_.set_value(head, neu);
        queue_.push({std::move(neu), head, generation_++});
        ++stats_.queue_pushes;
    }

    FactStore& store_;
    const Semiring& ring_;
    std::vector<const Rule*> rules_;
    EvalStats& stats_;
    const EngineOptions& opts_;
    size_t run_id_;
    uint64_t generation_ = 0;
    std::optional<Value> last_settled_;
    std::priority_queue<PqEntry, std::vector<PqEntry>, PqCmp> queue_;
};

std::vector<const Rule*> all_rules(const Program& program) {
    std::vector<const Rule*> out;
    out.reserve(program.rules.size());
    for (const auto& r : program.rules) out.push_back(&r);
    return out;
}

}  // namespace

FactStore boolean_saturate(const Program& program, const std::vector<AnnotatedFact>& edb, const Semiring& ring) {
    Semiring bool_ring = Semiring::boolean();
    std::vector<AnnotatedFact> bool_edb;
    const Value zero = ring.zero();
    for (const auto& f : edb)
        if (!(f.annotation == zero)) bool_edb.push_back({f.relation, f.args, Value(true)});

    FactStore store(program);
    store.init_edb(bool_edb, bool_ring);

    std::deque<AtomId> worklist;
    auto derive = [&](AtomId head) {
        if (store.value(head)) return;  // already seen
        store.set_value(head, Value(true));
        worklist.push_back(head);
    };
    for (const auto& r : program.rules)
        instantiate_from(r, store, bool_ring, std::nullopt,
                         [&](GroundInstance&& inst) { derive(inst.head); });
    while (!worklist.empty()) {
        AtomId id = worklist.front();
        worklist.pop_front();
        store.settle(id);
        for (const auto& r : program.rules)
            instantiate_from(r, store, bool_ring, id, [&](GroundInstance&& inst) { derive(inst.head); });
    }
    return store;
}

EvalReport naive_fixpoint(const Program& program, const std::vector<AnnotatedFact>& edb, const Semiring& ring,
                          const EngineOptions& opts) {
    require_valid(program);
    uint64_t max_rounds = opts.max_rounds;
    if (max_rounds == 0) {
        if (!ring.flags.zero_closed)
            throw UsageError("naive_fixpoint on a non-0-closed semiring requires an explicit max_rounds");
        FactStore universe = boolean_saturate(program, edb, ring);
        max_rounds = universe.atom_count() + 1;
    }

    EvalReport report;
    report.strategy = "naive";
    FactStore store(program);
    store.init_edb(edb, ring);
    const Value zero = ring.zero();

    for (uint64_t round = 1; round <= max_rounds; ++round) {
        ++report.stats.kleene_rounds;
        // one application of the consequence operator over the previous round
        std::map<AtomId, Value> next;
        for (const auto& r : program.rules)
            instantiate_from(r, store, ring, std::nullopt, [&](GroundInstance&& inst) {
                ++report.stats.rule_instantiations;
                auto [it, fresh] = next.emplace(inst.head, inst.product);
                if (!fresh) it->second = ring.plus(it->second, inst.product);
            });
        std::optional<AtomId> changed;
        for (auto& [id, v] : next) {
            if (v == zero) continue;
            const Value* old = store.value(id);
            if (old && *old == v) continue;
            if (!changed) changed = id;
            store.set_value(id, std::move(v));
            if (!store.settled(id)) store.settle(id);
        }
        if (!changed) {
            report.values = settled_values(store, program);
            return report;
        }
        if (round == max_rounds)
            throw InputError("naive_fixpoint did not stabilize within " + std::to_string(max_rounds) +
                             " rounds; unstable atom: " + store.atom_text(*changed));
    }
    throw InternalError("naive_fixpoint: unreachable");
}

EvalReport best_first_naive(const Program& program, const std::vector<AnnotatedFact>& edb, const Semiring& ring,
                            const EngineOptions& opts) {
    require_valid(program);
    require_best_first_ring(ring);

    EvalReport report;
    report.strategy = "best-first";
    FactStore store(program);
    store.init_edb(edb, ring);
    const Value zero = ring.zero();

    while (true) {
        // recompute candidate values for all unsettled atoms from settled ones
        std::map<AtomId, Value> candidates;
        for (const auto& r : program.rules)
            instantiate_from(r, store, ring, std::nullopt, [&](GroundInstance&& inst) {
                ++report.stats.rule_instantiations;
                if (store.settled(inst.head)) return;
                auto [it, fresh] = candidates.emplace(inst.head, inst.product);
                if (!fresh) it->second = ring.plus(it->second, inst.product);
            });
        const Value* best = nullptr;
        AtomId best_atom = 0;
        for (const auto& [id, v] : candidates) {
            if (!best || ring.natural_less(v, *best)) {
                best = &v;
                best_atom = id;
            }
        }
        if (!best || *best == zero) break;
        store.set_value(best_atom, *best);
        store.settle(best_atom);
        ++report.stats.extractions;
        if (opts.on_settle) opts.on_settle(0, key_of(store, best_atom), *store.value(best_atom));
    }
    report.values = settled_values(store, program);
    return report;
}

EvalReport best_first_seminaive(const Program& program, const std::vector<AnnotatedFact>& edb, const Semiring& ring,
                                const EngineOptions& opts) {
    require_valid(program);
    require_best_first_ring(ring);

    EvalReport report;
    report.strategy = "seminaive";
    FactStore store(program);
    store.init_edb(edb, ring);
    SemiNaiveRun run(store, ring, all_rules(program), report.stats, opts, 0);
    run.run();
    report.values = settled_values(store, program);
    return report;
}

EvalReport run_stratified(const Program& program, const std::vector<AnnotatedFact>& edb, const Semiring& ring,
                          const EngineOptions& opts) {
    require_valid(program);
    require_best_first_ring(ring);

    EvalReport report;
    report.strategy = "stratified";
    FactStore store(program);
    store.init_edb(edb, ring);

    Stratification strata = stratify(precedence_graph(program));
    size_t run_id = 0;
    for (const auto& component : strata.components) {
        std::vector<const Rule*> rules;
        for (const auto& r : program.rules)
            if (std::find(component.begin(), component.end(), r.head.relation) != component.end())
                rules.push_back(&r);
        SemiNaiveRun run(store, ring, std::move(rules), report.stats, opts, run_id++);
        run.run();
    }
    report.values = settled_values(store, program);
    return report;
}

EvalReport run_lattice(const Program& program, const std::vector<AnnotatedFact>& edb, const Semiring& ring,
                       const EngineOptions& opts) {
    require_valid(program);
    auto dims = ring.lattice_dims();
    if (!dims)
        throw UsageError("strategy 'lattice' requires a decomposable distributive lattice; '" + ring.name() +
                         "' has no decomposition");
    if (!ring.flags.zero_closed || !ring.flags.multiplicatively_idempotent)
        throw UsageError("strategy 'lattice' requires a 0-closed multiplicatively idempotent semiring");

    const size_t m = *dims;
    // Decompose every EDB annotation into its chain coordinates.
    std::vector<std::vector<AnnotatedFact>> dim_edb(m);
    for (const auto& f : edb) {
        auto coords = ring.decompose(f.annotation);
        for (size_t i = 0; i < m; ++i) dim_edb[i].push_back({f.relation, f.args, std::move(coords[i])});
    }

    EvalReport report;
    report.strategy = "lattice";
    report.dimensions.resize(m);
    std::vector<std::exception_ptr> errors(m);

    // Dimensions are mutually independent; the recompose step is the join barrier.
    // The settlement observer requires globally ordered callbacks, so it forces
    // the serial path.
    bool parallel = !opts.on_settle && m > 1;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (size_t i = 0; i < m; ++i) {
        try {
            Semiring dim_ring = ring.dimension_semiring(i);
            EngineOptions dim_opts;
            dim_opts.max_rounds = opts.max_rounds;
            if (opts.on_settle) {
                auto outer = opts.on_settle;
                size_t base = i * 1000;
                dim_opts.on_settle = [outer, base](size_t run_id, const GroundKey& k, const Value& v) {
                    outer(base + run_id, k, v);
                };
            }
            report.dimensions[i] = run_stratified(program, dim_edb[i], dim_ring, dim_opts);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    (void)parallel;
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    // Recompose per atom over the union of the dimensions' settled atoms; a
    // dimension that did not settle the atom contributes its 0̄ coordinate.
    std::map<GroundKey, bool> candidates;
    for (const auto& d : report.dimensions)
        for (const auto& [k, v] : d.values) candidates[k] = true;
    const Value zero = ring.zero();
    for (const auto& [k, ignored] : candidates) {
        std::vector<Value> coords;
        coords.reserve(m);
        for (size_t i = 0; i < m; ++i) {
            auto it = report.dimensions[i].values.find(k);
            coords.push_back(it == report.dimensions[i].values.end() ? ring.dimension_semiring(i).zero()
                                                                     : it->second);
        }
        Value v = ring.recompose(coords);
        if (!(v == zero)) report.values.emplace(k, std::move(v));
    }
    for (const auto& d : report.dimensions) report.stats += d.stats;
    return report;
}

void require_strategy_support(const std::string& strategy, const Semiring& ring, const EngineOptions& opts) {
    if (strategy == "naive") {
        if (opts.max_rounds == 0 && !ring.flags.zero_closed)
            throw UsageError("naive_fixpoint on a non-0-closed semiring requires an explicit max_rounds");
        return;
    }
    if (strategy == "best-first" || strategy == "seminaive" || strategy == "stratified") {
        require_best_first_ring(ring);
        return;
    }
    if (strategy == "lattice") {
        if (!ring.lattice_dims())
            throw UsageError("strategy 'lattice' requires a decomposable distributive lattice; '" + ring.name() +
                             "' has no decomposition");
        if (!ring.flags.zero_closed || !ring.flags.multiplicatively_idempotent)
            throw UsageError("strategy 'lattice' requires a 0-closed multiplicatively idempotent semiring");
        return;
    }
    throw UsageError("unknown strategy '" + strategy +
                     "' (expected naive, best-first, seminaive, stratified or lattice)");
}

EvalReport run_strategy(const std::string& strategy, const Program& program, const std::vector<AnnotatedFact>& edb,
                        const Semiring& ring, const EngineOptions& opts) {
    if (strategy == "naive") return naive_fixpoint(program, edb, ring, opts);
    if (strategy == "best-first") return best_first_naive(program, edb, ring, opts);
    if (strategy == "seminaive") return best_first_seminaive(program, edb, ring, opts);
    if (strategy == "stratified") return run_stratified(program, edb, ring, opts);
    if (strategy == "lattice") return run_lattice(program, edb, ring, opts);
    throw UsageError("unknown strategy '" + strategy +
                     "' (expected naive, best-first, seminaive, stratified or lattice)");
}

void write_outputs(const EvalReport& report, const Program& program, const std::vector<AnnotatedFact>& edb,
                   const Semiring& ring, const std::string& dir) {
    for (const auto& name : program.outputs) {
        std::ofstream out(dir + "/" + name + ".csv");
        if (!out) throw InputError("cannot write " + dir + "/" + name + ".csv");
        if (program.is_edb(name)) {
            // echo the (⊕-combined) extensional facts
            ValueMap rows;
            const Value zero = ring.zero();
            for (const auto& f : edb) {
                if (f.relation != name || f.annotation == zero) continue;
                auto [it, fresh] = rows.emplace(GroundKey{f.relation, f.args}, f.annotation);
                if (!fresh) it->second = ring.plus(it->second, f.annotation);
            }
            for (const auto& [k, v] : rows) {
                for (size_t i = 0; i < k.second.size(); ++i) out << (i ? "\t" : "") << format_constant(k.second[i]);
                out << '\t' << ring.format_value(v) << '\n';
            }
            continue;
        }
        for (const auto& [k, v] : report.values) {
            if (k.first != name) continue;
            for (size_t i = 0; i < k.second.size(); ++i) out << (i ? "\t" : "") << format_constant(k.second[i]);
            out << '\t' << ring.format_value(v) << '\n';
        }
    }
    std::ofstream stats(dir + "/stats.txt");
    if (!stats) throw InputError("cannot write " + dir + "/stats.txt");
    stats << "strategy\t" << report.strategy << '\n';
    stats << "extractions\t" << report.stats.extractions << '\n';
    stats << "rule_instantiations\t" << report.stats.rule_instantiations << '\n';
    stats << "queue_pushes\t" << report.stats.queue_pushes << '\n';
    stats << "stale_pops\t" << report.stats.stale_pops << '\n';
    stats << "kleene_rounds\t" << report.stats.kleene_rounds << '\n';
    if (!report.dimensions.empty()) stats << "dimensions\t" << report.dimensions.size() << '\n';
}

}  // namespace provlog
