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

#include "provlog/grounding.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace provlog {

PrecedenceGraph precedence_graph(const Program& program) {
    PrecedenceGraph g;
    for (const auto& d : program.decls)
        if (!program.is_edb(d.name)) g.nodes.push_back(d.name);
    for (const auto& r : program.rules) {
        if (!program.is_idb(r.head.relation)) continue;
        for (const auto& b : r.body)
            if (program.is_idb(b.relation)) g.edges.emplace(b.relation, r.head.relation);
    }
    return g;
}

Stratification stratify(const PrecedenceGraph& g) {
    // SCCs via iterative Tarjan, then Kahn's algorithm on the condensation with
    // a min-heap keyed by the least member name, for a deterministic order.
    std::vector<std::string> nodes = g.nodes;
    std::sort(nodes.begin(), nodes.end());

    std::map<std::string, std::vector<std::string>> succ;
    for (const auto& n : nodes) succ[n];
    for (const auto& [from, to] : g.edges) succ[from].push_back(to);
    for (auto& [n, s] : succ) std::sort(s.begin(), s.end());

    std::map<std::string, int> index, low, comp;
    std::vector<std::string> stack;
    std::map<std::string, bool> on_stack;
    int counter = 0, ncomp = 0;

    struct Frame {
        std::string node;
        size_t child = 0;
    };
    for (const auto& root : nodes) {
        if (index.count(root)) continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            auto& edges = succ[f.node];
            bool descended = false;
            while (f.child < edges.size()) {
                const std::string& w = edges[f.child++];
                if (!index.count(w)) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[f.node] = std::min(low[f.node], index[w]);
            }
            if (descended) continue;
            if (low[f.node] == index[f.node]) {
                while (true) {
                    std::string w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = ncomp;
                    if (w == f.node) break;
                }
                ++ncomp;
            }
            std::string done = f.node;
            frames.pop_back();
            if (!frames.empty()) low[frames.back().node] = std::min(low[frames.back().node], low[done]);
        }
    }

    std::vector<std::vector<std::string>> members(ncomp);
    for (const auto& n : nodes) members[comp[n]].push_back(n);  // nodes sorted ⇒ members sorted

    // condensation
    std::vector<std::set<int>> cond_succ(ncomp);
    std::vector<int> indeg(ncomp, 0);
    for (const auto& [from, to] : g.edges) {
        int a = comp[from], b = comp[to];
        if (a != b && cond_succ[a].insert(b).second) ++indeg[b];
    }

    auto cmp = [&](int a, int b) { return members[a].front() > members[b].front(); };
    std::priority_queue<int, std::vector<int>, decltype(cmp)> ready(cmp);
    for (int c = 0; c < ncomp; ++c)
        if (indeg[c] == 0) ready.push(c);

    Stratification out;
    while (!ready.empty()) {
        int c = ready.top();
        ready.pop();
        out.components.push_back(members[c]);
        for (int d : cond_succ[c])
            if (--indeg[d] == 0) ready.push(d);
    }
    return out;
}

namespace {

struct Binding {
    std::string var;
    Constant value;
};

class Matcher {
public:
    Matcher(const Rule& rule, FactStore& store, const Semiring& ring,
            const std::function<void(GroundInstance&&)>& emit)
            : rule_(rule), store_(store), ring_(ring), emit_(emit) {
        body_rel_.reserve(rule.body.size());
        for (const auto& a : rule_.body) body_rel_.push_back(store_.relation_index(a.relation));
    }

    // trigger_pos < 0: seeding pass (all body atoms from the settled store).
    void run(std::optional<AtomId> trigger, int trigger_pos) {
        trigger_ = trigger;
        trigger_pos_ = trigger_pos;
        bindings_.clear();
        body_ids_.assign(rule_.body.size(), 0);
        extend(0, ring_.one());
    }

private:
    const Constant* lookup(const std::string& var) const {
        for (const auto& b : bindings_)
            if (b.var == var) return &b.value;
        return nullptr;
    }

    // Tries `id` against body atom `pos` under the current bindings; on match,
    // recurses with the extended substitution. Restores bindings afterwards.
    void try_atom(size_t pos, AtomId id, const Value& acc) {
        const Atom& atom = rule_.body[pos];
        const GroundAtom& ground = store_.atom(id);
        size_t saved = bindings_.size();
        for (size_t i = 0; i < atom.terms.size(); ++i) {
            const Term& t = atom.terms[i];
            if (t.is_var()) {
                if (const Constant* bound = lookup(t.var)) {
                    if (!(*bound == ground.args[i])) {
                        bindings_.resize(saved);
                        return;
                    }
                } else {
                    bindings_.push_back({t.var, ground.args[i]});
                }
            } else if (!(t.value == ground.args[i])) {
                bindings_.resize(saved);
                return;
            }
        }
        body_ids_[pos] = id;
        const Value* v = store_.value(id);
        if (!v) throw InternalError("settled atom without value: " + store_.atom_text(id));
        extend(pos + 1, ring_.times(acc, *v));
        bindings_.resize(saved);
    }

    void extend(size_t pos, const Value& acc) {
        if (pos == rule_.body.size()) {
            std::vector<Constant> head_args;
            head_args.reserve(rule_.head.terms.size());
            for (const auto& t : rule_.head.terms) {
                if (t.is_var()) {
                    const Constant* bound = lookup(t.var);
                    if (!bound) throw InternalError("unbound head variable '" + t.var + "'");
                    head_args.push_back(*bound);
                } else {
                    head_args.push_back(t.value);
                }
            }
            AtomId head = store_.intern(store_.relation_index(rule_.head.relation), std::move(head_args));
            emit_({head, body_ids_, acc});
            return;
        }
        if (trigger_pos_ >= 0 && pos == static_cast<size_t>(trigger_pos_)) {
            try_atom(pos, *trigger_, acc);
            return;
        }
        const Atom& atom = rule_.body[pos];
        uint32_t rel = body_rel_[pos];
        uint64_t mask = 0;
        std::vector<Constant> key;
        for (size_t i = 0; i < atom.terms.size(); ++i) {
            const Term& t = atom.terms[i];
            if (t.is_var()) {
                if (const Constant* bound = lookup(t.var)) {
                    mask |= 1ULL << i;
                    key.push_back(*bound);
                }
            } else {
                mask |= 1ULL << i;
                key.push_back(t.value);
            }
        }
        bool after_trigger = trigger_pos_ >= 0 && pos > static_cast<size_t>(trigger_pos_);
        const auto& candidates = store_.settled_matching(rel, mask, key);
        for (AtomId id : candidates) {
            if (after_trigger && id == *trigger_) continue;  // settled \ {trigger}
            try_atom(pos, id, acc);
        }
        // Positions before the trigger occurrence draw from settled ∪ {trigger};
        // if the engine has not settled the trigger yet, add it explicitly.
        if (trigger_pos_ >= 0 && pos < static_cast<size_t>(trigger_pos_) && !store_.settled(*trigger_) &&
            store_.atom(*trigger_).relation == rel) {
            try_atom(pos, *trigger_, acc);
        }
    }

    const Rule& rule_;
    FactStore& store_;
    const Semiring& ring_;
    const std::function<void(GroundInstance&&)>& emit_;
    std::vector<uint32_t> body_rel_;
    std::optional<AtomId> trigger_;
    int trigger_pos_ = -1;
    std::vector<Binding> bindings_;
    std::vector<AtomId> body_ids_;
};

}  // namespace

void instantiate_from(const Rule& rule, FactStore& store, const Semiring& ring, std::optional<AtomId> trigger,
                      const std::function<void(GroundInstance&&)>& emit) {
    Matcher m(rule, store, ring, emit);
    if (!trigger) {
        m.run(std::nullopt, -1);
        return;
    }
    uint32_t trig_rel = store.atom(*trigger).relation;
    for (size_t pos = 0; pos < rule.body.size(); ++pos) {
        if (store.relation_index(rule.body[pos].relation) != trig_rel) continue;
        m.run(trigger, static_cast<int>(pos));
    }
}

}  // namespace provlog
