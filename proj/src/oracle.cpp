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

#include "provlog/oracle.hpp"

#include <algorithm>
#include <map>

namespace provlog::oracle {

namespace {

using Subst = std::map<std::string, Constant>;

bool match_term(const Term& t, const Constant& c, Subst& subst) {
    if (!t.is_var()) return t.value == c;
    auto it = subst.find(t.var);
    if (it != subst.end()) return it->second == c;
    subst.emplace(t.var, c);
    return true;
}

/// Nested-loop grounding: enumerates every grounding of body[i..] over the
/// given atom universe, extending `subst`, and calls `f` with the ground body.
struct Grounder {
    const std::map<std::string, std::vector<std::vector<Constant>>>& universe;

    void body_groundings(const std::vector<Atom>& body, size_t i, Subst& subst,
                         std::vector<GroundKey>& ground,
                         const std::function<void(const std::vector<GroundKey>&)>& f) const {
        if (i == body.size()) {
            f(ground);
            return;
        }
        const Atom& atom = body[i];
        auto it = universe.find(atom.relation);
        if (it == universe.end()) return;
        for (const auto& args : it->second) {
            if (args.size() != atom.terms.size()) continue;
            Subst saved = subst;
            bool ok = true;
            for (size_t k = 0; k < args.size() && ok; ++k) ok = match_term(atom.terms[k], args[k], subst);
            if (ok) {
                ground.push_back({atom.relation, args});
                body_groundings(body, i + 1, subst, ground, f);
                ground.pop_back();
            }
            subst = std::move(saved);
        }
    }
};

std::map<std::string, std::vector<std::vector<Constant>>> build_universe(const Program& program,
                                                                         const std::vector<AnnotatedFact>& edb,
                                                                         size_t bound) {
    std::map<std::string, std::vector<std::vector<Constant>>> universe;
    std::set<GroundKey> seen;
    size_t count = 0;
    auto add = [&](const std::string& rel, const std::vector<Constant>& args) {
        if (!seen.insert({rel, args}).second) return false;
        if (++count > bound) throw InputError("oracle universe exceeds " + std::to_string(bound) + " atoms");
        universe[rel].push_back(args);
        return true;
    };
    for (const auto& f : edb) add(f.relation, f.args);
    Grounder g{universe};
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : program.rules) {
            Subst subst;
            std::vector<GroundKey> ground;
            g.body_groundings(r.body, 0, subst, ground, [&](const std::vector<GroundKey>&) {
                std::vector<Constant> head_args;
                for (const auto& t : r.head.terms) {
                    if (t.is_var()) {
                        head_args.push_back(subst.at(t.var));
                    } else {
                        head_args.push_back(t.value);
                    }
                }
                if (add(r.head.relation, head_args)) changed = true;
            });
        }
    }
    return universe;
}

struct ProvEnum {
    const Program& program;
    const Semiring& ring;
    const std::map<std::string, std::vector<std::vector<Constant>>>& universe;
    const std::map<GroundKey, Value>& edb_value;
    std::set<GroundKey> on_path;

    Value prov(const GroundKey& atom) {
        if (program.is_edb(atom.first)) {
            auto it = edb_value.find(atom);
            return it == edb_value.end() ? ring.zero() : it->second;
        }
        if (on_path.count(atom)) return ring.zero();  // pumped trees never beat pruned ones
        on_path.insert(atom);
        Value acc = ring.zero();
        Grounder g{universe};
        for (const auto& r : program.rules) {
            if (r.head.relation != atom.first) continue;
            Subst subst;
            bool head_ok = true;
            for (size_t k = 0; k < r.head.terms.size() && head_ok; ++k)
                head_ok = match_term(r.head.terms[k], atom.second[k], subst);
            if (!head_ok) continue;
            std::vector<GroundKey> ground;
            g.body_groundings(r.body, 0, subst, ground, [&](const std::vector<GroundKey>& body) {
                Value prod = ring.one();
                for (const auto& b : body) {
                    prod = ring.times(prod, prov(b));
                    if (prod == ring.zero()) break;
                }
                acc = ring.plus(acc, prod);
            });
        }
        on_path.erase(atom);
        return acc;
    }
};

}  // namespace

std::set<GroundKey> derivable_atoms(const Program& program, const std::vector<AnnotatedFact>& edb, size_t bound) {
    auto universe = build_universe(program, edb, bound);
    std::set<GroundKey> out;
    for (const auto& [rel, tuples] : universe)
        for (const auto& args : tuples) out.insert({rel, args});
    return out;
}

Value prov_by_enumeration(const Program& program, const std::vector<AnnotatedFact>& edb, const Semiring& ring,
                          const GroundKey& atom, size_t bound) {
    if (!ring.flags.zero_closed)
        throw UsageError("prov_by_enumeration requires a 0-closed semiring; path pruning is only exact there");
    auto universe = build_universe(program, edb, bound);
    std::map<GroundKey, Value> edb_value;
    for (const auto& f : edb) {
        auto [it, fresh] = edb_value.emplace(GroundKey{f.relation, f.args}, f.annotation);
        if (!fresh) it->second = ring.plus(it->second, f.annotation);
    }
    const RelationDecl* decl = program.find_decl(atom.first);
    if (!decl) throw UsageError("unknown relation '" + atom.first + "'");
    if (decl->arity() != atom.second.size()) throw UsageError("arity mismatch for '" + atom.first + "'");
    ProvEnum pe{program, ring, universe, edb_value, {}};
    return pe.prov(atom);
}

ValueMap full_provenance(const Program& program, const std::vector<AnnotatedFact>& edb, const Semiring& ring,
                         size_t bound) {
    if (!ring.flags.zero_closed)
        throw UsageError("full_provenance requires a 0-closed semiring; path pruning is only exact there");
    auto universe = build_universe(program, edb, bound);
    std::map<GroundKey, Value> edb_value;
    for (const auto& f : edb) {
        auto [it, fresh] = edb_value.emplace(GroundKey{f.relation, f.args}, f.annotation);
        if (!fresh) it->second = ring.plus(it->second, f.annotation);
    }
    ValueMap out;
    const Value zero = ring.zero();
    for (const auto& [rel, tuples] : universe) {
        if (!program.is_idb(rel)) continue;
        for (const auto& args : tuples) {
            ProvEnum pe{program, ring, universe, edb_value, {}};
            Value v = pe.prov({rel, args});
            if (!(v == zero)) out.emplace(GroundKey{rel, args}, std::move(v));
        }
    }
    return out;
}

uint64_t count_proof_trees(const Program& program, const std::vector<AnnotatedFact>& edb, const GroundKey& atom,
                           uint64_t max_size) {
    auto universe = build_universe(program, edb, 20000);
    std::set<GroundKey> facts;
    for (const auto& f : edb) facts.insert({f.relation, f.args});

    // exact-size counts, memoized; children of a rule application are strictly
    // smaller, so recursion on (atom, size) grounds out
    std::map<std::pair<GroundKey, uint64_t>, uint64_t> memo;
    std::function<uint64_t(const GroundKey&, uint64_t)> exact = [&](const GroundKey& a, uint64_t s) -> uint64_t {
        if (s == 0) return 0;
        if (program.is_edb(a.first)) return s == 1 && facts.count(a) ? 1 : 0;
        auto key = std::make_pair(a, s);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        uint64_t total = 0;
        Grounder g{universe};
        for (const auto& r : program.rules) {
            if (r.head.relation != a.first) continue;
            Subst subst;
            bool head_ok = true;
            for (size_t k = 0; k < r.head.terms.size() && head_ok; ++k)
                head_ok = match_term(r.head.terms[k], a.second[k], subst);
            if (!head_ok) continue;
            std::vector<GroundKey> ground;
            g.body_groundings(r.body, 0, subst, ground, [&](const std::vector<GroundKey>& body) {
                if (body.size() + 1 > s) return;
                // distribute s-1 over the body, each subtree ≥ 1
                std::vector<uint64_t> ways(s, 0);
                ways[0] = 1;
                for (const auto& b : body) {
                    std::vector<uint64_t> next(s, 0);
                    for (uint64_t used = 0; used + 1 < s; ++used) {
                        if (ways[used] == 0) continue;
                        for (uint64_t cs = 1; used + cs <= s - 1; ++cs) {
                            uint64_t c = exact(b, cs);
                            if (c) next[used + cs] += ways[used] * c;
                        }
                    }
                    ways = std::move(next);
                }
                total += ways[s - 1];
            });
        }
        memo[key] = total;
        return total;
    };

    uint64_t sum = 0;
    for (uint64_t s = 1; s <= max_size; ++s) sum += exact(atom, s);
    return sum;
}

ValueMap tropical_tc_reference(const std::vector<AnnotatedFact>& edges, const std::string& out_relation) {
    std::vector<Constant> nodes;
    auto node_index = [&](const Constant& c) -> size_t {
        for (size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i] == c) return i;
        nodes.push_back(c);
        return nodes.size() - 1;
    };
    struct Cell {
        bool present = false;
        Rational dist;
    };
    std::vector<std::pair<std::pair<size_t, size_t>, Rational>> init;
    for (const auto& f : edges) {
        if (f.args.size() != 2) throw UsageError("tropical_tc_reference expects binary edge facts");
        const Rational& w = f.annotation.get<Rational>();
        if (w.is_infinite()) continue;
        init.push_back({{node_index(f.args[0]), node_index(f.args[1])}, w});
    }
    size_t n = nodes.size();
    std::vector<std::vector<Cell>> d(n, std::vector<Cell>(n));
    for (const auto& [uv, w] : init) {
        Cell& c = d[uv.first][uv.second];
        if (!c.present || w.less(c.dist)) c = {true, w};
    }
    for (size_t k = 0; k < n; ++k)
        for (size_t i = 0; i < n; ++i) {
            if (!d[i][k].present) continue;
            for (size_t j = 0; j < n; ++j) {
                if (!d[k][j].present) continue;
                Rational alt = d[i][k].dist.plus(d[k][j].dist);
                if (!d[i][j].present || alt.less(d[i][j].dist)) d[i][j] = {true, alt};
            }
        }
    ValueMap out;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (d[i][j].present) out.emplace(GroundKey{out_relation, {nodes[i], nodes[j]}}, Value(d[i][j].dist));
    return out;
}

}  // namespace provlog::oracle
