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

#include "provlog/hypergraph.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "provlog/engine.hpp"
#include "provlog/grounding.hpp"

namespace provlog {

void WeightedHypergraph::add_source(VertexId v, Value constant) {
    if (v >= vertex_count()) throw UsageError("source vertex out of range");
    for (const auto& e : edges)
        if (e.nullary() && e.head == v)
            throw InputError("duplicate nullary edge on vertex '" + labels[v] + "'");
    Hyperedge e;
    e.head = v;
    e.constant = std::move(constant);
    edges.push_back(std::move(e));
}

void WeightedHypergraph::add_edge(VertexId head, std::vector<VertexId> tail) {
    if (tail.empty()) throw UsageError("use add_source for nullary edges");
    if (head >= vertex_count()) throw UsageError("edge head out of range");
    for (VertexId t : tail)
        if (t >= vertex_count()) throw UsageError("edge tail vertex out of range");
    Hyperedge e;
    e.head = head;
    e.tail = std::move(tail);
    edges.push_back(std::move(e));
}

std::vector<std::vector<uint32_t>> WeightedHypergraph::backward_star() const {
    std::vector<std::vector<uint32_t>> bs(vertex_count());
    for (uint32_t i = 0; i < edges.size(); ++i) bs[edges[i].head].push_back(i);
    return bs;
}

WeightedHypergraph from_program(const Program& program, const std::vector<AnnotatedFact>& edb, FactStore& universe,
                                const Semiring& ring) {
    WeightedHypergraph h(ring);
    // one vertex per derivable ground atom, in interning order
    for (AtomId id = 0; id < universe.atom_count(); ++id) h.add_vertex(universe.atom_text(id));

    // nullary edge per (non-0̄) EDB fact
    const Value zero = ring.zero();
    for (const auto& f : edb) {
        if (f.annotation == zero) continue;
        auto id = universe.find(universe.relation_index(f.relation), f.args);
        if (!id) throw InternalError("EDB fact missing from the saturated universe");
        // duplicates were ⊕-combined by the store; combine here the same way
        bool already = false;
        for (auto& e : h.edges)
            if (e.nullary() && e.head == *id) {
                e.constant = ring.plus(*e.constant, f.annotation);
                already = true;
            }
        if (!already) h.add_source(*id, f.annotation);
    }

    // one ⊗-edge per rule instantiation over derivable atoms
    Semiring bool_ring = Semiring::boolean();
    for (const auto& r : program.rules)
        instantiate_from(r, universe, bool_ring, std::nullopt, [&](GroundInstance&& inst) {
            std::vector<VertexId> tail(inst.body.begin(), inst.body.end());
            h.add_edge(inst.head, std::move(tail));
        });
    return h;
}

WeightedHypergraph from_program(const Program& program, const std::vector<AnnotatedFact>& edb, const Semiring& ring) {
    FactStore universe = boolean_saturate(program, edb, ring);
    return from_program(program, edb, universe, ring);
}

std::vector<std::vector<VertexId>> graph_projection(const WeightedHypergraph& h) {
    std::vector<std::vector<VertexId>> adj(h.vertex_count());
    for (const auto& e : h.edges)
        for (VertexId u : e.tail) adj[u].push_back(e.head);
    for (auto& v : adj) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return adj;
}

bool is_acyclic(const WeightedHypergraph& h) {
    auto adj = graph_projection(h);
    size_t n = h.vertex_count();
    std::vector<uint32_t> indeg(n, 0);
    for (const auto& out : adj)
        for (VertexId v : out) ++indeg[v];
    std::vector<VertexId> queue;
    for (VertexId v = 0; v < n; ++v)
        if (indeg[v] == 0) queue.push_back(v);
    size_t seen = 0;
    while (!queue.empty()) {
        VertexId v = queue.back();
        queue.pop_back();
        ++seen;
        for (VertexId w : adj[v])
            if (--indeg[w] == 0) queue.push_back(w);
    }
    return seen == n;
}

namespace {

struct Enumerator {
    const WeightedHypergraph& h;
    const std::vector<std::vector<uint32_t>>& bs;
    uint64_t bound;
    bool prune;
    std::vector<bool> on_path;

    std::vector<Derivation> of(VertexId v, uint64_t budget) {
        std::vector<Derivation> out;
        if (budget == 0) return out;
        if (prune && on_path[v]) return out;
        if (prune) on_path[v] = true;
        for (uint32_t ei : bs[v]) {
            const Hyperedge& e = h.edges[ei];
            if (e.nullary()) {
                out.push_back({ei, {}, 1, *e.constant});
                continue;
            }
            std::vector<Derivation> acc;
            combine(e, ei, 0, budget - 1, acc, out);
        }
        if (prune) on_path[v] = false;
        std::sort(out.begin(), out.end(), [this](const Derivation& a, const Derivation& b) {
            if (a.size != b.size) return a.size < b.size;
            return preorder_less(a, b);
        });
        return out;
    }

    void combine(const Hyperedge& e, uint32_t ei, size_t child, uint64_t remaining, std::vector<Derivation>& acc,
                 std::vector<Derivation>& out) {
        if (child == e.tail.size()) {
            Derivation d;
            d.edge = ei;
            d.children = acc;
            d.size = 1;
            d.weight = h.ring.one();
            for (const auto& c : d.children) {
                d.size += c.size;
                d.weight = h.ring.times(d.weight, c.weight);
            }
            out.push_back(std::move(d));
            return;
        }
        uint64_t tail_left = e.tail.size() - child - 1;  // each remaining child needs ≥ 1
        if (remaining <= tail_left) return;
        for (Derivation& d : of(e.tail[child], remaining - tail_left)) {
            acc.push_back(std::move(d));
            combine(e, ei, child + 1, remaining - acc.back().size, acc, out);
            acc.pop_back();
        }
    }

    static bool preorder_less(const Derivation& a, const Derivation& b) {
        if (a.edge != b.edge) return a.edge < b.edge;
        for (size_t i = 0; i < std::min(a.children.size(), b.children.size()); ++i) {
            if (!(a.children[i].edge == b.children[i].edge) || a.children[i].size != b.children[i].size ||
                !preorder_eq(a.children[i], b.children[i]))
                return preorder_less(a.children[i], b.children[i]);
        }
        return a.children.size() < b.children.size();
    }

    static bool preorder_eq(const Derivation& a, const Derivation& b) {
        if (a.edge != b.edge || a.children.size() != b.children.size()) return false;
        for (size_t i = 0; i < a.children.size(); ++i)
            if (!preorder_eq(a.children[i], b.children[i])) return false;
        return true;
    }
};

}  // namespace

std::vector<Derivation> enumerate_derivations(const WeightedHypergraph& h, VertexId v, uint64_t size_bound,
                                              bool prune_repeats) {
    if (v >= h.vertex_count()) throw UsageError("vertex out of range");
    auto bs = h.backward_star();
    Enumerator en{h, bs, size_bound, prune_repeats, std::vector<bool>(h.vertex_count(), false)};
    return en.of(v, size_bound);
}

uint64_t count_derivations(const WeightedHypergraph& h, VertexId v, uint64_t size_bound) {
    if (v >= h.vertex_count()) throw UsageError("vertex out of range");
    auto bs = h.backward_star();
    // exact[v][s] = number of derivations of v of size exactly s; children of a
    // ⊗-edge are strictly smaller, so filling sizes upward terminates even on
    // cyclic hypergraphs
    size_t n = h.vertex_count();
    std::vector<std::vector<uint64_t>> exact(n, std::vector<uint64_t>(size_bound + 1, 0));
    // iterate sizes upward; exact[v][s] depends on strictly smaller child sizes
    for (uint64_t s = 1; s <= size_bound; ++s) {
        for (VertexId u = 0; u < n; ++u) {
            uint64_t total = 0;
            for (uint32_t ei : bs[u]) {
                const Hyperedge& e = h.edges[ei];
                if (e.nullary()) {
                    if (s == 1) ++total;
                    continue;
                }
                if (e.arity() + 1 > s) continue;
                std::vector<uint64_t> ways(s, 0);
                ways[0] = 1;
                for (VertexId t : e.tail) {
                    std::vector<uint64_t> next(s, 0);
                    for (uint64_t used = 0; used + 1 < s; ++used) {
                        if (ways[used] == 0) continue;
                        for (uint64_t cs = 1; used + cs <= s - 1; ++cs)
                            next[used + cs] += ways[used] * exact[t][cs];
                    }
                    ways = std::move(next);
                }
                total += ways[s - 1];
            }
            exact[u][s] = total;
        }
    }
    uint64_t sum = 0;
    for (uint64_t s = 1; s <= size_bound; ++s) sum += exact[v][s];
    return sum;
}

Value derivation_leaf_product(const WeightedHypergraph& h, const Derivation& d) {
    const Hyperedge& e = h.edges[d.edge];
    if (e.nullary()) return *e.constant;
    Value acc = h.ring.one();
    for (const auto& c : d.children) acc = h.ring.times(acc, derivation_leaf_product(h, c));
    return acc;
}

namespace {

struct BestWeight {
    const WeightedHypergraph& h;
    const std::vector<std::vector<uint32_t>>& bs;
    std::vector<bool> on_path;

    // ⊕ over path-pruned derivations, computed by distributing ⊗ over ⊕.
    Value of(VertexId v) {
        if (on_path[v]) return h.ring.zero();
        on_path[v] = true;
        Value acc = h.ring.zero();
        for (uint32_t ei : bs[v]) {
            const Hyperedge& e = h.edges[ei];
            if (e.nullary()) {
                acc = h.ring.plus(acc, *e.constant);
                continue;
            }
            Value prod = h.ring.one();
            bool dead = false;
            for (VertexId t : e.tail) {
                Value c = of(t);
                if (c == h.ring.zero()) {
                    dead = true;
                    break;
                }
                prod = h.ring.times(prod, c);
            }
            if (!dead) acc = h.ring.plus(acc, prod);
        }
        on_path[v] = false;
        return acc;
    }
};

}  // namespace

Value best_weight_by_enumeration(const WeightedHypergraph& h, VertexId v) {
    if (v >= h.vertex_count()) throw UsageError("vertex out of range");
    if (!h.ring.flags.zero_closed)
        throw UsageError("best_weight_by_enumeration requires a 0-closed semiring; enumeration may diverge on '" +
                         h.ring.name() + "'");
    auto bs = h.backward_star();
    BestWeight bw{h, bs, std::vector<bool>(h.vertex_count(), false)};
    return bw.of(v);
}

WeightedHypergraph parse_hypergraph(std::string_view text, const Semiring& ring) {
    WeightedHypergraph h(ring);
    std::map<uint64_t, VertexId> by_id;
    bool header_seen = false;
    size_t lineno = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    auto fail = [&](const std::string& m) -> void { throw InputError("hypergraph line " + std::to_string(lineno) + ": " + m); };
    auto vertex_of = [&](const std::string& tok) -> VertexId {
        uint64_t id = 0;
        for (char c : tok) {
            if (c < '0' || c > '9') fail("'" + tok + "' is not a vertex id");
            id = id * 10 + (c - '0');
        }
        auto it = by_id.find(id);
        if (it == by_id.end()) fail("vertex " + tok + " is not declared");
        return it->second;
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (!header_seen) {
            if (word != "semiring") fail("expected 'semiring <name>' header");
            std::string name;
            if (!(ls >> name)) fail("expected semiring name");
            if (name != ring.name())
                fail("file declares semiring '" + name + "' but '" + ring.name() + "' was requested");
            header_seen = true;
            continue;
        }
        if (word == "vertex") {
            std::string id_tok;
            if (!(ls >> id_tok)) fail("expected vertex id");
            uint64_t id = 0;
            for (char c : id_tok) {
                if (c < '0' || c > '9') fail("'" + id_tok + "' is not a vertex id");
                id = id * 10 + (c - '0');
            }
            if (by_id.count(id)) fail("duplicate vertex id " + id_tok);
            std::string label;
            std::getline(ls, label);
            size_t first = label.find_first_not_of(" \t");
            label = first == std::string::npos ? "" : label.substr(first);
            by_id.emplace(id, h.add_vertex(label));
        } else if (word == "source") {
            std::string id_tok, literal;
            if (!(ls >> id_tok >> literal)) fail("expected 'source <id> <value-literal>'");
            h.add_source(vertex_of(id_tok), ring.parse_value(literal));
        } else if (word == "edge") {
            std::string head_tok, arrow;
            if (!(ls >> head_tok >> arrow) || arrow != "<-") fail("expected 'edge <head> <- <tail...>'");
            VertexId head = vertex_of(head_tok);
            std::vector<VertexId> tail;
            std::string tok;
            while (ls >> tok) tail.push_back(vertex_of(tok));
            if (tail.empty()) fail("edge needs at least one tail vertex (use 'source' for nullary edges)");
            h.add_edge(head, std::move(tail));
        } else {
            fail("unknown directive '" + word + "'");
        }
    }
    if (!header_seen) throw InputError("hypergraph file is missing the 'semiring <name>' header");
    return h;
}

std::string format_hypergraph(const WeightedHypergraph& h) {
    std::ostringstream os;
    os << "semiring " << h.ring.name() << "\n";
    for (VertexId v = 0; v < h.vertex_count(); ++v) os << "vertex " << v << " " << h.labels[v] << "\n";
    for (const auto& e : h.edges) {
        if (e.nullary()) {
            os << "source " << e.head << " " << h.ring.format_value(*e.constant) << "\n";
        } else {
            os << "edge " << e.head << " <-";
            for (VertexId t : e.tail) os << " " << t;
            os << "\n";
        }
    }
    return os.str();
}

}  // namespace provlog
