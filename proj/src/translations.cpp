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

#include "provlog/translations.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace provlog {

namespace {

bool labels_usable(const WeightedHypergraph& h) {
    std::set<std::string> seen;
    for (const auto& l : h.labels) {
        if (l.empty()) return false;
        if (!seen.insert(l).second) return false;
    }
    return true;
}

}  // namespace

std::string vertex_constant(const WeightedHypergraph& h, VertexId v) {
    static_cast<void>(h.labels.at(v));
    return labels_usable(h) ? h.labels[v] : "v" + std::to_string(v);
}

DatalogInstance hg_to_datalog_simple(const WeightedHypergraph& h) {
    DatalogInstance out;
    Program& p = out.program;

    std::set<size_t> arities;
    for (const auto& e : h.edges) arities.insert(e.arity());

    p.decls.push_back({"R", {{"v", AttrType::Symbol}}, false});
    p.outputs.insert("R");
    for (size_t i : arities) {
        RelationDecl d;
        d.name = "E" + std::to_string(i + 1);
        d.attrs.push_back({"h", AttrType::Symbol});
        for (size_t k = 1; k <= i; ++k) d.attrs.push_back({"t" + std::to_string(k), AttrType::Symbol});
        d.has_prov = true;
        p.decls.push_back(std::move(d));
        p.inputs.insert("E" + std::to_string(i + 1));
    }
    for (size_t i : arities) {
        Rule r;
        Atom e;
        e.relation = "E" + std::to_string(i + 1);
        e.terms.push_back(Term::variable("x"));
        for (size_t k = 1; k <= i; ++k) e.terms.push_back(Term::variable("x" + std::to_string(k)));
        r.head = {"R", {Term::variable("x")}};
        r.body.push_back(std::move(e));
        for (size_t k = 1; k <= i; ++k) r.body.push_back({"R", {Term::variable("x" + std::to_string(k))}});
        p.rules.push_back(std::move(r));
    }

    const Value one = h.ring.one();
    for (const auto& e : h.edges) {
        std::vector<Constant> args;
        args.emplace_back(vertex_constant(h, e.head));
        for (VertexId t : e.tail) args.emplace_back(vertex_constant(h, t));
        out.facts.push_back({"E" + std::to_string(e.arity() + 1), std::move(args),
                             e.nullary() ? *e.constant : one});
    }
    return out;
}

namespace {

/// The First/Next/End chain identifies positions by vertex constant, so a tail
/// repeating a vertex would conflate chain positions (End(e, x_n) matches
/// every occurrence of x_n). Splitting repeats off through fresh copy vertices
/// with unary edges keeps tails injective and preserves every best weight.
WeightedHypergraph split_repeated_tails(const WeightedHypergraph& h) {
    WeightedHypergraph norm = h;
    size_t copies = 0;
    const size_t original_edges = norm.edges.size();
    for (size_t ei = 0; ei < original_edges; ++ei) {
        if (norm.edges[ei].nullary()) continue;
        std::set<VertexId> seen;
        for (size_t k = 0; k < norm.edges[ei].tail.size(); ++k) {
            VertexId t = norm.edges[ei].tail[k];
            if (seen.insert(t).second) continue;
            VertexId copy = norm.add_vertex(norm.labels[t] + "@copy" + std::to_string(copies++));
            Hyperedge alias;
            alias.head = copy;
            alias.tail = {t};
            norm.edges.push_back(std::move(alias));
            norm.edges[ei].tail[k] = copy;
        }
    }
    return norm;
}

}  // namespace

DatalogInstance hg_to_datalog_fixed(const WeightedHypergraph& input) {
    WeightedHypergraph h = split_repeated_tails(input);
    DatalogInstance out;
    Program& p = out.program;

    p.decls.push_back({"R", {{"v", AttrType::Symbol}}, false});
    p.decls.push_back({"H", {{"e", AttrType::Symbol}}, false});
    p.decls.push_back({"N", {{"e", AttrType::Symbol}, {"x", AttrType::Symbol}}, false});
    p.decls.push_back({"E", {{"v", AttrType::Symbol}, {"e", AttrType::Symbol}}, true});
    p.decls.push_back({"Nullary", {{"e", AttrType::Symbol}}, true});
    p.decls.push_back({"First", {{"e", AttrType::Symbol}, {"x", AttrType::Symbol}}, true});
    p.decls.push_back({"Next", {{"e", AttrType::Symbol}, {"x", AttrType::Symbol}, {"y", AttrType::Symbol}}, true});
    p.decls.push_back({"End", {{"e", AttrType::Symbol}, {"x", AttrType::Symbol}}, true});
    for (const char* r : {"E", "Nullary", "First", "Next", "End"}) p.inputs.insert(r);
    p.outputs.insert("R");

    auto var = [](const char* n) { return Term::variable(n); };
    p.rules.push_back({{"R", {var("x")}}, {{"E", {var("x"), var("e")}}, {"H", {var("e")}}}});
    p.rules.push_back(
            {{"H", {var("e")}}, {{"First", {var("e"), var("x")}}, {"R", {var("x")}}, {"N", {var("e"), var("x")}}}});
    p.rules.push_back({{"H", {var("e")}}, {{"Nullary", {var("e")}}}});
    p.rules.push_back({{"N", {var("e"), var("x")}},
                       {{"Next", {var("e"), var("x"), var("y")}}, {"R", {var("y")}}, {"N", {var("e"), var("y")}}}});
    p.rules.push_back({{"N", {var("e"), var("x")}}, {{"End", {var("e"), var("x")}}}});

    const Value one = h.ring.one();
    for (uint32_t i = 0; i < h.edges.size(); ++i) {
        const Hyperedge& e = h.edges[i];
        Constant ec = std::string("__e") + std::to_string(i);
        Constant head = vertex_constant(h, e.head);
        if (e.nullary()) {
            out.facts.push_back({"E", {head, ec}, *e.constant});
            out.facts.push_back({"Nullary", {ec}, one});
            continue;
        }
        out.facts.push_back({"E", {head, ec}, one});
        out.facts.push_back({"First", {ec, Constant(vertex_constant(h, e.tail.front()))}, one});
        for (size_t k = 0; k + 1 < e.tail.size(); ++k)
            out.facts.push_back({"Next",
                                 {ec, Constant(vertex_constant(h, e.tail[k])),
                                  Constant(vertex_constant(h, e.tail[k + 1]))},
                                 one});
        out.facts.push_back({"End", {ec, Constant(vertex_constant(h, e.tail.back()))}, one});
    }
    return out;
}

WeightedHypergraph parse_andor(std::string_view text, const Semiring& ring) {
    WeightedHypergraph h(ring);
    std::map<std::string, VertexId> or_nodes;
    bool header_seen = false;
    size_t lineno = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    auto fail = [&](const std::string& m) -> void {
        throw InputError("and/or line " + std::to_string(lineno) + ": " + m);
    };
    auto or_of = [&](const std::string& id) -> VertexId {
        auto it = or_nodes.find(id);
        if (it == or_nodes.end()) fail("OR node '" + id + "' is not declared");
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
        if (word == "or") {
            std::string id;
            if (!(ls >> id)) fail("expected 'or <id>'");
            if (or_nodes.count(id)) fail("duplicate OR node '" + id + "'");
            or_nodes.emplace(id, h.add_vertex(id));
        } else if (word == "and") {
            std::string id, arrow, head, colon;
            if (!(ls >> id >> arrow >> head >> colon) || arrow != "->" || colon != ":")
                fail("expected 'and <id> -> <or-head> : <or-child>...'");
            VertexId head_v = or_of(head);
            std::vector<VertexId> children;
            std::string tok;
            while (ls >> tok) children.push_back(or_of(tok));
            if (children.empty()) {
                h.add_source(head_v, ring.one());  // a childless AND is an unannotated leaf
            } else {
                h.add_edge(head_v, std::move(children));
            }
        } else if (word == "leaf") {
            std::string id, literal;
            if (!(ls >> id >> literal)) fail("expected 'leaf <or-id> <value-literal>'");
            h.add_source(or_of(id), ring.parse_value(literal));
        } else {
            fail("unknown directive '" + word + "'");
        }
    }
    if (!header_seen) throw InputError("and/or file is missing the 'semiring <name>' header");
    return h;
}

}  // namespace provlog
