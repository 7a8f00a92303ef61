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
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "provlog/semiring.hpp"

namespace provlog {

enum class AttrType { Symbol, Number };

struct Attribute {
    std::string name;
    AttrType type = AttrType::Symbol;
    bool operator==(const Attribute&) const = default;
};

struct RelationDecl {
    std::string name;
    std::vector<Attribute> attrs;
    bool has_prov = false;  // declared with a trailing @prov attribute
    bool operator==(const RelationDecl&) const = default;

    size_t arity() const { return attrs.size(); }
};

/// A constant: number or symbol. Numbers order before symbols.
using Constant = std::variant<int64_t, std::string>;

std::string format_constant(const Constant& c);

struct Term {
    enum class Kind { Variable, Constant };
    Kind kind = Kind::Variable;
    std::string var;  // when Kind::Variable
    Constant value;   // when Kind::Constant

    static Term variable(std::string name) { return {Kind::Variable, std::move(name), {}}; }
    static Term number(int64_t n) { return {Kind::Constant, {}, Constant(n)}; }
    static Term symbol(std::string s) { return {Kind::Constant, {}, Constant(std::move(s))}; }

    bool is_var() const { return kind == Kind::Variable; }
    bool operator==(const Term&) const = default;
};

struct Atom {
    std::string relation;
    std::vector<Term> terms;
    bool operator==(const Atom&) const = default;
};

struct Rule {
    Atom head;
    std::vector<Atom> body;
    bool operator==(const Rule&) const = default;
};

struct Program {
    std::vector<RelationDecl> decls;
    std::set<std::string> inputs;   // EDB relation names
    std::set<std::string> outputs;
    std::vector<Rule> rules;
    bool operator==(const Program&) const = default;

    const RelationDecl* find_decl(const std::string& name) const {
        for (const auto& d : decls)
            if (d.name == name) return &d;
        return nullptr;
    }
    bool is_edb(const std::string& name) const { return inputs.count(name) != 0; }
    bool is_idb(const std::string& name) const { return find_decl(name) && !is_edb(name); }

    std::vector<std::string> idb_relations() const {
        std::vector<std::string> out;
        for (const auto& d : decls)
            if (!is_edb(d.name)) out.push_back(d.name);
        return out;
    }
};

/// A ground extensional fact carrying its semiring annotation.
struct AnnotatedFact {
    std::string relation;
    std::vector<Constant> args;
    Value annotation;
};

struct Diagnostic {
    enum class Severity { Error, Warning };
    Severity severity = Severity::Error;
    std::string message;
};

std::string format_term(const Term& t);
std::string format_atom(const Atom& a);
std::string format_rule(const Rule& r);
std::string format_program(const Program& p);

}  // namespace provlog
