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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "provlog/parser.hpp"
#include "support/generators.hpp"

using namespace provlog;
using namespace provlog::testsupport;

TEST_CASE("transitive closure program parses to 1 EDB, 1 IDB, 2 rules") {
    Program p = parse_program(kTcNumberProgram);
    REQUIRE(p.decls.size() == 2);
    CHECK(p.decls[0].name == "edge");
    CHECK(p.decls[0].arity() == 2);
    CHECK(p.decls[0].has_prov);
    CHECK(p.decls[0].attrs[0].type == AttrType::Number);
    CHECK(p.inputs == std::set<std::string>{"edge"});
    CHECK(p.outputs == std::set<std::string>{"path"});
    CHECK(p.is_edb("edge"));
    CHECK(p.is_idb("path"));
    REQUIRE(p.rules.size() == 2);
    CHECK(p.rules[0].head.relation == "path");
    CHECK(p.rules[0].body.size() == 1);
    CHECK(p.rules[1].body.size() == 2);
    CHECK(p.rules[1].body[0].relation == "path");
    CHECK(p.rules[1].body[1].relation == "edge");
}

TEST_CASE("empty input parses to an empty program") {
    Program p = parse_program("");
    CHECK(p.decls.empty());
    CHECK(p.rules.empty());
    p = parse_program("// only a comment\n");
    CHECK(p.decls.empty());
}

TEST_CASE("range restriction violation names the variable") {
    const char* text =
            ".decl p(a:number)\n"
            ".decl q(a:number)\n"
            ".input p\n"
            "q(x) :- p(y).\n";
    try {
        parse_program(text);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("'x'") != std::string::npos);
    }
}

TEST_CASE("duplicate declarations, undeclared relations and arity mismatches are rejected") {
    CHECK_THROWS_AS(parse_program(".decl p(a:number)\n.decl p(a:number)\n"), ParseError);
    CHECK_THROWS_AS(parse_program(".decl p(a:number)\nq(x) :- p(x).\n"), ParseError);
    CHECK_THROWS_AS(parse_program(".input p\n"), ParseError);
    CHECK_THROWS_AS(parse_program(".decl p(a:number)\n.decl q(a:number)\nq(x) :- p(x, x).\n"), ParseError);
}

TEST_CASE("facts are rejected in program files") {
    const char* text = ".decl p(a:number)\np(1).\n";
    CHECK_THROWS_AS(parse_program(text), ParseError);
}

TEST_CASE("syntax errors carry a position") {
    try {
        parse_program(".decl p(a:number)\n.decl q(b:zzz)\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.col() > 1);
    }
}

TEST_CASE("constants in rules parse and print back") {
    const char* text =
            ".decl p(a:symbol, b:number)\n"
            ".decl q(a:symbol)\n"
            ".input p\n"
            "q(x) :- p(x, 3).\n"
            "q(x) :- p(x, -1), p(\"Paris\", y).\n";
    Program p = parse_program(text);
    REQUIRE(p.rules.size() == 2);
    CHECK(p.rules[0].body[0].terms[1] == Term::number(3));
    CHECK(p.rules[1].body[1].terms[0] == Term::symbol("Paris"));
    CHECK(parse_program(format_program(p)) == p);
}

TEST_CASE("parse(format(program)) is the identity") {
    Program tc = parse_program(kTcNumberProgram);
    CHECK(parse_program(format_program(tc)) == tc);

    Rng rng(12345);
    for (int i = 0; i < 50; ++i) {
        Instance inst = random_program_instance(rng, tropical_weight);
        CHECK(parse_program(format_program(inst.program)) == inst.program);
    }
}

TEST_CASE("load_facts parses the Paris EDB") {
    Program p = parse_program(kTcSymbolProgram);
    Semiring t = Semiring::tropical();
    std::istringstream in("Paris\tLondon\t3\nParis\tLille\t1\nLille\tLondon\t0\n");
    auto facts = load_facts(in, *p.find_decl("edge"), t);
    REQUIRE(facts.size() == 3);
    CHECK(facts[0].args == std::vector<Constant>{Constant("Paris"), Constant("London")});
    CHECK(facts[0].annotation == Value(Rational::integer(3)));
    CHECK(facts[1].annotation == Value(Rational::integer(1)));
    CHECK(facts[2].annotation == Value(Rational::integer(0)));
}

TEST_CASE("empty fact file loads to an empty list") {
    Program p = parse_program(kTcSymbolProgram);
    std::istringstream in("");
    CHECK(load_facts(in, *p.find_decl("edge"), Semiring::tropical()).empty());
}

TEST_CASE("duplicate fact rows combine with plus") {
    Program p = parse_program(kTcSymbolProgram);
    std::istringstream in("a\tb\t5\na\tb\t2\n");
    auto facts = load_facts(in, *p.find_decl("edge"), Semiring::tropical());
    REQUIRE(facts.size() == 1);
    CHECK(facts[0].annotation == Value(Rational::integer(2)));
}

TEST_CASE("fact errors report the row number") {
    Program p = parse_program(kTcSymbolProgram);
    Semiring t = Semiring::tropical();
    {
        std::istringstream in("a\tb\t1\na\tb\tc\td\n");
        try {
            load_facts(in, *p.find_decl("edge"), t, "edge.facts");
            FAIL("expected an input error");
        } catch (const InputError& e) {
            CHECK(std::string(e.what()).find("row 2") != std::string::npos);
        }
    }
    {
        std::istringstream in("a\tb\tnot-a-weight\n");
        CHECK_THROWS_AS(load_facts(in, *p.find_decl("edge"), t), InputError);
    }
    {
        Program np = parse_program(kTcNumberProgram);
        std::istringstream in("1\tx\t3\n");
        CHECK_THROWS_AS(load_facts(in, *np.find_decl("edge"), t), InputError);
    }
}

TEST_CASE("a missing provenance column defaults to one") {
    Program p = parse_program(kTcSymbolProgram);
    std::istringstream in("a\tb\n");
    auto facts = load_facts(in, *p.find_decl("edge"), Semiring::tropical());
    REQUIRE(facts.size() == 1);
    CHECK(facts[0].annotation == Semiring::tropical().one());
}

TEST_CASE("load_facts is insensitive to row order") {
    Program p = parse_program(kTcSymbolProgram);
    Semiring t = Semiring::tropical();
    const char* rows[] = {"a\tb\t5", "a\tb\t2", "b\tc\t7", "a\tc\t0"};
    std::vector<size_t> perm{0, 1, 2, 3};
    std::map<std::vector<Constant>, Value> reference;
    bool first = true;
    do {
        std::string text;
        for (size_t i : perm) text += std::string(rows[i]) + "\n";
        std::istringstream in(text);
        auto facts = load_facts(in, *p.find_decl("edge"), t);
        std::map<std::vector<Constant>, Value> got;
        for (const auto& f : facts) got.emplace(f.args, f.annotation);
        if (first) {
            reference = got;
            first = false;
        } else {
            CHECK(got == reference);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("validate flags the spec'd violations") {
    Program tc = parse_program(kTcNumberProgram);
    CHECK(validate(tc).empty());

    SUBCASE("EDB relation in a rule head") {
        Program p = tc;
        Rule r;
        r.head = {"edge", {Term::variable("x"), Term::variable("y")}};
        r.body.push_back({"path", {Term::variable("x"), Term::variable("y")}});
        p.rules.push_back(r);
        auto diags = validate(p);
        REQUIRE(diags.size() == 1);
        CHECK(diags[0].severity == Diagnostic::Severity::Error);
        CHECK(diags[0].message.find("EDB relation") != std::string::npos);
    }

    SUBCASE("output relation never derived is a warning") {
        Program p = tc;
        p.decls.push_back({"orphan", {{"a", AttrType::Number}}, false});
        p.outputs.insert("orphan");
        auto diags = validate(p);
        REQUIRE(diags.size() == 1);
        CHECK(diags[0].severity == Diagnostic::Severity::Warning);
        CHECK(diags[0].message.find("orphan") != std::string::npos);
    }

    SUBCASE("derivability is transitive over the precedence graph") {
        // t is derived from an underivable relation, so it is flagged too
        Program p;
        p.decls.push_back({"e", {{"a", AttrType::Number}}, false});
        p.decls.push_back({"u", {{"a", AttrType::Number}}, false});
        p.decls.push_back({"t", {{"a", AttrType::Number}}, false});
        p.inputs.insert("e");
        p.outputs.insert("t");
        p.rules.push_back({{"t", {Term::variable("x")}}, {{"u", {Term::variable("x")}}}});
        auto diags = validate(p);
        REQUIRE(diags.size() == 1);
        CHECK(diags[0].severity == Diagnostic::Severity::Warning);
    }
}

TEST_CASE("write_facts round-trips through load_facts") {
    Program p = parse_program(kTcSymbolProgram);
    Semiring t = Semiring::tropical();
    auto facts = paris_edb();
    std::ostringstream out;
    write_facts(out, facts, *p.find_decl("edge"), t);
    std::istringstream in(out.str());
    auto again = load_facts(in, *p.find_decl("edge"), t);
    REQUIRE(again.size() == facts.size());
    for (size_t i = 0; i < facts.size(); ++i) {
        CHECK(again[i].args == facts[i].args);
        CHECK(again[i].annotation == facts[i].annotation);
    }
}
