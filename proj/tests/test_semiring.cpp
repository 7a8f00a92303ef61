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

#include "provlog/semiring.hpp"

using namespace provlog;

namespace {

Value trop(int64_t n) { return Value(Rational::integer(n)); }

Value set_of(const Semiring& ring, std::initializer_list<const char*> toks) {
    std::string lit = "{";
    bool first = true;
    for (const char* t : toks) {
        if (!first) lit += ',';
        lit += t;
        first = false;
    }
    lit += '}';
    return ring.parse_value(lit);
}

}  // namespace

TEST_CASE("tropical plus is min with inf neutral") {
    Semiring t = Semiring::tropical();
    CHECK(t.plus(trop(3), trop(1)) == trop(1));
    CHECK(t.plus(trop(7), t.zero()) == trop(7));
    CHECK(t.plus(t.zero(), trop(7)) == trop(7));
}

TEST_CASE("tropical times is + with 0 neutral and inf annihilating") {
    Semiring t = Semiring::tropical();
    CHECK(t.times(trop(1), trop(0)) == trop(1));
    CHECK(t.times(trop(2), trop(5)) == trop(7));
    CHECK(t.times(trop(2), t.zero()) == t.zero());
    CHECK(t.one() == trop(0));
}

TEST_CASE("tropical rationals are exact") {
    Semiring t = Semiring::tropical();
    Value half = t.parse_value("1/2");
    Value third = t.parse_value("1/3");
    CHECK(t.format_value(t.times(half, third)) == "5/6");
    CHECK(t.times(half, half) == t.parse_value("1"));
    CHECK(t.plus(half, third) == third);
    CHECK(t.format_value(t.zero()) == "inf");
    CHECK(t.parse_value("6/4") == t.parse_value("3/2"));
}

TEST_CASE("boolean semiring") {
    Semiring b = Semiring::boolean();
    CHECK(b.times(Value(true), Value(false)) == Value(false));
    CHECK(b.plus(Value(true), Value(false)) == Value(true));
    CHECK(b.zero() == Value(false));
    CHECK(b.one() == Value(true));
}

TEST_CASE("set lattice: plus is intersection, times is union") {
    Semiring s = Semiring::set_lattice({"a", "b"});
    CHECK(s.plus(set_of(s, {"a", "b"}), set_of(s, {"a"})) == set_of(s, {"a"}));
    CHECK(s.times(set_of(s, {"a"}), set_of(s, {"b"})) == set_of(s, {"a", "b"}));
    CHECK(s.one() == set_of(s, {}));
    CHECK(s.zero() == set_of(s, {"a", "b"}));
    CHECK(s.format_value(s.one()) == "{}");
    CHECK(s.format_value(s.zero()) == "{a,b}");
}

TEST_CASE("natural order examples") {
    Semiring t = Semiring::tropical();
    CHECK(t.natural_leq(trop(1), trop(3)));
    CHECK_FALSE(t.natural_leq(trop(3), trop(1)));

    Semiring s = Semiring::set_lattice({"a", "b"});
    CHECK(s.natural_leq(set_of(s, {"a"}), set_of(s, {"a", "b"})));

    // 1̄ ≤ a ≤ 0̄ on every 0-closed builtin, sampled
    for (const Semiring& ring : {Semiring::tropical(), Semiring::boolean(), Semiring::set_lattice({"x", "y", "z"}),
                                 Semiring::chain_product({3, 2})}) {
        Rng rng(7);
        for (int i = 0; i < 200; ++i) {
            Value a = ring.sample(rng);
            CHECK(ring.natural_leq(ring.one(), a));
            CHECK(ring.natural_leq(a, ring.zero()));
        }
    }
}

TEST_CASE("natural order rejects non-idempotent semirings") {
    Semiring n = Semiring::natural();
    CHECK_THROWS_AS(n.natural_leq(Value(Nat{1}), Value(Nat{2})), UsageError);
}

TEST_CASE("mixed-semiring operands are usage errors") {
    Semiring t = Semiring::tropical();
    CHECK_THROWS_AS(t.plus(trop(1), Value(true)), UsageError);
    CHECK_THROWS_AS(t.times(Value(true), trop(1)), UsageError);

    // a set value from a larger universe is not a member of a smaller one
    Semiring small = Semiring::set_lattice({"a"});
    Semiring big = Semiring::set_lattice({"a", "b"});
    CHECK_THROWS_AS(small.plus(big.zero(), small.one()), UsageError);
}

TEST_CASE("check_properties passes for every builtin") {
    for (const Semiring& ring : {Semiring::tropical(), Semiring::boolean(), Semiring::set_lattice({"a", "b", "c"}),
                                 Semiring::chain_product({3, 2}), Semiring::natural()}) {
        PropertyReport report = check_properties(ring, 1000, 42);
        for (const auto& law : report.laws) {
            INFO(ring.name(), ": ", law.law, " cex: ", law.counterexample);
            CHECK(law.passed);
        }
    }
}

TEST_CASE("misdeclared zero_closed on (N,+,x,0,1) fails superiority with a counterexample") {
    Semiring n = Semiring::natural();
    n.flags.zero_closed = true;
    n.flags.idempotent = true;  // also a lie, gets its own failure
    PropertyReport report = check_properties(n, 1000, 42);
    CHECK_FALSE(report.all_passed());
    bool superiority_failed = false, zero_closed_failed = false;
    for (const auto& law : report.laws) {
        if (law.law == "superiority" && !law.passed) {
            superiority_failed = true;
            CHECK_FALSE(law.counterexample.empty());
        }
        if (law.law == "zero-closed" && !law.passed) zero_closed_failed = true;
    }
    CHECK(superiority_failed);
    CHECK(zero_closed_failed);
}

TEST_CASE("boolean total order law passes") {
    PropertyReport report = check_properties(Semiring::boolean(), 1000, 1);
    bool found = false;
    for (const auto& law : report.laws)
        if (law.law == "totally-ordered") {
            found = true;
            CHECK(law.passed);
        }
    CHECK(found);
}

TEST_CASE("monotonicity of plus and times w.r.t. the natural order") {
    for (const Semiring& ring : {Semiring::tropical(), Semiring::boolean(), Semiring::set_lattice({"p", "q"}),
                                 Semiring::chain_product({4})}) {
        Rng rng(99);
        for (int i = 0; i < 500; ++i) {
            Value a = ring.sample(rng), b = ring.sample(rng), c = ring.sample(rng);
            if (!ring.natural_leq(a, b)) continue;
            CHECK(ring.natural_leq(ring.plus(a, c), ring.plus(b, c)));
            CHECK(ring.natural_leq(ring.times(a, c), ring.times(b, c)));
        }
    }
}

TEST_CASE("decompose/recompose on the set lattice") {
    Semiring s = Semiring::set_lattice({"a", "b"});
    REQUIRE(s.lattice_dims() == size_t{2});

    auto coords = s.decompose(set_of(s, {"a"}));
    REQUIRE(coords.size() == 2);
    CHECK(coords[0] == Value(ChainVec{{1}}));  // a present
    CHECK(coords[1] == Value(ChainVec{{0}}));  // b absent
    CHECK(s.recompose(coords) == set_of(s, {"a"}));

    auto ones = s.decompose(s.one());
    for (size_t i = 0; i < 2; ++i) CHECK(ones[i] == s.dimension_semiring(i).one());

    std::vector<Value> zeros;
    for (size_t i = 0; i < 2; ++i) zeros.push_back(s.dimension_semiring(i).zero());
    CHECK(s.recompose(zeros) == s.zero());
}

TEST_CASE("decompose on explicit chain products is the identity per dimension") {
    Semiring c = Semiring::chain_product({3, 2});
    Value v = c.parse_value("(2,1)");
    auto coords = c.decompose(v);
    REQUIRE(coords.size() == 2);
    CHECK(coords[0] == Value(ChainVec{{2}}));
    CHECK(coords[1] == Value(ChainVec{{1}}));
    CHECK(c.recompose(coords) == v);
}

TEST_CASE("recompose arity mismatch is a usage error") {
    Semiring s = Semiring::set_lattice({"a", "b"});
    std::vector<Value> one_coord{Value(ChainVec{{1}})};
    CHECK_THROWS_AS(s.recompose(one_coord), UsageError);
}

TEST_CASE("decompose is unsupported outside lattices") {
    Semiring t = Semiring::tropical();
    CHECK_THROWS_AS(t.decompose(trop(1)), UsageError);
    CHECK_FALSE(t.lattice_dims().has_value());
}

TEST_CASE("round-trip and homomorphism over whole small lattices") {
    // exhaustive over 2^|X| values for |X| up to 4
    for (size_t n = 1; n <= 4; ++n) {
        std::vector<std::string> universe;
        for (size_t i = 0; i < n; ++i) universe.push_back(std::string(1, static_cast<char>('a' + i)));
        Semiring s = Semiring::set_lattice(universe);
        std::vector<Value> all;
        for (uint64_t bits = 0; bits < (1ULL << n); ++bits) all.push_back(Value(SetBits{bits}));
        for (const Value& v : all) CHECK(s.recompose(s.decompose(v)) == v);
        for (const Value& a : all) {
            for (const Value& b : all) {
                auto da = s.decompose(a), db = s.decompose(b);
                auto dsum = s.decompose(s.plus(a, b));
                auto dprod = s.decompose(s.times(a, b));
                for (size_t i = 0; i < n; ++i) {
                    Semiring dim = s.dimension_semiring(i);
                    CHECK(dim.plus(da[i], db[i]) == dsum[i]);
                    CHECK(dim.times(da[i], db[i]) == dprod[i]);
                }
            }
        }
    }
}

TEST_CASE("value literal grammar round-trips") {
    Semiring t = Semiring::tropical();
    for (const char* lit : {"0", "42", "3/2", "inf"}) CHECK(t.format_value(t.parse_value(lit)) == lit);
    CHECK_THROWS_AS(t.parse_value("-1"), InputError);
    CHECK_THROWS_AS(t.parse_value("abc"), InputError);

    Semiring b = Semiring::boolean();
    for (const char* lit : {"true", "false"}) CHECK(b.format_value(b.parse_value(lit)) == lit);

    Semiring s = Semiring::set_lattice({"a", "b", "c"});
    for (const char* lit : {"{}", "{a}", "{a,c}", "{a,b,c}"}) CHECK(s.format_value(s.parse_value(lit)) == lit);
    CHECK(s.parse_value("{c,a}") == s.parse_value("{a,c}"));
    CHECK_THROWS_AS(s.parse_value("{d}"), InputError);

    Semiring c = Semiring::chain_product({3, 2});
    for (const char* lit : {"(0,0)", "(2,1)", "(1,0)"}) CHECK(c.format_value(c.parse_value(lit)) == lit);
    CHECK_THROWS_AS(c.parse_value("(3,0)"), InputError);
    CHECK_THROWS_AS(c.parse_value("(1)"), InputError);
}

TEST_CASE("dimension semirings are 0-closed totally ordered chains") {
    Semiring s = Semiring::set_lattice({"a", "b", "c"});
    for (size_t i = 0; i < 3; ++i) {
        Semiring dim = s.dimension_semiring(i);
        CHECK(dim.flags.zero_closed);
        CHECK(dim.flags.totally_ordered);
        CHECK(dim.flags.multiplicatively_idempotent);
        PropertyReport report = check_properties(dim, 300, 5);
        CHECK(report.all_passed());
    }
}
