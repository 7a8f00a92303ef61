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

#include "provlog/semiring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace provlog {

namespace {

int64_t narrow(__int128 x, const char* what) {
    if (x > INT64_MAX || x < INT64_MIN) throw InternalError(std::string("rational overflow in ") + what);
    return static_cast<int64_t>(x);
}

}  // namespace

Rational Rational::integer(int64_t n) {
    if (n < 0) throw InputError("tropical values must be non-negative");
    return Rational(n, 1);
}

Rational Rational::ratio(int64_t num, int64_t den) {
    if (den <= 0 || num < 0) throw InputError("tropical rationals must be non-negative with positive denominator");
    int64_t g = std::gcd(num, den);
    if (g == 0) g = 1;
    return Rational(num / g, den / g);
}

Rational Rational::plus(const Rational& o) const {
    if (is_infinite() || o.is_infinite()) return infinity();
    __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
    __int128 d = static_cast<__int128>(den_) * o.den_;
    // normalize in 128-bit before narrowing
    __int128 a = n < 0 ? -n : n, b = d;
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    if (a == 0) a = 1;
    return Rational(narrow(n / a, "plus"), narrow(d / a, "plus"));
}

bool Rational::less(const Rational& o) const {
    if (is_infinite()) return false;
    if (o.is_infinite()) return true;
    return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
}

Rational Rational::min(const Rational& o) const { return less(o) ? *this : o; }

std::string Rational::str() const {
    if (is_infinite()) return "inf";
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::optional<Rational> Rational::parse(std::string_view text) {
    if (text == "inf") return infinity();
    if (text.empty()) return std::nullopt;
    auto parse_int = [](std::string_view s) -> std::optional<int64_t> {
        if (s.empty()) return std::nullopt;
        int64_t v = 0;
        for (char c : s) {
            if (c < '0' || c > '9') return std::nullopt;
            if (v > (INT64_MAX - (c - '0')) / 10) return std::nullopt;
            v = v * 10 + (c - '0');
        }
        return v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        auto v = parse_int(text);
        if (!v) return std::nullopt;
        return integer(*v);
    }
    auto num = parse_int(text.substr(0, slash));
    auto den = parse_int(text.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    return ratio(*num, *den);
}

Semiring Semiring::tropical() {
    Semiring s(SemiringKind::Tropical, "tropical");
    s.flags = {.commutative = true, .idempotent = true, .zero_closed = true,
               .totally_ordered = true, .multiplicatively_idempotent = false};
    s.k_closed = 0;
    return s;
}

Semiring Semiring::boolean() {
    Semiring s(SemiringKind::Boolean, "boolean");
    s.flags = {.commutative = true, .idempotent = true, .zero_closed = true,
               .totally_ordered = true, .multiplicatively_idempotent = true};
    s.k_closed = 0;
    return s;
}

Semiring Semiring::set_lattice(std::vector<std::string> universe) {
    if (universe.empty()) throw UsageError("set lattice requires a non-empty universe");
    if (universe.size() > 64) throw UsageError("set lattice universe is limited to 64 tokens");
    for (size_t i = 0; i < universe.size(); ++i)
        for (size_t j = i + 1; j < universe.size(); ++j)
            if (universe[i] == universe[j]) throw UsageError("duplicate universe token '" + universe[i] + "'");
    Semiring s(SemiringKind::SetLattice, "set-lattice");
    s.universe_ = std::move(universe);
    s.flags = {.commutative = true, .idempotent = true, .zero_closed = true,
               .totally_ordered = s.universe_.size() == 1, .multiplicatively_idempotent = true};
    s.k_closed = 0;
    return s;
}

Semiring Semiring::chain_product(std::vector<uint32_t> lengths) {
    if (lengths.empty()) throw UsageError("chain product requires at least one chain");
    for (uint32_t l : lengths)
        if (l == 0) throw UsageError("chain lengths must be positive");
    Semiring s(SemiringKind::ChainProduct, "chain-product");
    s.chains_ = std::move(lengths);
    s.flags = {.commutative = true, .idempotent = true, .zero_closed = true,
               .totally_ordered = s.chains_.size() == 1, .multiplicatively_idempotent = true};
    s.k_closed = 0;
    return s;
}

Semiring Semiring::natural() {
    Semiring s(SemiringKind::Natural, "natural");
    s.flags = {.commutative = true, .idempotent = false, .zero_closed = false,
               .totally_ordered = false, .multiplicatively_idempotent = false};
    return s;
}

uint64_t Semiring::full_mask() const {
    size_t n = universe_.size();
    return n == 64 ? ~0ULL : ((1ULL << n) - 1);
}

Value Semiring::zero() const {
    switch (kind_) {
        case SemiringKind::Tropical: return Value(Rational::infinity());
        case SemiringKind::Boolean: return Value(false);
        case SemiringKind::SetLattice: return Value(SetBits{full_mask()});
        case SemiringKind::ChainProduct: {
            ChainVec v;
            for (uint32_t l : chains_) v.pos.push_back(l - 1);
            return Value(std::move(v));
        }
        case SemiringKind::Natural: return Value(Nat{0});
    }
    throw InternalError("unreachable semiring kind");
}

Value Semiring::one() const {
    switch (kind_) {
        case SemiringKind::Tropical: return Value(Rational::integer(0));
        case SemiringKind::Boolean: return Value(true);
        case SemiringKind::SetLattice: return Value(SetBits{0});
        case SemiringKind::ChainProduct: {
            ChainVec v;
            v.pos.assign(chains_.size(), 0);
            return Value(std::move(v));
        }
        case SemiringKind::Natural: return Value(Nat{1});
    }
    throw InternalError("unreachable semiring kind");
}

void Semiring::require_member(const Value& v, const char* op) const {
    auto fail = [&] {
        throw UsageError(std::string(op) + ": operand is not a value of semiring '" + name_ + "'");
    };
    switch (kind_) {
        case SemiringKind::Tropical:
            if (!v.holds<Rational>()) fail();
            break;
        case SemiringKind::Boolean:
            if (!v.holds<bool>()) fail();
            break;
        case SemiringKind::SetLattice:
            if (!v.holds<SetBits>() || (v.get<SetBits>().bits & ~full_mask()) != 0) fail();
            break;
        case SemiringKind::ChainProduct: {
            if (!v.holds<ChainVec>()) fail();
            const auto& pos = v.get<ChainVec>().pos;
            if (pos.size() != chains_.size()) fail();
            for (size_t i = 0; i < pos.size(); ++i)
                if (pos[i] >= chains_[i]) fail();
            break;
        }
        case SemiringKind::Natural:
            if (!v.holds<Nat>()) fail();
            break;
    }
}

Value Semiring::plus(const Value& a, const Value& b) const {
    require_member(a, "plus");
    require_member(b, "plus");
    switch (kind_) {
        case SemiringKind::Tropical: return Value(a.get<Rational>().min(b.get<Rational>()));
        case SemiringKind::Boolean: return Value(a.get<bool>() || b.get<bool>());
        case SemiringKind::SetLattice: return Value(SetBits{a.get<SetBits>().bits & b.get<SetBits>().bits});
        case SemiringKind::ChainProduct: {
            ChainVec v = a.get<ChainVec>();
            const auto& o = b.get<ChainVec>().pos;
            for (size_t i = 0; i < v.pos.size(); ++i) v.pos[i] = std::min(v.pos[i], o[i]);
            return Value(std::move(v));
        }
        case SemiringKind::Natural: {
            uint64_t x = a.get<Nat>().n, y = b.get<Nat>().n;
            if (x > UINT64_MAX - y) throw InternalError("natural semiring overflow in plus");
            return Value(Nat{x + y});
        }
    }
    throw InternalError("unreachable semiring kind");
}

Value Semiring::times(const Value& a, const Value& b) const {
    require_member(a, "times");
    require_member(b, "times");
    switch (kind_) {
        case SemiringKind::Tropical: return Value(a.get<Rational>().plus(b.get<Rational>()));
        case SemiringKind::Boolean: return Value(a.get<bool>() && b.get<bool>());
        case SemiringKind::SetLattice: return Value(SetBits{a.get<SetBits>().bits | b.get<SetBits>().bits});
        case SemiringKind::ChainProduct: {
            ChainVec v = a.get<ChainVec>();
            const auto& o = b.get<ChainVec>().pos;
            for (size_t i = 0; i < v.pos.size(); ++i) v.pos[i] = std::max(v.pos[i], o[i]);
            return Value(std::move(v));
        }
        case SemiringKind::Natural: {
            uint64_t x = a.get<Nat>().n, y = b.get<Nat>().n;
            if (y != 0 && x > UINT64_MAX / y) throw InternalError("natural semiring overflow in times");
            return Value(Nat{x * y});
        }
    }
    throw InternalError("unreachable semiring kind");
}

bool Semiring::natural_leq(const Value& a, const Value& b) const {
    if (!flags.idempotent)
        throw UsageError("natural order is undefined for non-idempotent semiring '" + name_ + "'");
    return plus(a, b) == a;
}

bool Semiring::natural_less(const Value& a, const Value& b) const {
    return a != b && natural_leq(a, b);
}

std::string Semiring::format_value(const Value& v) const {
    require_member(v, "format_value");
    switch (kind_) {
        case SemiringKind::Tropical: return v.get<Rational>().str();
        case SemiringKind::Boolean: return v.get<bool>() ? "true" : "false";
        case SemiringKind::SetLattice: {
            std::string out = "{";
            bool first = true;
            uint64_t bits = v.get<SetBits>().bits;
            for (size_t i = 0; i < universe_.size(); ++i) {
                if (bits & (1ULL << i)) {
                    if (!first) out += ',';
                    out += universe_[i];
                    first = false;
                }
            }
            out += '}';
            return out;
        }
        case SemiringKind::ChainProduct: {
            std::string out = "(";
            const auto& pos = v.get<ChainVec>().pos;
            for (size_t i = 0; i < pos.size(); ++i) {
                if (i) out += ',';
                out += std::to_string(pos[i]);
            }
            out += ')';
            return out;
        }
        case SemiringKind::Natural: return std::to_string(v.get<Nat>().n);
    }
    throw InternalError("unreachable semiring kind");
}

Value Semiring::parse_value(std::string_view text) const {
    auto bad = [&]() -> Value {
        throw InputError("cannot parse '" + std::string(text) + "' as a " + name_ + " value");
    };
    switch (kind_) {
        case SemiringKind::Tropical: {
            auto r = Rational::parse(text);
            return r ? Value(*r) : bad();
        }
        case SemiringKind::Boolean: {
            if (text == "true") return Value(true);
            if (text == "false") return Value(false);
            return bad();
        }
        case SemiringKind::SetLattice: {
            if (text.size() < 2 || text.front() != '{' || text.back() != '}') return bad();
            std::string_view inner = text.substr(1, text.size() - 2);
            SetBits s;
            if (inner.empty()) return Value(s);
            size_t start = 0;
            while (true) {
                size_t comma = inner.find(',', start);
                std::string_view tok =
                        comma == std::string_view::npos ? inner.substr(start) : inner.substr(start, comma - start);
                auto it = std::find(universe_.begin(), universe_.end(), std::string(tok));
                if (it == universe_.end()) return bad();
                s.bits |= 1ULL << (it - universe_.begin());
                if (comma == std::string_view::npos) break;
                start = comma + 1;
            }
            return Value(s);
        }
        case SemiringKind::ChainProduct: {
            if (text.size() < 2 || text.front() != '(' || text.back() != ')') return bad();
            std::string_view inner = text.substr(1, text.size() - 2);
            ChainVec v;
            size_t start = 0;
            while (start <= inner.size()) {
                size_t comma = inner.find(',', start);
                std::string_view tok =
                        comma == std::string_view::npos ? inner.substr(start) : inner.substr(start, comma - start);
                if (tok.empty()) return bad();
                uint64_t pos = 0;
                for (char c : tok) {
                    if (c < '0' || c > '9') return bad();
                    pos = pos * 10 + (c - '0');
                    if (pos > UINT32_MAX) return bad();
                }
                v.pos.push_back(static_cast<uint32_t>(pos));
                if (comma == std::string_view::npos) break;
                start = comma + 1;
            }
            if (v.pos.size() != chains_.size()) return bad();
            for (size_t i = 0; i < v.pos.size(); ++i)
                if (v.pos[i] >= chains_[i]) return bad();
            return Value(std::move(v));
        }
        case SemiringKind::Natural: {
            uint64_t n = 0;
            if (text.empty()) return bad();
            for (char c : text) {
                if (c < '0' || c > '9') return bad();
                n = n * 10 + (c - '0');
            }
            return Value(Nat{n});
        }
    }
    throw InternalError("unreachable semiring kind");
}

Value Semiring::sample(Rng& rng) const {
    switch (kind_) {
        case SemiringKind::Tropical: {
            // integers 0..100 plus ∞
            uint64_t r = rng.below(102);
            return r == 101 ? Value(Rational::infinity()) : Value(Rational::integer(static_cast<int64_t>(r)));
        }
        case SemiringKind::Boolean: return Value(rng.below(2) == 1);
        case SemiringKind::SetLattice: return Value(SetBits{rng.next() & full_mask()});
        case SemiringKind::ChainProduct: {
            ChainVec v;
            for (uint32_t l : chains_) v.pos.push_back(static_cast<uint32_t>(rng.below(l)));
            return Value(std::move(v));
        }
        case SemiringKind::Natural: return Value(Nat{rng.below(21)});
    }
    throw InternalError("unreachable semiring kind");
}

std::optional<size_t> Semiring::lattice_dims() const {
    switch (kind_) {
        case SemiringKind::SetLattice: return universe_.size();
        case SemiringKind::ChainProduct: return chains_.size();
        default: return std::nullopt;
    }
}

Semiring Semiring::dimension_semiring(size_t i) const {
    auto dims = lattice_dims();
    if (!dims) throw UsageError("semiring '" + name_ + "' has no lattice decomposition");
    if (i >= *dims) throw UsageError("decomposition dimension out of range");
    if (kind_ == SemiringKind::SetLattice) return chain_product({2});
    return chain_product({chains_[i]});
}

std::vector<Value> Semiring::decompose(const Value& v) const {
    auto dims = lattice_dims();
    if (!dims) throw UsageError("semiring '" + name_ + "' has no lattice decomposition");
    require_member(v, "decompose");
    std::vector<Value> out;
    out.reserve(*dims);
    if (kind_ == SemiringKind::SetLattice) {
        uint64_t bits = v.get<SetBits>().bits;
        for (size_t i = 0; i < *dims; ++i)
            out.push_back(Value(ChainVec{{(bits >> i) & 1 ? 1u : 0u}}));
    } else {
        const auto& pos = v.get<ChainVec>().pos;
        for (size_t i = 0; i < *dims; ++i)
            out.push_back(Value(ChainVec{{pos[i]}}));
    }
    return out;
}

Value Semiring::recompose(std::span<const Value> coords) const {
    auto dims = lattice_dims();
    if (!dims) throw UsageError("semiring '" + name_ + "' has no lattice decomposition");
    if (coords.size() != *dims)
        throw UsageError("recompose expects " + std::to_string(*dims) + " coordinates, got " +
                         std::to_string(coords.size()));
    if (kind_ == SemiringKind::SetLattice) {
        SetBits s;
        for (size_t i = 0; i < *dims; ++i) {
            dimension_semiring(i).require_member(coords[i], "recompose");
            if (coords[i].get<ChainVec>().pos[0] != 0) s.bits |= 1ULL << i;
        }
        return Value(s);
    }
    ChainVec v;
    for (size_t i = 0; i < *dims; ++i) {
        dimension_semiring(i).require_member(coords[i], "recompose");
        v.pos.push_back(coords[i].get<ChainVec>().pos[0]);
    }
    return Value(std::move(v));
}

namespace {

struct LawChecker {
    const Semiring& ring;
    Rng rng;
    size_t samples;
    PropertyReport report;

    std::string show(std::initializer_list<std::pair<const char*, const Value*>> vals) {
        std::ostringstream os;
        bool first = true;
        for (auto& [n, v] : vals) {
            if (!first) os << ", ";
            os << n << "=" << ring.format_value(*v);
            first = false;
        }
        return os.str();
    }

    // Runs `law` on `samples` random tuples; records the first counterexample.
    template <class F>
    void check(const std::string& name, size_t arity, F&& law) {
        LawResult result{name, true, ""};
        for (size_t s = 0; s < samples; ++s) {
            Value a = ring.sample(rng), b = ring.sample(rng), c = ring.sample(rng);
            std::string cex;
            bool ok = arity == 1   ? law(a, a, a, cex)
                      : arity == 2 ? law(a, b, b, cex)
                                   : law(a, b, c, cex);
            if (!ok) {
                result.passed = false;
                result.counterexample = cex;
                break;
            }
        }
        report.laws.push_back(std::move(result));
    }
};

}  // namespace

PropertyReport check_properties(const Semiring& ring, size_t sample_count, uint64_t seed) {
    LawChecker lc{ring, Rng(seed), sample_count, {}};
    const Value zero = ring.zero(), one = ring.one();

    lc.check("plus-associative", 3, [&](const Value& a, const Value& b, const Value& c, std::string& cex) {
        bool ok = ring.plus(ring.plus(a, b), c) == ring.plus(a, ring.plus(b, c));
        if (!ok) cex = lc.show({{"a", &a}, {"b", &b}, {"c", &c}});
        return ok;
    });
    lc.check("plus-commutative", 2, [&](const Value& a, const Value& b, const Value&, std::string& cex) {
        bool ok = ring.plus(a, b) == ring.plus(b, a);
        if (!ok) cex = lc.show({{"a", &a}, {"b", &b}});
        return ok;
    });
    lc.check("plus-zero-neutral", 1, [&](const Value& a, const Value&, const Value&, std::string& cex) {
        bool ok = ring.plus(a, zero) == a && ring.plus(zero, a) == a;
        if (!ok) cex = lc.show({{"a", &a}});
        return ok;
    });
    lc.check("times-associative", 3, [&](const Value& a, const Value& b, const Value& c, std::string& cex) {
        bool ok = ring.times(ring.times(a, b), c) == ring.times(a, ring.times(b, c));
        if (!ok) cex = lc.show({{"a", &a}, {"b", &b}, {"c", &c}});
        return ok;
    });
    lc.check("times-one-neutral", 1, [&](const Value& a, const Value&, const Value&, std::string& cex) {
        bool ok = ring.times(a, one) == a && ring.times(one, a) == a;
        if (!ok) cex = lc.show({{"a", &a}});
        return ok;
    });
    lc.check("times-zero-annihilates", 1, [&](const Value& a, const Value&, const Value&, std::string& cex) {
        bool ok = ring.times(a, zero) == zero && ring.times(zero, a) == zero;
        if (!ok) cex = lc.show({{"a", &a}});
        return ok;
    });
    lc.check("distributive", 3, [&](const Value& a, const Value& b, const Value& c, std::string& cex) {
        bool ok = ring.times(a, ring.plus(b, c)) == ring.plus(ring.times(a, b), ring.times(a, c)) &&
                  ring.times(ring.plus(a, b), c) == ring.plus(ring.times(a, c), ring.times(b, c));
        if (!ok) cex = lc.show({{"a", &a}, {"b", &b}, {"c", &c}});
        return ok;
    });

    // ⊕-based order used below; natural_leq itself requires the idempotent flag,
    // so the raw definition is applied here to stay meaningful for misdeclared rings.
    auto leq = [&](const Value& a, const Value& b) { return ring.plus(a, b) == a; };

    if (ring.flags.commutative) {
        lc.check("times-commutative", 2, [&](const Value& a, const Value& b, const Value&, std::string& cex) {
            bool ok = ring.times(a, b) == ring.times(b, a);
            if (!ok) cex = lc.show({{"a", &a}, {"b", &b}});
            return ok;
        });
    }
    if (ring.flags.idempotent) {
        lc.check("plus-idempotent", 1, [&](const Value& a, const Value&, const Value&, std::string& cex) {
            bool ok = ring.plus(a, a) == a;
            if (!ok) cex = lc.show({{"a", &a}});
            return ok;
        });
        lc.check("monotone", 3, [&](const Value& a, const Value& b, const Value& c, std::string& cex) {
            if (!leq(a, b)) return true;
            bool ok = leq(ring.plus(a, c), ring.plus(b, c)) && leq(ring.times(a, c), ring.times(b, c));
            if (!ok) cex = lc.show({{"a", &a}, {"b", &b}, {"c", &c}});
            return ok;
        });
    }
    if (ring.flags.zero_closed) {
        if (!ring.flags.idempotent) {
            lc.report.laws.push_back(
                    {"flag-consistency", false, "zero_closed is declared without idempotent (0-closed implies idempotent)"});
        }
        lc.check("zero-closed", 1, [&](const Value& a, const Value&, const Value&, std::string& cex) {
            bool ok = ring.plus(one, a) == one;
            if (!ok) cex = lc.show({{"a", &a}});
            return ok;
        });
        lc.check("superiority", 2, [&](const Value& a, const Value& b, const Value&, std::string& cex) {
            bool ok = leq(a, ring.times(a, b)) && leq(b, ring.times(a, b));
            if (!ok) cex = lc.show({{"a", &a}, {"b", &b}});
            return ok;
        });
        lc.check("one-least-zero-greatest", 1, [&](const Value& a, const Value&, const Value&, std::string& cex) {
            bool ok = leq(one, a) && leq(a, zero);
            if (!ok) cex = lc.show({{"a", &a}});
            return ok;
        });
    }
    if (ring.flags.totally_ordered) {
        lc.check("totally-ordered", 2, [&](const Value& a, const Value& b, const Value&, std::string& cex) {
            bool ok = leq(a, b) || leq(b, a);
            if (!ok) cex = lc.show({{"a", &a}, {"b", &b}});
            return ok;
        });
    }
    if (ring.flags.multiplicatively_idempotent) {
        lc.check("times-idempotent", 1, [&](const Value& a, const Value&, const Value&, std::string& cex) {
            bool ok = ring.times(a, a) == a;
            if (!ok) cex = lc.show({{"a", &a}});
            return ok;
        });
    }
    if (ring.lattice_dims()) {
        if (!ring.flags.multiplicatively_idempotent || !ring.flags.zero_closed) {
            lc.report.laws.push_back({"flag-consistency", false,
                                      "lattice decomposition requires zero_closed and multiplicatively_idempotent"});
        }
        lc.check("decompose-roundtrip", 1, [&](const Value& a, const Value&, const Value&, std::string& cex) {
            auto coords = ring.decompose(a);
            bool ok = ring.recompose(coords) == a;
            if (!ok) cex = lc.show({{"a", &a}});
            return ok;
        });
        lc.check("decompose-homomorphic", 2, [&](const Value& a, const Value& b, const Value&, std::string& cex) {
            auto da = ring.decompose(a), db = ring.decompose(b);
            auto dsum = ring.decompose(ring.plus(a, b));
            auto dprod = ring.decompose(ring.times(a, b));
            for (size_t i = 0; i < da.size(); ++i) {
                Semiring dim = ring.dimension_semiring(i);
                if (dim.plus(da[i], db[i]) != dsum[i] || dim.times(da[i], db[i]) != dprod[i]) {
                    cex = lc.show({{"a", &a}, {"b", &b}}) + " at dimension " + std::to_string(i);
                    return false;
                }
            }
            return true;
        });
    }
    return lc.report;
}

}  // namespace provlog
