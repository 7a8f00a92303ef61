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
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "provlog/errors.hpp"

namespace provlog {

/// Deterministic splitmix64 generator. Used everywhere randomness is needed so
/// that a seed fully determines the run on every platform (std::uniform_int_distribution
/// is implementation-defined and would break the byte-identical-output contract).
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform-ish integer in [0, n). n must be > 0.
    uint64_t below(uint64_t n) { return next() % n; }

private:
    uint64_t state_;
};

/// Exact non-negative rational with a point at infinity; the tropical payload.
/// Kept normalized (gcd = 1, den > 0); infinity is den == 0.
class Rational {
public:
    Rational() : num_(0), den_(1) {}

    static Rational integer(int64_t n);
    static Rational ratio(int64_t num, int64_t den);
    static Rational infinity() { return Rational(1, 0); }

    bool is_infinite() const { return den_ == 0; }
    int64_t num() const { return num_; }
    int64_t den() const { return den_; }

    Rational plus(const Rational& o) const;  // arithmetic +, the tropical ⊗
    Rational min(const Rational& o) const;   // the tropical ⊕
    bool less(const Rational& o) const;

    bool operator==(const Rational& o) const = default;

    std::string str() const;
    static std::optional<Rational> parse(std::string_view text);

private:
    Rational(int64_t n, int64_t d) : num_(n), den_(d) {}

    int64_t num_;
    int64_t den_;
};

/// Finite token set, stored as a bitmask over the declared universe.
struct SetBits {
    uint64_t bits = 0;
    bool operator==(const SetBits&) const = default;
};

/// Coordinate vector of a product-of-finite-chains lattice.
struct ChainVec {
    std::vector<uint32_t> pos;
    bool operator==(const ChainVec&) const = default;
};

/// Payload of the counting semiring (ℕ, +, ×, 0, 1).
struct Nat {
    uint64_t n = 0;
    bool operator==(const Nat&) const = default;
};

/// One semiring element. Equality is structural equality of the payload;
/// the natural order is derived from ⊕ on top of it.
class Value {
public:
    Value() : v_(false) {}
    explicit Value(bool b) : v_(b) {}
    explicit Value(Rational r) : v_(std::move(r)) {}
    explicit Value(SetBits s) : v_(s) {}
    explicit Value(ChainVec c) : v_(std::move(c)) {}
    explicit Value(Nat n) : v_(n) {}

    bool operator==(const Value& o) const = default;

    template <class T>
    bool holds() const { return std::holds_alternative<T>(v_); }
    template <class T>
    const T& get() const { return std::get<T>(v_); }

private:
    std::variant<bool, Rational, SetBits, ChainVec, Nat> v_;
};

enum class SemiringKind { Tropical, Boolean, SetLattice, ChainProduct, Natural };

/// Declared property flags. For the builtins these are filled in truthfully by
/// the factory functions; tests and the `check --claim` flag may overdeclare to
/// exercise the property checker's falsification path.
struct SemiringFlags {
    bool commutative = false;
    bool idempotent = false;
    bool zero_closed = false;
    bool totally_ordered = false;
    bool multiplicatively_idempotent = false;
};

/// A semiring (S, ⊕, ⊗, 0̄, 1̄) together with its literal codec, sampling
/// distribution, and (for decomposable distributive lattices) the embedding
/// into a product of chains. Immutable after construction; cheap to copy.
class Semiring {
public:
    static Semiring tropical();
    static Semiring boolean();
    static Semiring set_lattice(std::vector<std::string> universe);
    static Semiring chain_product(std::vector<uint32_t> lengths);
    static Semiring natural();

    SemiringKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const std::vector<std::string>& universe() const { return universe_; }
    const std::vector<uint32_t>& chain_lengths() const { return chains_; }

    SemiringFlags flags;                 // declared, not proven; see check_properties
    std::optional<uint32_t> k_closed;    // informational only

    Value zero() const;
    Value one() const;
    Value plus(const Value& a, const Value& b) const;
    Value times(const Value& a, const Value& b) const;

    /// Natural order: a ≤ b iff a ⊕ b = a. Requires the idempotent flag.
    bool natural_leq(const Value& a, const Value& b) const;
    /// Strict natural order, usable as a heap comparator on totally ordered rings.
    bool natural_less(const Value& a, const Value& b) const;

    std::string format_value(const Value& v) const;
    Value parse_value(std::string_view text) const;
    Value sample(Rng& rng) const;

    /// Number of chain-decomposition dimensions; present iff this semiring is
    /// a decomposable distributive lattice.
    std::optional<size_t> lattice_dims() const;
    std::vector<Value> decompose(const Value& v) const;
    Value recompose(std::span<const Value> coords) const;
    /// The single-chain semiring of decomposition dimension i.
    Semiring dimension_semiring(size_t i) const;

private:
    Semiring(SemiringKind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

    void require_member(const Value& v, const char* op) const;
    uint64_t full_mask() const;

    SemiringKind kind_;
    std::string name_;
    std::vector<std::string> universe_;  // set lattice token names, declared order
    std::vector<uint32_t> chains_;       // chain lengths (each ≥ 1)
};

struct LawResult {
    std::string law;
    bool passed = true;
    std::string counterexample;  // empty when passed
};

struct PropertyReport {
    std::vector<LawResult> laws;

    bool all_passed() const {
        for (const auto& l : laws)
            if (!l.passed) return false;
        return true;
    }
};

/// Randomized self-check of the semiring axioms and every declared flag,
/// including superiority (a ≤ a⊗b and b ≤ a⊗b) whenever zero_closed is
/// declared. Failures are report entries with a counterexample, not errors.
PropertyReport check_properties(const Semiring& ring, size_t sample_count, uint64_t seed);

}  // namespace provlog
