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
#include <string>
#include <unordered_map>
#include <vector>

#include "provlog/ast.hpp"

namespace provlog {

using AtomId = uint32_t;

struct GroundAtom {
    uint32_t relation;  // index into the store's relation table
    std::vector<Constant> args;
};

/// Interned ground atoms with the current value assignment ν and the settled
/// set (EDB facts plus atoms the engine has committed). Atom ids are dense and
/// assigned in first-seen order; all determinism guarantees are stated
/// relative to them. Single-writer.
class FactStore {
public:
    explicit FactStore(const Program& program);

    uint32_t relation_index(const std::string& name) const;
    const std::string& relation_name(uint32_t rel) const { return relations_[rel]; }
    size_t relation_count() const { return relations_.size(); }

    AtomId intern(uint32_t rel, std::vector<Constant> args);
    AtomId intern(const std::string& relation, std::vector<Constant> args);
    std::optional<AtomId> find(uint32_t rel, const std::vector<Constant>& args) const;

    const GroundAtom& atom(AtomId id) const { return atoms_[id]; }
    std::string atom_text(AtomId id) const;
    size_t atom_count() const { return atoms_.size(); }

    /// Current ν(atom); nullptr means 0̄ (never derived).
    const Value* value(AtomId id) const;
    void set_value(AtomId id, Value v);

    bool settled(AtomId id) const { return settled_[id]; }
    /// Marks an atom settled. The caller guarantees ν(atom) ≠ 0̄.
    void settle(AtomId id);

    const std::vector<AtomId>& settled_list(uint32_t rel) const { return by_relation_[rel]; }

    /// Settled atoms of `rel` whose argument at each position in `mask` (bit i
    /// set ⇒ position i) equals the corresponding entry of `key` (in position
    /// order). Lazily indexed; the returned list is in settle order.
    const std::vector<AtomId>& settled_matching(uint32_t rel, uint64_t mask, const std::vector<Constant>& key);

    /// Interns EDB facts, assigns their annotations and settles them.
    /// Facts annotated 0̄ are dropped (a 0̄ fact is indistinguishable from an
    /// absent one: it annihilates every product it joins).
    void init_edb(const std::vector<AnnotatedFact>& facts, const Semiring& ring);

private:
    struct KeyHash {
        size_t operator()(const std::vector<Constant>& key) const;
    };
    struct MaskIndex {
        std::unordered_map<std::vector<Constant>, std::vector<AtomId>, KeyHash> buckets;
        size_t watermark = 0;  // entries of settled_list already folded in
    };

    std::vector<std::string> relations_;
    std::unordered_map<std::string, uint32_t> relation_ids_;

    std::vector<GroundAtom> atoms_;
    std::unordered_map<std::string, AtomId> atom_ids_;  // packed textual key
    std::vector<std::optional<Value>> values_;
    std::vector<bool> settled_;
    std::vector<std::vector<AtomId>> by_relation_;                    // settled, in settle order
    std::vector<std::unordered_map<uint64_t, MaskIndex>> indexes_;    // per relation

    static std::string pack(uint32_t rel, const std::vector<Constant>& args);
};

}  // namespace provlog
