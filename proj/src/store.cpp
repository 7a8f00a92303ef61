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

#include "provlog/store.hpp"

#include <bit>

namespace provlog {

FactStore::FactStore(const Program& program) {
    for (const auto& d : program.decls) {
        relation_ids_.emplace(d.name, static_cast<uint32_t>(relations_.size()));
        relations_.push_back(d.name);
    }
    by_relation_.resize(relations_.size());
    indexes_.resize(relations_.size());
}

uint32_t FactStore::relation_index(const std::string& name) const {
    auto it = relation_ids_.find(name);
    if (it == relation_ids_.end()) throw UsageError("unknown relation '" + name + "'");
    return it->second;
}

std::string FactStore::pack(uint32_t rel, const std::vector<Constant>& args) {
    std::string key = std::to_string(rel);
    for (const auto& a : args) {
        key += '\x1f';
        if (std::holds_alternative<int64_t>(a)) {
            key += '#';
            key += std::to_string(std::get<int64_t>(a));
        } else {
            key += '$';
            key += std::get<std::string>(a);
        }
    }
    return key;
}

AtomId FactStore::intern(uint32_t rel, std::vector<Constant> args) {
    std::string key = pack(rel, args);
    auto it = atom_ids_.find(key);
    if (it != atom_ids_.end()) return it->second;
    AtomId id = static_cast<AtomId>(atoms_.size());
    atom_ids_.emplace(std::move(key), id);
    atoms_.push_back({rel, std::move(args)});
    values_.emplace_back();
    settled_.push_back(false);
    return id;
}

AtomId FactStore::intern(const std::string& relation, std::vector<Constant> args) {
    return intern(relation_index(relation), std::move(args));
}

std::optional<AtomId> FactStore::find(uint32_t rel, const std::vector<Constant>& args) const {
    auto it = atom_ids_.find(pack(rel, args));
    if (it == atom_ids_.end()) return std::nullopt;
    return it->second;
}

std::string FactStore::atom_text(AtomId id) const {
    const GroundAtom& a = atoms_[id];
    std::string out = relations_[a.relation] + "(";
    for (size_t i = 0; i < a.args.size(); ++i) {
        if (i) out += ',';
        out += format_constant(a.args[i]);
    }
    return out + ")";
}

const Value* FactStore::value(AtomId id) const {
    return values_[id] ? &*values_[id] : nullptr;
}

void FactStore::set_value(AtomId id, Value v) { values_[id] = std::move(v); }

void FactStore::settle(AtomId id) {
    if (settled_[id]) throw InternalError("atom settled twice: " + atom_text(id));
    if (!values_[id]) throw InternalError("settling atom without a value: " + atom_text(id));
    settled_[id] = true;
    by_relation_[atoms_[id].relation].push_back(id);
}

size_t FactStore::KeyHash::operator()(const std::vector<Constant>& key) const {
    size_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](size_t v) { h = (h ^ v) * 0x100000001b3ULL; };
    for (const auto& c : key) {
        if (std::holds_alternative<int64_t>(c)) {
            mix(0x9e37);
            mix(static_cast<size_t>(std::get<int64_t>(c)));
        } else {
            mix(0x51ed);
            mix(std::hash<std::string>{}(std::get<std::string>(c)));
        }
    }
    return h;
}

const std::vector<AtomId>& FactStore::settled_matching(uint32_t rel, uint64_t mask,
                                                       const std::vector<Constant>& key) {
    static const std::vector<AtomId> kEmpty;
    if (mask == 0) return by_relation_[rel];
    MaskIndex& idx = indexes_[rel][mask];
    const auto& settled = by_relation_[rel];
    while (idx.watermark < settled.size()) {
        AtomId id = settled[idx.watermark++];
        const auto& args = atoms_[id].args;
        std::vector<Constant> k;
        k.reserve(static_cast<size_t>(std::popcount(mask)));
        for (size_t i = 0; i < args.size(); ++i)
            if (mask & (1ULL << i)) k.push_back(args[i]);
        idx.buckets[std::move(k)].push_back(id);
    }
    auto it = idx.buckets.find(key);
    return it == idx.buckets.end() ? kEmpty : it->second;
}

void FactStore::init_edb(const std::vector<AnnotatedFact>& facts, const Semiring& ring) {
    const Value zero = ring.zero();
    for (const auto& f : facts) {
        if (f.annotation == zero) continue;
        AtomId id = intern(f.relation, f.args);
        if (settled(id)) {
            // duplicates across fact sources combine with ⊕
            set_value(id, ring.plus(*value(id), f.annotation));
        } else {
            set_value(id, f.annotation);
            settle(id);
        }
    }
}

}  // namespace provlog
