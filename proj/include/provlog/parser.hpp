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

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "provlog/ast.hpp"

namespace provlog {

/// Parses the Datalog dialect: `.decl name(a:number, b:symbol, @prov:semiring)`,
/// `.input name`, `.output name`, rules `h(x,y) :- b1(x,z), b2(z,y).` and `//`
/// comments. Throws ParseError with line/column on syntax errors, duplicate
/// declarations, undeclared relations, arity mismatches and range-restriction
/// violations.
Program parse_program(std::string_view text);

/// Checks all Program invariants and returns one diagnostic per violation.
/// Empty result means the program is well-formed.
std::vector<Diagnostic> validate(const Program& program);

/// Loads tab-separated facts for one EDB relation. The final column is a
/// semiring value literal when the relation is declared with @prov (and may be
/// omitted, defaulting to 1̄); duplicate atoms are ⊕-combined.
std::vector<AnnotatedFact> load_facts(std::istream& in, const RelationDecl& decl, const Semiring& ring,
                                      const std::string& source_name = "<facts>");

/// Loads `<relation>.facts` from `dir` for every EDB relation of the program.
/// A missing file is an empty relation.
std::vector<AnnotatedFact> load_facts_dir(const Program& program, const std::string& dir, const Semiring& ring);

/// Writes facts in the fact-file format (inverse of load_facts).
void write_facts(std::ostream& out, const std::vector<AnnotatedFact>& facts, const RelationDecl& decl,
                 const Semiring& ring);

}  // namespace provlog
