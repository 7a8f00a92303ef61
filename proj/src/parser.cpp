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

#include "provlog/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace provlog {

std::string format_constant(const Constant& c) {
    if (std::holds_alternative<int64_t>(c)) return std::to_string(std::get<int64_t>(c));
    return std::get<std::string>(c);
}

std::string format_term(const Term& t) {
    if (t.is_var()) return t.var;
    if (std::holds_alternative<int64_t>(t.value)) return std::to_string(std::get<int64_t>(t.value));
    return "\"" + std::get<std::string>(t.value) + "\"";
}

std::string format_atom(const Atom& a) {
    std::string out = a.relation + "(";
    for (size_t i = 0; i < a.terms.size(); ++i) {
        if (i) out += ", ";
        out += format_term(a.terms[i]);
    }
    return out + ")";
}

std::string format_rule(const Rule& r) {
    std::string out = format_atom(r.head) + " :- ";
    for (size_t i = 0; i < r.body.size(); ++i) {
        if (i) out += ", ";
        out += format_atom(r.body[i]);
    }
    return out + ".";
}

std::string format_program(const Program& p) {
    std::ostringstream os;
    for (const auto& d : p.decls) {
        os << ".decl " << d.name << "(";
        for (size_t i = 0; i < d.attrs.size(); ++i) {
            if (i) os << ", ";
            os << d.attrs[i].name << ":" << (d.attrs[i].type == AttrType::Number ? "number" : "symbol");
        }
        if (d.has_prov) {
            if (!d.attrs.empty()) os << ", ";
            os << "@prov:semiring";
        }
        os << ")\n";
    }
    for (const auto& name : p.inputs) os << ".input " << name << "\n";
    for (const auto& name : p.outputs) os << ".output " << name << "\n";
    if (!p.rules.empty()) os << "\n";
    for (const auto& r : p.rules) os << format_rule(r) << "\n";
    return os.str();
}

namespace {

enum class Tok { End, Ident, Number, String, Decl, Input, Output, LParen, RParen, Comma, Colon, Implies, Dot, AtProv };

struct Token {
    Tok kind;
    std::string text;
    int64_t number = 0;
    int line = 1, col = 1;
};

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::End: return "end of input";
        case Tok::Ident: return "identifier";
        case Tok::Number: return "number";
        case Tok::String: return "quoted symbol";
        case Tok::Decl: return "'.decl'";
        case Tok::Input: return "'.input'";
        case Tok::Output: return "'.output'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Comma: return "','";
        case Tok::Colon: return "':'";
        case Tok::Implies: return "':-'";
        case Tok::Dot: return "'.'";
        case Tok::AtProv: return "'@prov'";
    }
    return "?";
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_ws();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= text_.size()) {
            t.kind = Tok::End;
            return t;
        }
        char c = text_[pos_];
        if (c == '(') return simple(t, Tok::LParen);
        if (c == ')') return simple(t, Tok::RParen);
        if (c == ',') return simple(t, Tok::Comma);
        if (c == ':') {
            if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
                advance();
                advance();
                t.kind = Tok::Implies;
                return t;
            }
            return simple(t, Tok::Colon);
        }
        if (c == '.') {
            // keyword or rule terminator
            if (match_keyword(".decl")) { t.kind = Tok::Decl; return t; }
            if (match_keyword(".input")) { t.kind = Tok::Input; return t; }
            if (match_keyword(".output")) { t.kind = Tok::Output; return t; }
            return simple(t, Tok::Dot);
        }
        if (c == '@') {
            if (match_keyword("@prov")) { t.kind = Tok::AtProv; return t; }
            throw ParseError("unexpected '@'", line_, col_);
        }
        if (c == '"') {
            advance();
            std::string s;
            while (pos_ < text_.size() && text_[pos_] != '"') {
                if (text_[pos_] == '\n') throw ParseError("unterminated quoted symbol", t.line, t.col);
                s += text_[pos_];
                advance();
            }
            if (pos_ >= text_.size()) throw ParseError("unterminated quoted symbol", t.line, t.col);
            advance();
            t.kind = Tok::String;
            t.text = std::move(s);
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '-' && pos_ + 1 < text_.size() &&
                                                            std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
            bool neg = c == '-';
            if (neg) advance();
            int64_t v = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                v = v * 10 + (text_[pos_] - '0');
                advance();
            }
            t.kind = Tok::Number;
            t.number = neg ? -v : v;
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string s;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                s += text_[pos_];
                advance();
            }
            t.kind = Tok::Ident;
            t.text = std::move(s);
            return t;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }

private:
    Token simple(Token& t, Tok kind) {
        advance();
        t.kind = kind;
        return t;
    }

    bool match_keyword(std::string_view kw) {
        if (text_.substr(pos_, kw.size()) != kw) return false;
        // keyword must not run into an identifier tail
        size_t end = pos_ + kw.size();
        if (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
            return false;
        for (size_t i = 0; i < kw.size(); ++i) advance();
        return true;
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                break;
            }
        }
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view text_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) { shift(); }

    Program parse() {
        Program p;
        while (cur_.kind != Tok::End) {
            switch (cur_.kind) {
                case Tok::Decl: parse_decl(p); break;
                case Tok::Input: parse_io(p, true); break;
                case Tok::Output: parse_io(p, false); break;
                case Tok::Ident: parse_rule(p); break;
                default:
                    throw ParseError(std::string("expected declaration or rule, found ") + tok_name(cur_.kind),
                                     cur_.line, cur_.col);
            }
        }
        return p;
    }

private:
    void parse_decl(Program& p) {
        shift();
        Token name = expect(Tok::Ident);
        if (p.find_decl(name.text))
            throw ParseError("duplicate declaration of relation '" + name.text + "'", name.line, name.col);
        RelationDecl d;
        d.name = name.text;
        expect(Tok::LParen);
        if (cur_.kind != Tok::RParen) {
            while (true) {
                if (cur_.kind == Tok::AtProv) {
                    shift();
                    if (cur_.kind == Tok::Colon) {
                        shift();
                        expect(Tok::Ident);  // type label after @prov:, e.g. "semiring"
                    }
                    d.has_prov = true;
                    if (cur_.kind == Tok::Comma)
                        throw ParseError("@prov must be the last attribute", cur_.line, cur_.col);
                    break;
                }
                Token attr = expect(Tok::Ident);
                expect(Tok::Colon);
                Token type = expect(Tok::Ident);
                AttrType at;
                if (type.text == "number")
                    at = AttrType::Number;
                else if (type.text == "symbol")
                    at = AttrType::Symbol;
                else
                    throw ParseError("unknown attribute type '" + type.text + "' (expected number or symbol)",
                                     type.line, type.col);
                d.attrs.push_back({attr.text, at});
                if (cur_.kind != Tok::Comma) break;
                shift();
            }
        }
        expect(Tok::RParen);
        if (d.attrs.size() > 64)
            throw ParseError("relation '" + d.name + "' exceeds the 64-attribute limit", name.line, name.col);
        p.decls.push_back(std::move(d));
    }

    void parse_io(Program& p, bool is_input) {
        shift();
        Token name = expect(Tok::Ident);
        if (!p.find_decl(name.text))
            throw ParseError("undeclared relation '" + name.text + "'", name.line, name.col);
        (is_input ? p.inputs : p.outputs).insert(name.text);
    }

    Atom parse_atom(const Program& p) {
        Token name = expect(Tok::Ident);
        const RelationDecl* decl = p.find_decl(name.text);
        if (!decl) throw ParseError("undeclared relation '" + name.text + "'", name.line, name.col);
        Atom a;
        a.relation = name.text;
        expect(Tok::LParen);
        if (cur_.kind != Tok::RParen) {
            while (true) {
                if (cur_.kind == Tok::Ident) {
                    a.terms.push_back(Term::variable(cur_.text));
                    shift();
                } else if (cur_.kind == Tok::Number) {
                    a.terms.push_back(Term::number(cur_.number));
                    shift();
                } else if (cur_.kind == Tok::String) {
                    a.terms.push_back(Term::symbol(cur_.text));
                    shift();
                } else {
                    throw ParseError(std::string("expected term, found ") + tok_name(cur_.kind), cur_.line, cur_.col);
                }
                if (cur_.kind != Tok::Comma) break;
                shift();
            }
        }
        Token rp = expect(Tok::RParen);
        if (a.terms.size() != decl->arity())
            throw ParseError("relation '" + a.relation + "' expects " + std::to_string(decl->arity()) +
                                     " terms, got " + std::to_string(a.terms.size()),
                             rp.line, rp.col);
        return a;
    }

    void parse_rule(Program& p) {
        int line = cur_.line, col = cur_.col;
        Rule r;
        r.head = parse_atom(p);
        if (cur_.kind == Tok::Dot)
            throw ParseError("facts are not allowed in program files; use a fact file for relation '" +
                                     r.head.relation + "'",
                             cur_.line, cur_.col);
        expect(Tok::Implies);
        while (true) {
            r.body.push_back(parse_atom(p));
            if (cur_.kind != Tok::Comma) break;
            shift();
        }
        expect(Tok::Dot);
        // range restriction: every head variable occurs in the body
        for (const auto& t : r.head.terms) {
            if (!t.is_var()) continue;
            bool found = false;
            for (const auto& b : r.body)
                for (const auto& bt : b.terms)
                    if (bt.is_var() && bt.var == t.var) found = true;
            if (!found)
                throw ParseError("head variable '" + t.var + "' of relation '" + r.head.relation +
                                         "' does not occur in the rule body",
                                 line, col);
        }
        p.rules.push_back(std::move(r));
    }

    Token expect(Tok kind) {
        if (cur_.kind != kind)
            throw ParseError(std::string("expected ") + tok_name(kind) + ", found " + tok_name(cur_.kind), cur_.line,
                             cur_.col);
        Token t = cur_;
        shift();
        return t;
    }

    void shift() { cur_ = lexer_.next(); }

    Lexer lexer_;
    Token cur_;
};

}  // namespace

Program parse_program(std::string_view text) { return Parser(text).parse(); }

std::vector<Diagnostic> validate(const Program& p) {
    std::vector<Diagnostic> out;
    auto error = [&](std::string m) { out.push_back({Diagnostic::Severity::Error, std::move(m)}); };
    auto warning = [&](std::string m) { out.push_back({Diagnostic::Severity::Warning, std::move(m)}); };

    std::set<std::string> seen;
    for (const auto& d : p.decls)
        if (!seen.insert(d.name).second) error("duplicate declaration of relation '" + d.name + "'");
    for (const auto& n : p.inputs)
        if (!p.find_decl(n)) error("input relation '" + n + "' is not declared");
    for (const auto& n : p.outputs)
        if (!p.find_decl(n)) error("output relation '" + n + "' is not declared");

    for (const auto& r : p.rules) {
        if (r.body.empty()) error("rule for '" + r.head.relation + "' has an empty body");
        if (p.is_edb(r.head.relation)) error("EDB relation '" + r.head.relation + "' in rule head");
        auto check_atom = [&](const Atom& a) {
            const RelationDecl* d = p.find_decl(a.relation);
            if (!d) {
                error("undeclared relation '" + a.relation + "'");
                return;
            }
            if (a.terms.size() != d->arity())
                error("relation '" + a.relation + "' expects " + std::to_string(d->arity()) + " terms, got " +
                      std::to_string(a.terms.size()));
        };
        check_atom(r.head);
        for (const auto& b : r.body) check_atom(b);
        for (const auto& t : r.head.terms) {
            if (!t.is_var()) continue;
            bool found = false;
            for (const auto& b : r.body)
                for (const auto& bt : b.terms)
                    if (bt.is_var() && bt.var == t.var) found = true;
            if (!found)
                error("head variable '" + t.var + "' of relation '" + r.head.relation +
                      "' does not occur in the rule body");
        }
    }

    // productivity fixpoint: which relations can possibly receive facts
    std::set<std::string> productive(p.inputs.begin(), p.inputs.end());
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : p.rules) {
            if (productive.count(r.head.relation)) continue;
            bool all = true;
            for (const auto& b : r.body)
                if (!productive.count(b.relation)) all = false;
            if (all && !r.body.empty()) {
                productive.insert(r.head.relation);
                changed = true;
            }
        }
    }
    for (const auto& n : p.outputs)
        if (p.find_decl(n) && !productive.count(n)) warning("output relation '" + n + "' is never derived");

    return out;
}

std::vector<AnnotatedFact> load_facts(std::istream& in, const RelationDecl& decl, const Semiring& ring,
                                      const std::string& source_name) {
    std::vector<AnnotatedFact> out;
    std::map<std::vector<Constant>, size_t> index;  // args -> position in out
    std::string line;
    size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cols;
        size_t start = 0;
        while (true) {
            size_t tab = line.find('\t', start);
            cols.push_back(tab == std::string::npos ? line.substr(start) : line.substr(start, tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        size_t n = decl.arity();
        bool with_value = decl.has_prov && cols.size() == n + 1;
        if (cols.size() != n && !with_value)
            throw InputError(source_name + " row " + std::to_string(row) + ": expected " + std::to_string(n) +
                             (decl.has_prov ? " or " + std::to_string(n + 1) : "") + " columns, got " +
                             std::to_string(cols.size()));
        std::vector<Constant> args;
        args.reserve(n);
        for (size_t i = 0; i < n; ++i) {
            if (decl.attrs[i].type == AttrType::Number) {
                try {
                    size_t used = 0;
                    int64_t v = std::stoll(cols[i], &used);
                    if (used != cols[i].size()) throw std::invalid_argument("");
                    args.emplace_back(v);
                } catch (const std::exception&) {
                    throw InputError(source_name + " row " + std::to_string(row) + ": '" + cols[i] +
                                     "' is not a number");
                }
            } else {
                args.emplace_back(cols[i]);
            }
        }
        Value v = ring.one();
        if (with_value) {
            try {
                v = ring.parse_value(cols[n]);
            } catch (const InputError& e) {
                throw InputError(source_name + " row " + std::to_string(row) + ": " + e.what());
            }
        }
        auto it = index.find(args);
        if (it == index.end()) {
            index.emplace(args, out.size());
            out.push_back({decl.name, std::move(args), std::move(v)});
        } else {
            out[it->second].annotation = ring.plus(out[it->second].annotation, v);
        }
    }
    return out;
}

std::vector<AnnotatedFact> load_facts_dir(const Program& program, const std::string& dir, const Semiring& ring) {
    std::vector<AnnotatedFact> out;
    for (const auto& d : program.decls) {
        if (!program.is_edb(d.name)) continue;
        std::string path = dir + "/" + d.name + ".facts";
        std::ifstream in(path);
        if (!in) continue;  // missing file: empty relation
        auto facts = load_facts(in, d, ring, path);
        out.insert(out.end(), std::make_move_iterator(facts.begin()), std::make_move_iterator(facts.end()));
    }
    return out;
}

void write_facts(std::ostream& out, const std::vector<AnnotatedFact>& facts, const RelationDecl& decl,
                 const Semiring& ring) {
    for (const auto& f : facts) {
        if (f.relation != decl.name) continue;
        for (size_t i = 0; i < f.args.size(); ++i) {
            if (i) out << '\t';
            out << format_constant(f.args[i]);
        }
        if (decl.has_prov) out << '\t' << ring.format_value(f.annotation);
        out << '\n';
    }
}

}  // namespace provlog
