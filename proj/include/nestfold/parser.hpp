#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nestfold/ast.hpp"
#include "nestfold/lexer.hpp"

namespace nestfold {

/// Names of the base types usable in value types (`Bush Nat`).
inline bool is_base_type_name(const std::string& n) { return n == "Nat" || n == "Atom"; }

namespace detail {

class TokenStream {
public:
    explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t k = std::min(i_ + ahead, toks_.size() - 1);
        return toks_[k];
    }
    bool at(Tok k) const { return peek().kind == k; }
    bool at_word(std::string_view w) const { return at(Tok::lident) && peek().text == w; }
    Token take() {
        Token t = peek();
        if (i_ < toks_.size() - 1) ++i_;
        return t;
    }
    Token expect(Tok k, std::string_view context) {
        if (!at(k)) fail(std::string("expected ") + describe(k) + " " + std::string(context));
        return take();
    }
    void expect_word(std::string_view w) {
        if (!at_word(w)) fail("expected '" + std::string(w) + "'");
        take();
    }
    void skip_newlines() {
        while (at(Tok::newline)) take();
    }
    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        std::string found = t.kind == Tok::eof || t.kind == Tok::newline ? describe(t.kind) : "'" + t.text + "'";
        throw Error(t.pos, msg + ", found " + found);
    }

private:
    std::vector<Token> toks_;
    std::size_t i_ = 0;
};

class DeclParser {
public:
    explicit DeclParser(std::vector<Token> toks) : ts_(std::move(toks)) {}

    Program run(std::string source_name) {
        Program prog;
        prog.source_name = std::move(source_name);
        std::map<std::string, std::pair<std::size_t, Pos>> signatures;
        std::set<std::string> defined;

        ts_.skip_newlines();
        if (ts_.at(Tok::eof)) throw Error(ts_.peek().pos, "expected at least one data declaration");
        while (!ts_.at(Tok::eof)) {
            Pos pos = ts_.peek().pos;
            ts_.expect_word("data");
            Token name = ts_.expect(Tok::uident, "after 'data'");
            if (name.text == "Set") throw Error(name.pos, "'Set' cannot be declared");
            std::vector<std::string> params = parse_binders();
            if (ts_.at(Tok::colon)) {
                ts_.take();
                if (!(ts_.at(Tok::uident) && ts_.peek().text == "Set")) ts_.fail("expected 'Set' in kind annotation");
                ts_.take();
            }
            if (!ts_.at_word("where")) {
                // Forward signature, e.g. `data Bob (a : Set) : Set`.
                end_line();
                if (signatures.count(name.text) || defined.count(name.text))
                    throw Error(name.pos, "duplicate declaration " + name.text);
                signatures[name.text] = {params.size(), name.pos};
                continue;
            }
            ts_.take();
            // A first constructor may share the `where` line.
            if (!(ts_.at(Tok::lident) && ts_.peek(1).kind == Tok::colon)) end_line();
            if (defined.count(name.text)) throw Error(name.pos, "duplicate declaration " + name.text);
            if (auto it = signatures.find(name.text); it != signatures.end() && it->second.first != params.size())
                throw Error(name.pos, "declaration " + name.text + " has " + std::to_string(params.size()) +
                                          " parameters but its signature has " + std::to_string(it->second.first));
            defined.insert(name.text);

            TypeDecl decl{name.text, params, {}, pos};
            std::set<std::string> ctor_names;
            while (ts_.at(Tok::lident) && ts_.peek(1).kind == Tok::colon) {
                Constructor c = parse_ctor();
                if (!ctor_names.insert(c.name).second)
                    throw Error(c.pos, "duplicate constructor " + c.name + " in " + decl.name);
                decl.ctors.push_back(std::move(c));
                ts_.skip_newlines();
            }
            if (decl.ctors.empty()) throw Error(pos, "declaration " + decl.name + " needs at least one constructor");
            prog.decls.push_back(std::move(decl));
            ts_.skip_newlines();
        }
        for (const auto& [n, sig] : signatures)
            if (!defined.count(n)) throw Error(sig.second, "declaration " + n + " has no definition");
        return prog;
    }

private:
    std::vector<std::string> parse_binders() {
        std::vector<std::string> params;
        std::set<std::string> seen;
        auto add = [&](const Token& t) {
            if (!seen.insert(t.text).second) throw Error(t.pos, "duplicate parameter " + t.text);
            params.push_back(t.text);
        };
        while (true) {
            if (ts_.at(Tok::lident) && !ts_.at_word("where")) {
                add(ts_.take());
            } else if (ts_.at(Tok::lparen)) {
                ts_.take();
                std::vector<Token> group;
                while (ts_.at(Tok::lident)) group.push_back(ts_.take());
                if (group.empty()) ts_.fail("expected parameter name");
                ts_.expect(Tok::colon, "in parameter binder");
                if (!(ts_.at(Tok::uident) && ts_.peek().text == "Set")) ts_.fail("expected 'Set' in parameter binder");
                ts_.take();
                ts_.expect(Tok::rparen, "to close parameter binder");
                for (const auto& t : group) add(t);
            } else {
                return params;
            }
        }
    }

    void end_line() {
        if (ts_.at(Tok::eof)) return;
        ts_.expect(Tok::newline, "at end of line");
        ts_.skip_newlines();
    }

    Constructor parse_ctor() {
        Token name = ts_.take();
        ts_.expect(Tok::colon, "after constructor name");
        std::vector<TypeExpr> parts = parse_arrow_chain();
        Constructor c;
        c.name = name.text;
        c.pos = name.pos;
        c.result = parts.back();
        parts.pop_back();
        c.args = std::move(parts);
        if (!ts_.at(Tok::eof) && !ts_.at(Tok::newline)) ts_.fail("expected end of constructor line");
        return c;
    }

    std::vector<TypeExpr> parse_arrow_chain() {
        std::vector<TypeExpr> parts{parse_app()};
        while (ts_.at(Tok::arrow)) {
            ts_.take();
            parts.push_back(parse_app());
        }
        return parts;
    }

    TypeExpr parse_app() {
        if (ts_.at(Tok::uident)) {
            Token head = ts_.take();
            std::vector<TypeExpr> args;
            while (ts_.at(Tok::uident) || ts_.at(Tok::lident) || ts_.at(Tok::lparen)) args.push_back(parse_simple());
            return TypeExpr::app(head.text, std::move(args), head.pos);
        }
        TypeExpr t = parse_simple();
        if (t.is_var() && (ts_.at(Tok::uident) || ts_.at(Tok::lident) || ts_.at(Tok::lparen)))
            throw Error(t.pos, "type variable " + t.name + " cannot be applied");
        return t;
    }

    TypeExpr parse_simple() {
        const Token& t = ts_.peek();
        switch (t.kind) {
        case Tok::uident: {
            Token h = ts_.take();
            return TypeExpr::app(h.text, {}, h.pos);
        }
        case Tok::lident: {
            Token h = ts_.take();
            return TypeExpr::var(h.text, h.pos);
        }
        case Tok::lparen: {
            Pos open = ts_.take().pos;
            std::vector<TypeExpr> inner = parse_arrow_chain();
            if (inner.size() > 1) throw Error(open, "function types not permitted in constructor arguments");
            ts_.expect(Tok::rparen, "to close type");
            return inner.front();
        }
        default: ts_.fail("expected a type");
        }
    }

    TokenStream ts_;
};

} // namespace detail

/// Name resolution: unknown type constructors, arity mismatches and
/// variables outside the declaration's parameters. One diagnostic per violation.
inline std::vector<Diagnostic> check_references(const Program& prog) {
    std::vector<Diagnostic> diags;
    std::function<void(const TypeExpr&, const TypeDecl&)> walk = [&](const TypeExpr& t, const TypeDecl& d) {
        if (t.is_var()) {
            if (std::find(d.params.begin(), d.params.end(), t.name) == d.params.end())
                diags.push_back({t.pos, Severity::error, "unbound type variable " + t.name});
            return;
        }
        const TypeDecl* target = prog.find(t.name);
        if (!target) {
            diags.push_back({t.pos, Severity::error, "unknown type constructor " + t.name});
        } else if (target->params.size() != t.args.size()) {
            diags.push_back({t.pos, Severity::error,
                             "arity mismatch: " + t.name + " expects " + std::to_string(target->params.size()) +
                                 " arguments but is given " + std::to_string(t.args.size())});
        }
        for (const auto& a : t.args) walk(a, d);
    };
    for (const auto& d : prog.decls)
        for (const auto& c : d.ctors) {
            for (const auto& a : c.args) walk(a, d);
            walk(c.result, d);
        }
    return diags;
}

/// Parses declarations without name resolution.
inline Program parse_program_syntax(std::string_view text, std::string source_name = "<input>") {
    return detail::DeclParser(lex(text)).run(std::move(source_name));
}

/// Parses and resolves a declaration file. Throws Error with positioned diagnostics.
inline Program parse_program(std::string_view text, std::string source_name = "<input>") {
    Program p = parse_program_syntax(text, std::move(source_name));
    if (auto diags = check_references(p); !diags.empty()) throw Error(std::move(diags));
    return p;
}

// ---------------------------------------------------------------------------
// value literals

/// A named value from a `.ndv` file: `name : Type` followed by `name = literal`.
struct ValueBinding {
    std::string name;
    TypeExpr type;
    Value value;
    Pos pos;
};

namespace detail {

inline TypeExpr substitute(const TypeExpr& t, const std::vector<std::string>& params,
                           const std::vector<TypeExpr>& actuals) {
    if (t.is_var()) {
        for (std::size_t k = 0; k < params.size(); ++k)
            if (params[k] == t.name) return actuals[k];
        return t;
    }
    TypeExpr out = t;
    for (auto& a : out.args) a = substitute(a, params, actuals);
    return out;
}

class ValueParser {
public:
    ValueParser(std::vector<Token> toks, const Program& prog) : ts_(std::move(toks)), prog_(prog) {}

    TokenStream& stream() { return ts_; }

    /// Concrete type: declared names applied to concrete types, or a base type.
    TypeExpr parse_type() {
        Token head = ts_.expect(Tok::uident, "in value type");
        std::vector<TypeExpr> args;
        while (ts_.at(Tok::uident) || ts_.at(Tok::lparen)) {
            if (ts_.at(Tok::lparen)) {
                ts_.take();
                args.push_back(parse_type());
                ts_.expect(Tok::rparen, "to close type");
            } else {
                Token a = ts_.take();
                args.push_back(TypeExpr::app(a.text, {}, a.pos));
            }
        }
        TypeExpr t = TypeExpr::app(head.text, std::move(args), head.pos);
        validate_type(t);
        return t;
    }

    Value parse_literal(const std::optional<TypeExpr>& expected) {
        if (ts_.at(Tok::lident)) {
            Token head = ts_.take();
            auto [decl, ctor] = lookup_ctor(head, expected);
            std::vector<Value> args;
            std::size_t k = 0;
            while (starts_simple() && !at_binding_start()) {
                std::optional<TypeExpr> et;
                if (ctor && k < ctor->args.size() && expected && decl) et = arg_type(*decl, *ctor, k, *expected);
                args.push_back(parse_simple(et));
                ++k;
            }
            return Value::con(head.text, std::move(args), head.pos);
        }
        return parse_simple(expected);
    }

    bool at_binding_start() const { return ts_.at(Tok::lident) && ts_.peek(1).kind == Tok::colon; }

private:
    void validate_type(const TypeExpr& t) const {
        if (is_base_type_name(t.name)) {
            if (!t.args.empty()) throw Error(t.pos, "base type " + t.name + " takes no arguments");
            return;
        }
        const TypeDecl* d = prog_.find(t.name);
        if (!d) throw Error(t.pos, "unknown type constructor " + t.name);
        if (d->params.size() != t.args.size())
            throw Error(t.pos, "arity mismatch: " + t.name + " expects " + std::to_string(d->params.size()) +
                                   " arguments but is given " + std::to_string(t.args.size()));
    }

    bool starts_simple() const {
        return ts_.at(Tok::lident) || ts_.at(Tok::nat) || ts_.at(Tok::atom) || ts_.at(Tok::lparen) ||
               ts_.at(Tok::lbracket);
    }

    std::pair<const TypeDecl*, const Constructor*> lookup_ctor(const Token& name,
                                                               const std::optional<TypeExpr>& expected) const {
        if (expected) {
            if (const TypeDecl* d = prog_.find(expected->name))
                for (const auto& c : d->ctors)
                    if (c.name == name.text) return {d, &c};
        }
        // Fall back to a program-wide search; ill-typed placements are left to
        // the runtime type checker.
        for (const auto& d : prog_.decls)
            for (const auto& c : d.ctors)
                if (c.name == name.text) return {&d, &c};
        throw Error(name.pos, "unknown constructor " + name.text);
    }

    static TypeExpr arg_type(const TypeDecl& d, const Constructor& c, std::size_t k, const TypeExpr& expected) {
        if (expected.name != d.name) return TypeExpr::app("?", {});
        return substitute(c.args[k], d.params, expected.args);
    }

    Value parse_simple(const std::optional<TypeExpr>& expected) {
        const Token& t = ts_.peek();
        switch (t.kind) {
        case Tok::nat: {
            Token n = ts_.take();
            return Value::nat(n.nat, n.pos);
        }
        case Tok::atom: {
            Token a = ts_.take();
            return Value::atom(a.text, a.pos);
        }
        case Tok::lident: {
            Token h = ts_.take();
            lookup_ctor(h, expected);
            return Value::con(h.text, {}, h.pos);
        }
        case Tok::lparen: {
            ts_.take();
            Value v = parse_literal(expected);
            ts_.expect(Tok::rparen, "to close value");
            return v;
        }
        case Tok::lbracket: return parse_brackets(expected);
        default: ts_.fail("expected a value");
        }
    }

    /// `[x1, ..., xn]` is `cons x1 (cons x2 (... (cons xn nil)))` for the
    /// binary and nullary constructors of the expected declaration; the element
    /// type is recomputed at every step so nested spines (Bush) work.
    Value parse_brackets(const std::optional<TypeExpr>& expected) {
        Token open = ts_.take();
        if (!expected || expected->name == "?")
            throw Error(open.pos, "cannot determine the type of a bracket literal here");
        TypeExpr spine = *expected;
        const TypeDecl* decl = nullptr;
        const Constructor* nil = nullptr;
        const Constructor* cons = nullptr;
        auto shape_of = [&](const TypeExpr& t) {
            decl = prog_.find(t.name);
            nil = cons = nullptr;
            if (!decl || decl->ctors.size() != 2) return false;
            for (const auto& c : decl->ctors) {
                if (c.args.empty()) nil = &c;
                if (c.args.size() == 2) cons = &c;
            }
            return nil && cons;
        };
        if (!shape_of(spine))
            throw Error(open.pos, "bracket sugar requires a declaration with one nullary and one binary "
                                  "constructor, but the expected type is " + to_string(spine));
        std::vector<Value> items;
        std::vector<std::string> cons_names;
        if (!ts_.at(Tok::rbracket)) {
            while (true) {
                if (!shape_of(spine))
                    throw Error(ts_.peek().pos, "bracket spine leaves the sugar shape at type " + to_string(spine));
                TypeExpr elem = substitute(cons->args[0], decl->params, spine.args);
                TypeExpr next = substitute(cons->args[1], decl->params, spine.args);
                cons_names.push_back(cons->name);
                items.push_back(parse_literal(elem));
                spine = next;
                if (ts_.at(Tok::comma)) {
                    ts_.take();
                    continue;
                }
                break;
            }
        }
        Pos close = ts_.expect(Tok::rbracket, "to close bracket literal").pos;
        if (!shape_of(spine)) throw Error(close, "bracket spine leaves the sugar shape at type " + to_string(spine));
        Value out = Value::con(nil->name, {}, open.pos);
        for (std::size_t k = items.size(); k-- > 0;)
            out = Value::con(cons_names[k], {std::move(items[k]), std::move(out)}, open.pos);
        return out;
    }

    TokenStream ts_;
    const Program& prog_;
};

inline std::vector<Token> strip_newlines(std::vector<Token> toks) {
    std::erase_if(toks, [](const Token& t) { return t.kind == Tok::newline; });
    return toks;
}

} // namespace detail

/// Parses a concrete value type such as `Bush Nat` or `Dylan Nat Atom`.
inline TypeExpr parse_value_type(std::string_view text, const Program& prog) {
    detail::ValueParser vp(detail::strip_newlines(lex(text)), prog);
    TypeExpr t = vp.parse_type();
    if (!vp.stream().at(Tok::eof)) vp.stream().fail("unexpected trailing input");
    return t;
}

/// Parses one value literal against a concrete target type.
inline Value parse_value_literal(std::string_view text, const Program& prog, const TypeExpr& target) {
    detail::ValueParser vp(detail::strip_newlines(lex(text)), prog);
    Value v = vp.parse_literal(target);
    if (!vp.stream().at(Tok::eof)) vp.stream().fail("unexpected trailing input");
    return v;
}

/// Parses a `.ndv` file: a sequence of `name : Type` / `name = literal` pairs.
inline std::vector<ValueBinding> parse_value_file(std::string_view text, const Program& prog) {
    detail::ValueParser vp(detail::strip_newlines(lex(text)), prog);
    auto& ts = vp.stream();
    std::vector<ValueBinding> out;
    std::set<std::string> names;
    while (!ts.at(Tok::eof)) {
        Token name = ts.expect(Tok::lident, "at start of value binding");
        ts.expect(Tok::colon, "after value name");
        TypeExpr type = vp.parse_type();
        Token again = ts.expect(Tok::lident, "to start the definition");
        if (again.text != name.text) throw Error(again.pos, "definition name " + again.text + " does not match " + name.text);
        ts.expect(Tok::equals, "in value definition");
        Value v = vp.parse_literal(type);
        if (!ts.at(Tok::eof) && !vp.at_binding_start()) ts.fail("unexpected input after value");
        if (!names.insert(name.text).second) throw Error(name.pos, "duplicate value " + name.text);
        out.push_back({name.text, std::move(type), std::move(v), name.pos});
    }
    if (out.empty()) throw Error(Pos{1, 1}, "no value bindings found");
    return out;
}

} // namespace nestfold
