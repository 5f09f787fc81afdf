#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "nestfold/diagnostic.hpp"

namespace nestfold {

/// A type expression in a constructor argument: a parameter or a declared
/// type constructor applied to arguments. Arrows never appear inside one.
struct TypeExpr {
    enum class Kind { var, app };

    Kind kind = Kind::var;
    std::string name;
    std::vector<TypeExpr> args;
    Pos pos;

    static TypeExpr var(std::string n, Pos p = {}) { return {Kind::var, std::move(n), {}, p}; }
    static TypeExpr app(std::string n, std::vector<TypeExpr> as, Pos p = {}) {
        return {Kind::app, std::move(n), std::move(as), p};
    }

    bool is_var() const { return kind == Kind::var; }

    // Positions are deliberately ignored.
    bool operator==(const TypeExpr& o) const {
        return kind == o.kind && name == o.name && args == o.args;
    }
};

struct Constructor {
    std::string name;
    std::vector<TypeExpr> args;
    TypeExpr result;
    Pos pos;

    /// The identifiers the result is applied to, when it is `D x1 .. xn` with
    /// plain variables; empty otherwise.
    std::vector<std::string> result_params() const {
        std::vector<std::string> out;
        if (result.kind != TypeExpr::Kind::app) return out;
        for (const auto& a : result.args) {
            if (!a.is_var()) return {};
            out.push_back(a.name);
        }
        return out;
    }

    bool operator==(const Constructor& o) const {
        return name == o.name && args == o.args && result == o.result;
    }
};

struct TypeDecl {
    std::string name;
    std::vector<std::string> params;
    std::vector<Constructor> ctors;
    Pos pos;

    bool operator==(const TypeDecl& o) const {
        return name == o.name && params == o.params && ctors == o.ctors;
    }
};

struct Program {
    std::vector<TypeDecl> decls;
    std::string source_name;

    const TypeDecl* find(const std::string& name) const {
        for (const auto& d : decls)
            if (d.name == name) return &d;
        return nullptr;
    }

    bool operator==(const Program& o) const { return decls == o.decls; }
};

struct Atom {
    std::string name;
    auto operator<=>(const Atom&) const = default;
};

/// Concrete data value: a constructor tree over natural-number or atom payloads.
struct Value {
    enum class Kind { base, con };
    using Payload = std::variant<std::uint64_t, Atom>;

    Kind kind = Kind::base;
    Payload payload{std::uint64_t{0}};
    std::string ctor;
    std::vector<Value> args;
    Pos pos;

    static Value nat(std::uint64_t n, Pos p = {}) { return {Kind::base, n, {}, {}, p}; }
    static Value atom(std::string a, Pos p = {}) { return {Kind::base, Atom{std::move(a)}, {}, {}, p}; }
    static Value con(std::string c, std::vector<Value> as = {}, Pos p = {}) {
        return {Kind::con, std::uint64_t{0}, std::move(c), std::move(as), p};
    }

    bool is_base() const { return kind == Kind::base; }

    bool operator==(const Value& o) const {
        if (kind != o.kind) return false;
        if (kind == Kind::base) return payload == o.payload;
        return ctor == o.ctor && args == o.args;
    }
};

/// Number of constructor nodes; base payloads count zero.
inline std::size_t value_size(const Value& v) {
    if (v.is_base()) return 0;
    std::size_t n = 1;
    for (const auto& a : v.args) n += value_size(a);
    return n;
}

// ---------------------------------------------------------------------------
// printing

inline void print_type(std::ostream& out, const TypeExpr& t, bool nested = false) {
    if (t.is_var() || t.args.empty()) {
        out << t.name;
        return;
    }
    if (nested) out << '(';
    out << t.name;
    for (const auto& a : t.args) {
        out << ' ';
        print_type(out, a, true);
    }
    if (nested) out << ')';
}

inline std::string to_string(const TypeExpr& t) {
    std::ostringstream out;
    print_type(out, t);
    return out.str();
}

/// Prints the program in the surface syntax accepted by parse_program.
inline void print_program(std::ostream& out, const Program& p) {
    bool first = true;
    for (const auto& d : p.decls) {
        if (!first) out << '\n';
        first = false;
        out << "data " << d.name;
        for (const auto& prm : d.params) out << " (" << prm << " : Set)";
        out << " : Set where\n";
        for (const auto& c : d.ctors) {
            out << "  " << c.name << " : ";
            for (const auto& a : c.args) {
                print_type(out, a);
                out << " -> ";
            }
            print_type(out, c.result);
            out << '\n';
        }
    }
}

inline std::string to_string(const Program& p) {
    std::ostringstream out;
    print_program(out, p);
    return out.str();
}

inline void print_value(std::ostream& out, const Value& v, bool nested = false) {
    if (v.is_base()) {
        if (const auto* n = std::get_if<std::uint64_t>(&v.payload))
            out << *n;
        else
            out << '\'' << std::get<Atom>(v.payload).name;
        return;
    }
    if (v.args.empty()) {
        out << v.ctor;
        return;
    }
    if (nested) out << '(';
    out << v.ctor;
    for (const auto& a : v.args) {
        out << ' ';
        print_value(out, a, true);
    }
    if (nested) out << ')';
}

/// Explicit constructor-application form; re-parseable as a value literal.
inline std::string to_string(const Value& v) {
    std::ostringstream out;
    print_value(out, v);
    return out.str();
}

} // namespace nestfold
