#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "nestfold/derivation.hpp"
#include "nestfold/term.hpp"

namespace nestfold {

struct EmitModule {
    std::string name;
    std::vector<std::string> imports;  // fixed preamble lines, emitted verbatim
    std::vector<DerivedDef> defs;
    bool nat_index = false;            // render index constructors as zero/succ and numerals
};

namespace detail {

inline std::string spaces(std::size_t n) { return std::string(n, ' '); }

inline std::string join(const std::vector<std::string>& xs, const char* sep = " ") {
    std::string out;
    for (std::size_t k = 0; k < xs.size(); ++k) out += (k ? sep : "") + xs[k];
    return out;
}

/// Term printer. `indent` is the column that a line broken inside the term
/// starts at; arguments marked `brk` go two columns further in.
class AgdaPrinter {
public:
    explicit AgdaPrinter(bool nat) : nat_(nat) {}

    std::string term(const Term& t, std::size_t indent) const {
        switch (t.kind) {
        case Term::Kind::var:
        case Term::Kind::ref:
        case Term::Kind::set: return checked_name(t.name);
        case Term::Kind::implicit: return "{" + checked_name(t.name) + "}";
        case Term::Kind::index_con:
            if (nat_) return t.index_var ? "zero" : "succ";
            return checked_name(t.name);
        case Term::Kind::app: return app(t, indent);
        case Term::Kind::lam: return "\\ " + join(t.binders) + " -> " + term(t.kids.at(0), indent);
        case Term::Kind::pi: return pi(t, indent);
        case Term::Kind::arrow: {
            const Term& dom = t.kids.at(0);
            bool wrap = dom.kind == Term::Kind::arrow || dom.kind == Term::Kind::pi || dom.kind == Term::Kind::lam;
            std::string d = wrap ? "(" + term(dom, indent + 1) + ")" : term(dom, indent);
            return d + tail(t.kids.at(1), indent);
        }
        }
        throw std::logic_error("unscoped term");
    }

    std::string arg(const Term& t, std::size_t indent) const {
        if (atomic(t)) return term(t, indent);
        return "(" + term(t, indent + 1) + ")";
    }

private:
    bool atomic(const Term& t) const {
        if (t.kind != Term::Kind::app) return t.kind != Term::Kind::lam && t.kind != Term::Kind::pi &&
                                              t.kind != Term::Kind::arrow;
        return t.kids.size() == 1 || numeral(t) > 0;
    }

    /// Closed successor chains render as decimal literals in nat mode.
    std::size_t numeral(const Term& t) const {
        if (!nat_) return 0;
        std::size_t k = 0;
        const Term* cur = &t;
        while (cur->kind == Term::Kind::app && cur->kids.size() == 2 &&
               cur->kids[0].kind == Term::Kind::index_con && !cur->kids[0].index_var) {
            ++k;
            cur = &cur->kids[1];
        }
        if (cur->kind == Term::Kind::index_con && cur->index_var) return k;
        return 0;
    }

    std::string app(const Term& t, std::size_t indent) const {
        if (t.kids.size() == 1) return "(" + term(t.kids[0], indent + 1) + ")";
        if (std::size_t k = numeral(t)) return std::to_string(k);
        std::string out = arg(t.kids[0], indent);
        for (std::size_t k = 1; k < t.kids.size(); ++k) {
            const Term& a = t.kids[k];
            if (a.brk)
                out += "\n" + spaces(indent + 2) + arg(a, indent + 2);
            else
                out += " " + arg(a, indent);
        }
        return out;
    }

    std::string pi(const Term& t, std::size_t indent) const {
        std::string head;
        if (!t.has_domain) {
            head = "forall " + join(t.binders);
        } else if (t.implicit_binder) {
            head = std::string(t.forall_kw ? "forall " : "") + "{" + join(t.binders) + " : " +
                   term(t.kids[0], indent + 2) + "}";
        } else {
            head = "(" + join(t.binders) + " : " + term(t.kids[0], indent + 2) + ")";
        }
        return head + tail(t.kids.at(1), indent);
    }

    std::string tail(const Term& cod, std::size_t indent) const {
        if (cod.brk) return " ->\n" + spaces(indent) + term(cod, indent);
        return " -> " + term(cod, indent);
    }

    static std::string checked_name(const std::string& n) {
        for (unsigned char ch : n)
            if (ch >= 0x80) throw std::logic_error("non-ASCII identifier in emitted term: " + n);
        return n;
    }

    bool nat_;
};

inline void emit_function(const AgdaPrinter& pr, const DerivedDef& def, std::size_t base, std::string& out) {
    const std::string pad = spaces(base);
    out += pad + def.name + " : " + pr.term(def.signature, base + def.name.size() + 3) + "\n";
    for (const auto& c : def.clauses) {
        std::string lhs = pad + def.name;
        for (const auto& p : c.patterns) lhs += " " + pr.arg(p, base);
        if (c.body_on_new_line)
            out += lhs + " =\n" + spaces(base + 2) + pr.term(c.body, base + 2) + "\n";
        else
            out += lhs + " = " + pr.term(c.body, base) + "\n";
        if (!c.where.empty()) {
            out += pad + "  where\n";
            for (const auto& w : c.where) emit_function(pr, w, base + 4, out);
        }
    }
}

inline std::string data_binders(const std::vector<std::string>& params) {
    return params.empty() ? "" : " (" + join(params) + " : Set)";
}

inline void emit_data(const AgdaPrinter& pr, const DerivedDef& def, std::string& out) {
    if (def.role == "signature") {
        out += "data " + def.name + data_binders(def.data_params) + " : " + pr.term(def.signature, 0) + "\n";
        return;
    }
    if (def.role == "source-after-signature") {
        out += "data " + def.name + (def.data_params.empty() ? "" : " " + join(def.data_params)) + " where\n";
    } else {
        out += "data " + def.name + data_binders(def.data_params) + " : " + pr.term(def.signature, 0) + " where\n";
    }
    for (const auto& c : def.ctors) out += "  " + c.name + " : " + pr.term(c.type, c.name.size() + 5) + "\n";
}

} // namespace detail

inline std::string certificate_comment(const DerivedDef& def) {
    Certificate c = check_structural(def);
    if (!c.ok) throw std::logic_error("definition " + def.name + " fails the structural check: " + c.detail);
    return "-- termination: " + c.detail;
}

/// Renders a module as ASCII Agda. Identical input gives identical bytes.
inline std::string emit_agda(const EmitModule& m) {
    detail::AgdaPrinter pr(m.nat_index);
    std::string out = "module " + m.name + " where\n";
    for (const auto& line : m.imports) out += line + "\n";
    const DerivedDef* prev = nullptr;
    for (const auto& def : m.defs) {
        bool grouped = prev && prev->role == "signature" && def.role == "signature";
        if (!grouped) out += "\n";
        if (def.kind == DerivedDef::Kind::data) {
            detail::emit_data(pr, def, out);
        } else {
            out += certificate_comment(def) + "\n";
            detail::emit_function(pr, def, 0, out);
        }
        for (const auto& line : def.trailing_lines) out += line + "\n";
        prev = &def;
    }
    return out;
}

/// Default preamble: a generated-file banner. No imports are needed because
/// every referenced name is defined in the module itself.
inline std::vector<std::string> default_preamble() {
    return {"", "-- Generated by nestfold; edits will be overwritten."};
}

inline EmitModule make_module(const MutualGroup& g, const Derivation& d, bool nat_index) {
    EmitModule m;
    m.name = g.joined_name();
    m.imports = default_preamble();
    m.defs = d.defs;
    m.nat_index = nat_index;
    return m;
}

} // namespace nestfold
