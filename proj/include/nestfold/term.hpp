#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace nestfold {

/// Language-neutral term used for both the types and the right-hand sides of
/// generated definitions.
struct Term {
    enum class Kind {
        var,        // locally bound name
        ref,        // global: type, constructor or generated definition
        index_con,  // constructor of the index universe (varA, BushC, …)
        set,        // the universe `Set`
        app,        // kids[0] applied to kids[1..]
        lam,        // \ binders -> kids[0]
        pi,         // (binders : kids[0]) -> kids[1]; no kids[0] when !has_domain
        arrow,      // kids[0] -> kids[1]
        implicit,   // `{x}` pattern
    };

    Kind kind = Kind::var;
    std::string name;
    std::vector<std::string> binders;
    std::vector<Term> kids;

    bool implicit_binder = false;  // pi: `{x : T}`
    bool forall_kw = false;        // pi: rendered with `forall`
    bool has_domain = true;        // pi: false for `forall a b -> …`
    bool value_binder = false;     // pi: binds a value (erased when comparing ind with nfold)
    bool index_var = false;        // index_con: a variable constructor such as varA

    bool brk = false;  // rendering hint: start this term on a new line

    bool operator==(const Term& o) const {
        return kind == o.kind && name == o.name && binders == o.binders && kids == o.kids &&
               implicit_binder == o.implicit_binder && forall_kw == o.forall_kw && has_domain == o.has_domain &&
               index_var == o.index_var;
    }
};

namespace term {

inline Term var(std::string n) { return Term{Term::Kind::var, std::move(n)}; }
inline Term ref(std::string n) { return Term{Term::Kind::ref, std::move(n)}; }
inline Term set() { return Term{Term::Kind::set, "Set"}; }

inline Term icon(std::string n, bool is_var) {
    Term t{Term::Kind::index_con, std::move(n)};
    t.index_var = is_var;
    return t;
}

inline Term app(Term head, std::vector<Term> args) {
    if (args.empty()) return head;
    if (head.kind == Term::Kind::app) {
        for (auto& a : args) head.kids.push_back(std::move(a));
        return head;
    }
    Term t{Term::Kind::app};
    t.kids.push_back(std::move(head));
    for (auto& a : args) t.kids.push_back(std::move(a));
    return t;
}

inline Term lam(std::vector<std::string> binders, Term body) {
    Term t{Term::Kind::lam};
    t.binders = std::move(binders);
    t.kids.push_back(std::move(body));
    return t;
}

inline Term arrow(Term dom, Term cod) {
    Term t{Term::Kind::arrow};
    t.kids.push_back(std::move(dom));
    t.kids.push_back(std::move(cod));
    return t;
}

/// Right-nested arrow chain `a -> b -> … -> r`.
inline Term arrows(std::vector<Term> doms, Term result) {
    for (std::size_t k = doms.size(); k-- > 0;) result = arrow(std::move(doms[k]), std::move(result));
    return result;
}

inline Term pi(std::vector<std::string> binders, Term dom, Term body) {
    Term t{Term::Kind::pi};
    t.binders = std::move(binders);
    t.kids.push_back(std::move(dom));
    t.kids.push_back(std::move(body));
    return t;
}

inline Term value_pi(std::string binder, Term dom, Term body) {
    Term t = pi({std::move(binder)}, std::move(dom), std::move(body));
    t.value_binder = true;
    return t;
}

inline Term implicit_pi(std::vector<std::string> binders, Term dom, Term body, bool with_forall = false) {
    Term t = pi(std::move(binders), std::move(dom), std::move(body));
    t.implicit_binder = true;
    t.forall_kw = with_forall;
    return t;
}

/// `forall a b -> body` with no domain annotation.
inline Term forall(std::vector<std::string> binders, Term body) {
    if (binders.empty()) return body;
    Term t{Term::Kind::pi};
    t.binders = std::move(binders);
    t.forall_kw = true;
    t.has_domain = false;
    t.kids.push_back(Term{});
    t.kids.push_back(std::move(body));
    return t;
}

inline Term implicit_pattern(std::string n) { return Term{Term::Kind::implicit, std::move(n)}; }

inline Term broken(Term t) {
    t.brk = true;
    return t;
}

inline std::vector<Term> vars(const std::vector<std::string>& names) {
    std::vector<Term> out;
    for (const auto& n : names) out.push_back(var(n));
    return out;
}

} // namespace term

struct Clause;

struct DataCtor {
    std::string name;
    Term type;
};

/// One generated definition: a data declaration or a function by clauses.
struct DerivedDef {
    enum class Kind { data, function };

    std::string name;
    Kind kind = Kind::function;
    std::string role;  // "index", "interp", "nfold", … used for ordering and reports

    std::vector<std::string> data_params;  // data: rendered as `(a : Set)`
    Term signature;                        // function: its type; data: its kind
    std::vector<DataCtor> ctors;
    std::vector<Clause> clauses;

    /// Explicit argument position on which recursion is structural.
    std::optional<std::size_t> decreasing;
    std::vector<std::string> trailing_lines;  // pragmas emitted after the definition
};

struct Clause {
    std::vector<Term> patterns;
    Term body;
    bool body_on_new_line = false;
    std::vector<DerivedDef> where;
};

// ---------------------------------------------------------------------------
// structural-recursion certificate

namespace detail {

inline void pattern_vars(const Term& p, bool under_con, std::set<std::string>& strict) {
    switch (p.kind) {
    case Term::Kind::var:
        if (under_con) strict.insert(p.name);
        break;
    case Term::Kind::app:
        for (std::size_t k = 1; k < p.kids.size(); ++k) pattern_vars(p.kids[k], true, strict);
        break;
    default: break;
    }
}

inline void find_calls(const Term& t, const std::string& name, std::vector<const Term*>& calls, bool& bare) {
    if (t.kind == Term::Kind::app && t.kids.front().kind == Term::Kind::ref && t.kids.front().name == name) {
        calls.push_back(&t);
        for (std::size_t k = 1; k < t.kids.size(); ++k) find_calls(t.kids[k], name, calls, bare);
        return;
    }
    if (t.kind == Term::Kind::ref && t.name == name) bare = true;
    for (const auto& k : t.kids) find_calls(k, name, calls, bare);
}

inline std::vector<Term> explicit_patterns(const Clause& c) {
    std::vector<Term> out;
    for (const auto& p : c.patterns)
        if (p.kind != Term::Kind::implicit) out.push_back(p);
    return out;
}

} // namespace detail

struct Certificate {
    bool recursive = false;
    bool ok = true;
    std::string detail;  // the strict subterms recursed on, or the failure reason
};

/// Checks that every recursive call passes, at the decreasing position, a
/// variable bound strictly inside a constructor pattern at that position.
/// Calls inside `where` blocks are checked against the enclosing clause.
inline Certificate check_structural(const DerivedDef& def) {
    Certificate cert;
    if (def.kind == DerivedDef::Kind::data) return cert;
    std::set<std::string> used;
    for (const auto& c : def.clauses) {
        std::vector<const Term*> calls;
        bool bare = false;
        detail::find_calls(c.body, def.name, calls, bare);
        for (const auto& w : c.where)
            for (const auto& wc : w.clauses) detail::find_calls(wc.body, def.name, calls, bare);
        if (calls.empty() && !bare) continue;
        cert.recursive = true;
        if (bare) return {true, false, "unapplied recursive reference to " + def.name};
        if (!def.decreasing) return {true, false, "recursive definition without a decreasing argument"};
        const std::size_t d = *def.decreasing;
        auto pats = detail::explicit_patterns(c);
        if (d >= pats.size()) return {true, false, "decreasing position beyond the clause patterns"};
        std::set<std::string> strict;
        detail::pattern_vars(pats[d], false, strict);
        for (const Term* call : calls) {
            if (call->kids.size() <= d + 1)
                return {true, false, "recursive call with too few arguments to reach the decreasing position"};
            const Term& arg = call->kids[d + 1];
            if (arg.kind != Term::Kind::var || !strict.count(arg.name))
                return {true, false, "recursive call on a non-subterm argument"};
            used.insert(arg.name);
        }
    }
    if (cert.recursive) {
        std::string names;
        for (const auto& n : used) names += (names.empty() ? "" : ", ") + n;
        cert.detail = "structural on argument " + std::to_string(*def.decreasing + 1) + " (" + names + ")";
    } else {
        cert.detail = "non-recursive";
    }
    return cert;
}

/// Drops value binders and the value argument of `family` applications; used
/// to compare an induction principle's method types with the fold's.
inline Term erase_value_dependency(const Term& t, const std::string& family) {
    if (t.kind == Term::Kind::pi && t.value_binder) return erase_value_dependency(t.kids[1], family);
    Term out = t;
    if (t.kind == Term::Kind::app && t.kids.front().kind == Term::Kind::var && t.kids.front().name == family &&
        t.kids.size() == 3)
        out.kids.pop_back();
    for (auto& k : out.kids) k = erase_value_dependency(k, family);
    return out;
}

} // namespace nestfold
