#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nestfold/ast.hpp"
#include "nestfold/parser.hpp"

namespace nestfold {

enum class Classification { ordinary, nested };

inline const char* to_string(Classification c) { return c == Classification::nested ? "nested" : "ordinary"; }

/// A strongly connected component of the type-reference graph.
struct MutualGroup {
    std::vector<TypeDecl> decls;  // source order
    std::size_t base_var_count = 0;
    Classification classification = Classification::ordinary;

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const auto& d : decls) out.push_back(d.name);
        return out;
    }

    std::optional<std::size_t> position(const std::string& decl_name) const {
        for (std::size_t k = 0; k < decls.size(); ++k)
            if (decls[k].name == decl_name) return k;
        return std::nullopt;
    }

    /// Concatenated declaration names, e.g. `BobDylan`.
    std::string joined_name() const {
        std::string out;
        for (const auto& d : decls) out += d.name;
        return out;
    }
};

/// Element of the index universe: a base variable or a group constructor
/// applied to index expressions. `slot` is the variable ordinal or the
/// declaration's position in its group.
struct IndexExpr {
    enum class Kind { var, app };

    Kind kind = Kind::var;
    std::size_t slot = 0;
    std::vector<IndexExpr> args;

    static IndexExpr var(std::size_t k) { return {Kind::var, k, {}}; }
    static IndexExpr app(std::size_t decl, std::vector<IndexExpr> as) { return {Kind::app, decl, std::move(as)}; }

    bool is_var() const { return kind == Kind::var; }

    bool operator==(const IndexExpr& o) const { return kind == o.kind && slot == o.slot && args == o.args; }
    bool operator!=(const IndexExpr& o) const { return !(*this == o); }
    bool operator<(const IndexExpr& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (slot != o.slot) return slot < o.slot;
        return std::lexicographical_compare(args.begin(), args.end(), o.args.begin(), o.args.end());
    }
};

struct IndexTypeSpec {
    std::string name;
    std::vector<std::string> var_ctors;
    std::vector<std::pair<std::string, std::size_t>> app_ctors;
};

// ---------------------------------------------------------------------------

/// Every rule a program must satisfy before classification. Keeps going after
/// the first violation.
inline std::vector<Diagnostic> well_formed(const Program& prog) {
    std::vector<Diagnostic> diags = check_references(prog);
    std::set<std::string> seen;
    for (const auto& d : prog.decls) {
        if (!seen.insert(d.name).second) diags.push_back({d.pos, Severity::error, "duplicate declaration " + d.name});
        if (d.ctors.empty())
            diags.push_back({d.pos, Severity::error, "declaration " + d.name + " needs at least one constructor"});
        for (const auto& c : d.ctors) {
            bool ok = c.result.kind == TypeExpr::Kind::app && c.result.name == d.name &&
                      c.result_params() == d.params;
            if (!ok)
                diags.push_back({c.result.pos.line ? c.result.pos : c.pos, Severity::error,
                                 "constructor result must be the declared head applied to its parameters"});
        }
    }
    std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
        return std::pair(a.pos.line, a.pos.col) < std::pair(b.pos.line, b.pos.col);
    });
    return diags;
}

namespace detail {

inline void collect_refs(const TypeExpr& t, std::set<std::string>& out) {
    if (t.is_var()) return;
    out.insert(t.name);
    for (const auto& a : t.args) collect_refs(a, out);
}

inline bool has_irregular_occurrence(const TypeExpr& t, const std::map<std::string, const TypeDecl*>& members) {
    if (t.is_var()) return false;
    if (auto it = members.find(t.name); it != members.end()) {
        const auto& params = it->second->params;
        if (t.args.size() != params.size()) return true;
        for (std::size_t k = 0; k < params.size(); ++k)
            if (!t.args[k].is_var() || t.args[k].name != params[k]) return true;
    }
    for (const auto& a : t.args)
        if (has_irregular_occurrence(a, members)) return true;
    return false;
}

} // namespace detail

/// Groups declarations into strongly connected components of the reference
/// graph, dependencies first; classifies each group as nested or ordinary.
inline std::vector<MutualGroup> classify(const Program& prog) {
    const std::size_t n = prog.decls.size();
    std::map<std::string, std::size_t> index;
    for (std::size_t k = 0; k < n; ++k) index[prog.decls[k].name] = k;

    std::vector<std::vector<std::size_t>> edges(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::set<std::string> refs;
        for (const auto& c : prog.decls[k].ctors)
            for (const auto& a : c.args) detail::collect_refs(a, refs);
        for (const auto& r : refs)
            if (auto it = index.find(r); it != index.end()) edges[k].push_back(it->second);
        std::sort(edges[k].begin(), edges[k].end());
    }

    // Tarjan; components come out with their dependencies already emitted.
    std::vector<int> order(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> comps;
    int counter = 0;
    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        order[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (std::size_t w : edges[v]) {
            if (order[w] < 0) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], order[w]);
            }
        }
        if (low[v] == order[v]) {
            std::vector<std::size_t> comp;
            std::size_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp.push_back(w);
            } while (w != v);
            std::sort(comp.begin(), comp.end());
            comps.push_back(std::move(comp));
        }
    };
    for (std::size_t v = 0; v < n; ++v)
        if (order[v] < 0) visit(v);

    std::vector<MutualGroup> groups;
    for (const auto& comp : comps) {
        MutualGroup g;
        std::map<std::string, const TypeDecl*> members;
        for (std::size_t k : comp) {
            g.decls.push_back(prog.decls[k]);
            members[prog.decls[k].name] = &prog.decls[k];
            g.base_var_count = std::max(g.base_var_count, prog.decls[k].params.size());
        }
        for (const auto& d : g.decls)
            for (const auto& c : d.ctors)
                for (const auto& a : c.args)
                    if (detail::has_irregular_occurrence(a, members)) g.classification = Classification::nested;
        groups.push_back(std::move(g));
    }
    return groups;
}

/// Restrictions the derivation relies on beyond well-formedness: constructor
/// arguments may mention only the group's own declarations, constructor names
/// are unique across the group, and at most 26 index variables are needed.
inline std::vector<Diagnostic> group_diagnostics(const MutualGroup& g) {
    std::vector<Diagnostic> diags;
    const auto names = g.names();
    const std::set<std::string> members(names.begin(), names.end());
    std::function<void(const TypeExpr&)> walk = [&](const TypeExpr& t) {
        if (t.is_var()) return;
        if (!members.count(t.name))
            diags.push_back({t.pos, Severity::error,
                             "cross-group nesting not supported in v1: " + t.name + " is outside the group"});
        for (const auto& a : t.args) walk(a);
    };
    std::map<std::string, Pos> ctor_names;
    for (const auto& d : g.decls)
        for (const auto& c : d.ctors) {
            for (const auto& a : c.args) walk(a);
            if (!ctor_names.emplace(c.name, c.pos).second)
                diags.push_back({c.pos, Severity::error, "constructor name " + c.name + " is used twice in one group"});
        }
    if (g.base_var_count > 26)
        diags.push_back({g.decls.front().pos, Severity::error, "more than 26 index variables are not supported"});
    return diags;
}

inline std::string index_var_name(std::size_t k) { return std::string("var") + static_cast<char>('A' + k); }

/// Variable constructors `varA…`, then `<Decl>C` per declaration.
inline IndexTypeSpec index_universe(const MutualGroup& g) {
    if (g.base_var_count > 26) throw Error(g.decls.front().pos, "more than 26 index variables are not supported");
    IndexTypeSpec spec;
    spec.name = g.joined_name() + "Index";
    for (std::size_t k = 0; k < g.base_var_count; ++k) spec.var_ctors.push_back(index_var_name(k));
    for (const auto& d : g.decls) spec.app_ctors.emplace_back(d.name + "C", d.params.size());
    return spec;
}

/// Translates a type expression, read in the context of declaration
/// `decl_pos`, into the index universe: parameters map to variables by
/// position, group members to their index constructors.
inline IndexExpr type_to_index(const MutualGroup& g, std::size_t decl_pos, const TypeExpr& t) {
    const TypeDecl& ctx = g.decls.at(decl_pos);
    if (t.is_var()) {
        auto it = std::find(ctx.params.begin(), ctx.params.end(), t.name);
        if (it == ctx.params.end()) throw Error(t.pos, "unbound type variable " + t.name);
        return IndexExpr::var(static_cast<std::size_t>(it - ctx.params.begin()));
    }
    auto member = g.position(t.name);
    if (!member) throw Error(t.pos, "cross-group nesting not supported in v1");
    std::vector<IndexExpr> args;
    for (const auto& a : t.args) args.push_back(type_to_index(g, decl_pos, a));
    return IndexExpr::app(*member, std::move(args));
}

/// Replaces variable k with `actuals[k]`.
inline IndexExpr instantiate(const IndexExpr& tmpl, const std::vector<IndexExpr>& actuals) {
    if (tmpl.is_var()) return actuals.at(tmpl.slot);
    IndexExpr out = tmpl;
    for (auto& a : out.args) a = instantiate(a, actuals);
    return out;
}

/// The index `DC varA … varK` denoting declaration D applied to base variables.
inline IndexExpr decl_index(const MutualGroup& g, std::size_t decl_pos) {
    std::vector<IndexExpr> vars;
    for (std::size_t k = 0; k < g.decls.at(decl_pos).params.size(); ++k) vars.push_back(IndexExpr::var(k));
    return IndexExpr::app(decl_pos, std::move(vars));
}

inline std::size_t index_depth(const IndexExpr& i) {
    std::size_t d = 0;
    for (const auto& a : i.args) d = std::max(d, index_depth(a));
    return i.is_var() ? 0 : d + 1;
}

inline bool well_formed_index(const MutualGroup& g, const IndexExpr& i) {
    if (i.is_var()) return i.slot < g.base_var_count;
    if (i.slot >= g.decls.size() || i.args.size() != g.decls[i.slot].params.size()) return false;
    return std::all_of(i.args.begin(), i.args.end(), [&](const IndexExpr& a) { return well_formed_index(g, a); });
}

inline void print_index(std::ostream& out, const MutualGroup& g, const IndexExpr& i, bool nested = false) {
    if (i.is_var()) {
        out << index_var_name(i.slot);
        return;
    }
    if (nested && !i.args.empty()) out << '(';
    out << g.decls.at(i.slot).name << 'C';
    for (const auto& a : i.args) {
        out << ' ';
        print_index(out, g, a, true);
    }
    if (nested && !i.args.empty()) out << ')';
}

inline std::string to_string(const MutualGroup& g, const IndexExpr& i) {
    std::ostringstream out;
    print_index(out, g, i);
    return out.str();
}

/// Singleton groups over a unary declaration have an index universe
/// isomorphic to the naturals: `DC^k varA` corresponds to k.
inline bool has_nat_index(const MutualGroup& g) {
    return g.decls.size() == 1 && g.decls.front().params.size() == 1;
}

inline IndexExpr nat_to_index(std::size_t k) {
    IndexExpr i = IndexExpr::var(0);
    while (k-- > 0) i = IndexExpr::app(0, {std::move(i)});
    return i;
}

inline std::size_t index_to_nat(const IndexExpr& i) {
    std::size_t k = 0;
    const IndexExpr* cur = &i;
    while (!cur->is_var()) {
        if (cur->args.size() != 1) throw Error(Pos{}, "index is not in the unary universe");
        ++k;
        cur = &cur->args.front();
    }
    return k;
}

/// Concrete value type (`Dylan Nat Atom`) to an index plus the base type of
/// each variable. Distinct base types get distinct variables in order of
/// first occurrence.
struct TypedIndex {
    IndexExpr index;
    std::vector<std::string> base_types;
};

inline TypedIndex value_type_to_index(const MutualGroup& g, const TypeExpr& t) {
    TypedIndex out;
    std::function<IndexExpr(const TypeExpr&)> go = [&](const TypeExpr& e) -> IndexExpr {
        if (is_base_type_name(e.name)) {
            auto it = std::find(out.base_types.begin(), out.base_types.end(), e.name);
            if (it != out.base_types.end()) return IndexExpr::var(static_cast<std::size_t>(it - out.base_types.begin()));
            out.base_types.push_back(e.name);
            if (out.base_types.size() > g.base_var_count)
                throw Error(e.pos, "type " + to_string(t) + " needs more base variables than the group provides");
            return IndexExpr::var(out.base_types.size() - 1);
        }
        auto member = g.position(e.name);
        if (!member) throw Error(e.pos, e.name + " is not part of this group");
        std::vector<IndexExpr> args;
        for (const auto& a : e.args) args.push_back(go(a));
        return IndexExpr::app(*member, std::move(args));
    };
    out.index = go(t);
    return out;
}

/// Locates the group containing the declaration named `name`.
inline const MutualGroup* group_of(const std::vector<MutualGroup>& groups, const std::string& name) {
    for (const auto& g : groups)
        if (g.position(name)) return &g;
    return nullptr;
}

} // namespace nestfold
