#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "nestfold/analysis.hpp"
#include "nestfold/ast.hpp"
#include "nestfold/diagnostic.hpp"

namespace nestfold {

/// Runtime value produced by folds: a natural, an atom, a constructor node
/// whose children are results, an index, or an opaque function.
class Result {
public:
    enum class Kind { nat, atom, node, index, fun };
    using Fn = std::function<Result(const Result&)>;

    static Result nat(std::uint64_t n) {
        Result r(Kind::nat);
        r.n_ = n;
        return r;
    }
    static Result atom(std::string a) {
        Result r(Kind::atom);
        r.name_ = std::move(a);
        return r;
    }
    static Result node(std::string ctor, std::vector<Result> kids = {}) {
        Result r(Kind::node);
        r.name_ = std::move(ctor);
        r.kids_ = std::make_shared<const std::vector<Result>>(std::move(kids));
        return r;
    }
    static Result index(IndexExpr i) {
        Result r(Kind::index);
        r.index_ = std::make_shared<const IndexExpr>(std::move(i));
        return r;
    }
    static Result fun(Fn f) {
        Result r(Kind::fun);
        r.fn_ = std::make_shared<const Fn>(std::move(f));
        return r;
    }

    Kind kind() const { return kind_; }
    bool is(Kind k) const { return kind_ == k; }

    std::uint64_t as_nat() const {
        expect(Kind::nat, "natural");
        return n_;
    }
    const std::string& ctor() const {
        expect(Kind::node, "constructor node");
        return name_;
    }
    const std::string& atom_name() const {
        expect(Kind::atom, "atom");
        return name_;
    }
    const std::vector<Result>& kids() const {
        expect(Kind::node, "constructor node");
        return *kids_;
    }
    const IndexExpr& as_index() const {
        expect(Kind::index, "index");
        return *index_;
    }

    Result operator()(const Result& arg) const {
        expect(Kind::fun, "function");
        return (*fn_)(arg);
    }
    Result operator()(const Result& a, const Result& b) const { return (*this)(a)(b); }

    /// Structural equality. Functions are not comparable; apply them first.
    bool operator==(const Result& o) const {
        if (kind_ == Kind::fun || o.kind_ == Kind::fun) throw EvalError("function results are compared only after application");
        if (kind_ != o.kind_) return false;
        switch (kind_) {
        case Kind::nat: return n_ == o.n_;
        case Kind::atom: return name_ == o.name_;
        case Kind::node: return name_ == o.name_ && *kids_ == *o.kids_;
        case Kind::index: return *index_ == *o.index_;
        case Kind::fun: break;
        }
        return false;
    }

private:
    explicit Result(Kind k) : kind_(k) {}

    void expect(Kind k, const char* what) const {
        if (kind_ != k) throw EvalError(std::string("runtime shape mismatch: expected a ") + what);
    }

    Kind kind_;
    std::uint64_t n_ = 0;
    std::string name_;
    std::shared_ptr<const std::vector<Result>> kids_;
    std::shared_ptr<const IndexExpr> index_;
    std::shared_ptr<const Fn> fn_;
};

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    if (a > std::numeric_limits<std::uint64_t>::max() - b) throw EvalError("natural number overflow");
    return a + b;
}

inline Result from_value(const Value& v) {
    if (v.is_base()) {
        if (auto* n = std::get_if<std::uint64_t>(&v.payload)) return Result::nat(*n);
        return Result::atom(std::get<Atom>(v.payload).name);
    }
    std::vector<Result> kids;
    for (const auto& a : v.args) kids.push_back(from_value(a));
    return Result::node(v.ctor, std::move(kids));
}

inline Value index_as_value(const MutualGroup& g, const IndexExpr& i) {
    if (i.is_var()) return Value::con(index_var_name(i.slot));
    std::vector<Value> args;
    for (const auto& a : i.args) args.push_back(index_as_value(g, a));
    return Value::con(g.decls.at(i.slot).name + "C", std::move(args));
}

/// First-order results back to values; indices are rendered through `g`.
inline Value to_value(const Result& r, const MutualGroup* g = nullptr) {
    switch (r.kind()) {
    case Result::Kind::nat: return Value::nat(r.as_nat());
    case Result::Kind::atom: return Value::atom(r.atom_name());
    case Result::Kind::node: {
        std::vector<Value> args;
        for (const auto& k : r.kids()) args.push_back(to_value(k, g));
        return Value::con(r.ctor(), std::move(args));
    }
    case Result::Kind::index:
        if (!g) throw EvalError("cannot render an index without its group");
        return index_as_value(*g, r.as_index());
    case Result::Kind::fun: break;
    }
    throw EvalError("function result has no first-order form");
}

inline std::string to_string(const Result& r, const MutualGroup* g = nullptr) {
    if (r.is(Result::Kind::fun)) return "<function>";
    return to_string(to_value(r, g));
}

// ---------------------------------------------------------------------------
// algebras

/// Per-constructor methods receive the index instantiation of the
/// constructor's declaration and the results for its arguments.
struct Algebra {
    using Method = std::function<Result(const std::vector<IndexExpr>&, const std::vector<Result>&)>;
    using Base = std::function<Result(const Result&)>;

    std::string name;
    std::map<std::string, Method> methods;
    std::vector<Base> bases;  // by variable ordinal
};

/// Induction methods additionally see the sub-values themselves.
struct DepAlgebra {
    using Method = std::function<Result(const std::vector<IndexExpr>&, const std::vector<Result>& subvalues,
                                        const std::vector<Result>& hyps)>;

    std::string name;
    std::map<std::string, Method> methods;
    std::vector<Algebra::Base> bases;
};

/// Counts constructor-clause unfoldings, i.e. recursive calls whose value
/// argument is a constructor node.
struct EvalStats {
    std::size_t con_calls = 0;
};

inline void check_complete(const MutualGroup& g, const std::map<std::string, Algebra::Method>& methods,
                           std::size_t nbases, const std::string& name) {
    for (const auto& d : g.decls)
        for (const auto& c : d.ctors)
            if (!methods.count(c.name)) throw EvalError("algebra " + name + " has no method for " + c.name);
    if (nbases < g.base_var_count) throw EvalError("algebra " + name + " lacks base functions");
}

namespace detail {

struct CtorInfo {
    std::size_t decl;
    const Constructor* ctor;
    std::vector<IndexExpr> arg_templates;
};

/// Constructor lookup plus the argument index templates, built once per group.
class GroupTables {
public:
    explicit GroupTables(const MutualGroup& g) : g_(g) {
        for (std::size_t d = 0; d < g.decls.size(); ++d)
            for (const auto& c : g.decls[d].ctors) {
                CtorInfo info{d, &c, {}};
                for (const auto& a : c.args) info.arg_templates.push_back(type_to_index(g, d, a));
                by_name_[c.name] = std::move(info);
            }
    }

    const CtorInfo& at(std::size_t decl, const Result& v) const {
        if (!v.is(Result::Kind::node))
            throw EvalError("expected a value of " + g_.decls.at(decl).name + ", found a base value");
        auto it = by_name_.find(v.ctor());
        if (it == by_name_.end() || it->second.decl != decl)
            throw EvalError("constructor " + v.ctor() + " does not build " + g_.decls.at(decl).name);
        if (v.kids().size() != it->second.ctor->args.size())
            throw EvalError("constructor " + v.ctor() + " applied to the wrong number of arguments");
        return it->second;
    }

    const MutualGroup& group() const { return g_; }

private:
    const MutualGroup& g_;
    std::map<std::string, CtorInfo> by_name_;
};

} // namespace detail

/// The derived fold's clauses, run on a result tree. Base functions apply at
/// variable indices to whatever sits there, so a nested value may stand at a
/// variable (this is what lets maps compose).
inline Result eval_nfold(const MutualGroup& g, const Algebra& alg, const IndexExpr& idx, const Result& v,
                         EvalStats* stats = nullptr) {
    check_complete(g, alg.methods, alg.bases.size(), alg.name);
    detail::GroupTables tables(g);
    std::function<Result(const IndexExpr&, const Result&)> go = [&](const IndexExpr& i, const Result& x) -> Result {
        if (i.is_var()) return alg.bases.at(i.slot)(x);
        const auto& info = tables.at(i.slot, x);
        if (stats) ++stats->con_calls;
        std::vector<Result> rec;
        for (std::size_t j = 0; j < info.arg_templates.size(); ++j)
            rec.push_back(go(instantiate(info.arg_templates[j], i.args), x.kids()[j]));
        return alg.methods.at(info.ctor->name)(i.args, rec);
    };
    return go(idx, v);
}

inline Result eval_nfold(const MutualGroup& g, const Algebra& alg, const IndexExpr& idx, const Value& v,
                         EvalStats* stats = nullptr) {
    return eval_nfold(g, alg, idx, from_value(v), stats);
}

/// The fold whose methods rebuild each node and whose bases are `fs`.
inline Algebra map_algebra(const MutualGroup& g, std::vector<Algebra::Base> fs) {
    Algebra alg;
    alg.name = "map";
    for (const auto& d : g.decls)
        for (const auto& c : d.ctors)
            alg.methods[c.name] = [name = c.name](const std::vector<IndexExpr>&, const std::vector<Result>& rec) {
                return Result::node(name, rec);
            };
    alg.bases = std::move(fs);
    return alg;
}

inline Result eval_map(const MutualGroup& g, std::vector<Algebra::Base> fs, const IndexExpr& idx, const Result& v,
                       EvalStats* stats = nullptr) {
    return eval_nfold(g, map_algebra(g, std::move(fs)), idx, v, stats);
}

inline Result eval_ind(const MutualGroup& g, const DepAlgebra& alg, const IndexExpr& idx, const Result& v,
                       EvalStats* stats = nullptr) {
    for (const auto& d : g.decls)
        for (const auto& c : d.ctors)
            if (!alg.methods.count(c.name)) throw EvalError("algebra " + alg.name + " has no method for " + c.name);
    if (alg.bases.size() < g.base_var_count) throw EvalError("algebra " + alg.name + " lacks base functions");
    detail::GroupTables tables(g);
    std::function<Result(const IndexExpr&, const Result&)> go = [&](const IndexExpr& i, const Result& x) -> Result {
        if (i.is_var()) return alg.bases.at(i.slot)(x);
        const auto& info = tables.at(i.slot, x);
        if (stats) ++stats->con_calls;
        std::vector<Result> hyps;
        for (std::size_t j = 0; j < info.arg_templates.size(); ++j)
            hyps.push_back(go(instantiate(info.arg_templates[j], i.args), x.kids()[j]));
        return alg.methods.at(info.ctor->name)(i.args, x.kids(), hyps);
    };
    return go(idx, v);
}

/// An ordinary algebra seen as an induction algebra that ignores sub-values.
inline DepAlgebra lift_algebra(const Algebra& alg) {
    DepAlgebra out;
    out.name = alg.name;
    out.bases = alg.bases;
    for (const auto& [name, m] : alg.methods)
        out.methods[name] = [m](const std::vector<IndexExpr>& i, const std::vector<Result>&,
                                const std::vector<Result>& hyps) { return m(i, hyps); };
    return out;
}

// ---------------------------------------------------------------------------
// higher-order fold

/// Methods of a higher-order fold take only the argument results; the type
/// arguments are erased at runtime.
struct HAlgebra {
    using Method = std::function<Result(const std::vector<Result>&)>;
    std::string name;
    std::map<std::string, Method> methods;
};

/// hfold for declaration `decl` defined through the dependently typed fold:
/// the carrier family at the declaration's own index, identity bases.
inline Result eval_hfold(const MutualGroup& g, std::size_t decl, const HAlgebra& alg, const Result& v,
                         EvalStats* stats = nullptr) {
    Algebra a;
    a.name = alg.name;
    for (const auto& [name, m] : alg.methods)
        a.methods[name] = [m](const std::vector<IndexExpr>&, const std::vector<Result>& rec) { return m(rec); };
    for (std::size_t k = 0; k < g.base_var_count; ++k) a.bases.push_back([](const Result& x) { return x; });
    return eval_nfold(g, a, decl_index(g, decl), v, stats);
}

inline std::size_t default_depth_guard(std::size_t size, std::size_t depth) { return 10 * (size + depth) + 100; }

inline std::size_t result_size(const Result& r) {
    if (!r.is(Result::Kind::node)) return 0;
    std::size_t n = 1;
    for (const auto& k : r.kids()) n += result_size(k);
    return n;
}

namespace detail {

/// The literal general-recursive hmap/hfold pair. Neither is structural:
/// hfold recurses on the result of an hmap.
class DirectHigherOrder {
public:
    DirectHigherOrder(const MutualGroup& g, std::size_t guard) : g_(g), tables_(g), guard_(guard) {}

    using F = std::function<Result(const Result&)>;

    Result hmap(std::size_t decl, const std::vector<F>& fs, const Result& v) {
        Enter e(*this);
        const auto& info = tables_.at(decl, v);
        std::vector<Result> kids;
        for (std::size_t j = 0; j < info.ctor->args.size(); ++j)
            kids.push_back(map_at(decl, info.ctor->args[j], fs)(v.kids()[j]));
        return Result::node(info.ctor->name, std::move(kids));
    }

    Result hfold(std::size_t decl, const HAlgebra& alg, const Result& v) {
        Enter e(*this);
        const auto& info = tables_.at(decl, v);
        std::vector<Result> rec;
        for (std::size_t j = 0; j < info.ctor->args.size(); ++j)
            rec.push_back(fold_at(decl, info.ctor->args[j], alg)(v.kids()[j]));
        return alg.methods.at(info.ctor->name)(rec);
    }

private:
    struct Enter {
        explicit Enter(DirectHigherOrder& d) : self(d) {
            if (++self.depth_ > self.guard_) throw EvalError("depth guard exceeded in direct higher-order recursion");
        }
        ~Enter() { --self.depth_; }
        DirectHigherOrder& self;
    };

    /// Mapping function for an argument of type `t` (read in `decl`'s scope).
    F map_at(std::size_t decl, const TypeExpr& t, const std::vector<F>& fs) {
        if (t.is_var()) return fs.at(param_slot(decl, t));
        std::size_t e = *g_.position(t.name);
        std::vector<F> inner;
        for (const auto& a : t.args) inner.push_back(map_at(decl, a, fs));
        return [this, e, inner](const Result& x) { return hmap(e, inner, x); };
    }

    /// Folding function for an argument of type `t`: parameters stay put; an
    /// application `E T…` first maps the converters for `T…` inside, then folds.
    F fold_at(std::size_t decl, const TypeExpr& t, const HAlgebra& alg) {
        if (t.is_var()) return [](const Result& x) { return x; };
        std::size_t e = *g_.position(t.name);
        bool plain = true;
        for (std::size_t k = 0; k < t.args.size(); ++k)
            plain = plain && t.args[k].is_var() && param_slot(decl, t.args[k]) == k;
        if (plain) return [this, e, &alg](const Result& x) { return hfold(e, alg, x); };
        std::vector<F> inner;
        for (const auto& a : t.args) inner.push_back(fold_at(decl, a, alg));
        return [this, e, inner, &alg](const Result& x) { return hfold(e, alg, hmap(e, inner, x)); };
    }

    std::size_t param_slot(std::size_t decl, const TypeExpr& t) const {
        const auto& ps = g_.decls.at(decl).params;
        return static_cast<std::size_t>(std::find(ps.begin(), ps.end(), t.name) - ps.begin());
    }

    const MutualGroup& g_;
    GroupTables tables_;
    std::size_t guard_;
    std::size_t depth_ = 0;
};

} // namespace detail

/// Independent oracle: hfold by its defining (non-structural) equations.
inline Result eval_hfold_direct(const MutualGroup& g, std::size_t decl, const HAlgebra& alg, const Result& v,
                                std::size_t guard = 0) {
    if (guard == 0) guard = default_depth_guard(result_size(v), 1);
    detail::DirectHigherOrder d(g, guard);
    return d.hfold(decl, alg, v);
}

/// hmap by its defining equations, one function per parameter.
inline Result eval_hmap_direct(const MutualGroup& g, std::size_t decl, std::vector<std::function<Result(const Result&)>> fs,
                               const Result& v, std::size_t guard = 0) {
    if (guard == 0) guard = default_depth_guard(result_size(v), 1);
    detail::DirectHigherOrder d(g, guard);
    return d.hmap(decl, fs, v);
}

// ---------------------------------------------------------------------------
// dependently typed fold recovered from the higher-order fold

inline bool ps_bridge_applies(const MutualGroup& g) {
    if (g.decls.size() != 1) return false;
    const TypeDecl& d = g.decls.front();
    if (d.params.size() != 1 || d.ctors.size() != 2) return false;
    const TypeExpr a = TypeExpr::var(d.params.front());
    return d.ctors[0].args.empty() && d.ctors[1].args.size() == 2 && d.ctors[1].args[0] == a &&
           d.ctors[1].args[1] == TypeExpr::app(d.name, {TypeExpr::app(d.name, {a})});
}

/// nfold' for the leaf/cons nested shape: fold each layer into the function
/// carrier `PS p`, lift that through the index, and read the result back with
/// PS-to-P. Index arguments travel as results so that PS functions can take
/// them.
inline Result eval_nfold_prime(const MutualGroup& g, const Algebra& alg, const IndexExpr& idx, const Result& v) {
    if (!ps_bridge_applies(g)) throw EvalError("PS bridge not derivable for this shape");
    check_complete(g, alg.methods, alg.bases.size(), alg.name);
    const TypeDecl& d = g.decls.front();
    const auto& leaf_m = alg.methods.at(d.ctors[0].name);
    const auto& cons_m = alg.methods.at(d.ctors[1].name);
    const auto& z = alg.bases.at(0);
    auto succ = [](const IndexExpr& n) { return IndexExpr::app(0, {n}); };

    // fold-PS p l c = hfold (PS p) (\ a n tr -> l n)
    //                   (\ a x xs n tr -> c n (tr x) (xs (succ n) (\ f -> f n tr)))
    HAlgebra ps;
    ps.name = "fold-PS";
    ps.methods[d.ctors[0].name] = [&](const std::vector<Result>&) {
        return Result::fun([&](const Result& n) {
            return Result::fun([&, n](const Result&) { return leaf_m({n.as_index()}, {}); });
        });
    };
    ps.methods[d.ctors[1].name] = [&, succ](const std::vector<Result>& args) {
        Result x = args.at(0), xs = args.at(1);
        return Result::fun([&, x, xs, succ](const Result& n) {
            return Result::fun([&, x, xs, n, succ](const Result& tr) {
                Result k = Result::fun([n, tr](const Result& f) { return f(n, tr); });
                return cons_m({n.as_index()}, {tr(x), xs(Result::index(succ(n.as_index())), k)});
            });
        });
    };

    const std::size_t guard = default_depth_guard(result_size(v), index_depth(idx));
    auto fold_ps = [&](const Result& bush) { return eval_hfold_direct(g, 0, ps, bush, guard); };

    // liftNTimes Bush (PS p) (\ a b -> hmap) n (fold-PS p l c) a x
    std::function<Result(const IndexExpr&, const Result&)> lift = [&](const IndexExpr& n, const Result& x) -> Result {
        if (n.is_var()) return x;
        const IndexExpr& pred = n.args.at(0);
        auto inner = [&lift, pred](const Result& y) { return lift(pred, y); };
        return fold_ps(eval_hmap_direct(g, 0, {inner}, x, guard));
    };

    // PS-to-P p a z zero x = z x ; PS-to-P p a z (succ n) hyp = hyp n ih
    std::function<Result(const IndexExpr&, const Result&)> ps_to_p = [&](const IndexExpr& n, const Result& x) -> Result {
        if (n.is_var()) return z(x);
        const IndexExpr pred = n.args.at(0);
        Result ih = Result::fun([&ps_to_p, pred](const Result& y) { return ps_to_p(pred, y); });
        return x(Result::index(pred), ih);
    };

    if (!idx.is_var() && (idx.slot != 0 || idx.args.size() != 1)) throw EvalError("index outside the unary universe");
    return ps_to_p(idx, lift(idx, v));
}

// ---------------------------------------------------------------------------
// typing and enumeration

/// Checks that `v` inhabits `I D… base_types… idx`.
inline std::vector<Diagnostic> typecheck_value(const MutualGroup& g, const IndexExpr& idx,
                                               const std::vector<std::string>& base_types, const Value& v) {
    std::vector<Diagnostic> out;
    detail::GroupTables tables(g);
    std::map<std::string, const Constructor*> ctors;
    std::map<std::string, std::size_t> owner;
    for (std::size_t d = 0; d < g.decls.size(); ++d)
        for (const auto& c : g.decls[d].ctors) {
            ctors[c.name] = &c;
            owner[c.name] = d;
        }
    std::function<void(const IndexExpr&, const Value&)> go = [&](const IndexExpr& i, const Value& x) {
        auto fail = [&](const std::string& m) { out.push_back({x.pos, Severity::error, m}); };
        if (i.is_var()) {
            if (i.slot >= base_types.size()) return fail("no base type for " + index_var_name(i.slot));
            const std::string& want = base_types[i.slot];
            if (!x.is_base()) return fail("expected a value of type " + want + ", found constructor " + x.ctor);
            bool is_nat = std::holds_alternative<std::uint64_t>(x.payload);
            if ((want == "Nat") != is_nat) return fail("expected a value of type " + want + ", found " + to_string(x));
            return;
        }
        const std::string& dname = g.decls.at(i.slot).name;
        if (x.is_base()) return fail("expected a value of " + dname + ", found " + to_string(x));
        auto it = ctors.find(x.ctor);
        if (it == ctors.end() || owner[x.ctor] != i.slot)
            return fail("constructor " + x.ctor + " does not build " + dname);
        const Constructor& c = *it->second;
        if (x.args.size() != c.args.size())
            return fail("constructor " + c.name + " expects " + std::to_string(c.args.size()) + " arguments, got " +
                        std::to_string(x.args.size()));
        for (std::size_t j = 0; j < c.args.size(); ++j)
            go(instantiate(type_to_index(g, i.slot, c.args[j]), i.args), x.args[j]);
    };
    go(idx, v);
    return out;
}

/// Every value of exactly / at most a given size at an index, in a fixed
/// order: by size, then constructor order, then argument size split, then
/// argument values left to right.
class Enumerator {
public:
    Enumerator(const MutualGroup& g, std::vector<std::vector<Value>> universe) : g_(g), universe_(std::move(universe)) {
        for (std::size_t d = 0; d < g.decls.size(); ++d)
            for (const auto& c : g.decls[d].ctors) {
                std::vector<IndexExpr> ts;
                for (const auto& a : c.args) ts.push_back(type_to_index(g, d, a));
                templates_[c.name] = std::move(ts);
            }
    }

    /// One universe shared by every variable.
    Enumerator(const MutualGroup& g, const std::vector<Value>& universe)
        : Enumerator(g, std::vector<std::vector<Value>>(std::max<std::size_t>(g.base_var_count, 1), universe)) {}

    const std::vector<Value>& exact(const IndexExpr& idx, std::size_t size) {
        auto key = std::make_pair(idx, size);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::vector<Value> out;
        if (idx.is_var()) {
            if (size == 0) out = universe_.at(idx.slot);
        } else if (size > 0) {
            for (const auto& c : g_.decls.at(idx.slot).ctors) {
                std::vector<IndexExpr> arg_idx;
                for (const auto& t : templates_.at(c.name)) arg_idx.push_back(instantiate(t, idx.args));
                for_each_split(size - 1, arg_idx.size(), [&](const std::vector<std::size_t>& parts) {
                    std::vector<const std::vector<Value>*> pools;
                    for (std::size_t j = 0; j < parts.size(); ++j) {
                        pools.push_back(&exact(arg_idx[j], parts[j]));
                        if (pools.back()->empty()) return;
                    }
                    product(c.name, pools, out);
                });
            }
        }
        return memo_.emplace(key, std::move(out)).first->second;
    }

    std::vector<Value> up_to(const IndexExpr& idx, std::size_t max_size) {
        std::vector<Value> out;
        for (std::size_t s = 0; s <= max_size; ++s) {
            const auto& xs = exact(idx, s);
            out.insert(out.end(), xs.begin(), xs.end());
        }
        return out;
    }

private:
    /// All ways to write `total` as an ordered sum of `parts` naturals,
    /// lexicographic with the first part smallest first.
    static void for_each_split(std::size_t total, std::size_t parts,
                               const std::function<void(const std::vector<std::size_t>&)>& f) {
        if (parts == 0) {
            if (total == 0) f({});
            return;
        }
        std::vector<std::size_t> cur(parts, 0);
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t j, std::size_t left) {
            if (j + 1 == parts) {
                cur[j] = left;
                f(cur);
                return;
            }
            for (std::size_t k = 0; k <= left; ++k) {
                cur[j] = k;
                rec(j + 1, left - k);
            }
        };
        rec(0, total);
    }

    static void product(const std::string& ctor, const std::vector<const std::vector<Value>*>& pools,
                        std::vector<Value>& out) {
        std::vector<std::size_t> pos(pools.size(), 0);
        while (true) {
            std::vector<Value> args;
            for (std::size_t j = 0; j < pools.size(); ++j) args.push_back((*pools[j])[pos[j]]);
            out.push_back(Value::con(ctor, std::move(args)));
            std::size_t j = pools.size();
            while (j > 0) {
                --j;
                if (++pos[j] < pools[j]->size()) break;
                pos[j] = 0;
                if (j == 0) return;
            }
            if (pools.empty()) return;
        }
    }

    const MutualGroup& g_;
    std::vector<std::vector<Value>> universe_;
    std::map<std::string, std::vector<IndexExpr>> templates_;
    std::map<std::pair<IndexExpr, std::size_t>, std::vector<Value>> memo_;
};

inline std::vector<Value> enumerate_values(const MutualGroup& g, const IndexExpr& idx, const std::vector<Value>& universe,
                                           std::size_t max_size) {
    Enumerator e(g, universe);
    return e.up_to(idx, max_size);
}

} // namespace nestfold
