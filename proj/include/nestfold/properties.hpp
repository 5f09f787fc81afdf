#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "nestfold/catalogue.hpp"
#include "nestfold/derivation.hpp"
#include "nestfold/runtime.hpp"

namespace nestfold {

struct PropertyReport {
    std::string name;
    std::size_t cases = 0;
    bool applicable = true;
    bool ok = true;
    std::string counterexample;  // value literal, algebra and both sides
};

struct SuiteConfig {
    std::size_t max_size = 7;
    std::size_t max_depth = 3;
    std::vector<Value> universe{Value::nat(0), Value::nat(1), Value::nat(2)};
    std::size_t composition_bound = 4;  // m + n
};

/// Indices the suite exercises. Unary groups use 0..max_depth; other groups
/// use the variables, each declaration's own index and every index that one
/// of its constructors' arguments lands on.
inline std::vector<IndexExpr> suite_indices(const MutualGroup& g, std::size_t max_depth) {
    std::vector<IndexExpr> out;
    if (has_nat_index(g)) {
        for (std::size_t k = 0; k <= max_depth; ++k) out.push_back(nat_to_index(k));
        return out;
    }
    std::set<IndexExpr> seen;
    auto add = [&](const IndexExpr& i) {
        if (index_depth(i) <= max_depth && seen.insert(i).second) out.push_back(i);
    };
    for (std::size_t k = 0; k < g.base_var_count; ++k) add(IndexExpr::var(k));
    for (std::size_t d = 0; d < g.decls.size(); ++d) add(decl_index(g, d));
    for (std::size_t d = 0; d < g.decls.size(); ++d)
        for (const auto& c : g.decls[d].ctors)
            for (const auto& a : c.args) add(instantiate(type_to_index(g, d, a), decl_index(g, d).args));
    return out;
}

namespace detail {

class Harness {
public:
    Harness(const MutualGroup& g, SuiteConfig cfg) : g_(g), cfg_(std::move(cfg)), enumr_(g, cfg_.universe) {}

    const std::vector<Value>& values(const IndexExpr& i) {
        auto it = cache_.find(i);
        if (it == cache_.end()) it = cache_.emplace(i, enumr_.up_to(i, cfg_.max_size)).first;
        return it->second;
    }

    template <class F>
    PropertyReport run(std::string name, F&& body) {
        PropertyReport r;
        r.name = std::move(name);
        try {
            body(r);
        } catch (const EvalError& e) {
            r.ok = false;
            if (r.counterexample.empty()) r.counterexample = std::string("evaluation error: ") + e.what();
        }
        return r;
    }

    static void fail(PropertyReport& r, const Value& v, const IndexExpr& i, const MutualGroup& g,
                     const std::string& alg, const std::string& lhs, const std::string& rhs) {
        if (!r.ok) return;
        r.ok = false;
        r.counterexample = "value " + to_string(v) + " at index " + to_string(g, i) + ", algebra " + alg + ": " +
                           lhs + " vs " + rhs;
    }

    const MutualGroup& g_;
    SuiteConfig cfg_;
    Enumerator enumr_;
    std::map<IndexExpr, std::vector<Value>> cache_;
};

inline Algebra::Base add_one() {
    return [](const Result& x) { return Result::nat(checked_add(x.as_nat(), 1)); };
}

inline std::vector<Algebra::Base> identities(std::size_t n) {
    return std::vector<Algebra::Base>(std::max<std::size_t>(n, 1), [](const Result& x) { return x; });
}

/// Elements along the spine of a list-shaped value, front to back.
inline std::vector<Result> spine(const Result& v) {
    std::vector<Result> xs;
    const Result* cur = &v;
    while (!cur->kids().empty()) {
        xs.push_back(cur->kids()[0]);
        cur = &cur->kids()[1];
    }
    return xs;
}

} // namespace detail

/// True for a regular list shape: one nullary constructor and one taking a
/// parameter and the declaration at its own parameter.
inline bool list_shaped(const MutualGroup& g) {
    if (g.decls.size() != 1 || g.classification != Classification::ordinary) return false;
    const TypeDecl& d = g.decls.front();
    if (d.params.size() != 1 || d.ctors.size() != 2) return false;
    const TypeExpr a = TypeExpr::var(d.params.front());
    return d.ctors[0].args.empty() && d.ctors[1].args.size() == 2 && d.ctors[1].args[0] == a &&
           d.ctors[1].args[1] == TypeExpr::app(d.name, {a});
}

/// The executable properties for one group. Properties that do not apply to
/// the group's shape are reported with `applicable = false`.
inline std::vector<PropertyReport> run_suite(const MutualGroup& g, const SuiteConfig& cfg) {
    detail::Harness h(g, cfg);
    const auto indices = suite_indices(g, cfg.max_depth);
    const auto algebras = catalogue(g);
    std::vector<PropertyReport> out;

    out.push_back(h.run("certificate: every derived definition is structural", [&](PropertyReport& r) {
        for (bool nat : {false, true}) {
            for (const auto& def : derive_all(g, {nat}).defs) {
                ++r.cases;
                Certificate c = check_structural(def);
                if (!c.ok && r.ok) {
                    r.ok = false;
                    r.counterexample = def.name + ": " + c.detail;
                }
            }
        }
    }));

    out.push_back(h.run("termination: constructor unfoldings <= size", [&](PropertyReport& r) {
        for (const auto& i : indices)
            for (const auto& v : h.values(i)) {
                Result rv = from_value(v);
                for (const auto& alg : algebras) {
                    EvalStats s1, s2;
                    eval_nfold(g, alg, i, rv, &s1);
                    eval_ind(g, lift_algebra(alg), i, rv, &s2);
                    r.cases += 2;
                    std::size_t n = value_size(v);
                    if (s1.con_calls > n || s2.con_calls > n)
                        detail::Harness::fail(r, v, i, g, alg.name, std::to_string(std::max(s1.con_calls, s2.con_calls)) + " calls",
                                              "size " + std::to_string(n));
                }
            }
    }));

    out.push_back(h.run("map identity", [&](PropertyReport& r) {
        for (const auto& i : indices)
            for (const auto& v : h.values(i)) {
                ++r.cases;
                Result got = eval_map(g, detail::identities(g.base_var_count), i, from_value(v));
                if (!(got == from_value(v))) detail::Harness::fail(r, v, i, g, "map id", to_string(got), to_string(v));
            }
    }));

    out.push_back(h.run("map composition", [&](PropertyReport& r) {
        if (!has_nat_index(g)) {
            r.applicable = false;
            return;
        }
        for (std::size_t total = 0; total <= cfg.composition_bound; ++total)
            for (const auto& v : h.values(nat_to_index(total)))
                for (std::size_t m = 0; m <= total; ++m) {
                    const std::size_t n = total - m;
                    ++r.cases;
                    Result rv = from_value(v);
                    Result lhs = eval_map(g, {detail::add_one()}, nat_to_index(total), rv);
                    Algebra::Base inner = [&g, n](const Result& x) {
                        return eval_map(g, {detail::add_one()}, nat_to_index(n), x);
                    };
                    Result rhs = eval_map(g, {inner}, nat_to_index(m), rv);
                    if (!(lhs == rhs))
                        detail::Harness::fail(r, v, nat_to_index(total), g,
                                              "add1 split " + std::to_string(m) + "+" + std::to_string(n),
                                              to_string(lhs), to_string(rhs));
                }
    }));

    out.push_back(h.run("induction with value-ignoring methods equals the fold", [&](PropertyReport& r) {
        for (const auto& i : indices)
            for (const auto& v : h.values(i)) {
                Result rv = from_value(v);
                for (const auto& alg : algebras) {
                    ++r.cases;
                    Result a = eval_nfold(g, alg, i, rv), b = eval_ind(g, lift_algebra(alg), i, rv);
                    if (!(a == b)) detail::Harness::fail(r, v, i, g, alg.name, to_string(a, &g), to_string(b, &g));
                }
            }
    }));

    out.push_back(h.run("hfold via nfold agrees with the direct definition", [&](PropertyReport& r) {
        for (std::size_t d = 0; d < g.decls.size(); ++d) {
            IndexExpr i = decl_index(g, d);
            for (const auto& name : hfold_catalogue_names()) {
                auto alg = hfold_catalogue_algebra(g, name);
                if (!alg) continue;
                for (const auto& v : h.values(i)) {
                    ++r.cases;
                    Result rv = from_value(v);
                    Result a = observe(*alg, eval_hfold(g, d, *alg, rv));
                    Result b = observe(*alg, eval_hfold_direct(g, d, *alg, rv));
                    if (!(a == b)) detail::Harness::fail(r, v, i, g, name, to_string(a), to_string(b));
                }
            }
        }
    }));

    out.push_back(h.run("hfold leaf and hmap cons equations", [&](PropertyReport& r) {
        if (!ps_bridge_applies(g)) {
            r.applicable = false;
            return;
        }
        const TypeDecl& d = g.decls.front();
        const std::string leaf = d.ctors[0].name, cons = d.ctors[1].name;
        const IndexExpr one = nat_to_index(1);
        for (const auto& name : hfold_catalogue_names()) {
            auto alg = hfold_catalogue_algebra(g, name);
            ++r.cases;
            Result a = observe(*alg, eval_hfold(g, 0, *alg, Result::node(leaf)));
            Result b = observe(*alg, alg->methods.at(leaf)({}));
            if (!(a == b)) detail::Harness::fail(r, Value::con(leaf), one, g, name, to_string(a), to_string(b));
        }
        Algebra::Base f = detail::add_one();
        Algebra::Base hmap_f = [&g, &one, f](const Result& x) { return eval_map(g, {f}, one, x); };
        for (const auto& v : h.values(one)) {
            if (v.ctor != cons) continue;
            ++r.cases;
            Result rv = from_value(v);
            Result lhs = eval_map(g, {f}, one, rv);
            Result rhs = Result::node(cons, {f(rv.kids()[0]), eval_map(g, {hmap_f}, one, rv.kids()[1])});
            if (!(lhs == rhs)) detail::Harness::fail(r, v, one, g, "hmap add1", to_string(lhs), to_string(rhs));
        }
    }));

    out.push_back(h.run("nfold equals nfold' (PS bridge)", [&](PropertyReport& r) {
        if (!ps_bridge_applies(g)) {
            r.applicable = false;
            return;
        }
        for (const auto& i : indices)
            for (const auto& v : h.values(i)) {
                Result rv = from_value(v);
                for (const auto& alg : algebras) {
                    ++r.cases;
                    Result a = eval_nfold(g, alg, i, rv), b = eval_nfold_prime(g, alg, i, rv);
                    if (!(a == b)) detail::Harness::fail(r, v, i, g, alg.name, to_string(a, &g), to_string(b, &g));
                }
            }
    }));

    out.push_back(h.run("fold agrees with foldList", [&](PropertyReport& r) {
        if (!list_shaped(g)) {
            r.applicable = false;
            return;
        }
        const TypeDecl& d = g.decls.front();
        const IndexExpr one = decl_index(g, 0);
        for (const auto& alg : algebras) {
            const auto& nil_m = alg.methods.at(d.ctors[0].name);
            const auto& cons_m = alg.methods.at(d.ctors[1].name);
            const auto& z = alg.bases.at(0);
            // foldList base step nil = base ; foldList base step (cons x xs) = step x (foldList base step xs)
            auto fold_list = [&](const std::vector<Result>& xs) {
                Result acc = nil_m({IndexExpr::var(0)}, {});
                for (auto it = xs.rbegin(); it != xs.rend(); ++it) acc = cons_m({IndexExpr::var(0)}, {z(*it), acc});
                return acc;
            };
            for (const auto& v : h.values(one)) {
                ++r.cases;
                Result rv = from_value(v);
                Result a = eval_nfold(g, alg, one, rv), b = fold_list(detail::spine(rv));
                if (!(a == b)) detail::Harness::fail(r, v, one, g, alg.name, to_string(a, &g), to_string(b, &g));
            }
        }
    }));

    return out;
}

} // namespace nestfold
