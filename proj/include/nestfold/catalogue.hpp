#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "nestfold/runtime.hpp"

namespace nestfold {

// Fixed algebras used by `eval` and the property suite. Each is defined for
// any group: methods are chosen by constructor arity, not by name.

inline std::vector<std::string> catalogue_names() { return {"sum", "length", "depth", "trace"}; }
inline std::vector<std::string> hfold_catalogue_names() { return {"sumAux", "rebuild", "trace"}; }

namespace detail {

inline Algebra uniform_algebra(const MutualGroup& g, std::string name,
                               std::function<Result(const Constructor&, const std::vector<IndexExpr>&,
                                                    const std::vector<Result>&)> method,
                               Algebra::Base base) {
    Algebra alg;
    alg.name = std::move(name);
    for (const auto& d : g.decls)
        for (const auto& c : d.ctors)
            alg.methods[c.name] = [method, c](const std::vector<IndexExpr>& i, const std::vector<Result>& r) {
                return method(c, i, r);
            };
    alg.bases.assign(std::max<std::size_t>(g.base_var_count, 1), base);
    return alg;
}

inline std::uint64_t nat_or_zero(const Result& r) { return r.is(Result::Kind::nat) ? r.as_nat() : 0; }

/// Continuation handed to an argument of type `D (D … a)`: `k` itself one
/// level down, wrapped in `\ r -> r k'` once per extra level.
inline Result sum_aux_continuation(const TypeExpr& t, const Result& k) {
    const TypeExpr& inner = t.args.front();
    if (inner.is_var()) return k;
    Result deeper = sum_aux_continuation(inner, k);
    return Result::fun([deeper](const Result& r) { return r(deeper); });
}

} // namespace detail

/// Adds every natural in the value; atoms count as zero.
inline Algebra sum_algebra(const MutualGroup& g) {
    return detail::uniform_algebra(
        g, "sum",
        [](const Constructor&, const std::vector<IndexExpr>&, const std::vector<Result>& r) {
            std::uint64_t s = 0;
            for (const auto& x : r) s = checked_add(s, x.as_nat());
            return Result::nat(s);
        },
        [](const Result& x) { return Result::nat(detail::nat_or_zero(x)); });
}

/// Spine length: nullary constructors give 0, others one more than the
/// result for their last argument.
inline Algebra length_algebra(const MutualGroup& g) {
    return detail::uniform_algebra(
        g, "length",
        [](const Constructor&, const std::vector<IndexExpr>&, const std::vector<Result>& r) {
            if (r.empty()) return Result::nat(0);
            return Result::nat(checked_add(r.back().as_nat(), 1));
        },
        [](const Result&) { return Result::nat(0); });
}

/// Height: nullary 0, otherwise one more than the largest argument result.
inline Algebra depth_algebra(const MutualGroup& g) {
    return detail::uniform_algebra(
        g, "depth",
        [](const Constructor&, const std::vector<IndexExpr>&, const std::vector<Result>& r) {
            if (r.empty()) return Result::nat(0);
            std::uint64_t m = 0;
            for (const auto& x : r) m = std::max(m, x.as_nat());
            return Result::nat(checked_add(m, 1));
        },
        [](const Result&) { return Result::nat(0); });
}

/// Records every clause taken, with its index arguments, as a tree.
inline Algebra trace_algebra(const MutualGroup& g) {
    Algebra alg = detail::uniform_algebra(
        g, "trace",
        [](const Constructor& c, const std::vector<IndexExpr>& i, const std::vector<Result>& r) {
            std::vector<Result> kids;
            for (const auto& x : i) kids.push_back(Result::index(x));
            kids.insert(kids.end(), r.begin(), r.end());
            return Result::node(c.name, std::move(kids));
        },
        nullptr);
    for (std::size_t k = 0; k < alg.bases.size(); ++k)
        alg.bases[k] = [k](const Result& x) { return Result::node("base" + std::to_string(k), {x}); };
    return alg;
}

inline std::optional<Algebra> catalogue_algebra(const MutualGroup& g, const std::string& name) {
    if (name == "sum") return sum_algebra(g);
    if (name == "length") return length_algebra(g);
    if (name == "depth") return depth_algebra(g);
    if (name == "trace") return trace_algebra(g);
    return std::nullopt;
}

inline std::vector<Algebra> catalogue(const MutualGroup& g) {
    std::vector<Algebra> out;
    for (const auto& n : catalogue_names()) out.push_back(*catalogue_algebra(g, n));
    return out;
}

// ---------------------------------------------------------------------------
// higher-order fold algebras

/// Continuation-passing sum over a carrier `(a -> Nat) -> Nat`: each element
/// is turned into a number by the continuation it is handed. Apply the result
/// to the identity continuation to get the total. Defined for unary
/// singleton groups only.
inline std::optional<HAlgebra> sum_aux_algebra(const MutualGroup& g) {
    if (!has_nat_index(g)) return std::nullopt;
    auto cont = [](const TypeExpr& t, const Result& k) { return detail::sum_aux_continuation(t, k); };
    HAlgebra alg;
    alg.name = "sumAux";
    for (const auto& c : g.decls.front().ctors) {
        std::vector<TypeExpr> types = c.args;
        alg.methods[c.name] = [types, cont](const std::vector<Result>& r) {
            return Result::fun([types, cont, r](const Result& k) {
                std::uint64_t s = 0;
                for (std::size_t j = 0; j < r.size(); ++j)
                    s = checked_add(s, types[j].is_var() ? k(r[j]).as_nat() : r[j](cont(types[j], k)).as_nat());
                return Result::nat(s);
            });
        };
    }
    return alg;
}

inline Result identity_continuation() {
    return Result::fun([](const Result& x) { return Result::nat(x.as_nat()); });
}

/// Rebuilds the value it folds.
inline HAlgebra rebuild_halgebra(const MutualGroup& g) {
    HAlgebra alg;
    alg.name = "rebuild";
    for (const auto& d : g.decls)
        for (const auto& c : d.ctors)
            alg.methods[c.name] = [name = c.name](const std::vector<Result>& r) { return Result::node(name, r); };
    return alg;
}

inline HAlgebra trace_halgebra(const MutualGroup& g) {
    HAlgebra alg;
    alg.name = "trace";
    for (const auto& d : g.decls)
        for (const auto& c : d.ctors)
            alg.methods[c.name] = [name = c.name](const std::vector<Result>& r) {
                return Result::node("h-" + name, r);
            };
    return alg;
}

inline std::optional<HAlgebra> hfold_catalogue_algebra(const MutualGroup& g, const std::string& name) {
    if (name == "sumAux") return sum_aux_algebra(g);
    if (name == "rebuild") return rebuild_halgebra(g);
    if (name == "trace") return trace_halgebra(g);
    return std::nullopt;
}

/// Drives a higher-order fold result to first order: continuation carriers
/// are applied to the identity continuation.
inline Result observe(const HAlgebra& alg, const Result& r) {
    if (alg.name == "sumAux") return r(identity_continuation());
    return r;
}

} // namespace nestfold
