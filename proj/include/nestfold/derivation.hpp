#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "nestfold/analysis.hpp"
#include "nestfold/term.hpp"

namespace nestfold {

struct DeriveOptions {
    /// Specialise singleton unary groups to `Nat`/`NTimes`. Ignored for groups
    /// where has_nat_index() is false.
    bool nat_index = false;
};

/// Derivation of the generic folds for one mutual group. Every public
/// member is a pure function of the group and options.
class Deriver {
public:
    Deriver(const MutualGroup& g, DeriveOptions opts = {})
        : g_(g), spec_(index_universe(g)), nat_(opts.nat_index && has_nat_index(g)) {}

    bool nat_index() const { return nat_; }
    const IndexTypeSpec& spec() const { return spec_; }

    // -- source declarations -------------------------------------------------

    std::vector<DerivedDef> source_decls() const {
        std::vector<DerivedDef> out;
        const bool mutual = g_.decls.size() > 1;
        if (mutual)
            for (const auto& d : g_.decls) {
                DerivedDef sig;
                sig.name = d.name;
                sig.kind = DerivedDef::Kind::data;
                sig.role = "signature";
                sig.data_params = d.params;
                sig.signature = term::set();
                out.push_back(std::move(sig));
            }
        for (const auto& d : g_.decls) {
            DerivedDef def;
            def.name = d.name;
            def.kind = DerivedDef::Kind::data;
            def.role = mutual ? "source-after-signature" : "source";
            def.data_params = d.params;
            def.signature = term::set();
            for (const auto& c : d.ctors) {
                std::vector<Term> doms;
                for (const auto& a : c.args) doms.push_back(type_term(a, {}));
                def.ctors.push_back({c.name, term::arrows(std::move(doms), type_term(c.result, {}))});
            }
            out.push_back(std::move(def));
        }
        return out;
    }

    // -- index universe ------------------------------------------------------

    DerivedDef index_decl() const {
        DerivedDef def;
        def.kind = DerivedDef::Kind::data;
        def.role = "index";
        def.signature = term::set();
        if (nat_) {
            def.name = "Nat";
            def.ctors.push_back({"zero", term::ref("Nat")});
            def.ctors.push_back({"succ", term::arrow(term::ref("Nat"), term::ref("Nat"))});
            def.trailing_lines.push_back("{-# BUILTIN NATURAL Nat #-}");
            return def;
        }
        def.name = spec_.name;
        Term self = term::ref(spec_.name);
        for (const auto& v : spec_.var_ctors) def.ctors.push_back({v, self});
        for (const auto& [name, arity] : spec_.app_ctors)
            def.ctors.push_back({name, term::arrows(std::vector<Term>(arity, self), self)});
        return def;
    }

    // -- interpretation ------------------------------------------------------

    DerivedDef interp() const {
        DerivedDef def;
        def.role = "interp";
        if (nat_) {
            // NTimes : (n : Nat) -> (b : Set -> Set) -> Set -> Set
            def.name = "NTimes";
            def.signature = term::pi({"n"}, term::ref("Nat"),
                                     term::pi({"b"}, carrier_kind(1),
                                              term::arrow(term::set(), term::set())));
            def.clauses.push_back({{nat_zero(), term::var("b"), term::var("a")}, term::var("a")});
            def.clauses.push_back({{nat_succ(term::var("n")), term::var("b"), term::var("a")},
                                   term::app(term::var("b"), {interp_term(term::vars({"b"}), term::vars({"a"}),
                                                                          term::var("n"))})});
            def.decreasing = 0;
            return def;
        }
        def.name = "I";
        std::vector<Term> doms;
        for (const auto& d : g_.decls) doms.push_back(carrier_kind(d.params.size()));
        for (std::size_t k = 0; k < g_.base_var_count; ++k) doms.push_back(term::set());
        doms.push_back(index_type());
        def.signature = term::arrows(std::move(doms), term::set());

        const auto carriers = term::vars(carrier_names());
        const auto bases = term::vars(base_names());
        auto lhs = [&](Term idx) {
            std::vector<Term> ps = carriers;
            ps.insert(ps.end(), bases.begin(), bases.end());
            ps.push_back(std::move(idx));
            return ps;
        };
        for (std::size_t k = 0; k < g_.base_var_count; ++k)
            def.clauses.push_back({lhs(var_con(k)), bases[k]});
        for (std::size_t d = 0; d < g_.decls.size(); ++d) {
            const std::size_t arity = g_.decls[d].params.size();
            std::vector<std::string> exprs;
            for (std::size_t k = 0; k < arity; ++k) exprs.push_back(arity == 1 ? "expr" : "expr" + std::to_string(k + 1));
            std::vector<Term> rec;
            for (const auto& e : exprs) rec.push_back(interp_term(carriers, bases, term::var(e)));
            def.clauses.push_back({lhs(term::app(app_con(d), term::vars(exprs))), term::app(carriers[d], rec)});
        }
        def.decreasing = carriers.size() + bases.size();
        return def;
    }

    // -- dependently typed fold ----------------------------------------------

    DerivedDef nfold() const { return nfold_named("nfold"); }

    /// Method type for constructor `ctor` of declaration `d` in the fold.
    Term nfold_method_type(std::size_t d, const Constructor& ctor) const {
        const auto ivs = index_vars(d);
        std::vector<Term> doms;
        for (const auto& a : ctor.args) doms.push_back(family(term_of_index(type_to_index(g_, d, a), ivs)));
        Term body = term::arrows(std::move(doms), family(term::app(app_con(d), term::vars(ivs))));
        return quantify_indices(ivs, std::move(body));
    }

    // -- induction principle -------------------------------------------------

    DerivedDef ind() const {
        DerivedDef def;
        def.name = "ind";
        def.role = "ind";
        const std::string value = nat_ ? "xs" : "v";
        const auto bases = base_names();

        // {p : (i : Index) -> I … i -> Set}
        const std::string iv = nat_ ? "n" : "i";
        Term p_kind = term::pi({iv}, index_type(), term::arrow(interp_self(term::var(iv)), term::set()));

        std::vector<std::pair<std::string, Term>> binders;
        for (std::size_t k = 0; k < bases.size(); ++k)
            binders.emplace_back(ind_base_name(k),
                                 term::value_pi("x", term::var(bases[k]), family(var_con(k), term::var("x"))));
        for (std::size_t d = 0; d < g_.decls.size(); ++d)
            for (const auto& c : g_.decls[d].ctors) binders.emplace_back(method_name(c), ind_method_type(d, c));

        Term result = term::pi({iv}, index_type(),
                               term::value_pi(value, interp_self(term::var(iv)),
                                              family(term::var(iv), term::var(value))));
        Term sig = term::broken(std::move(result));
        for (std::size_t k = binders.size(); k-- > 0;)
            sig = term::broken(term::pi({binders[k].first}, std::move(binders[k].second), std::move(sig)));
        sig = term::implicit_pi({"p"}, std::move(p_kind), std::move(sig));
        sig = term::implicit_pi(bases, term::set(), std::move(sig), true);
        def.signature = std::move(sig);

        std::vector<Term> common;
        for (const auto& b : binders) common.push_back(term::var(b.first));
        auto lhs = [&](Term idx, Term val) {
            std::vector<Term> ps = common;
            ps.push_back(std::move(idx));
            ps.push_back(std::move(val));
            return ps;
        };
        for (std::size_t k = 0; k < bases.size(); ++k)
            def.clauses.push_back(
                {lhs(var_con(k), term::var(value)), term::app(term::var(ind_base_name(k)), {term::var(value)})});
        for (std::size_t d = 0; d < g_.decls.size(); ++d)
            for (const auto& c : g_.decls[d].ctors) {
                const auto ivs = index_vars(d);
                const auto names = arg_names(d, c);
                std::vector<Term> args = term::vars(ivs);
                for (const auto& n : names) args.push_back(term::var(n));
                for (std::size_t j = 0; j < c.args.size(); ++j) {
                    std::vector<Term> call = common;
                    call.push_back(term_of_index(type_to_index(g_, d, c.args[j]), ivs));
                    call.push_back(term::var(names[j]));
                    args.push_back(recursive_arg(term::app(term::ref("ind"), std::move(call))));
                }
                Clause cl{lhs(term::app(app_con(d), term::vars(ivs)), ctor_pattern(c, names)),
                          term::app(term::var(method_name(c)), std::move(args))};
                cl.body_on_new_line = !c.args.empty();
                def.clauses.push_back(std::move(cl));
            }
        def.decreasing = common.size() + 1;
        return def;
    }

    /// Method type for constructor `ctor` in the induction principle: the
    /// sub-values, one hypothesis per argument, and a conclusion about the
    /// constructed value.
    Term ind_method_type(std::size_t d, const Constructor& ctor) const {
        const auto ivs = index_vars(d);
        const auto names = arg_names(d, ctor);
        std::vector<Term> hyps;
        std::vector<Term> sub_indices;
        for (std::size_t j = 0; j < ctor.args.size(); ++j) {
            sub_indices.push_back(term_of_index(type_to_index(g_, d, ctor.args[j]), ivs));
            hyps.push_back(family(sub_indices.back(), term::var(names[j])));
        }
        Term conclusion =
            family(term::app(app_con(d), term::vars(ivs)), ctor_pattern(ctor, names));
        Term body = term::arrows(std::move(hyps), std::move(conclusion));
        if (!ctor.args.empty()) body = term::broken(std::move(body));
        for (std::size_t j = ctor.args.size(); j-- > 0;) {
            body = term::value_pi(names[j], interp_self(sub_indices[j]), std::move(body));
            if (j > 0) body = term::broken(std::move(body));
        }
        return quantify_indices(ivs, std::move(body));
    }

    // -- map -----------------------------------------------------------------

    DerivedDef map() const {
        DerivedDef def;
        def.name = "nmap";
        def.role = "map";
        const auto src = base_names();
        const auto dst = map_target_names();
        const std::string iv = nat_ ? "n" : "i";
        const std::string value = nat_ ? "l" : "v";

        std::vector<Term> fn_types;
        for (std::size_t k = 0; k < src.size(); ++k) fn_types.push_back(term::arrow(term::var(src[k]), term::var(dst[k])));
        Term tail = term::broken(term::arrow(interp_with(own_carriers(), term::vars(src), term::var(iv)),
                                             interp_with(own_carriers(), term::vars(dst), term::var(iv))));
        Term sig = term::pi({iv}, index_type(), term::arrows(std::move(fn_types), std::move(tail)));
        std::vector<std::string> implicits = src;
        implicits.insert(implicits.end(), dst.begin(), dst.end());
        def.signature = term::implicit_pi(implicits, term::set(), std::move(sig), true);

        std::vector<Term> pats;
        for (const auto& n : implicits) pats.push_back(term::implicit_pattern(n));
        pats.push_back(term::var(iv));
        for (const auto& f : map_fn_names()) pats.push_back(term::var(f));
        pats.push_back(term::var(value));

        std::vector<Term> args;
        args.push_back(term::lam({iv}, interp_with(own_carriers(), term::vars(dst), term::var(iv))));
        for (std::size_t d = 0; d < g_.decls.size(); ++d)
            for (const auto& c : g_.decls[d].ctors) args.push_back(term::lam(lambda_vars(d), term::ref(c.name)));
        for (const auto& s : src) args.push_back(term::var(s));
        for (const auto& f : map_fn_names()) args.push_back(term::var(f));
        args.push_back(term::var(iv));
        args.push_back(term::var(value));
        Clause cl{std::move(pats), term::app(term::ref("nfold"), std::move(args))};
        cl.body_on_new_line = true;
        def.clauses.push_back(std::move(cl));
        return def;
    }

    // -- higher-order folds --------------------------------------------------

    std::vector<DerivedDef> hfolds() const {
        std::vector<DerivedDef> out;
        for (std::size_t d = 0; d < g_.decls.size(); ++d) out.push_back(hfold(d));
        return out;
    }

    std::string hfold_name(std::size_t d) const {
        return g_.decls.size() == 1 ? "hfold" : "hfold-" + lower(g_.decls[d].name);
    }

    DerivedDef hfold(std::size_t d) const {
        const TypeDecl& decl = g_.decls.at(d);
        DerivedDef def;
        def.name = hfold_name(d);
        def.role = "hfold";
        const auto carriers = carrier_names();

        std::vector<std::pair<std::string, Term>> binders;
        for (std::size_t e = 0; e < g_.decls.size(); ++e)
            binders.emplace_back(carriers[e], carrier_kind(g_.decls[e].params.size()));
        for (std::size_t e = 0; e < g_.decls.size(); ++e)
            for (const auto& c : g_.decls[e].ctors) binders.emplace_back(method_name(c), hfold_method_type(e, c));

        const std::string value = nat_ ? "x" : "v";
        Term result = quantify_sets(decl.params, term::arrow(type_term(decl_self(decl), {}),
                                                           type_term(decl_self(decl), carriers)));
        Term sig = term::broken(std::move(result));
        for (std::size_t k = binders.size(); k-- > 0;) {
            sig = term::pi({binders[k].first}, std::move(binders[k].second), std::move(sig));
            if (k > 0) sig = term::broken(std::move(sig));
        }
        def.signature = std::move(sig);

        std::vector<Term> pats;
        for (const auto& b : binders) pats.push_back(term::var(b.first));
        for (const auto& prm : decl.params) pats.push_back(term::var(prm));
        pats.push_back(term::var(value));

        // Base types for the fold: the declaration's parameters, padded with
        // the first one for variables this declaration does not use.
        std::vector<Term> base_sets;
        for (std::size_t k = 0; k < g_.base_var_count; ++k) {
            if (k < decl.params.size())
                base_sets.push_back(term::var(decl.params[k]));
            else if (!decl.params.empty())
                base_sets.push_back(term::var(decl.params.front()));
            else
                base_sets.push_back(term::ref(decl.name));
        }
        const auto carrier_terms = term::vars(carriers);
        auto at = [&](Term idx) { return interp_with(carrier_terms, base_sets, std::move(idx)); };

        const std::string iv = nat_ ? "n" : "i";
        std::vector<Term> args;
        args.push_back(term::lam({iv}, at(term::var(iv))));
        bool first_method = true;
        for (std::size_t e = 0; e < g_.decls.size(); ++e)
            for (const auto& c : g_.decls[e].ctors) {
                const auto lvs = lambda_vars(e);
                std::vector<Term> inst;
                for (const auto& v : lvs) inst.push_back(at(term::var(v)));
                Term m = term::lam(lvs, term::app(term::var(method_name(c)), std::move(inst)));
                if (!first_method) m = term::broken(std::move(m));
                first_method = false;
                args.push_back(std::move(m));
            }
        for (const auto& b : base_sets) args.push_back(b);
        for (std::size_t k = 0; k < g_.base_var_count; ++k) args.push_back(term::lam({"x"}, term::var("x")));
        args.push_back(closed_index(decl_index(g_, d)));
        args.push_back(term::var(value));
        Clause cl{std::move(pats), term::app(term::ref("nfold"), std::move(args))};
        cl.body_on_new_line = true;
        def.clauses.push_back(std::move(cl));
        return def;
    }

    /// Method type read directly off the constructor: declaration names
    /// replaced by carriers, quantified over the declaration's parameters.
    Term hfold_method_type(std::size_t d, const Constructor& c) const {
        const auto carriers = carrier_names();
        std::vector<Term> doms;
        for (const auto& a : c.args) doms.push_back(type_term(a, carriers));
        return quantify_sets(g_.decls[d].params, term::arrows(std::move(doms), type_term(c.result, carriers)));
    }

    // -- PS bridge -----------------------------------------------------------

    /// True for a singleton group over `D a` with exactly a nullary
    /// constructor and one of shape `a -> D (D a) -> D a`.
    static bool bush_shaped(const MutualGroup& g) {
        if (g.decls.size() != 1) return false;
        const TypeDecl& d = g.decls.front();
        if (d.params.size() != 1 || d.ctors.size() != 2) return false;
        const TypeExpr a = TypeExpr::var(d.params.front());
        const TypeExpr nested = TypeExpr::app(d.name, {TypeExpr::app(d.name, {a})});
        return d.ctors[0].args.empty() && d.ctors[1].args.size() == 2 && d.ctors[1].args[0] == a &&
               d.ctors[1].args[1] == nested;
    }

    /// hmap (as nmap at depth one) followed by PS, PS-to-P, fold-PS,
    /// liftNTimes and nfold'. Throws Error for other shapes.
    std::vector<DerivedDef> ps_bridge() const {
        if (!bush_shaped(g_)) throw Error(g_.decls.front().pos, "PS bridge not derivable for this shape");
        const TypeDecl& decl = g_.decls.front();
        const std::string iv = nat_ ? "n" : "i";
        const Term p = term::var("p");
        const Term idx_n = term::var(iv);
        const Term succ_n = term::app(app_con(0), {idx_n});
        const Term ps_p = term::app(term::ref("PS"), {p});
        const std::string base_fn = nat_ ? "z" : "baseA";
        std::vector<DerivedDef> out;

        {  // hmap
            DerivedDef def;
            def.name = "hmap";
            def.role = "ps";
            def.signature = term::implicit_pi(
                {"b", "c"}, term::set(),
                term::arrow(term::arrow(term::var("b"), term::var("c")),
                            term::arrow(term::app(term::ref(decl.name), {term::var("b")}),
                                        term::app(term::ref(decl.name), {term::var("c")}))),
                true);
            def.clauses.push_back({{term::var("f"), term::var("x")},
                                   term::app(term::ref("nmap"), {closed_index(decl_index(g_, 0)), term::var("f"),
                                                                 term::var("x")})});
            out.push_back(std::move(def));
        }
        {  // PS p A = (n : Nat) -> (A -> p n) -> p (succ n)
            DerivedDef def;
            def.name = "PS";
            def.role = "ps";
            def.signature = term::pi({"p"}, family_kind(), term::arrow(term::set(), term::set()));
            def.clauses.push_back(
                {{p, term::var("A")},
                 term::pi({iv}, index_type(),
                          term::arrow(term::arrow(term::var("A"), term::app(p, {idx_n})), term::app(p, {succ_n})))});
            out.push_back(std::move(def));
        }
        {  // PS-to-P
            DerivedDef def;
            def.name = "PS-to-P";
            def.role = "ps";
            Term tail = term::broken(term::pi(
                {iv}, index_type(),
                term::arrow(interp_with({ps_p}, term::vars({"a"}), idx_n), term::app(p, {idx_n}))));
            def.signature = term::pi(
                {"p"}, family_kind(),
                term::pi({"a"}, term::set(),
                         term::pi({base_fn}, term::arrow(term::var("a"), term::app(p, {var_con(0)})), std::move(tail))));
            def.clauses.push_back({{p, term::var("a"), term::var(base_fn), var_con(0), term::var("x")},
                                   term::app(term::var(base_fn), {term::var("x")})});
            DerivedDef ih;
            ih.name = "ih";
            ih.role = "local";
            ih.signature = term::arrow(interp_with({ps_p}, term::vars({"a"}), idx_n), term::app(p, {idx_n}));
            ih.clauses.push_back({{}, term::app(term::ref("PS-to-P"), {p, term::var("a"), term::var(base_fn), idx_n})});
            Clause cl{{p, term::var("a"), term::var(base_fn), succ_n, term::var("hyp")},
                      term::app(term::var("hyp"), {idx_n, term::var("ih")})};
            cl.where.push_back(std::move(ih));
            def.clauses.push_back(std::move(cl));
            def.decreasing = 3;
            out.push_back(std::move(def));
        }
        const auto& nullary = decl.ctors[0];
        const auto& binary = decl.ctors[1];
        const std::string lm = method_name(nullary), cm = method_name(binary);
        {  // fold-PS
            DerivedDef def;
            def.name = "fold-PS";
            def.role = "ps";
            Term tail = term::broken(term::pi(
                {"a"}, term::set(),
                term::arrow(term::app(term::ref(decl.name), {term::var("a")}), term::app(ps_p, {term::var("a")}))));
            Term cty = term::broken(term::pi({cm}, nfold_method_type(0, binary), std::move(tail)));
            Term lty = term::broken(term::pi({lm}, nfold_method_type(0, nullary), std::move(cty)));
            def.signature = term::pi({"p"}, family_kind(), std::move(lty));
            Term tr = term::var("tr");
            Term leaf_case = term::lam({"a", iv, "tr"}, term::app(term::var(lm), {idx_n}));
            Term cons_case = term::lam(
                {"a", "x", "xs", iv, "tr"},
                term::app(term::var(cm),
                          {idx_n, term::app(tr, {term::var("x")}),
                           term::app(term::var("xs"),
                                     {succ_n, term::lam({"f"}, term::app(term::var("f"), {idx_n, tr}))})}));
            Clause cl{{p, term::var(lm), term::var(cm)},
                      term::app(term::ref("hfold"), {ps_p, std::move(leaf_case), term::broken(std::move(cons_case))})};
            cl.body_on_new_line = true;
            def.clauses.push_back(std::move(cl));
            out.push_back(std::move(def));
        }
        {  // liftNTimes
            DerivedDef def;
            def.name = "liftNTimes";
            def.role = "ps";
            const Term b = term::var("b"), c = term::var("c");
            Term m_ty = term::forall({"x", "y"}, term::arrow(term::arrow(term::var("x"), term::var("y")),
                                                             parens(term::arrow(term::app(b, {term::var("x")}),
                                                                                term::app(b, {term::var("y")})))));
            Term f_ty = term::forall({"a"}, term::arrow(term::app(b, {term::var("a")}), term::app(c, {term::var("a")})));
            Term tail = term::broken(term::pi({"a"}, term::set(),
                                              term::arrow(interp_with({b}, term::vars({"a"}), idx_n),
                                                          interp_with({c}, term::vars({"a"}), idx_n))));
            Term sig = term::pi({iv}, index_type(), term::arrow(std::move(f_ty), std::move(tail)));
            sig = term::broken(term::arrow(std::move(m_ty), term::broken(std::move(sig))));
            def.signature = term::pi({"b", "c"}, carrier_kind(1), std::move(sig));
            const std::vector<Term> head{b, c, term::var("m")};
            auto pats = [&](Term idx) {
                std::vector<Term> ps = head;
                ps.push_back(std::move(idx));
                for (const auto* n : {"f", "a", "x"}) ps.push_back(term::var(n));
                return ps;
            };
            def.clauses.push_back({pats(var_con(0)), term::var("x")});
            std::vector<Term> rec = head;
            rec.push_back(idx_n);
            rec.push_back(term::var("f"));
            rec.push_back(term::var("a"));
            Term nc = interp_with({c}, term::vars({"a"}), idx_n);
            Term body = term::app(
                term::var("f"),
                {nc, term::broken(term::app(term::var("m"), {interp_with({b}, term::vars({"a"}), idx_n), nc,
                                                             term::app(term::ref("liftNTimes"), std::move(rec)),
                                                             term::var("x")}))});
            Clause cl{pats(succ_n), std::move(body)};
            cl.body_on_new_line = true;
            def.clauses.push_back(std::move(cl));
            def.decreasing = 3;
            out.push_back(std::move(def));
        }
        {  // nfold'
            DerivedDef def = nfold_named("nfold'");
            def.role = "ps";
            def.decreasing.reset();
            def.clauses.clear();
            const std::string value = nat_ ? "x" : "v";
            std::vector<Term> pats{p, term::var(lm), term::var(cm), term::var("a"), term::var(base_fn), idx_n,
                                   term::var(value)};
            DerivedDef lift;
            lift.name = "lift";
            lift.role = "local";
            lift.signature = term::pi({iv}, index_type(),
                                      term::arrow(interp_self(idx_n), interp_with({ps_p}, term::vars({"a"}), idx_n)));
            Clause lc{{idx_n, term::var("x")},
                      term::app(term::ref("liftNTimes"),
                                {term::ref(decl.name), ps_p, term::lam({"a", "b"}, term::ref("hmap")), idx_n,
                                 term::app(term::ref("fold-PS"), {p, term::var(lm), term::var(cm)}), term::var("a"),
                                 term::var("x")})};
            lc.body_on_new_line = true;
            lift.clauses.push_back(std::move(lc));
            Clause cl{std::move(pats),
                      term::app(term::ref("PS-to-P"), {p, term::var("a"), term::var(base_fn), idx_n,
                                                       term::app(term::var("lift"), {idx_n, term::var(value)})})};
            cl.where.push_back(std::move(lift));
            def.clauses.push_back(std::move(cl));
            out.push_back(std::move(def));
        }
        return out;
    }

    // -- naming --------------------------------------------------------------

    /// Method for constructor `c`. Nat-index mode over the leaf/cons shape uses
    /// `l` and `c`; everything else uses `on-<ctor>`.
    std::string method_name(const Constructor& c) const {
        if (nat_ && leaf_cons_shape()) return c.args.empty() ? "l" : "c";
        return "on-" + c.name;
    }

    std::vector<std::string> carrier_names() const {
        if (nat_) return {"b"};
        std::vector<std::string> out;
        for (const auto& d : g_.decls) out.push_back(lower(d.name));
        return out;
    }

    std::vector<std::string> base_names() const {
        std::vector<std::string> out;
        for (std::size_t k = 0; k < g_.base_var_count; ++k) out.push_back(std::string(1, static_cast<char>('a' + k)));
        return out;
    }

    std::string base_fn_name(std::size_t k) const { return nat_ ? "z" : "base" + std::string(1, static_cast<char>('A' + k)); }
    std::string ind_base_name(std::size_t k) const { return nat_ ? "base" : base_fn_name(k); }

    /// Pattern-variable names for the arguments of `c`: x, y, w… for
    /// parameter-typed arguments and xs, ys, ws… for recursive ones.
    std::vector<std::string> arg_names(std::size_t d, const Constructor& c) const {
        static const char* stems[] = {"x", "y", "w", "u"};
        std::size_t plain = 0, rec = 0;
        std::vector<std::string> out;
        for (const auto& a : c.args) {
            bool is_param = a.is_var();
            std::size_t& k = is_param ? plain : rec;
            std::string s = k < 4 ? stems[k] : "x" + std::to_string(k + 1);
            out.push_back(is_param ? s : s + "s");
            ++k;
        }
        (void)d;
        return out;
    }

private:
    static std::string lower(std::string s) {
        for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        return s;
    }

    static Term parens(Term t) {
        // An arrow wrapped in a unary pi-free group renders parenthesised.
        Term wrap{Term::Kind::app};
        wrap.kids.push_back(std::move(t));
        return wrap;
    }

    /// Recursive calls go on their own lines outside nat mode, where the
    /// argument lists are long.
    Term recursive_arg(Term call) const { return nat_ ? call : term::broken(std::move(call)); }

    bool leaf_cons_shape() const {
        const TypeDecl& d = g_.decls.front();
        if (d.ctors.size() != 2) return false;
        return d.ctors[0].args.empty() && d.ctors[1].args.size() == 2;
    }

    std::vector<std::string> index_vars(std::size_t d) const {
        const std::size_t arity = g_.decls[d].params.size();
        if (nat_) return {"n"};
        if (arity == 1) return {"i"};
        std::vector<std::string> out;
        for (std::size_t k = 0; k < arity; ++k) out.push_back("i" + std::to_string(k + 1));
        return out;
    }

    std::vector<std::string> lambda_vars(std::size_t d) const { return index_vars(d); }

    std::vector<std::string> map_target_names() const {
        if (nat_) return {"b"};
        std::vector<std::string> out;
        for (const auto& b : base_names()) out.push_back(b + "'");
        return out;
    }

    std::vector<std::string> map_fn_names() const {
        if (nat_) return {"f"};
        std::vector<std::string> out;
        for (std::size_t k = 0; k < g_.base_var_count; ++k) out.push_back("f" + std::string(1, static_cast<char>('A' + k)));
        return out;
    }

    Term index_type() const { return term::ref(nat_ ? "Nat" : spec_.name); }
    Term family_kind() const { return term::arrow(index_type(), term::set()); }

    Term var_con(std::size_t k) const { return term::icon(spec_.var_ctors.at(k), true); }
    Term app_con(std::size_t d) const { return term::icon(spec_.app_ctors.at(d).first, false); }
    Term nat_zero() const { return var_con(0); }
    Term nat_succ(Term t) const { return term::app(app_con(0), {std::move(t)}); }

    static Term carrier_kind(std::size_t arity) {
        return term::arrows(std::vector<Term>(arity, term::set()), term::set());
    }

    /// `I carriers… bases… idx`, or `NTimes idx carrier base` in nat mode.
    Term interp_with(std::vector<Term> carriers, std::vector<Term> bases, Term idx) const {
        if (nat_) return term::app(term::ref("NTimes"), {std::move(idx), std::move(carriers.front()), std::move(bases.front())});
        std::vector<Term> args = std::move(carriers);
        for (auto& b : bases) args.push_back(std::move(b));
        args.push_back(std::move(idx));
        return term::app(term::ref("I"), std::move(args));
    }

    Term interp_term(const std::vector<Term>& carriers, const std::vector<Term>& bases, Term idx) const {
        return interp_with(carriers, bases, std::move(idx));
    }

    std::vector<Term> own_carriers() const {
        std::vector<Term> out;
        for (const auto& d : g_.decls) out.push_back(term::ref(d.name));
        return out;
    }

    /// `I D… a… idx`: the group's own types at index `idx`.
    Term interp_self(Term idx) const { return interp_with(own_carriers(), term::vars(base_names()), std::move(idx)); }

    Term family(Term idx) const { return term::app(term::var("p"), {std::move(idx)}); }
    Term family(Term idx, Term value) const { return term::app(term::var("p"), {std::move(idx), std::move(value)}); }

    Term term_of_index(const IndexExpr& e, const std::vector<std::string>& vars) const {
        if (e.is_var()) return term::var(vars.at(e.slot));
        std::vector<Term> args;
        for (const auto& a : e.args) args.push_back(term_of_index(a, vars));
        return term::app(app_con(e.slot), std::move(args));
    }

    Term closed_index(const IndexExpr& e) const {
        if (e.is_var()) return var_con(e.slot);
        std::vector<Term> args;
        for (const auto& a : e.args) args.push_back(closed_index(a));
        return term::app(app_con(e.slot), std::move(args));
    }

    Term quantify_indices(const std::vector<std::string>& ivs, Term body) const {
        if (nat_) return term::pi(ivs, index_type(), std::move(body));
        return term::forall(ivs, std::move(body));
    }

    Term quantify_sets(const std::vector<std::string>& params, Term body) const {
        if (params.empty()) return body;
        if (nat_) return term::pi(params, term::set(), std::move(body));
        return term::forall(params, std::move(body));
    }

    static TypeExpr decl_self(const TypeDecl& d) {
        std::vector<TypeExpr> ps;
        for (const auto& p : d.params) ps.push_back(TypeExpr::var(p));
        return TypeExpr::app(d.name, std::move(ps));
    }

    /// Source type as a term; with `carriers`, group members are replaced by
    /// the corresponding carrier variables.
    Term type_term(const TypeExpr& t, const std::vector<std::string>& carriers) const {
        if (t.is_var()) return term::var(t.name);
        std::vector<Term> args;
        for (const auto& a : t.args) args.push_back(type_term(a, carriers));
        Term head = term::ref(t.name);
        if (!carriers.empty())
            if (auto pos = g_.position(t.name)) head = term::var(carriers.at(*pos));
        return term::app(std::move(head), std::move(args));
    }

    Term ctor_pattern(const Constructor& c, const std::vector<std::string>& names) const {
        return term::app(term::ref(c.name), term::vars(names));
    }

    DerivedDef nfold_named(const std::string& name) const {
        DerivedDef def;
        def.name = name;
        def.role = "nfold";
        const auto bases = base_names();

        std::vector<std::pair<std::string, Term>> methods;
        for (std::size_t d = 0; d < g_.decls.size(); ++d)
            for (const auto& c : g_.decls[d].ctors) methods.emplace_back(method_name(c), nfold_method_type(d, c));

        const std::string value = nat_ ? "x" : "v";
        Term result;
        if (nat_)
            result = term::pi({"n"}, index_type(), term::arrow(interp_self(term::var("n")), family(term::var("n"))));
        else
            result = term::forall({"i"}, term::arrow(interp_self(term::var("i")), family(term::var("i"))));
        Term sig = term::broken(std::move(result));
        for (std::size_t k = bases.size(); k-- > 0;) {
            sig = term::pi({base_fn_name(k)}, term::arrow(term::var(bases[k]), family(var_con(k))), std::move(sig));
            if (!nat_) sig = term::broken(std::move(sig));
        }
        if (!bases.empty()) sig = term::broken(term::pi(bases, term::set(), std::move(sig)));
        for (std::size_t k = methods.size(); k-- > 0;)
            sig = term::broken(term::pi({methods[k].first}, std::move(methods[k].second), std::move(sig)));
        def.signature = term::pi({"p"}, family_kind(), std::move(sig));

        std::vector<Term> common{term::var("p")};
        for (const auto& m : methods) common.push_back(term::var(m.first));
        for (const auto& b : bases) common.push_back(term::var(b));
        for (std::size_t k = 0; k < bases.size(); ++k) common.push_back(term::var(base_fn_name(k)));
        auto lhs = [&](Term idx, Term val) {
            std::vector<Term> ps = common;
            ps.push_back(std::move(idx));
            ps.push_back(std::move(val));
            return ps;
        };
        for (std::size_t k = 0; k < bases.size(); ++k)
            def.clauses.push_back({lhs(var_con(k), term::var("x")), term::app(term::var(base_fn_name(k)), {term::var("x")})});
        for (std::size_t d = 0; d < g_.decls.size(); ++d)
            for (const auto& c : g_.decls[d].ctors) {
                const auto ivs = index_vars(d);
                const auto names = arg_names(d, c);
                std::vector<Term> args = term::vars(ivs);
                for (std::size_t j = 0; j < c.args.size(); ++j) {
                    std::vector<Term> call = common;
                    call.push_back(term_of_index(type_to_index(g_, d, c.args[j]), ivs));
                    call.push_back(term::var(names[j]));
                    args.push_back(recursive_arg(term::app(term::ref(name), std::move(call))));
                }
                Clause cl{lhs(term::app(app_con(d), term::vars(ivs)), ctor_pattern(c, names)),
                          term::app(term::var(method_name(c)), std::move(args))};
                cl.body_on_new_line = !c.args.empty();
                def.clauses.push_back(std::move(cl));
            }
        def.decreasing = common.size() + 1;
        (void)value;
        return def;
    }

    const MutualGroup& g_;
    IndexTypeSpec spec_;
    bool nat_;
};

// Free-function surface, one per derived artifact.

inline DerivedDef derive_index_decl(const MutualGroup& g, DeriveOptions o = {}) { return Deriver(g, o).index_decl(); }
inline DerivedDef derive_interp(const MutualGroup& g, DeriveOptions o = {}) { return Deriver(g, o).interp(); }
inline DerivedDef derive_nfold(const MutualGroup& g, DeriveOptions o = {}) { return Deriver(g, o).nfold(); }
inline DerivedDef derive_ind(const MutualGroup& g, DeriveOptions o = {}) { return Deriver(g, o).ind(); }
inline DerivedDef derive_map(const MutualGroup& g, DeriveOptions o = {}) { return Deriver(g, o).map(); }
inline std::vector<DerivedDef> derive_hfold(const MutualGroup& g, DeriveOptions o = {}) { return Deriver(g, o).hfolds(); }
inline std::vector<DerivedDef> derive_ps_bridge(const MutualGroup& g, DeriveOptions o = {}) {
    return Deriver(g, o).ps_bridge();
}

/// Everything derivable for a group, in emission order, plus the notes on
/// what was skipped.
struct Derivation {
    std::vector<DerivedDef> defs;
    std::vector<std::string> derived;
    std::vector<std::string> skipped;
};

inline Derivation derive_all(const MutualGroup& g, DeriveOptions o = {}) {
    Deriver dv(g, o);
    Derivation out;
    auto add = [&](DerivedDef d) {
        if (d.role != "signature" && d.role != "source" && d.role != "source-after-signature")
            out.derived.push_back(d.name);
        out.defs.push_back(std::move(d));
    };
    for (auto& d : dv.source_decls()) add(std::move(d));
    add(dv.index_decl());
    add(dv.interp());
    add(dv.nfold());
    add(dv.map());
    add(dv.ind());
    for (auto& d : dv.hfolds()) add(std::move(d));
    if (Deriver::bush_shaped(g)) {
        for (auto& d : dv.ps_bridge()) add(std::move(d));
    } else {
        out.skipped.push_back("PS bridge for " + g.joined_name() + ": PS bridge not derivable for this shape");
    }
    if (o.nat_index && !dv.nat_index())
        out.skipped.push_back("--nat-index for " + g.joined_name() +
                              ": not a singleton unary group, generic index used");
    return out;
}

} // namespace nestfold
