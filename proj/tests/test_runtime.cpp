#include <gtest/gtest.h>

#include <limits>

#include "nestfold/catalogue.hpp"
#include "nestfold/parser.hpp"
#include "nestfold/runtime.hpp"
#include "test_support.hpp"

using namespace nestfold;

namespace {

struct Loaded {
    Program prog;
    MutualGroup g;
};

Loaded load(const std::string& sample) {
    Program p = parse_program(test::read_sample(sample));
    MutualGroup g = classify(p).front();
    return {std::move(p), std::move(g)};
}

Value bush_literal(const Loaded& l, const std::string& text) {
    return parse_value_literal(text, l.prog, parse_value_type("Bush Nat", l.prog));
}

const char* kBush1 = "[ 4, [ 8, [ 5 ], [ [ 3 ] ] ], [ [ 7 ], [ ], [ [ [ 7 ] ] ] ], [ [ [ ], [ [ 0 ] ] ] ] ]";

// Oracles written against the value tree directly, without any fold.
void flatten(const Value& v, std::vector<std::uint64_t>& out) {
    if (v.is_base()) {
        if (auto* n = std::get_if<std::uint64_t>(&v.payload)) out.push_back(*n);
        return;
    }
    for (const auto& a : v.args) flatten(a, out);
}

std::uint64_t height(const Value& v) {
    if (v.is_base() || v.args.empty()) return 0;
    std::uint64_t m = 0;
    for (const auto& a : v.args) m = std::max(m, height(a));
    return m + 1;
}

std::uint64_t oracle_sum(const Value& v) {
    std::vector<std::uint64_t> xs;
    flatten(v, xs);
    std::uint64_t s = 0;
    for (auto x : xs) s += x;
    return s;
}

} // namespace

TEST(Runtime, HeadlineValuesForBush1) {
    Loaded l = load("bush.ndt");
    Value v = bush_literal(l, kBush1);
    const IndexExpr one = nat_to_index(1);
    EXPECT_EQ(eval_nfold(l.g, sum_algebra(l.g), one, v).as_nat(), 34u);
    EXPECT_EQ(eval_nfold(l.g, length_algebra(l.g), one, v).as_nat(), 4u);
    auto aux = sum_aux_algebra(l.g);
    ASSERT_TRUE(aux);
    EXPECT_EQ(observe(*aux, eval_hfold(l.g, 0, *aux, from_value(v))).as_nat(), 34u);
    EXPECT_EQ(eval_nfold_prime(l.g, sum_algebra(l.g), one, from_value(v)).as_nat(), 34u);
    EXPECT_EQ(oracle_sum(v), 34u);
}

TEST(Runtime, SumAndDepthAgreeWithTreeOracles) {
    for (const char* s : {"bush.ndt", "list.ndt", "bobdylan.ndt"}) {
        Loaded l = load(s);
        Enumerator e(l.g, std::vector<Value>{Value::nat(0), Value::nat(3)});
        for (std::size_t d = 0; d < l.g.decls.size(); ++d) {
            IndexExpr i = decl_index(l.g, d);
            for (const auto& v : e.up_to(i, 6)) {
                EXPECT_EQ(eval_nfold(l.g, sum_algebra(l.g), i, v).as_nat(), oracle_sum(v)) << to_string(v);
                EXPECT_EQ(eval_nfold(l.g, depth_algebra(l.g), i, v).as_nat(), height(v)) << to_string(v);
            }
        }
    }
}

TEST(Runtime, MapAddsOneToEveryElement) {
    Loaded l = load("bush.ndt");
    Value v = bush_literal(l, kBush1);
    Result mapped = eval_map(l.g, {[](const Result& x) { return Result::nat(x.as_nat() + 1); }}, nat_to_index(1),
                             from_value(v));
    // Worked by hand from the literal.
    Value expect = bush_literal(l, "[ 5, [ 9, [ 6 ], [ [ 4 ] ] ], [ [ 8 ], [ ], [ [ [ 8 ] ] ] ], [ [ [ ], [ [ 1 ] ] ] ] ]");
    EXPECT_EQ(to_value(mapped), expect);
    std::vector<std::uint64_t> xs;
    flatten(expect, xs);
    EXPECT_EQ(xs, (std::vector<std::uint64_t>{5, 9, 6, 4, 8, 8, 1}));
}

TEST(Runtime, DirectMapAgreesWithFoldMap) {
    Loaded l = load("bush.ndt");
    Result v = from_value(bush_literal(l, kBush1));
    auto inc = [](const Result& x) { return Result::nat(x.as_nat() + 1); };
    EXPECT_EQ(eval_hmap_direct(l.g, 0, {inc}, v), eval_map(l.g, {inc}, nat_to_index(1), v));
}

TEST(Runtime, InductionRebuildsItsInput) {
    Loaded l = load("bobdylan.ndt");
    DepAlgebra rebuild;
    rebuild.name = "rebuild";
    for (const auto& d : l.g.decls)
        for (const auto& c : d.ctors)
            rebuild.methods[c.name] = [name = c.name](const std::vector<IndexExpr>&, const std::vector<Result>& xs,
                                                      const std::vector<Result>&) { return Result::node(name, xs); };
    rebuild.bases.assign(2, [](const Result& x) { return x; });
    Enumerator e(l.g, std::vector<Value>{Value::nat(1), Value::atom("q")});
    std::size_t seen = 0;
    for (std::size_t d = 0; d < 2; ++d)
        for (const auto& v : e.up_to(decl_index(l.g, d), 5)) {
            ++seen;
            EXPECT_EQ(eval_ind(l.g, rebuild, decl_index(l.g, d), from_value(v)), from_value(v));
        }
    EXPECT_GT(seen, 0u);
}

TEST(Enumerate, SmallBushes) {
    Loaded l = load("bush.ndt");
    auto vs = enumerate_values(l.g, nat_to_index(1), {Value::atom("o")}, 2);
    ASSERT_EQ(vs.size(), 2u);
    EXPECT_EQ(to_string(vs[0]), "leaf");
    EXPECT_EQ(vs[1], Value::con("cons", {Value::atom("o"), Value::con("leaf")}));
    Enumerator e(l.g, std::vector<Value>{Value::nat(0), Value::nat(1)});
    EXPECT_TRUE(e.exact(nat_to_index(1), 0).empty());
    EXPECT_EQ(e.exact(nat_to_index(0), 0), (std::vector<Value>{Value::nat(0), Value::nat(1)}));
}

TEST(Enumerate, CountsMatchRecurrence) {
    // c(0, 0) = |U|; c(n+1, s) = [s == 1] + sum c(n, s1) * c(n+2, s - 1 - s1).
    Loaded l = load("bush.ndt");
    const std::size_t u = 3, max_s = 7, max_n = 3 + max_s;
    std::vector<std::vector<std::uint64_t>> c(max_n + 2, std::vector<std::uint64_t>(max_s + 1, 0));
    c[0][0] = u;
    for (std::size_t s = 0; s <= max_s; ++s)
        for (std::size_t n = max_n; n-- > 0;) {
            if (s == 1) c[n + 1][s] += 1;
            for (std::size_t s1 = 0; s >= 1 && s1 + 1 <= s; ++s1) c[n + 1][s] += c[n][s1] * (n + 2 <= max_n ? c[n + 2][s - 1 - s1] : 0);
        }
    Enumerator e(l.g, std::vector<Value>{Value::nat(0), Value::nat(1), Value::nat(2)});
    for (std::size_t n = 0; n <= 3; ++n)
        for (std::size_t s = 0; s <= max_s; ++s) EXPECT_EQ(e.exact(nat_to_index(n), s).size(), c[n][s]) << n << "," << s;
}

TEST(Typecheck, ReportsMismatchesAtTheirPosition) {
    Loaded l = load("bush.ndt");
    Value bad = parse_value_literal("[ 1, [ 'x ] ]", l.prog, parse_value_type("Bush Atom", l.prog));
    auto ds = typecheck_value(l.g, nat_to_index(1), {"Nat"}, bad);
    ASSERT_EQ(ds.size(), 1u);
    EXPECT_NE(ds[0].message.find("expected a value of type Nat"), std::string::npos) << ds[0].message;
    EXPECT_EQ(ds[0].pos.col, 8u) << ds[0].message;
    Value ok = bush_literal(l, kBush1);
    EXPECT_TRUE(typecheck_value(l.g, nat_to_index(1), {"Nat"}, ok).empty());
    EXPECT_FALSE(typecheck_value(l.g, nat_to_index(2), {"Nat"}, ok).empty());
}

TEST(Runtime, OverflowIsAnError) {
    Loaded l = load("list.ndt");
    const auto big = std::numeric_limits<std::uint64_t>::max();
    Value v = Value::con("cons", {Value::nat(big), Value::con("cons", {Value::nat(1), Value::con("nil")})});
    EXPECT_THROW(eval_nfold(l.g, sum_algebra(l.g), decl_index(l.g, 0), v), EvalError);
    EXPECT_THROW(checked_add(big, 1), EvalError);
}

TEST(Runtime, DirectHigherOrderFoldStopsAtTheGuard) {
    Loaded l = load("bush.ndt");
    Result v = from_value(bush_literal(l, kBush1));
    HAlgebra r = rebuild_halgebra(l.g);
    EXPECT_THROW(eval_hfold_direct(l.g, 0, r, v, 2), EvalError);
    EXPECT_EQ(eval_hfold_direct(l.g, 0, r, v), v);
}

TEST(Runtime, FunctionResultsDoNotCompare) {
    Result f = identity_continuation();
    EXPECT_THROW((void)(f == f), EvalError);
    EXPECT_EQ(f(Result::nat(3)).as_nat(), 3u);
}

TEST(Runtime, IncompleteAlgebraIsRejected) {
    Loaded l = load("list.ndt");
    Algebra a = sum_algebra(l.g);
    a.methods.erase("nil");
    EXPECT_THROW(eval_nfold(l.g, a, decl_index(l.g, 0), Value::con("nil")), EvalError);
}

TEST(Runtime, TerminationCounterBoundedBySize) {
    Loaded l = load("bush.ndt");
    Value v = bush_literal(l, kBush1);
    EvalStats st;
    eval_nfold(l.g, sum_algebra(l.g), nat_to_index(1), v, &st);
    EXPECT_EQ(st.con_calls, value_size(v));
}
