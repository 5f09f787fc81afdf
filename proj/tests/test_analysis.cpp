#include <gtest/gtest.h>

#include "nestfold/analysis.hpp"
#include "nestfold/parser.hpp"
#include "test_support.hpp"

using namespace nestfold;

namespace {

std::vector<MutualGroup> groups_of(const std::string& text) {
    Program p = parse_program(text);
    EXPECT_TRUE(well_formed(p).empty());
    return classify(p);
}

std::vector<MutualGroup> sample_groups(const std::string& name) { return groups_of(test::read_sample(name)); }

} // namespace

TEST(Classify, BushIsNestedWithNatIndex) {
    auto gs = sample_groups("bush.ndt");
    ASSERT_EQ(gs.size(), 1u);
    EXPECT_EQ(gs[0].classification, Classification::nested);
    EXPECT_EQ(gs[0].base_var_count, 1u);
    EXPECT_TRUE(has_nat_index(gs[0]));
}

TEST(Classify, ListIsOrdinary) {
    auto gs = sample_groups("list.ndt");
    ASSERT_EQ(gs.size(), 1u);
    EXPECT_EQ(gs[0].classification, Classification::ordinary);
}

TEST(Classify, BobAndDylanFormOneGroup) {
    auto gs = sample_groups("bobdylan.ndt");
    ASSERT_EQ(gs.size(), 1u);
    EXPECT_EQ(gs[0].names(), (std::vector<std::string>{"Bob", "Dylan"}));
    EXPECT_EQ(gs[0].joined_name(), "BobDylan");
    EXPECT_EQ(gs[0].base_var_count, 2u);
    EXPECT_EQ(gs[0].classification, Classification::nested);
    EXPECT_FALSE(has_nat_index(gs[0]));
}

TEST(Classify, IndependentDeclarationsSplit) {
    auto gs = groups_of("data A (a : Set) : Set where\n  a0 : A a\n"
                        "data B (a : Set) : Set where\n  b0 : A a -> B a\n");
    EXPECT_EQ(gs.size(), 2u);
}

TEST(Classify, CrossGroupNestingIsReported) {
    auto gs = groups_of("data A (a : Set) : Set where\n  a0 : A a\n"
                        "data B (a : Set) : Set where\n  b0 : A a -> B a\n");
    std::size_t total = 0;
    for (const auto& g : gs) {
        auto ds = group_diagnostics(g);
        total += ds.size();
        for (const auto& d : ds) EXPECT_NE(d.message.find("cross-group nesting not supported"), std::string::npos);
    }
    EXPECT_EQ(total, 1u);
}

TEST(IndexUniverse, VariablesThenOneConstructorPerDeclaration) {
    auto g = sample_groups("bobdylan.ndt").front();
    IndexTypeSpec s = index_universe(g);
    EXPECT_EQ(s.name, "BobDylanIndex");
    EXPECT_EQ(s.var_ctors, (std::vector<std::string>{"varA", "varB"}));
    ASSERT_EQ(s.app_ctors.size(), 2u);
    EXPECT_EQ(s.app_ctors[0], std::make_pair(std::string("BobC"), std::size_t{1}));
    EXPECT_EQ(s.app_ctors[1], std::make_pair(std::string("DylanC"), std::size_t{2}));
}

TEST(IndexUniverse, TypeTranslation) {
    auto g = sample_groups("bobdylan.ndt").front();
    const TypeExpr& arg = g.decls[0].ctors[1].args[0];  // Dylan (Bob (Dylan a (Bob a))) (Bob a)
    IndexExpr i = type_to_index(g, 0, arg);
    EXPECT_EQ(to_string(g, i), "DylanC (BobC (DylanC varA (BobC varA))) (BobC varA)");
    EXPECT_EQ(index_depth(i), 4u);
    EXPECT_TRUE(well_formed_index(g, i));
    EXPECT_EQ(to_string(g, decl_index(g, 1)), "DylanC varA varB");
}

TEST(IndexUniverse, Instantiation) {
    auto g = sample_groups("bobdylan.ndt").front();
    IndexExpr t = type_to_index(g, 1, g.decls[1].ctors[1].args[0]);  // Dylan (Bob a) (Bob b)
    IndexExpr r = instantiate(t, {IndexExpr::var(1), IndexExpr::var(0)});
    EXPECT_EQ(to_string(g, r), "DylanC (BobC varB) (BobC varA)");
}

TEST(IndexUniverse, NatRoundTrip) {
    for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(index_to_nat(nat_to_index(k)), k);
    EXPECT_EQ(index_depth(nat_to_index(3)), 3u);
}

TEST(IndexUniverse, ValueTypesAssignVariablesByFirstOccurrence) {
    auto g = sample_groups("bobdylan.ndt").front();
    Program p = parse_program(test::read_sample("bobdylan.ndt"));
    TypedIndex ti = value_type_to_index(g, parse_value_type("Dylan Atom (Bob Nat)", p));
    EXPECT_EQ(ti.base_types, (std::vector<std::string>{"Atom", "Nat"}));
    EXPECT_EQ(to_string(g, ti.index), "DylanC varA (BobC varB)");
    TypedIndex same = value_type_to_index(g, parse_value_type("Dylan Nat Nat", p));
    EXPECT_EQ(to_string(g, same.index), "DylanC varA varA");
}

TEST(IndexUniverse, OrderingIsStrictAndTotal) {
    IndexExpr a = IndexExpr::var(0), b = IndexExpr::var(1), c = IndexExpr::app(0, {a});
    EXPECT_TRUE(a < b);
    EXPECT_TRUE(b < c);
    EXPECT_FALSE(c < c);
    EXPECT_NE(c, IndexExpr::app(0, {b}));
}
