#include "fixtures.hpp"

#include <wcoj/constraints.hpp>
#include <wcoj/error.hpp>
#include <wcoj/oracle.hpp>

#include <gtest/gtest.h>

using namespace wcoj;


namespace {

ConstraintSet over(const JoinQuery &q, std::vector<DegreeConstraint> constraints)
{
    ConstraintSet cs;
    cs.variables = q.order;
    for (const auto &r : q.relations)
        cs.edges.push_back(r.vars());
    cs.constraints = std::move(constraints);
    return cs;
}

}

TEST(Constraints, WellFormedness)
{
    auto q = test::triangle();
    const VarSet r = {0, 1};
    EXPECT_NO_THROW(over(q, {{{0}, {0, 1}, 2, r}}).check_well_formed());
    EXPECT_THROW(over(q, {{{2}, {0, 1}, 2, r}}).check_well_formed(), InvalidInput);  // A ⊄ B
    EXPECT_THROW(over(q, {{{}, {0, 2}, 2, r}}).check_well_formed(), InvalidInput);   // B ⊄ guard
    EXPECT_THROW(over(q, {{{}, {0, 1}, 0, r}}).check_well_formed(), InvalidInput);   // N = 0
    EXPECT_THROW(over(q, {{{}, {0}, 2, {0}}}).check_well_formed(), InvalidInput);    // guard not an edge
}

TEST(Constraints, FunctionalDependencySugar)
{
    auto fd = functional_dependency({2}, 0, {0, 2});
    EXPECT_EQ(fd.a, (VarSet{2}));
    EXPECT_EQ(fd.b, (VarSet{0, 2}));
    EXPECT_EQ(fd.bound, 1u);
    EXPECT_EQ(fd.covered(), (VarSet{0}));
    EXPECT_FALSE(fd.is_cardinality());
}

TEST(Constraints, DefaultCardinalities)
{
    auto q = test::triangle(true);
    auto cs = cardinality_constraints(q);
    ASSERT_EQ(cs.constraints.size(), 3u);
    EXPECT_EQ(cs.constraints[0].bound, 4u);
    EXPECT_EQ(cs.constraints[2].bound, 1u);   // empty T still gets N = 1
    EXPECT_FALSE(cs.edge_without_cardinality());
    EXPECT_FALSE(cs.uncovered_variable());

    auto partial = over(q, {functional_dependency({0}, 1, {0, 1})});
    EXPECT_EQ(partial.edge_without_cardinality(), std::size_t(0));
    add_default_cardinalities(partial, q);
    EXPECT_EQ(partial.constraints.size(), 4u);
    EXPECT_FALSE(partial.edge_without_cardinality());
}

TEST(Validate, CardinalitiesOfTheTriangleHold)
{
    auto q = test::triangle();
    std::vector<DegreeConstraint> dcs;
    for (const auto &r : q.relations)
        dcs.push_back({{}, r.vars(), 4, r.vars()});
    auto cs = over(q, dcs);
    for (const auto &v : validate(q, cs)) {
        EXPECT_TRUE(v.pass);
        EXPECT_EQ(v.max_degree, 4u);
    }
}

TEST(Validate, DegreeViolationHasWitness)
{
    auto q = test::triangle();
    auto cs = over(q, {{{0}, {0, 1}, 1, {0, 1}}});
    auto report = validate(q, cs);
    ASSERT_EQ(report.size(), 1u);
    EXPECT_FALSE(report[0].pass);
    EXPECT_TRUE(report[0].guard_found);
    EXPECT_EQ(report[0].guard_relation, 0u);
    EXPECT_EQ(report[0].max_degree, 2u);
    EXPECT_EQ(report[0].witness, Tuple({{0, 1}}));   // x1 = 1 has x2 in {0, 1}
}

TEST(Validate, MatchesBruteForceDegree)
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial != 200; ++trial) {
        auto q = test::random_query(rng);
        const auto &r = q.relations[rng() % q.relations.size()];
        if (r.arity() < 2)
            continue;
        VarSet a = {r.vars()[0]};
        auto cs = over(q, {{a, r.vars(), 1, r.vars()}});
        auto entry = validate(q, cs).front();
        const auto &guard = q.relations[entry.guard_relation];
        ASSERT_EQ(guard.vars(), r.vars());

        std::uint64_t expect = 0;
        for (Code d = 0; d != q.domain_size; ++d)
            expect = std::max<std::uint64_t>(expect, filter(guard, Tuple({{a[0], d}})).size());
        ASSERT_EQ(entry.max_degree, expect);
        ASSERT_EQ(entry.pass, expect <= 1);
    }
}

TEST(Validate, MissingGuardIsAFailure)
{
    auto q = test::triangle();
    auto cs = over(q, {{{}, {0}, 3, {0}}});
    cs.edges.push_back({0});
    auto report = validate(q, cs);
    EXPECT_FALSE(report[0].pass);
    EXPECT_FALSE(report[0].guard_found);
    EXPECT_EQ(report[0].message, "no guard relation");
}

TEST(DependencyGraph, FdsGiveEdgesFromTheDeterminant)
{
    auto q = test::diagonal_pair(3);
    auto cs = test::diagonal_constraints(q);
    auto g = dependency_graph(cs);
    EXPECT_EQ(g.edges, (std::vector<std::pair<VarId, VarId>>{{2, 0}, {2, 1}}));
    EXPECT_TRUE(g.has_edge(2, 0));
    EXPECT_FALSE(g.has_edge(0, 2));
    EXPECT_TRUE(is_acyclic(cs));
}

TEST(DependencyGraph, CycleIsReported)
{
    auto q = test::triangle();
    const VarSet r = {0, 1};
    auto cs = over(q, {{{0}, r, 2, r}, {{1}, r, 2, r}});
    EXPECT_FALSE(is_acyclic(cs));
    auto result = compatible_order(cs);
    ASSERT_TRUE(std::holds_alternative<Cycle>(result));
    const auto &cycle = std::get<Cycle>(result);
    EXPECT_EQ(cycle.vertices, (std::vector<VarId>{0, 1}));
    EXPECT_EQ(format_cycle(cs, cycle), "x1 -> x2 -> x1");
    EXPECT_THROW(require_compatible_order(cs), OrderError);
    std::vector<VarId> any = {0, 1, 2};
    EXPECT_FALSE(check_compatible(cs, any));
}

TEST(DependencyGraph, BothSidesOfBDoNotMakeSelfLoops)
{
    // (A, B, N) with A ⊂ B only orders A before B ∖ A
    auto q = test::triangle();
    auto cs = over(q, {{{0}, {0, 1}, 2, {0, 1}}});
    EXPECT_EQ(dependency_graph(cs).edges, (std::vector<std::pair<VarId, VarId>>{{0, 1}}));
    EXPECT_TRUE(is_acyclic(cs));
}

TEST(CompatibleOrder, NameTieBreak)
{
    auto q = test::diagonal_pair(3);
    auto cs = test::diagonal_constraints(q);
    EXPECT_EQ(require_compatible_order(cs), (std::vector<VarId>{2, 0, 1}));

    std::vector<VarId> paper = {2, 1, 0};
    std::vector<VarId> identity = {0, 1, 2};
    EXPECT_TRUE(check_compatible(cs, paper));
    EXPECT_FALSE(check_compatible(cs, identity));

    ConstraintSet none{q.order, cs.edges, {}};
    EXPECT_TRUE(check_compatible(none, identity));
    EXPECT_EQ(require_compatible_order(none), identity);
}

TEST(CompatibleOrder, TieBreakUsesNamesNotIds)
{
    auto q = test::make_query({"b", "a", "c"}, 2, {{{"a", "b", "c"}, {{0, 0, 0}}}});
    ConstraintSet cs{q.order, {q.relations[0].vars()}, {}};
    // ids 0, 1, 2 are named b, a, c
    EXPECT_EQ(require_compatible_order(cs), (std::vector<VarId>{1, 0, 2}));
}

// Every order compatible with an acyclic constraint set keeps prefix answers
// within the constraints; the identity order on the diagonal instance shows
// what goes wrong without compatibility.
TEST(CompatibleOrder, IncompatibleOrderBlowsUpPrefixes)
{
    const std::size_t n = 6;
    auto q = test::diagonal_pair(n);
    std::vector<VarId> identity = {0, 1, 2};
    auto counts = oracle::prefix_counts(q, identity);
    EXPECT_EQ(counts[1], n * n);
    EXPECT_EQ(counts[2], n);

    std::vector<VarId> compatible = {2, 1, 0};
    for (auto c : oracle::prefix_counts(q, compatible))
        EXPECT_LE(c, n);
}

TEST(Formatting, ConstraintText)
{
    auto q = test::triangle();
    auto cs = over(q, {functional_dependency({0}, 1, {0, 1})});
    EXPECT_EQ(format_constraint(cs, cs.constraints[0]), "({x1}, {x1,x2}, 1)");
}
