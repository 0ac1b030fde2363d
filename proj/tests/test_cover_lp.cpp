#include "fixtures.hpp"

#include <wcoj/error.hpp>
#include <wcoj/estimators.hpp>
#include <wcoj/rational.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace wcoj;


namespace {

std::vector<std::string> strings(const FractionalCover &c)
{
    std::vector<std::string> out;
    for (const auto &w : c.weights)
        out.push_back(format_rational(w));
    return out;
}

Hypergraph triangle()
{
    return {{"x1", "x2", "x3"}, {{0, 1}, {1, 2}, {0, 2}}};
}

}

TEST(Rational, ParseAndFormat)
{
    EXPECT_EQ(parse_rational("1/2"), Rational(1, 2));
    EXPECT_EQ(parse_rational("4/8"), Rational(1, 2));
    EXPECT_EQ(parse_rational("3"), Rational(3));
    EXPECT_EQ(parse_rational(" 2/3 "), Rational(2, 3));
    EXPECT_EQ(format_rational(Rational(6, 4)), "3/2");
    EXPECT_EQ(format_rational(Rational(0)), "0");
    EXPECT_EQ(format_rational(Rational(1)), "1");
    EXPECT_THROW(parse_rational("1/0"), InvalidInput);
    EXPECT_THROW(parse_rational("half"), InvalidInput);
    EXPECT_THROW(parse_rational(""), InvalidInput);
    EXPECT_DOUBLE_EQ(to_double(Rational(1, 4)), 0.25);
}

TEST(CoverLp, TriangleHalves)
{
    for (std::uint64_t n : {2u, 64u, 1000u}) {
        auto sol = solve_cover_card(triangle(), {n, n, n});
        EXPECT_EQ(strings(sol.cover), (std::vector<std::string>{"1/2", "1/2", "1/2"}));
        EXPECT_NEAR(sol.log2_bound(), 1.5 * std::log2(double(n)), 1e-9);
    }
}

TEST(CoverLp, OneEdgeAndPath)
{
    Hypergraph one{{"x", "y"}, {{0, 1}}};
    auto sol = solve_cover_card(one, {10});
    EXPECT_EQ(strings(sol.cover), (std::vector<std::string>{"1"}));
    EXPECT_NEAR(sol.log_bound, std::log(10.0), 1e-12);

    Hypergraph path{{"x1", "x2", "x3"}, {{0, 1}, {1, 2}}};
    auto p = solve_cover_card(path, {8, 8});
    EXPECT_EQ(strings(p.cover), (std::vector<std::string>{"1", "1"}));
    EXPECT_NEAR(p.log2_bound(), 6.0, 1e-12);
}

TEST(CoverLp, UnevenTriangleUsesTheSmallEdges)
{
    // |R| = |S| = 2, |T| = 1024: covering with R and S (bound 4) beats the halves (bound 64)
    auto sol = solve_cover_card(triangle(), {2, 2, 1024});
    EXPECT_EQ(strings(sol.cover), (std::vector<std::string>{"1", "1", "0"}));
    EXPECT_NEAR(sol.log2_bound(), 2.0, 1e-12);
}

TEST(CoverLp, OptimumMatchesGridSearch)
{
    // brute-force oracle over weights k/6 for every edge
    std::mt19937_64 rng(8);
    for (int trial = 0; trial != 30; ++trial) {
        std::vector<std::uint64_t> sizes = {1 + rng() % 50, 1 + rng() % 50, 1 + rng() % 50};
        auto sol = solve_cover_card(triangle(), sizes);
        double best = INFINITY;
        for (int a = 0; a <= 12; ++a)
            for (int b = 0; b <= 12; ++b)
                for (int c = 0; c <= 12; ++c) {
                    if (a + b < 6 or b + c < 6 or a + c < 6)
                        continue;
                    double v = (a * std::log(double(sizes[0])) + b * std::log(double(sizes[1])) +
                                c * std::log(double(sizes[2]))) / 6;
                    best = std::min(best, v);
                }
        // the triangle LP has vertices with denominators 1 and 2, all on the grid
        EXPECT_NEAR(sol.log_bound, best, 1e-9);
        EXPECT_FALSE(uncovered_by(3, triangle().edges, sol.cover));
    }
}

TEST(CoverLp, Errors)
{
    Hypergraph gap{{"x", "y"}, {{0}}};
    try {
        solve_cover_card(gap, {3});
        FAIL() << "expected InfeasibleCover";
    } catch (const InfeasibleCover &e) {
        EXPECT_EQ(e.variable(), "y");
    }

    Hypergraph big;
    for (int i = 0; i != 12; ++i) {
        big.variables.push_back("x" + std::to_string(i));
        big.edges.push_back({VarId(i)});
    }
    EXPECT_THROW(solve_cover_card(big, std::vector<std::uint64_t>(12, 2)), TooLarge);
}

TEST(CoverLp, UserWeightsCoverageCheck)
{
    auto edges = triangle().edges;
    FractionalCover halves{{Rational(1, 2), Rational(1, 2), Rational(1, 2)}};
    EXPECT_FALSE(uncovered_by(3, edges, halves));
    FractionalCover short_x2{{Rational(1, 2), Rational(1, 3), Rational(1, 2)}};
    EXPECT_EQ(uncovered_by(3, edges, short_x2), VarId(1));
    FractionalCover wrong_size{{Rational(1)}};
    EXPECT_THROW(uncovered_by(3, edges, wrong_size), InvalidInput);
    EXPECT_NEAR(log_bound(halves, {4, 4, 4}), 3 * std::log(2.0), 1e-12);
}

TEST(CoverLp, DegreeClassOfTheDiagonalInstance)
{
    const std::uint64_t n = 37;
    auto q = test::diagonal_pair(n);
    auto cs = test::diagonal_constraints(q);
    auto sol = solve_cover_degree(cs);

    // exponent of N in the bound, exactly: every constraint has N_δ ∈ {1, N}
    Rational exponent = 0;
    for (std::size_t i = 0; i != cs.constraints.size(); ++i) {
        ASSERT_TRUE(cs.constraints[i].bound == 1 or cs.constraints[i].bound == n);
        if (cs.constraints[i].bound == n)
            exponent += sol.cover.weights[i];
    }
    EXPECT_EQ(exponent, Rational(1));
    EXPECT_FALSE(uncovered_by(3, cover_sets(cs), sol.cover));
    EXPECT_NEAR(sol.log_bound, std::log(double(n)), 1e-12);
}

TEST(CoverLp, PureCardinalityDegreeLpAgreesWithAgm)
{
    auto q = test::triangle();
    auto cs = cardinality_constraints(q);
    auto a = solve_cover_degree(cs);
    auto b = solve_cover_card({q.order, {q.relations[0].vars(), q.relations[1].vars(), q.relations[2].vars()}},
                              {4, 4, 4});
    EXPECT_EQ(strings(a.cover), strings(b.cover));
    EXPECT_DOUBLE_EQ(a.log_bound, b.log_bound);
}

TEST(CoverLp, FdOnTheTriangleTightensTheBound)
{
    // x1 -> x2 on R: T then determines everything, bound |T| · 1
    auto q = test::triangle();
    auto cs = cardinality_constraints(q);
    cs.constraints.insert(cs.constraints.begin(), functional_dependency({0}, 1, q.relations[0].vars()));
    auto sol = solve_cover_degree(cs);
    const double agm = 1.5 * std::log(4.0);
    EXPECT_LE(sol.log_bound, std::min(agm, std::log(4.0)) + 1e-12);
}
