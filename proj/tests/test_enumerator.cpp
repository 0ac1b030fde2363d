#include "fixtures.hpp"

#include <wcoj/enumerator.hpp>
#include <wcoj/error.hpp>
#include <wcoj/oracle.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace wcoj;


namespace {

std::vector<Answer> run(const JoinQuery &q, std::span<const VarId> order, EnumerationStats *stats = nullptr)
{
    std::vector<Answer> out;
    auto s = wcj(q, order, [&](std::span<const Code> a) { out.emplace_back(a.begin(), a.end()); });
    if (stats)
        *stats = s;
    return out;
}

std::vector<Answer> run_binarised(const JoinQuery &q, const ConstraintSet *cs,
                                  std::optional<std::vector<VarId>> order, BinarisedRun *info = nullptr)
{
    std::vector<Answer> out;
    auto r = wcj_binarised(q, cs, std::move(order), [&](std::span<const Code> a) { out.emplace_back(a.begin(), a.end()); });
    if (info)
        *info = r;
    return out;
}

/// (1 + |D|) · Σ_{i=0..n} |ans(Q|X_i)|, with |ans(Q|X_0)| = [every relation nonempty].
std::uint64_t call_bound(const JoinQuery &q, std::span<const VarId> order)
{
    auto counts = oracle::prefix_counts(q, order);
    const std::uint64_t total = oracle::empty_prefix_count(q) + std::accumulate(counts.begin(), counts.end(), 0ull);
    return std::max<std::uint64_t>(1, (1 + q.domain_size) * total);
}

bool lexicographic(const std::vector<Answer> &answers, std::span<const VarId> order)
{
    return std::is_sorted(answers.begin(), answers.end(), [&](const Answer &a, const Answer &b) {
        for (auto v : order)
            if (a[v] != b[v])
                return a[v] < b[v];
        return false;
    });
}

}

TEST(Wcj, TriangleInstance)
{
    auto q = test::triangle();
    auto order = q.default_order();
    EnumerationStats stats;
    auto answers = run(q, order, &stats);
    EXPECT_EQ(answers, test::triangle_answers);
    EXPECT_EQ(oracle::prefix_counts(q, order), (std::vector<std::uint64_t>{3, 4, 4}));
    EXPECT_EQ(stats.answers_emitted, 4u);
    EXPECT_LE(stats.recursive_calls, 5u * (3 + 4 + 4));
    EXPECT_LE(stats.recursive_calls, call_bound(q, order));
    // every consistent node at depth i is a prefix answer
    EXPECT_EQ(stats.consistent_calls, 1u + 3 + 4 + 4);
    ASSERT_EQ(stats.per_depth_calls.size(), 4u);
    EXPECT_EQ(stats.per_depth_calls[0], 1u);
    EXPECT_EQ(stats.per_depth_calls[1], 4u);      // every x1 tried
    EXPECT_EQ(stats.per_depth_calls[2], 3u * 4);  // x2 tried below each consistent x1
    EXPECT_EQ(stats.recursive_calls,
              std::accumulate(stats.per_depth_calls.begin(), stats.per_depth_calls.end(), 0ull));
}

TEST(Wcj, EmptyRelationStopsAtTheRoot)
{
    auto q = test::triangle(true);
    auto order = q.default_order();
    EnumerationStats stats;
    EXPECT_TRUE(run(q, order, &stats).empty());
    EXPECT_EQ(stats.recursive_calls, 1u);
    EXPECT_EQ(stats.consistent_calls, 0u);
}

TEST(Wcj, EveryOrderGivesTheSameSet)
{
    auto q = test::triangle();
    std::vector<VarId> order = {0, 1, 2};
    do {
        auto answers = run(q, order);
        EXPECT_TRUE(lexicographic(answers, order));
        std::sort(answers.begin(), answers.end());
        EXPECT_EQ(answers, test::triangle_answers);
    } while (std::next_permutation(order.begin(), order.end()));
}

TEST(Wcj, RandomInstancesAgreeWithOracle)
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial != 300; ++trial) {
        auto q = test::random_query(rng);
        auto expected = oracle::nested_loop_join(q);
        auto order = test::random_order(q.num_vars(), rng);

        EnumerationStats stats;
        auto direct = run(q, order, &stats);
        ASSERT_TRUE(lexicographic(direct, order));
        ASSERT_LE(stats.recursive_calls, call_bound(q, order)) << "trial " << trial;
        std::sort(direct.begin(), direct.end());
        ASSERT_EQ(direct, expected) << "trial " << trial;

        BinarisedRun info;
        auto bin = run_binarised(q, nullptr, order, &info);
        ASSERT_TRUE(lexicographic(bin, order));
        std::sort(bin.begin(), bin.end());
        ASSERT_EQ(bin, expected) << "trial " << trial;
        ASSERT_EQ(info.order, order);
        ASSERT_EQ(info.stats.answers_emitted, expected.size());
    }
}

TEST(Wcj, BinarisedFollowsConstraints)
{
    auto q = test::diagonal_pair(5);
    auto cs = test::diagonal_constraints(q);
    BinarisedRun info;
    auto answers = run_binarised(q, &cs, std::nullopt, &info);
    EXPECT_EQ(info.order, (std::vector<VarId>{2, 0, 1}));
    EXPECT_EQ(info.bits, 3u);
    EXPECT_EQ(answers.size(), 5u);
    EXPECT_THROW(run_binarised(q, &cs, std::vector<VarId>{0, 1, 2}), OrderError);

    ConstraintSet cyclic = cs;
    cyclic.constraints.push_back(functional_dependency({0}, 2, q.relations[0].vars()));
    EXPECT_THROW(run_binarised(q, &cyclic, std::nullopt), OrderError);
}

TEST(Wcj, BinarisedCallsStayNearLinearOnTheDiagonal)
{
    // With the compatible order, each x3 value has one extension; the raw
    // enumerator tries all |D| values of x1 and x2 below each x3.
    const std::size_t n = 64;
    auto q = test::diagonal_pair(n);
    auto cs = test::diagonal_constraints(q);
    BinarisedRun info;
    run_binarised(q, &cs, std::nullopt, &info);
    EnumerationStats raw;
    auto order = info.order;
    run(q, order, &raw);
    EXPECT_EQ(raw.recursive_calls, 1 + n + 2 * n * n);
    EXPECT_LT(info.stats.recursive_calls, raw.recursive_calls / 4);
}
