#pragma once

#include <wcoj/relational.hpp>

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace wcoj::oracle {

/// Largest grid D^X the brute-force routines will enumerate.
inline constexpr std::uint64_t max_grid = 10'000'000;

/** ans(Q) by testing every tuple of D^X against every relation, in
 * lexicographic order of the query order.  Throws TooLarge past max_grid. */
std::vector<Answer> nested_loop_join(const JoinQuery &q);

/// |ans(Q|X_i)| for i = 1..n, X_i the first i variables of `order`.
std::vector<std::uint64_t> prefix_counts(const JoinQuery &q, std::span<const VarId> order);

/// |ans(Q|∅)|: 1 if every relation is nonempty, else 0.
std::uint64_t empty_prefix_count(const JoinQuery &q);


struct UniformityReport
{
    std::map<Answer, std::uint64_t> categories; ///< observed count per expected category
    double chi_square = 0;
    std::size_t degrees_of_freedom = 0;
    double critical_value = 0;                  ///< at significance 0.01
    bool pass = false;
};

/// Upper 1% point of the chi-square distribution: tabulated for df ≤ 200,
/// Wilson–Hilferty beyond.
double chi_square_critical_001(std::size_t df);

/** Pearson goodness-of-fit of `samples` against the uniform distribution on
 * `categories`.  Throws std::invalid_argument if a sample is not a category
 * or if there are fewer than 5 samples per category. */
UniformityReport chi_square_uniformity(std::span<const Answer> samples, std::span<const Answer> categories);

}
