#pragma once

#include <wcoj/binarisation.hpp>
#include <wcoj/constraints.hpp>
#include <wcoj/relational.hpp>
#include <wcoj/sorted_index.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace wcoj {

struct EnumerationStats
{
    std::uint64_t recursive_calls = 0;  ///< every invocation, the root included
    std::uint64_t consistent_calls = 0;
    std::uint64_t answers_emitted = 0;
    std::vector<std::uint64_t> per_depth_calls; ///< index = number of bound variables, 0..n
};

/// Receives each answer as a full assignment indexed by VarId of the query.
using AnswerSink = std::function<void(std::span<const Code>)>;

/** Branch and bound join.  At each node, stop if some relation's range is
 * empty, emit if every variable is bound, else try every code of the domain
 * for the next variable in ascending order.  Answers arrive in lexicographic
 * order of the traversal order. */
EnumerationStats wcj(PrefixIndex &index, const AnswerSink &sink);

/// Builds the index for `order` and runs wcj on it.
EnumerationStats wcj(const JoinQuery &q, std::span<const VarId> order, const AnswerSink &sink);

struct BinarisedRun
{
    EnumerationStats stats;    ///< counted on bin(Q)
    std::vector<VarId> order;  ///< the order over the original variables
    std::size_t bits = 1;
};

/** Runs wcj on bin(Q) with each variable's bits contiguous, and passes each
 * decoded answer to `sink`.  The variable order is `order` if given (checked
 * against `cs`), else a compatible order of `cs`, else the query order.
 * Throws OrderError on cyclic constraints or an incompatible order. */
BinarisedRun wcj_binarised(const JoinQuery &q, const ConstraintSet *cs, std::optional<std::vector<VarId>> order,
                           const AnswerSink &sink);

}
