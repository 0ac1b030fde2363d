#pragma once

#include <wcoj/binarisation.hpp>
#include <wcoj/constraints.hpp>
#include <wcoj/estimators.hpp>
#include <wcoj/relational.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

namespace wcoj {

/** Seeded 64-bit generator.  The stream is std::mt19937_64 seeded with the
 * given value; uniform() maps the top 53 bits of one draw to [0, 1). */
class Rng
{
    std::mt19937_64 engine_;

  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) { }
    double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
};

struct PrefixHash
{
    std::size_t operator()(const std::vector<Code> &key) const noexcept;
};

/** Up-values learned from explored subtrees, keyed by trace-tree prefix.  An
 * entry is written for a node once every child is known to carry no answer,
 * and holds the sum of the children's values, i.e. 0. */
struct UpMemo
{
    std::unordered_map<std::vector<Code>, double, PrefixHash> overrides;

    std::optional<double> find(std::span<const Code> prefix) const;
};

struct SamplerStats
{
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    std::uint64_t answers_returned = 0;
    double up_root_initial = 0;
    double up_root_final = 0;

    double mean_trials_per_success() const {
        return answers_returned ? double(trials) / double(answers_returned) : 0.0;
    }
};

/// Estimator value at the current node, lowered by the memo where an override exists.
double memo_up(const EstimatorContext &ctx, const UpMemo &memo);

/// Memo-adjusted values of the |D| children of the current node; the node's cursors are restored.
std::vector<double> children_values(EstimatorContext &ctx, const UpMemo &memo);

/** One walk of the trace tree from the root.  At an internal node with value u
 * and children values u_d, moves to child d with probability u_d / u and fails
 * with the remaining probability, clamped at 0.  Returns the answer over the
 * context's variables, or nullopt on failure.  A walk that reaches a node
 * whose children are all 0 records the node as refuted, and propagates the
 * refutation to ancestors whose children are then all 0. */
std::optional<Answer> sample_once(EstimatorContext &ctx, UpMemo &memo, Rng &rng, SamplerStats *stats = nullptr);

enum class SampleStatus { ok, empty, budget_exhausted };

struct SampleResult
{
    SampleStatus status = SampleStatus::ok;
    std::vector<Answer> answers;
    SamplerStats stats;
};

/** Repeats sample_once until k answers are found (drawn with replacement), the
 * memo-adjusted root value reaches 0 (the answer set is empty), or `max_trials`
 * walks have been spent. */
SampleResult sample(EstimatorContext &ctx, UpMemo &memo, std::size_t k, Rng &rng,
                    std::optional<std::uint64_t> max_trials = std::nullopt);


/** Sampler over bin(Q): builds the binarised query, constraints and estimator
 * context, and decodes sampled answers back to the codes of Q. */
class BinarisedSampler
{
    BitLayout layout_;
    std::size_t domain_size_;
    JoinQuery bq_;
    EstimatorContext ctx_;
    UpMemo memo_;

    BinarisedSampler(BitLayout layout, std::size_t domain_size, JoinQuery bq, EstimatorContext ctx);

  public:
    /// AGM estimator; `cover` holds one weight per relation of q.
    static BinarisedSampler agm(const JoinQuery &q, std::span<const VarId> order, const FractionalCover &cover);
    /// Polymatroid estimator; `order` must be compatible with cs, `cover` holds one weight per constraint.
    static BinarisedSampler pm(const JoinQuery &q, const ConstraintSet &cs, std::span<const VarId> order,
                               const FractionalCover &cover);

    const BitLayout & layout() const { return layout_; }
    EstimatorContext & context() { return ctx_; }
    UpMemo & memo() { return memo_; }
    double up_root();

    std::optional<Answer> sample_once(Rng &rng, SamplerStats *stats = nullptr);
    SampleResult sample(std::size_t k, Rng &rng, std::optional<std::uint64_t> max_trials = std::nullopt);
};

}
