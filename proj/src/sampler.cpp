#include <wcoj/sampler.hpp>

#include <wcoj/error.hpp>

#include <boost/container_hash/hash.hpp>

#include <algorithm>


namespace wcoj {

std::size_t PrefixHash::operator()(const std::vector<Code> &key) const noexcept
{
    return boost::hash_range(key.begin(), key.end());
}

std::optional<double> UpMemo::find(std::span<const Code> prefix) const
{
    if (overrides.empty())
        return std::nullopt;
    auto it = overrides.find(std::vector<Code>(prefix.begin(), prefix.end()));
    if (it == overrides.end())
        return std::nullopt;
    return it->second;
}

double memo_up(const EstimatorContext &ctx, const UpMemo &memo)
{
    const double value = up(ctx);
    if (value == 0)
        return 0;
    if (auto o = memo.find(ctx.index.prefix()))
        return std::min(value, *o);
    return value;
}

std::vector<double> children_values(EstimatorContext &ctx, const UpMemo &memo)
{
    const auto domain = Code(ctx.index.domain_size());
    std::vector<double> values(domain);
    for (Code d = 0; d != domain; ++d) {
        ctx.index.descend(d);
        values[d] = memo_up(ctx, memo);
        ctx.index.ascend();
    }
    return values;
}

namespace {

bool all_zero(const std::vector<double> &values)
{
    return std::all_of(values.begin(), values.end(), [](double v) { return v == 0; });
}

/// The node at `prefix` has only zero-valued children: mark it, then every
/// ancestor on the walked path whose recorded children are now all zero.
void record_refutation(UpMemo &memo, std::vector<Code> prefix, std::vector<std::vector<double>> &path_values)
{
    memo.overrides[prefix] = 0;
    while (not prefix.empty()) {
        const Code last = prefix.back();
        prefix.pop_back();
        auto &siblings = path_values[prefix.size()];
        siblings[last] = 0;
        if (not all_zero(siblings))
            return;
        memo.overrides[prefix] = 0;
    }
}

}

std::optional<Answer> sample_once(EstimatorContext &ctx, UpMemo &memo, Rng &rng, SamplerStats *stats)
{
    auto &index = ctx.index;
    index.reset();
    if (stats)
        ++stats->trials;
    auto fail = [&]() -> std::optional<Answer> {
        if (stats)
            ++stats->failures;
        index.reset();
        return std::nullopt;
    };

    double value = memo_up(ctx, memo);
    if (not (value > 0))
        return fail();

    std::vector<std::vector<double>> path_values;
    path_values.reserve(index.num_levels());
    while (not index.full()) {
        auto children = children_values(ctx, memo);
        if (all_zero(children)) {
            record_refutation(memo, std::vector<Code>(index.prefix().begin(), index.prefix().end()), path_values);
            return fail();
        }

        // One draw against cumulative normalized child values; the leftover mass fails.
        const double r = rng.uniform();
        double cumulative = 0;
        std::optional<Code> chosen;
        for (Code d = 0; d != children.size(); ++d) {
            if (children[d] == 0)
                continue;
            cumulative += children[d] / value;
            if (r < cumulative) {
                chosen = d;
                break;
            }
        }
        if (not chosen)
            return fail();
        value = children[*chosen];
        path_values.push_back(std::move(children));
        index.descend(*chosen);
    }

    Answer answer(index.num_levels());
    for (std::size_t i = 0; i != answer.size(); ++i)
        answer[index.order()[i]] = index.prefix()[i];
    if (stats)
        ++stats->answers_returned;
    index.reset();
    return answer;
}

SampleResult sample(EstimatorContext &ctx, UpMemo &memo, std::size_t k, Rng &rng,
                    std::optional<std::uint64_t> max_trials)
{
    SampleResult result;
    ctx.index.reset();
    result.stats.up_root_initial = memo_up(ctx, memo);
    while (result.answers.size() < k) {
        ctx.index.reset();
        if (not (memo_up(ctx, memo) > 0)) {
            result.status = SampleStatus::empty;
            break;
        }
        if (max_trials and result.stats.trials >= *max_trials) {
            result.status = SampleStatus::budget_exhausted;
            break;
        }
        if (auto a = sample_once(ctx, memo, rng, &result.stats))
            result.answers.push_back(std::move(*a));
    }
    ctx.index.reset();
    result.stats.up_root_final = memo_up(ctx, memo);
    return result;
}


/*======================================================================================================================
 * BinarisedSampler
 *====================================================================================================================*/

BinarisedSampler::BinarisedSampler(BitLayout layout, std::size_t domain_size, JoinQuery bq, EstimatorContext ctx)
    : layout_(layout)
    , domain_size_(domain_size)
    , bq_(std::move(bq))
    , ctx_(std::move(ctx))
{ }

BinarisedSampler BinarisedSampler::agm(const JoinQuery &q, std::span<const VarId> order, const FractionalCover &cover)
{
    auto layout = layout_for(q);
    auto bq = bin_query(q, layout);
    auto ctx = make_agm_context(bq, layout.bin_order(order), cover);
    return BinarisedSampler(layout, q.domain_size, std::move(bq), std::move(ctx));
}

BinarisedSampler BinarisedSampler::pm(const JoinQuery &q, const ConstraintSet &cs, std::span<const VarId> order,
                                      const FractionalCover &cover)
{
    if (not check_compatible(cs, order))
        throw OrderError("variable order is not compatible with the degree constraints");
    auto layout = layout_for(q);
    auto bq = bin_query(q, layout);
    auto ctx = make_pm_context(bq, bin_constraints(cs, layout), layout.bin_order(order), cover);
    return BinarisedSampler(layout, q.domain_size, std::move(bq), std::move(ctx));
}

double BinarisedSampler::up_root()
{
    ctx_.index.reset();
    return memo_up(ctx_, memo_);
}

std::optional<Answer> BinarisedSampler::sample_once(Rng &rng, SamplerStats *stats)
{
    auto bits = wcoj::sample_once(ctx_, memo_, rng, stats);
    if (not bits)
        return std::nullopt;
    return debin_tuple(*bits, layout_, domain_size_);
}

SampleResult BinarisedSampler::sample(std::size_t k, Rng &rng, std::optional<std::uint64_t> max_trials)
{
    auto result = wcoj::sample(ctx_, memo_, k, rng, max_trials);
    for (auto &a : result.answers)
        a = debin_tuple(a, layout_, domain_size_);
    return result;
}

}
