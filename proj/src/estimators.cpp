#include <wcoj/estimators.hpp>

#include <wcoj/error.hpp>

#include <algorithm>
#include <cmath>
#include <limits>


namespace wcoj {

namespace {

void require_permutation(const JoinQuery &q, std::span<const VarId> order)
{
    std::vector<VarId> sorted(order.begin(), order.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted != q.default_order())
        throw InvalidInput("traversal order must be a permutation of the query variables");
}

}

EstimatorContext make_agm_context(const JoinQuery &q, std::span<const VarId> order, const FractionalCover &cover)
{
    if (cover.weights.size() != q.relations.size())
        throw InvalidInput("AGM cover needs one weight per relation");
    auto index = index_query(q, order);
    std::vector<EstimatorTerm> terms;
    for (std::size_t j = 0; j != q.relations.size(); ++j) {
        if (cover.weights[j] == 0)
            continue;
        const double n = double(std::max<std::size_t>(1, q.relations[j].size()));
        terms.push_back({j, to_double(cover.weights[j]), std::log(n), 0});
    }
    return EstimatorContext{EstimatorKind::agm, std::move(index), std::move(terms)};
}

EstimatorContext make_pm_context(const JoinQuery &q, const ConstraintSet &cs, std::span<const VarId> order,
                                 const FractionalCover &cover)
{
    if (cover.weights.size() != cs.constraints.size())
        throw InvalidInput("polymatroid cover needs one weight per constraint");
    require_permutation(q, order);
    if (not check_compatible(cs, order))
        throw OrderError("variable order is not compatible with the degree constraints");

    std::vector<std::size_t> position(q.num_vars());
    for (std::size_t i = 0; i != order.size(); ++i)
        position[order[i]] = i;

    std::vector<SortedRelation> relations;
    for (const auto &r : q.relations)
        relations.push_back(build(r, order));

    std::vector<EstimatorTerm> terms;
    for (std::size_t k = 0; k != cs.constraints.size(); ++k) {
        const auto &dc = cs.constraints[k];
        if (cover.weights[k] == 0)
            continue;
        auto guard = find_guard(q, dc.guard);
        if (not guard)
            throw InvalidInput("no guard relation for constraint " + format_constraint(cs, dc));
        std::size_t live_from = 0;
        for (auto a : dc.a)
            live_from = std::max(live_from, position[a] + 1);
        relations.push_back(build(project(q.relations[*guard], dc.b), order));
        terms.push_back({relations.size() - 1, to_double(cover.weights[k]), std::log(double(dc.bound)), live_from});
    }
    PrefixIndex index(std::move(relations), std::vector<VarId>(order.begin(), order.end()), q.domain_size);
    return EstimatorContext{EstimatorKind::polymatroid, std::move(index), std::move(terms)};
}

double log_up(const EstimatorContext &ctx)
{
    if (not ctx.index.consistent())
        return -std::numeric_limits<double>::infinity();
    const std::size_t depth = ctx.index.depth();
    double sum = 0;
    for (const auto &t : ctx.terms) {
        if (depth >= t.live_from)
            sum += t.weight * std::log(double(ctx.index.count(t.relation)));
        else
            sum += t.weight * t.log_static_bound;
    }
    return sum;
}

double up(const EstimatorContext &ctx)
{
    if (not ctx.index.consistent())
        return 0.0;
    return std::exp(log_up(ctx));
}

double agm_up(const EstimatorContext &ctx)
{
    if (ctx.kind != EstimatorKind::agm)
        throw std::logic_error("agm_up called on a polymatroid context");
    return up(ctx);
}

double pm_up(const EstimatorContext &ctx)
{
    if (ctx.kind != EstimatorKind::polymatroid)
        throw std::logic_error("pm_up called on an AGM context");
    return up(ctx);
}


/*======================================================================================================================
 * Exhaustive verification
 *====================================================================================================================*/

namespace {

/// Neumaier-compensated running sum.
struct CompensatedSum
{
    double sum = 0, carry = 0;
    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) carry += (sum - t) + x;
        else carry += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + carry; }
};

struct Verifier
{
    EstimatorContext &ctx;
    const Estimator &estimate;
    double slack;
    EstimatorReport report;

    void check_node(double value) {
        ++report.nodes;
        const bool consistent = ctx.index.consistent();
        if (consistent ? not (value > 0) : value != 0)
            ++report.zero_violations;
        if (consistent and ctx.index.full()) {
            ++report.answers;
            if (std::abs(value - 1.0) > slack)
                ++report.answer_violations;
        }
    }

    void walk(double value) {
        if (not ctx.index.consistent() or ctx.index.full())
            return;
        CompensatedSum children;
        const auto domain = Code(ctx.index.domain_size());
        std::vector<double> values(domain);
        for (Code d = 0; d != domain; ++d) {
            ctx.index.descend(d);
            values[d] = estimate(ctx);
            check_node(values[d]);
            children.add(values[d]);
            ctx.index.ascend();
        }
        const double total = children.value();
        if (total > value * (1 + slack)) {
            ++report.superadditivity_violations;
        }
        if (value > 0)
            report.max_relative_violation = std::max(report.max_relative_violation, (total - value) / value);
        for (Code d = 0; d != domain; ++d) {
            ctx.index.descend(d);
            walk(values[d]);
            ctx.index.ascend();
        }
    }
};

}

EstimatorReport verify_estimator(EstimatorContext &ctx, const Estimator &estimate, double relative_slack)
{
    ctx.index.reset();
    Verifier v{ctx, estimate, relative_slack, {}};
    v.report.max_relative_violation = -std::numeric_limits<double>::infinity();
    const double root = estimate(ctx);
    v.report.root_value = root;
    v.check_node(root);
    v.walk(root);
    ctx.index.reset();
    return v.report;
}

}
