#include <wcoj/enumerator.hpp>

#include <wcoj/error.hpp>


namespace wcoj {

namespace {

struct Enumeration
{
    PrefixIndex &index;
    const AnswerSink &sink;
    EnumerationStats stats;
    Answer answer;

    void run(std::size_t depth) {
        ++stats.recursive_calls;
        ++stats.per_depth_calls[depth];
        if (not index.consistent())
            return;
        ++stats.consistent_calls;
        if (index.full()) {
            auto prefix = index.prefix();
            for (std::size_t i = 0; i != prefix.size(); ++i)
                answer[index.order()[i]] = prefix[i];
            ++stats.answers_emitted;
            sink(answer);
            return;
        }
        const auto domain = Code(index.domain_size());
        for (Code d = 0; d != domain; ++d) {
            index.descend(d);
            run(depth + 1);
            index.ascend();
        }
    }
};

}

EnumerationStats wcj(PrefixIndex &index, const AnswerSink &sink)
{
    index.reset();
    Enumeration e{index, sink, {}, Answer(index.num_levels())};
    e.stats.per_depth_calls.assign(index.num_levels() + 1, 0);
    e.run(0);
    return e.stats;
}

EnumerationStats wcj(const JoinQuery &q, std::span<const VarId> order, const AnswerSink &sink)
{
    auto index = index_query(q, order);
    return wcj(index, sink);
}

BinarisedRun wcj_binarised(const JoinQuery &q, const ConstraintSet *cs, std::optional<std::vector<VarId>> order,
                           const AnswerSink &sink)
{
    BinarisedRun run;
    if (order) {
        if (cs and not check_compatible(*cs, *order))
            throw OrderError("variable order is not compatible with the degree constraints");
        run.order = std::move(*order);
    } else if (cs) {
        run.order = require_compatible_order(*cs);
    } else {
        run.order = q.default_order();
    }

    const auto layout = layout_for(q);
    run.bits = layout.bits();
    const auto bq = bin_query(q, layout);
    const auto border = layout.bin_order(run.order);
    run.stats = wcj(bq, border, [&](std::span<const Code> bits) {
        sink(debin_tuple(bits, layout, q.domain_size));
    });
    return run;
}

}
