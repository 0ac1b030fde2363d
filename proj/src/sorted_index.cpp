#include <wcoj/sorted_index.hpp>

#include <wcoj/error.hpp>

#include <algorithm>
#include <cassert>
#include <numeric>


namespace wcoj {

SortedRelation build(const Relation &r, std::span<const VarId> order)
{
    SortedRelation sr;
    sr.name_ = r.name();

    // (position in order, column in r)
    std::vector<std::pair<std::size_t, std::size_t>> columns;
    for (std::size_t c = 0; c != r.arity(); ++c) {
        auto it = std::find(order.begin(), order.end(), r.vars()[c]);
        if (it == order.end())
            throw InvalidInput("relation '" + r.name() + "' has a variable missing from the order");
        columns.emplace_back(std::size_t(it - order.begin()), c);
    }
    std::sort(columns.begin(), columns.end());
    for (auto [level, c] : columns) {
        sr.vars_.push_back(r.vars()[c]);
        sr.levels_.push_back(level);
    }

    const std::size_t arity = r.arity();
    std::vector<Code> permuted(r.size() * arity);
    for (std::size_t i = 0; i != r.size(); ++i) {
        auto row = r.row(i);
        for (std::size_t k = 0; k != arity; ++k)
            permuted[i * arity + k] = row[columns[k].second];
    }

    std::vector<std::size_t> idx(r.size());
    std::iota(idx.begin(), idx.end(), std::size_t(0));
    auto row_of = [&](std::size_t i) { return std::span<const Code>(permuted).subspan(i * arity, arity); };
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return std::ranges::lexicographical_compare(row_of(a), row_of(b));
    });

    sr.size_ = r.size();
    sr.data_.reserve(permuted.size());
    for (auto i : idx) {
        auto row = row_of(i);
        sr.data_.insert(sr.data_.end(), row.begin(), row.end());
    }
    return sr;
}

RangeCursor narrow(const SortedRelation &sr, const RangeCursor &c, Code value)
{
    assert(c.depth < sr.arity());
    RangeCursor out{c.lo, c.lo - 1, c.depth + 1};
    if (is_empty(c))
        return out;

    const std::size_t col = c.depth;
    // first row in [lo, hi] with column >= value
    std::int64_t lo = c.lo, hi = c.hi + 1;
    while (lo < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (sr.at(mid, col) < value) lo = mid + 1; else hi = mid;
    }
    const std::int64_t first = lo;
    hi = c.hi + 1;
    while (lo < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (sr.at(mid, col) <= value) lo = mid + 1; else hi = mid;
    }
    out.lo = first;
    out.hi = lo - 1;
    return out;
}


/*======================================================================================================================
 * PrefixIndex
 *====================================================================================================================*/

PrefixIndex::PrefixIndex(std::vector<SortedRelation> relations, std::vector<VarId> order, std::size_t domain_size)
    : order_(std::move(order))
    , domain_size_(domain_size)
    , relations_(std::move(relations))
    , touched_(order_.size())
    , stacks_(relations_.size())
{
    for (std::size_t r = 0; r != relations_.size(); ++r)
        for (auto level : relations_[r].levels())
            touched_[level].push_back(r);
    reset();
}

void PrefixIndex::reset()
{
    prefix_.clear();
    bool ok = true;
    for (std::size_t r = 0; r != relations_.size(); ++r) {
        stacks_[r].assign(1, full_range(relations_[r]));
        stacks_[r].reserve(relations_[r].arity() + 1);
        ok = ok and relations_[r].size() != 0;
    }
    consistent_.assign(1, ok);
    prefix_.reserve(order_.size());
    consistent_.reserve(order_.size() + 1);
}

void PrefixIndex::descend(Code value)
{
    assert(not full());
    bool ok = consistent_.back();
    for (auto r : touched_[depth()]) {
        auto &stack = stacks_[r];
        stack.push_back(narrow(relations_[r], stack.back(), value));
        ok = ok and not is_empty(stack.back());
    }
    prefix_.push_back(value);
    consistent_.push_back(ok);
}

void PrefixIndex::ascend()
{
    assert(depth() > 0);
    prefix_.pop_back();
    consistent_.pop_back();
    for (auto r : touched_[depth()])
        stacks_[r].pop_back();
}

PrefixIndex index_query(const JoinQuery &q, std::span<const VarId> order)
{
    std::vector<VarId> sorted(order.begin(), order.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted != q.default_order())
        throw InvalidInput("traversal order must be a permutation of the query variables");

    std::vector<SortedRelation> relations;
    relations.reserve(q.relations.size());
    for (const auto &r : q.relations)
        relations.push_back(build(r, order));
    return PrefixIndex(std::move(relations), std::vector<VarId>(order.begin(), order.end()), q.domain_size);
}

}
