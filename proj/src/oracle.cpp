#include <wcoj/oracle.hpp>

#include <wcoj/error.hpp>

#include <algorithm>
#include <set>


namespace wcoj::oracle {

namespace {

/// One relation as a set of rows plus, for each column, the query variable it reads.
struct RowSet
{
    std::vector<VarId> vars;
    std::set<std::vector<Code>> rows;
};

std::uint64_t grid_size(std::size_t domain, std::size_t vars)
{
    std::uint64_t total = 1;
    for (std::size_t i = 0; i != vars; ++i) {
        total *= domain;
        if (total > max_grid)
            throw TooLarge("oracle grid |D|^n exceeds " + std::to_string(max_grid));
    }
    return total;
}

/// Counts (or collects) the points of D^{order[0..k)} whose restriction to each relation lies in it.
template<typename Visit>
void enumerate_grid(const JoinQuery &q, std::span<const VarId> order, std::size_t k, Visit &&visit)
{
    grid_size(q.domain_size, k);
    std::vector<std::size_t> position(q.num_vars(), std::size_t(-1));
    for (std::size_t i = 0; i != k; ++i)
        position[order[i]] = i;

    std::vector<RowSet> sets;
    for (const auto &r : q.relations) {
        RowSet s;
        std::vector<std::size_t> keep;
        for (std::size_t c = 0; c != r.arity(); ++c)
            if (position[r.vars()[c]] != std::size_t(-1)) {
                keep.push_back(c);
                s.vars.push_back(r.vars()[c]);
            }
        for (std::size_t i = 0; i != r.size(); ++i) {
            std::vector<Code> row;
            for (auto c : keep)
                row.push_back(r.row(i)[c]);
            s.rows.insert(std::move(row));
        }
        sets.push_back(std::move(s));
    }
    if (std::any_of(sets.begin(), sets.end(), [](const RowSet &s) { return s.rows.empty(); }))
        return;
    if (k > 0 and q.domain_size == 0)
        return;

    std::vector<Code> point(k, 0);    // point[i] = code of order[i]
    std::vector<Code> by_var(q.num_vars(), 0);
    std::vector<Code> key;
    for (;;) {
        for (std::size_t i = 0; i != k; ++i)
            by_var[order[i]] = point[i];
        bool ok = true;
        for (const auto &s : sets) {
            key.clear();
            for (auto v : s.vars)
                key.push_back(by_var[v]);
            if (not s.rows.contains(key)) {
                ok = false;
                break;
            }
        }
        if (ok)
            visit(by_var);

        std::size_t i = k;
        while (i > 0 and point[i - 1] + 1 == q.domain_size) {
            point[i - 1] = 0;
            --i;
        }
        if (i == 0)
            break;
        ++point[i - 1];
    }
}

}

std::vector<Answer> nested_loop_join(const JoinQuery &q)
{
    std::vector<Answer> out;
    const auto order = q.default_order();
    enumerate_grid(q, order, order.size(), [&](const std::vector<Code> &a) { out.push_back(a); });
    return out;
}

std::vector<std::uint64_t> prefix_counts(const JoinQuery &q, std::span<const VarId> order)
{
    std::vector<std::uint64_t> out;
    for (std::size_t k = 1; k <= order.size(); ++k) {
        std::uint64_t n = 0;
        enumerate_grid(q, order, k, [&](const std::vector<Code>&) { ++n; });
        out.push_back(n);
    }
    return out;
}

std::uint64_t empty_prefix_count(const JoinQuery &q)
{
    return std::all_of(q.relations.begin(), q.relations.end(), [](const Relation &r) { return not r.empty(); });
}

UniformityReport chi_square_uniformity(std::span<const Answer> samples, std::span<const Answer> categories)
{
    if (categories.empty())
        throw std::invalid_argument("chi-square test needs at least one category");
    if (samples.size() < 5 * categories.size())
        throw std::invalid_argument("chi-square test needs at least 5 samples per category");

    UniformityReport report;
    for (const auto &c : categories)
        report.categories.emplace(c, 0);
    for (const auto &s : samples) {
        auto it = report.categories.find(s);
        if (it == report.categories.end())
            throw std::invalid_argument("sample is not one of the expected categories");
        ++it->second;
    }
    const double expected = double(samples.size()) / double(report.categories.size());
    for (const auto &[_, observed] : report.categories) {
        const double diff = double(observed) - expected;
        report.chi_square += diff * diff / expected;
    }
    report.degrees_of_freedom = report.categories.size() - 1;
    if (report.degrees_of_freedom == 0) {
        report.pass = true;
        return report;
    }
    report.critical_value = chi_square_critical_001(report.degrees_of_freedom);
    report.pass = report.chi_square < report.critical_value;
    return report;
}

}
