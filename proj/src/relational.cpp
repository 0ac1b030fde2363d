#include <wcoj/relational.hpp>

#include <wcoj/error.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>


namespace wcoj {

VarSet make_varset(std::vector<VarId> vars)
{
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

bool is_subset(const VarSet &sub, const VarSet &super)
{
    return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

VarSet set_union(const VarSet &a, const VarSet &b)
{
    VarSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VarSet set_intersection(const VarSet &a, const VarSet &b)
{
    VarSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VarSet set_difference(const VarSet &a, const VarSet &b)
{
    VarSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}


/*======================================================================================================================
 * Dictionary
 *====================================================================================================================*/

Code Dictionary::intern(std::string_view token)
{
    auto [it, inserted] = forward_.try_emplace(std::string(token), Code(backward_.size()));
    if (inserted)
        backward_.emplace_back(token);
    return it->second;
}

std::optional<Code> Dictionary::find(std::string_view token) const
{
    if (auto it = forward_.find(std::string(token)); it != forward_.end())
        return it->second;
    return std::nullopt;
}


/*======================================================================================================================
 * Tuple
 *====================================================================================================================*/

Tuple::Tuple(std::vector<Binding> bindings) : bindings_(std::move(bindings))
{
    std::sort(bindings_.begin(), bindings_.end(), [](const Binding &a, const Binding &b) { return a.var < b.var; });
    auto dup = std::adjacent_find(bindings_.begin(), bindings_.end(),
                                  [](const Binding &a, const Binding &b) { return a.var == b.var; });
    if (dup != bindings_.end())
        throw InvalidInput("variable bound twice in tuple");
}

Tuple Tuple::prefix(std::span<const VarId> order, std::span<const Code> codes)
{
    std::vector<Binding> bindings;
    bindings.reserve(codes.size());
    for (std::size_t i = 0; i != codes.size(); ++i)
        bindings.push_back({order[i], codes[i]});
    return Tuple(std::move(bindings));
}

VarSet Tuple::vars() const
{
    VarSet out;
    out.reserve(bindings_.size());
    for (const auto &b : bindings_)
        out.push_back(b.var);
    return out;
}

std::optional<Code> Tuple::get(VarId var) const
{
    auto it = std::lower_bound(bindings_.begin(), bindings_.end(), var,
                               [](const Binding &b, VarId v) { return b.var < v; });
    if (it != bindings_.end() and it->var == var)
        return it->code;
    return std::nullopt;
}

Tuple restrict(const Tuple &t, const VarSet &vars)
{
    std::vector<Binding> kept;
    for (const auto &b : t.bindings())
        if (std::binary_search(vars.begin(), vars.end(), b.var))
            kept.push_back(b);
    return Tuple(std::move(kept));
}


/*======================================================================================================================
 * Relation
 *====================================================================================================================*/

Relation::Relation(std::string name, VarSet vars, std::vector<std::vector<Code>> rows)
    : name_(std::move(name))
    , vars_(std::move(vars))
{
    if (not std::is_sorted(vars_.begin(), vars_.end()) or
        std::adjacent_find(vars_.begin(), vars_.end()) != vars_.end())
        throw InvalidInput("relation '" + name_ + "': variables must be sorted and distinct");
    for (const auto &r : rows)
        if (r.size() != vars_.size())
            throw InvalidInput("relation '" + name_ + "': row width does not match its variables");

    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    size_ = rows.size();
    data_.reserve(size_ * arity());
    for (const auto &r : rows)
        data_.insert(data_.end(), r.begin(), r.end());
}

Relation Relation::nullary(std::string name, bool has_empty_tuple)
{
    Relation r;
    r.name_ = std::move(name);
    r.size_ = has_empty_tuple ? 1 : 0;
    return r;
}

std::vector<std::vector<Code>> Relation::rows() const
{
    std::vector<std::vector<Code>> out;
    out.reserve(size_);
    for (std::size_t i = 0; i != size_; ++i) {
        auto r = row(i);
        out.emplace_back(r.begin(), r.end());
    }
    return out;
}

bool Relation::contains(std::span<const Code> key) const
{
    if (arity() == 0)
        return size_ == 1 and key.empty();
    std::size_t lo = 0, hi = size_;
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        auto r = row(mid);
        if (std::lexicographical_compare(r.begin(), r.end(), key.begin(), key.end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo < size_ and std::ranges::equal(row(lo), key);
}

namespace {

/// Builds a relation over `keep` (a subset of r.vars()) from the rows selected by `pred`.
template<typename Pred>
Relation select_project(const Relation &r, const VarSet &keep, Pred &&pred)
{
    std::vector<std::size_t> columns;
    for (std::size_t c = 0; c != r.arity(); ++c)
        if (std::binary_search(keep.begin(), keep.end(), r.vars()[c]))
            columns.push_back(c);

    if (keep.empty()) {
        bool any = false;
        for (std::size_t i = 0; i != r.size() and not any; ++i)
            any = pred(r.row(i));
        return Relation::nullary(r.name(), any);
    }

    std::vector<std::vector<Code>> rows;
    for (std::size_t i = 0; i != r.size(); ++i) {
        auto row = r.row(i);
        if (not pred(row))
            continue;
        std::vector<Code> out;
        out.reserve(columns.size());
        for (auto c : columns)
            out.push_back(row[c]);
        rows.push_back(std::move(out));
    }
    return Relation(r.name(), keep, std::move(rows));
}

}

Relation filter(const Relation &r, const Tuple &t)
{
    std::vector<std::pair<std::size_t, Code>> checks;
    for (std::size_t c = 0; c != r.arity(); ++c)
        if (auto code = t.get(r.vars()[c]))
            checks.emplace_back(c, *code);
    return select_project(r, set_difference(r.vars(), t.vars()), [&](std::span<const Code> row) {
        return std::all_of(checks.begin(), checks.end(), [&](const auto &chk) { return row[chk.first] == chk.second; });
    });
}

Relation project(const Relation &r, const VarSet &vars)
{
    return select_project(r, set_intersection(r.vars(), vars), [](std::span<const Code>) { return true; });
}


/*======================================================================================================================
 * JoinQuery
 *====================================================================================================================*/

std::optional<VarId> JoinQuery::var(std::string_view name) const
{
    auto it = std::find(order.begin(), order.end(), name);
    if (it == order.end())
        return std::nullopt;
    return VarId(it - order.begin());
}

std::vector<VarId> JoinQuery::default_order() const
{
    std::vector<VarId> out(order.size());
    std::iota(out.begin(), out.end(), VarId(0));
    return out;
}

std::string JoinQuery::describe(const Answer &answer) const
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i != answer.size(); ++i)
        os << (i ? "," : "") << dictionary.decode(answer[i]);
    os << ')';
    return os.str();
}

void JoinQuery::check() const
{
    if (order.empty())
        throw InvalidInput("empty variable order");
    VarSet covered;
    for (const auto &r : relations) {
        if (not r.vars().empty() and r.vars().back() >= order.size())
            throw InvalidInput("relation '" + r.name() + "' uses a variable outside the order");
        for (std::size_t i = 0; i != r.size(); ++i)
            for (auto c : r.row(i))
                if (c >= domain_size)
                    throw InvalidInput("relation '" + r.name() + "' uses a code outside the domain");
        covered = set_union(covered, r.vars());
    }
    if (covered.size() != order.size()) {
        for (VarId v = 0; v != order.size(); ++v)
            if (not std::binary_search(covered.begin(), covered.end(), v))
                throw InvalidInput("variable '" + order[v] + "' does not occur in any relation");
    }
}

bool is_consistent(const JoinQuery &q, const Tuple &t)
{
    return std::none_of(q.relations.begin(), q.relations.end(), [&](const Relation &r) { return filter(r, t).empty(); });
}

std::vector<VarId> resolve_vars(const JoinQuery &q, const std::vector<std::string> &names)
{
    std::vector<VarId> out;
    out.reserve(names.size());
    for (const auto &n : names) {
        auto v = q.var(n);
        if (not v)
            throw InvalidInput("unknown variable '" + n + "'");
        out.push_back(*v);
    }
    return out;
}

JoinQuery encode_instance(const std::vector<RawTable> &tables, const std::vector<std::string> &order)
{
    if (order.empty())
        throw InvalidInput("empty variable order");

    JoinQuery q;
    q.order = order;
    if (std::set<std::string>(order.begin(), order.end()).size() != order.size())
        throw InvalidInput("variable order lists a variable twice");

    for (const auto &table : tables) {
        std::vector<VarId> header;
        for (const auto &name : table.header) {
            auto v = q.var(name);
            if (not v)
                throw InvalidInput("table '" + table.name + "': header variable '" + name + "' is not in the order");
            header.push_back(*v);
        }
        VarSet vars = make_varset(header);
        if (vars.size() != header.size())
            throw InvalidInput("table '" + table.name + "': header names a variable twice");

        // column of vars[i] within the raw row
        std::vector<std::size_t> source(vars.size());
        for (std::size_t i = 0; i != vars.size(); ++i)
            source[i] = std::find(header.begin(), header.end(), vars[i]) - header.begin();

        std::vector<std::vector<Code>> rows;
        rows.reserve(table.rows.size());
        for (const auto &raw : table.rows) {
            if (raw.size() != header.size())
                throw InvalidInput("table '" + table.name + "': row has " + std::to_string(raw.size()) +
                                   " fields, header has " + std::to_string(header.size()));
            std::vector<Code> encoded(raw.size());
            for (std::size_t c = 0; c != raw.size(); ++c)
                encoded[c] = q.dictionary.intern(raw[c]);
            std::vector<Code> row(vars.size());
            for (std::size_t i = 0; i != vars.size(); ++i)
                row[i] = encoded[source[i]];
            rows.push_back(std::move(row));
        }
        if (vars.empty())
            q.relations.push_back(Relation::nullary(table.name, not rows.empty()));
        else
            q.relations.emplace_back(table.name, std::move(vars), std::move(rows));
    }
    q.domain_size = q.dictionary.size();
    q.check();
    return q;
}

}
