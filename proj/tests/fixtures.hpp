#pragma once

#include <wcoj/constraints.hpp>
#include <wcoj/relational.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace wcoj::test {

/// A query whose dictionary maps code k to the string "k".
inline JoinQuery make_query(std::vector<std::string> order, std::size_t domain_size,
                            std::vector<std::pair<std::vector<std::string>, std::vector<std::vector<Code>>>> rels,
                            std::vector<std::string> names = {})
{
    JoinQuery q;
    q.order = std::move(order);
    q.domain_size = domain_size;
    for (std::size_t k = 0; k != domain_size; ++k)
        q.dictionary.intern(std::to_string(k));
    for (std::size_t i = 0; i != rels.size(); ++i) {
        auto &[vars, rows] = rels[i];
        // columns are given in the listed variable order; reorder them to ascending VarId
        std::vector<VarId> ids;
        for (const auto &v : vars)
            ids.push_back(*q.var(v));
        std::vector<std::size_t> perm(ids.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::sort(perm.begin(), perm.end(), [&](auto a, auto b) { return ids[a] < ids[b]; });
        std::vector<std::vector<Code>> sorted_rows;
        for (const auto &row : rows) {
            std::vector<Code> r;
            for (auto p : perm)
                r.push_back(row[p]);
            sorted_rows.push_back(std::move(r));
        }
        std::string name = i < names.size() ? names[i] : std::string(1, char('R' + i));
        q.relations.emplace_back(name, make_varset(ids), std::move(sorted_rows));
    }
    return q;
}

/// The triangle instance R(x1,x2), S(x2,x3), T(x1,x3) over D = {0,1,2,3}.
inline JoinQuery triangle(bool empty_t = false)
{
    std::vector<std::vector<Code>> t = {{0, 3}, {1, 0}, {1, 2}, {2, 3}};
    if (empty_t)
        t.clear();
    return make_query({"x1", "x2", "x3"}, 4,
                      {{{"x1", "x2"}, {{0, 0}, {1, 0}, {1, 1}, {2, 1}}},
                       {{"x2", "x3"}, {{0, 2}, {0, 3}, {1, 0}, {1, 2}}},
                       {{"x1", "x3"}, t}});
}

inline const std::vector<Answer> triangle_answers = {{0, 0, 3}, {1, 0, 2}, {1, 1, 0}, {1, 1, 2}};

/// R(x1,x3) = S(x2,x3) = {(i,i) : i < n}: both x3 -> x1 and x3 -> x2 hold.
inline JoinQuery diagonal_pair(std::size_t n)
{
    std::vector<std::vector<Code>> rows;
    for (Code i = 0; i != n; ++i)
        rows.push_back({i, i});
    return make_query({"x1", "x2", "x3"}, n, {{{"x1", "x3"}, rows}, {{"x2", "x3"}, rows}});
}

/// FDs x3 -> x1 (guard R) and x3 -> x2 (guard S) over diagonal_pair's hypergraph,
/// plus the default cardinalities.
inline ConstraintSet diagonal_constraints(const JoinQuery &q)
{
    ConstraintSet cs;
    cs.variables = q.order;
    cs.edges = {q.relations[0].vars(), q.relations[1].vars()};
    cs.constraints.push_back(functional_dependency({2}, 0, q.relations[0].vars()));
    cs.constraints.push_back(functional_dependency({2}, 1, q.relations[1].vars()));
    add_default_cardinalities(cs, q);
    return cs;
}


struct RandomShape
{
    std::size_t max_vars = 4;
    std::size_t max_relations = 4;
    std::size_t max_domain = 6;
    std::size_t max_tuples = 40;
};

/** A random query with every variable in some relation.  Relations may be
 * empty or share variable sets. */
inline JoinQuery random_query(std::mt19937_64 &rng, const RandomShape &shape = {})
{
    auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
    const std::size_t n = pick(1, shape.max_vars);
    const std::size_t m = pick(1, shape.max_relations);
    const std::size_t domain = pick(1, shape.max_domain);

    std::vector<VarSet> edges;
    for (std::size_t j = 0; j != m; ++j) {
        VarSet e;
        for (VarId x = 0; x != n; ++x)
            if (pick(0, 1))
                e.push_back(x);
        if (e.empty())
            e.push_back(VarId(pick(0, n - 1)));
        edges.push_back(e);
    }
    for (VarId x = 0; x != n; ++x) {
        bool covered = std::any_of(edges.begin(), edges.end(),
                                   [&](const VarSet &e) { return std::binary_search(e.begin(), e.end(), x); });
        if (not covered) {
            auto &e = edges[pick(0, m - 1)];
            e.insert(std::upper_bound(e.begin(), e.end(), x), x);
        }
    }

    JoinQuery q;
    for (std::size_t x = 0; x != n; ++x)
        q.order.push_back("x" + std::to_string(x + 1));
    q.domain_size = domain;
    for (std::size_t k = 0; k != domain; ++k)
        q.dictionary.intern(std::to_string(k));
    for (std::size_t j = 0; j != m; ++j) {
        // bias towards dense relations so that joins are often nonempty
        const std::size_t tuples = pick(0, 5) == 0 ? 0 : pick(1, shape.max_tuples);
        std::vector<std::vector<Code>> rows;
        for (std::size_t t = 0; t != tuples; ++t) {
            std::vector<Code> row;
            for (std::size_t c = 0; c != edges[j].size(); ++c)
                row.push_back(Code(pick(0, domain - 1)));
            rows.push_back(std::move(row));
        }
        q.relations.emplace_back("R" + std::to_string(j), edges[j], std::move(rows));
    }
    return q;
}

/** Degree constraints that hold on q and are acyclic, with `order` compatible:
 * each constraint takes A from an order-prefix of a relation's variables and B
 * from the rest, with N the observed maximum degree plus some slack.  Default
 * cardinalities are added. */
inline ConstraintSet random_constraints(const JoinQuery &q, std::span<const VarId> order, std::mt19937_64 &rng)
{
    auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
    std::vector<std::size_t> position(q.num_vars());
    for (std::size_t i = 0; i != order.size(); ++i)
        position[order[i]] = i;

    ConstraintSet cs;
    cs.variables = q.order;
    for (const auto &r : q.relations)
        if (std::find(cs.edges.begin(), cs.edges.end(), r.vars()) == cs.edges.end())
            cs.edges.push_back(r.vars());

    const std::size_t k = pick(0, 3);
    for (std::size_t i = 0; i != k; ++i) {
        const auto &r = q.relations[pick(0, q.relations.size() - 1)];
        if (r.arity() < 2)
            continue;
        std::vector<VarId> in_order(r.vars().begin(), r.vars().end());
        std::sort(in_order.begin(), in_order.end(), [&](VarId a, VarId b) { return position[a] < position[b]; });
        const std::size_t split = pick(1, in_order.size() - 1);
        VarSet a = make_varset({in_order.begin(), in_order.begin() + split});
        VarSet b = a;
        for (std::size_t c = split; c != in_order.size(); ++c)
            if (c == split or pick(0, 1))
                b.push_back(in_order[c]);
        b = make_varset(b);
        DegreeConstraint dc{a, b, 1, r.vars()};
        ConstraintSet probe{cs.variables, cs.edges, {dc}};
        const auto v = validate(q, probe).front();
        dc.bound = std::max<std::uint64_t>(1, v.max_degree) + pick(0, 1);
        cs.constraints.push_back(dc);
    }
    add_default_cardinalities(cs, q);
    return cs;
}

inline std::vector<VarId> random_order(std::size_t n, std::mt19937_64 &rng)
{
    std::vector<VarId> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    return order;
}

}
