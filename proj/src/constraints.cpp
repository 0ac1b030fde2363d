#include <wcoj/constraints.hpp>

#include <wcoj/error.hpp>

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>


namespace wcoj {

DegreeConstraint functional_dependency(const VarSet &from, VarId to, VarSet guard)
{
    return DegreeConstraint{from, set_union(from, VarSet{to}), 1, std::move(guard)};
}

void ConstraintSet::check_well_formed() const
{
    for (const auto &e : edges)
        if (not e.empty() and e.back() >= variables.size())
            throw InvalidInput("hyperedge uses an unknown variable");
    for (const auto &dc : constraints) {
        if (not is_subset(dc.a, dc.b))
            throw InvalidInput("constraint " + format_constraint(*this, dc) + ": A is not a subset of B");
        if (not is_subset(dc.b, dc.guard))
            throw InvalidInput("constraint " + format_constraint(*this, dc) + ": B is not a subset of its guard");
        if (dc.bound < 1)
            throw InvalidInput("constraint " + format_constraint(*this, dc) + ": bound must be at least 1");
        if (std::find(edges.begin(), edges.end(), dc.guard) == edges.end())
            throw InvalidInput("constraint " + format_constraint(*this, dc) + ": guard is not a hyperedge");
    }
}

std::optional<std::size_t> ConstraintSet::edge_without_cardinality() const
{
    for (std::size_t e = 0; e != edges.size(); ++e) {
        bool found = std::any_of(constraints.begin(), constraints.end(), [&](const DegreeConstraint &dc) {
            return dc.is_cardinality() and dc.b == edges[e] and dc.guard == edges[e];
        });
        if (not found)
            return e;
    }
    return std::nullopt;
}

std::optional<VarId> ConstraintSet::uncovered_variable() const
{
    std::vector<char> covered(variables.size(), 0);
    for (const auto &dc : constraints)
        for (auto v : dc.covered())
            covered[v] = 1;
    for (VarId v = 0; v != variables.size(); ++v)
        if (not covered[v])
            return v;
    return std::nullopt;
}

ConstraintSet cardinality_constraints(const JoinQuery &q)
{
    ConstraintSet cs;
    cs.variables = q.order;
    for (const auto &r : q.relations) {
        cs.edges.push_back(r.vars());
        cs.constraints.push_back({{}, r.vars(), std::max<std::uint64_t>(1, r.size()), r.vars()});
    }
    return cs;
}

void add_default_cardinalities(ConstraintSet &cs, const JoinQuery &q)
{
    if (cs.variables.empty())
        cs.variables = q.order;
    for (const auto &r : q.relations) {
        if (std::find(cs.edges.begin(), cs.edges.end(), r.vars()) == cs.edges.end())
            cs.edges.push_back(r.vars());
        bool has = std::any_of(cs.constraints.begin(), cs.constraints.end(), [&](const DegreeConstraint &dc) {
            return dc.is_cardinality() and dc.guard == r.vars();
        });
        if (not has)
            cs.constraints.push_back({{}, r.vars(), std::max<std::uint64_t>(1, r.size()), r.vars()});
    }
}


/*======================================================================================================================
 * Validation
 *====================================================================================================================*/

std::optional<std::size_t> find_guard(const JoinQuery &q, const VarSet &guard)
{
    for (std::size_t i = 0; i != q.relations.size(); ++i)
        if (q.relations[i].vars() == guard)
            return i;
    return std::nullopt;
}

std::vector<ValidationEntry> validate(const JoinQuery &q, const ConstraintSet &cs)
{
    std::vector<ValidationEntry> report;
    for (std::size_t i = 0; i != cs.constraints.size(); ++i) {
        const auto &dc = cs.constraints[i];
        ValidationEntry entry;
        entry.constraint = i;

        auto guard = find_guard(q, dc.guard);
        if (not guard) {
            entry.message = "no guard relation";
            report.push_back(std::move(entry));
            continue;
        }
        entry.guard_found = true;
        entry.guard_relation = *guard;
        const Relation &r = q.relations[*guard];

        // distinct B-projections per A-projection; std::map keeps witnesses in code order
        std::vector<std::size_t> a_cols, b_cols;
        for (std::size_t c = 0; c != r.arity(); ++c) {
            if (std::binary_search(dc.a.begin(), dc.a.end(), r.vars()[c])) a_cols.push_back(c);
            if (std::binary_search(dc.b.begin(), dc.b.end(), r.vars()[c])) b_cols.push_back(c);
        }
        std::map<std::vector<Code>, std::set<std::vector<Code>>> groups;
        for (std::size_t row = 0; row != r.size(); ++row) {
            auto t = r.row(row);
            std::vector<Code> key, val;
            for (auto c : a_cols) key.push_back(t[c]);
            for (auto c : b_cols) val.push_back(t[c]);
            groups[std::move(key)].insert(std::move(val));
        }
        const std::vector<Code> *arg = nullptr;
        for (const auto &[key, vals] : groups) {
            if (vals.size() > entry.max_degree) {
                entry.max_degree = vals.size();
                arg = &key;
            }
        }
        if (arg) {
            std::vector<Binding> bindings;
            for (std::size_t k = 0; k != a_cols.size(); ++k)
                bindings.push_back({r.vars()[a_cols[k]], (*arg)[k]});
            entry.witness = Tuple(std::move(bindings));
        }
        entry.pass = entry.max_degree <= dc.bound;
        entry.message = entry.pass ? "ok" : "degree " + std::to_string(entry.max_degree) + " exceeds " +
                                                std::to_string(dc.bound);
        report.push_back(std::move(entry));
    }
    return report;
}


/*======================================================================================================================
 * Dependency graph and compatible orders
 *====================================================================================================================*/

bool DependencyGraph::has_edge(VarId u, VarId v) const
{
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

DependencyGraph dependency_graph(const ConstraintSet &cs)
{
    DependencyGraph g;
    g.num_vertices = cs.variables.size();
    for (const auto &dc : cs.constraints)
        for (auto u : dc.a)
            for (auto v : dc.covered())
                g.edges.emplace_back(u, v);
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    return g;
}

namespace {

/// Finds a cycle among `alive` vertices, each of which has an incoming edge from another alive vertex.
Cycle find_cycle(const ConstraintSet &cs, const DependencyGraph &g, const std::vector<char> &alive)
{
    const auto n = g.num_vertices;
    std::vector<std::vector<VarId>> pred(n);
    for (auto [u, v] : g.edges)
        if (alive[u] and alive[v])
            pred[v].push_back(u);

    // Walk predecessors from any alive vertex until a vertex repeats.
    VarId start = 0;
    while (not alive[start]) ++start;
    std::vector<int> seen(n, -1);
    std::vector<VarId> walk;
    VarId cur = start;
    while (seen[cur] < 0) {
        seen[cur] = int(walk.size());
        walk.push_back(cur);
        cur = *std::min_element(pred[cur].begin(), pred[cur].end(),
                                [&](VarId a, VarId b) { return cs.variables[a] < cs.variables[b]; });
    }
    // walk[seen[cur]..] traverses the cycle backwards
    std::vector<VarId> cycle(walk.begin() + seen[cur], walk.end());
    std::reverse(cycle.begin(), cycle.end());
    auto smallest = std::min_element(cycle.begin(), cycle.end(),
                                     [&](VarId a, VarId b) { return cs.variables[a] < cs.variables[b]; });
    std::rotate(cycle.begin(), smallest, cycle.end());
    return Cycle{std::move(cycle)};
}

}

std::variant<std::vector<VarId>, Cycle> compatible_order(const ConstraintSet &cs)
{
    const auto g = dependency_graph(cs);
    const auto n = g.num_vertices;
    std::vector<std::size_t> indegree(n, 0);
    std::vector<std::vector<VarId>> succ(n);
    for (auto [u, v] : g.edges) {
        succ[u].push_back(v);
        ++indegree[v];
    }

    auto by_name = [&](VarId a, VarId b) { return cs.variables[a] > cs.variables[b]; };
    std::priority_queue<VarId, std::vector<VarId>, decltype(by_name)> ready(by_name);
    for (VarId v = 0; v != n; ++v)
        if (indegree[v] == 0)
            ready.push(v);

    std::vector<VarId> order;
    std::vector<char> alive(n, 1);
    while (not ready.empty()) {
        VarId u = ready.top();
        ready.pop();
        order.push_back(u);
        alive[u] = 0;
        for (auto v : succ[u])
            if (--indegree[v] == 0)
                ready.push(v);
    }
    if (order.size() == n)
        return order;
    return find_cycle(cs, g, alive);
}

std::vector<VarId> require_compatible_order(const ConstraintSet &cs)
{
    auto result = compatible_order(cs);
    if (auto *cycle = std::get_if<Cycle>(&result))
        throw OrderError("degree constraints are cyclic: " + format_cycle(cs, *cycle));
    return std::get<std::vector<VarId>>(std::move(result));
}

bool is_acyclic(const ConstraintSet &cs)
{
    return std::holds_alternative<std::vector<VarId>>(compatible_order(cs));
}

bool check_compatible(const ConstraintSet &cs, std::span<const VarId> order)
{
    std::vector<std::size_t> position(cs.variables.size(), std::size_t(-1));
    for (std::size_t i = 0; i != order.size(); ++i)
        position[order[i]] = i;
    const auto g = dependency_graph(cs);
    return std::all_of(g.edges.begin(), g.edges.end(),
                       [&](const auto &e) { return position[e.first] < position[e.second]; });
}

std::string format_cycle(const ConstraintSet &cs, const Cycle &cycle)
{
    std::ostringstream os;
    for (auto v : cycle.vertices)
        os << cs.variables[v] << " -> ";
    if (not cycle.vertices.empty())
        os << cs.variables[cycle.vertices.front()];
    return os.str();
}

std::string format_constraint(const ConstraintSet &cs, const DegreeConstraint &dc)
{
    auto set = [&](const VarSet &s) {
        std::string out = "{";
        for (std::size_t i = 0; i != s.size(); ++i)
            out += (i ? "," : "") + (s[i] < cs.variables.size() ? cs.variables[s[i]] : "?");
        return out + "}";
    };
    return "(" + set(dc.a) + ", " + set(dc.b) + ", " + std::to_string(dc.bound) + ")";
}

}
