#pragma once

#include <wcoj/relational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace wcoj {

/** A degree constraint (A, B, N): for every assignment τ of A, the guard
 * relation has at most N distinct B-projections agreeing with τ.  A = ∅ is a
 * cardinality constraint on B. */
struct DegreeConstraint
{
    VarSet a;
    VarSet b;
    std::uint64_t bound = 1;
    VarSet guard; ///< hyperedge e with B ⊆ e

    bool is_cardinality() const { return a.empty(); }
    /// B ∖ A, the variables this constraint covers in the cover LP.
    VarSet covered() const { return set_difference(b, a); }
};

/// Functional dependency `from -> to` desugared to (from, from ∪ {to}, 1).
DegreeConstraint functional_dependency(const VarSet &from, VarId to, VarSet guard);

/** Constraints over the hypergraph (X, E).  X is named so that orders can be
 * tie-broken by variable name. */
struct ConstraintSet
{
    std::vector<std::string> variables;        ///< X, indexed by VarId
    std::vector<VarSet> edges;                 ///< E
    std::vector<DegreeConstraint> constraints;

    /// Checks A ⊆ B ⊆ guard, guard ∈ E, N ≥ 1 and ⋃E ⊆ X.  Throws InvalidInput.
    void check_well_formed() const;
    /// First edge without a cardinality constraint guarded by it, if any.
    std::optional<std::size_t> edge_without_cardinality() const;
    /// First variable not in B∖A of any constraint, if any.
    std::optional<VarId> uncovered_variable() const;
};

/// The hypergraph of q (one edge per relation) with a cardinality constraint
/// (∅, e, max(1, |R_e|)) for each relation.
ConstraintSet cardinality_constraints(const JoinQuery &q);

/// Adds (∅, X_R, max(1, |R|)) for every relation R whose edge carries no cardinality constraint yet.
void add_default_cardinalities(ConstraintSet &cs, const JoinQuery &q);


struct ValidationEntry
{
    std::size_t constraint;
    bool pass = false;
    bool guard_found = false;
    std::size_t guard_relation = 0;
    std::uint64_t max_degree = 0;
    Tuple witness; ///< an A-assignment attaining max_degree
    std::string message;
};

/// For each constraint: max over A-assignments τ of |project(filter(R, τ), B)|
/// on its guard relation, compared with N.
std::vector<ValidationEntry> validate(const JoinQuery &q, const ConstraintSet &cs);

/// First relation of q whose variable set is exactly `guard`.
std::optional<std::size_t> find_guard(const JoinQuery &q, const VarSet &guard);


struct DependencyGraph
{
    std::size_t num_vertices = 0;
    std::vector<std::pair<VarId, VarId>> edges; ///< sorted, unique

    bool has_edge(VarId u, VarId v) const;
};

/// Edge u → v iff some constraint has u ∈ A and v ∈ B ∖ A.
DependencyGraph dependency_graph(const ConstraintSet &cs);

struct Cycle
{
    std::vector<VarId> vertices; ///< v0 → v1 → ... → v0, starting at the smallest name
};

/// Topological sort of the dependency graph, ties broken by ascending
/// variable name; a cycle if the graph is not acyclic.
std::variant<std::vector<VarId>, Cycle> compatible_order(const ConstraintSet &cs);

/// Like compatible_order but throws OrderError naming the cycle.
std::vector<VarId> require_compatible_order(const ConstraintSet &cs);

bool is_acyclic(const ConstraintSet &cs);

/// True iff every dependency edge u → v has u before v in `order`.
bool check_compatible(const ConstraintSet &cs, std::span<const VarId> order);

std::string format_cycle(const ConstraintSet &cs, const Cycle &cycle);
std::string format_constraint(const ConstraintSet &cs, const DegreeConstraint &dc);

}
