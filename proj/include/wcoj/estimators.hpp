#pragma once

#include <wcoj/constraints.hpp>
#include <wcoj/rational.hpp>
#include <wcoj/relational.hpp>
#include <wcoj/sorted_index.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wcoj {

/*======================================================================================================================
 * Fractional covers
 *====================================================================================================================*/

/// One weight per edge (cardinality class) or per constraint (degree class).
struct FractionalCover
{
    std::vector<Rational> weights;
};

struct CoverSolution
{
    FractionalCover cover;
    double log_bound = 0;  ///< Σ ω_j ln N_j, natural log of the bound ∏ N_j^ω_j
    double log2_bound() const;
};

struct Hypergraph
{
    std::vector<std::string> variables;
    std::vector<VarSet> edges;
};

/// Programs with more variables plus weights than this are rejected by the vertex enumerator.
inline constexpr std::size_t max_lp_size = 20;

/** Minimizes Σ_j ω_j ln bounds[j] subject to Σ_{j : x ∈ covers[j]} ω_j ≥ 1 for
 * every variable x, ω ≥ 0.  Solved exactly by enumerating the basic feasible
 * solutions: every choice of |covers| tight rows among the coverage and
 * nonnegativity inequalities, solved over the rationals.  Ties keep the first
 * vertex found.  Throws InfeasibleCover when a variable lies in no cover set
 * and TooLarge past max_lp_size. */
CoverSolution solve_cover(const std::vector<std::string> &variables, const std::vector<VarSet> &covers,
                          const std::vector<std::uint64_t> &bounds);

/// AGM cover: weights on the edges of h, N[j] bounding |R_{e_j}|.
CoverSolution solve_cover_card(const Hypergraph &h, const std::vector<std::uint64_t> &sizes);

/// Polymatroid cover: weights on the constraints of cs, covering B ∖ A.
CoverSolution solve_cover_degree(const ConstraintSet &cs);

/// First variable whose coverage Σ ω_j falls below 1 (exact comparison), if any.
std::optional<VarId> uncovered_by(std::size_t num_vars, const std::vector<VarSet> &covers, const FractionalCover &w);

double log_bound(const FractionalCover &w, const std::vector<std::uint64_t> &bounds);

/// The cover sets of an AGM cover (the edges) and of a polymatroid cover (B ∖ A per constraint).
std::vector<VarSet> cover_sets(const ConstraintSet &cs);


/*======================================================================================================================
 * Q-estimators
 *====================================================================================================================*/

enum class EstimatorKind { agm, polymatroid };

/** One factor N_j[τ]^ω_j of an estimator.  The factor uses the live range count
 * of `relation` once at least `live_from` variables are bound, and the static
 * bound before that. */
struct EstimatorTerm
{
    std::size_t relation;
    double weight;
    double log_static_bound;
    std::size_t live_from;
};

/** Cursor state over a traversal order together with the estimator factors.
 * The current node of the trace tree is the prefix bound in `index`. */
struct EstimatorContext
{
    EstimatorKind kind;
    PrefixIndex index;
    std::vector<EstimatorTerm> terms;
};

/// agm_up(τ) = ∏_j |R_j[τ]|^ω_j with ω indexed by relation of q.
EstimatorContext make_agm_context(const JoinQuery &q, std::span<const VarId> order, const FractionalCover &cover);

/// pm_up(τ) = ∏_δ N_δ[τ]^ω_δ over R'_δ = R_δ|B_δ, ω indexed by constraint of cs.
/// The guard of each constraint is the first relation of q on exactly its edge.
/// Throws OrderError if `order` is not compatible with cs, InvalidInput if a guard is missing.
EstimatorContext make_pm_context(const JoinQuery &q, const ConstraintSet &cs, std::span<const VarId> order,
                                 const FractionalCover &cover);

/// Natural log of the estimate at the current node; -inf when inconsistent.
double log_up(const EstimatorContext &ctx);
/// exp(log_up); exactly 0 on inconsistent nodes and exactly 1 when every live count is 1.
double up(const EstimatorContext &ctx);
double agm_up(const EstimatorContext &ctx);
double pm_up(const EstimatorContext &ctx);

using Estimator = std::function<double(const EstimatorContext&)>;

struct EstimatorReport
{
    std::uint64_t nodes = 0;
    std::uint64_t superadditivity_violations = 0;
    std::uint64_t answer_violations = 0;       ///< an answer whose estimate is not 1
    std::uint64_t zero_violations = 0;         ///< estimate 0 on a consistent node, or nonzero on an inconsistent one
    double max_relative_violation = 0;         ///< max over nodes of (Σ children − parent) / parent
    double root_value = 0;
    std::uint64_t answers = 0;

    bool ok() const { return superadditivity_violations == 0 and answer_violations == 0 and zero_violations == 0; }
};

/** Walks the whole trace tree below the root of ctx and checks that `estimate`
 * is tree-superadditive (within `relative_slack`), 1 on answers and 0 exactly
 * on inconsistent nodes. */
EstimatorReport verify_estimator(EstimatorContext &ctx, const Estimator &estimate, double relative_slack = 1e-9);

}
