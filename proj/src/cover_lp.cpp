#include <wcoj/estimators.hpp>

#include <wcoj/error.hpp>

#include <cmath>
#include <limits>


namespace wcoj {

double CoverSolution::log2_bound() const { return log_bound / std::log(2.0); }

namespace {

using Matrix = std::vector<std::vector<Rational>>;

/// Solves a x = rhs for square a; nullopt when singular.
std::optional<std::vector<Rational>> solve_square(Matrix a, std::vector<Rational> rhs)
{
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col != n; ++col) {
        std::size_t pivot = col;
        while (pivot != n and a[pivot][col] == 0) ++pivot;
        if (pivot == n)
            return std::nullopt;
        std::swap(a[pivot], a[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (std::size_t row = 0; row != n; ++row) {
            if (row == col or a[row][col] == 0)
                continue;
            Rational factor = a[row][col] / a[col][col];
            for (std::size_t k = col; k != n; ++k)
                a[row][k] -= factor * a[col][k];
            rhs[row] -= factor * rhs[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i != n; ++i)
        x[i] = rhs[i] / a[i][i];
    return x;
}

}

CoverSolution solve_cover(const std::vector<std::string> &variables, const std::vector<VarSet> &covers,
                          const std::vector<std::uint64_t> &bounds)
{
    const std::size_t n = variables.size();
    const std::size_t m = covers.size();
    if (bounds.size() != m)
        throw InvalidInput("cover LP: one bound per cover set is required");
    for (auto b : bounds)
        if (b < 1)
            throw InvalidInput("cover LP: bounds must be at least 1");

    // Row i < n: coverage of variable i; row n + j: ω_j ≥ 0.
    Matrix rows(n + m, std::vector<Rational>(m, Rational(0)));
    std::vector<Rational> rhs(n + m, Rational(0));
    for (std::size_t j = 0; j != m; ++j)
        for (auto x : covers[j])
            rows[x][j] = 1;
    for (std::size_t x = 0; x != n; ++x) {
        rhs[x] = 1;
        bool covered = false;
        for (std::size_t j = 0; j != m; ++j)
            covered = covered or rows[x][j] != 0;
        if (not covered)
            throw InfeasibleCover(variables[x]);
    }
    for (std::size_t j = 0; j != m; ++j)
        rows[n + j][j] = 1;

    if (n + m > max_lp_size)
        throw TooLarge("cover LP with " + std::to_string(n) + " variables and " + std::to_string(m) +
                       " weights exceeds the vertex enumeration limit of " + std::to_string(max_lp_size) +
                       "; supply the weights explicitly");

    std::vector<double> cost(m);
    for (std::size_t j = 0; j != m; ++j)
        cost[j] = std::log(double(bounds[j]));

    std::optional<CoverSolution> best;
    if (m == 0) {
        // only feasible when there is nothing to cover
        return CoverSolution{};
    }

    // Enumerate m-subsets of the n + m rows in lexicographic order.
    std::vector<std::size_t> pick(m);
    for (std::size_t i = 0; i != m; ++i) pick[i] = i;
    for (;;) {
        Matrix a(m);
        std::vector<Rational> b(m);
        for (std::size_t i = 0; i != m; ++i) {
            a[i] = rows[pick[i]];
            b[i] = rhs[pick[i]];
        }
        if (auto x = solve_square(std::move(a), std::move(b))) {
            bool feasible = true;
            for (std::size_t r = 0; r != n + m and feasible; ++r) {
                Rational lhs = 0;
                for (std::size_t j = 0; j != m; ++j)
                    if (rows[r][j] != 0)
                        lhs += rows[r][j] * (*x)[j];
                feasible = lhs >= rhs[r];
            }
            if (feasible) {
                double objective = 0;
                for (std::size_t j = 0; j != m; ++j)
                    objective += to_double((*x)[j]) * cost[j];
                if (not best or objective < best->log_bound - 1e-12 * std::max(1.0, std::abs(best->log_bound)))
                    best = CoverSolution{FractionalCover{std::move(*x)}, objective};
            }
        }

        // next combination
        std::size_t i = m;
        while (i > 0 and pick[i - 1] == n + i - 1) --i;
        if (i == 0)
            break;
        ++pick[i - 1];
        for (std::size_t k = i; k != m; ++k)
            pick[k] = pick[k - 1] + 1;
    }

    // Coverage of every variable makes the all-ones point feasible, so a vertex exists.
    return std::move(*best);
}

CoverSolution solve_cover_card(const Hypergraph &h, const std::vector<std::uint64_t> &sizes)
{
    return solve_cover(h.variables, h.edges, sizes);
}

std::vector<VarSet> cover_sets(const ConstraintSet &cs)
{
    std::vector<VarSet> out;
    out.reserve(cs.constraints.size());
    for (const auto &dc : cs.constraints)
        out.push_back(dc.covered());
    return out;
}

CoverSolution solve_cover_degree(const ConstraintSet &cs)
{
    std::vector<std::uint64_t> bounds;
    for (const auto &dc : cs.constraints)
        bounds.push_back(dc.bound);
    return solve_cover(cs.variables, cover_sets(cs), bounds);
}

std::optional<VarId> uncovered_by(std::size_t num_vars, const std::vector<VarSet> &covers, const FractionalCover &w)
{
    if (w.weights.size() != covers.size())
        throw InvalidInput("expected " + std::to_string(covers.size()) + " weights, got " +
                           std::to_string(w.weights.size()));
    for (const auto &x : w.weights)
        if (x < 0)
            throw InvalidInput("cover weights must be nonnegative");
    std::vector<Rational> total(num_vars, Rational(0));
    for (std::size_t j = 0; j != covers.size(); ++j)
        for (auto x : covers[j])
            total[x] += w.weights[j];
    for (VarId x = 0; x != num_vars; ++x)
        if (total[x] < 1)
            return x;
    return std::nullopt;
}

double log_bound(const FractionalCover &w, const std::vector<std::uint64_t> &bounds)
{
    double out = 0;
    for (std::size_t j = 0; j != bounds.size(); ++j) {
        if (w.weights[j] == 0)
            continue;
        if (bounds[j] == 0)
            return -std::numeric_limits<double>::infinity();
        out += to_double(w.weights[j]) * std::log(double(bounds[j]));
    }
    return out;
}

}
