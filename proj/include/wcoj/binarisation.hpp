#pragma once

#include <wcoj/constraints.hpp>
#include <wcoj/relational.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace wcoj {

/** Maps each variable x of a query to b binary variables x^1..x^b, bit 1 being
 * the most significant.  The binarised variable of (x, i) has id x*b + (i-1),
 * so the binarised identity order keeps each variable's bits contiguous. */
class BitLayout
{
    std::size_t bits_ = 1;
    std::size_t num_vars_ = 0;

  public:
    BitLayout(std::size_t num_vars, std::size_t bits);

    std::size_t bits() const { return bits_; }
    std::size_t num_vars() const { return num_vars_; }
    std::size_t num_bin_vars() const { return bits_ * num_vars_; }

    /// The binarised variable x^i, 1 <= i <= bits().
    VarId bit_var(VarId x, std::size_t i) const { return VarId(x * bits_ + (i - 1)); }
    /// Original variable and 1-based bit index of a binarised variable.
    std::pair<VarId, std::size_t> original(VarId bin_var) const {
        return {VarId(bin_var / bits_), bin_var % bits_ + 1};
    }

    VarSet bin_vars(const VarSet &vars) const;
    /// x_1^1..x_1^b, ..., x_n^1..x_n^b for the given order x_1..x_n.
    std::vector<VarId> bin_order(std::span<const VarId> order) const;
};

/// max(1, ceil(log2 domain_size)).
std::size_t bit_width(std::size_t domain_size);

/// MSB-first expansion of k on b bits; throws std::out_of_range if k >= 2^b.
std::vector<Code> bin_value(std::uint64_t k, std::size_t bits);

/// bin(Q): every relation expanded bitwise over the domain {0,1}.
JoinQuery bin_query(const JoinQuery &q, const BitLayout &layout);
inline BitLayout layout_for(const JoinQuery &q) { return BitLayout(q.num_vars(), bit_width(q.domain_size)); }

/// Bitwise expansion of a full assignment.
Answer bin_tuple(std::span<const Code> t, const BitLayout &layout);

/// Inverse of bin_tuple.  Throws InvalidInput if a decoded code is >= domain_size.
Answer debin_tuple(std::span<const Code> bits, const BitLayout &layout, std::size_t domain_size);

/// (A, B, N) with guard e becomes (bin(A), bin(B), N) with guard bin(e).
ConstraintSet bin_constraints(const ConstraintSet &cs, const BitLayout &layout);

}
