#pragma once

#include <wcoj/relational.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace wcoj {

/** A relation whose columns follow a traversal order and whose rows are
 * sorted lexicographically, so that R[τ] for any prefix τ of the order is a
 * contiguous row range. */
class SortedRelation
{
    std::string name_;
    std::vector<VarId> vars_;        ///< columns, in traversal order
    std::vector<std::size_t> levels_; ///< position of each column's variable in the traversal order
    std::vector<Code> data_;
    std::size_t size_ = 0;

  public:
    SortedRelation() = default;

    const std::string & name() const { return name_; }
    const std::vector<VarId> & vars() const { return vars_; }
    const std::vector<std::size_t> & levels() const { return levels_; }
    std::size_t arity() const { return vars_.size(); }
    std::size_t size() const { return size_; }

    Code at(std::size_t row, std::size_t column) const { return data_[row * arity() + column]; }
    std::span<const Code> row(std::size_t i) const {
        return std::span<const Code>(data_).subspan(i * arity(), arity());
    }

    friend SortedRelation build(const Relation &r, std::span<const VarId> order);
};

/// A pointer pair [lo, hi] (inclusive) into a SortedRelation; lo == hi + 1 is empty.
struct RangeCursor
{
    std::int64_t lo = 0;
    std::int64_t hi = -1;
    std::size_t depth = 0; ///< number of leading columns already bound

    friend bool operator==(const RangeCursor&, const RangeCursor&) = default;
};

/// Reorders the columns of r to follow `order` and sorts the rows.  `order`
/// must contain every variable of r.
SortedRelation build(const Relation &r, std::span<const VarId> order);

/// The cursor covering all rows of sr.
inline RangeCursor full_range(const SortedRelation &sr) { return {0, std::int64_t(sr.size()) - 1, 0}; }

/// Rows of c whose column c.depth equals `value`, found by two binary searches.
RangeCursor narrow(const SortedRelation &sr, const RangeCursor &c, Code value);

inline std::size_t count(const RangeCursor &c) { return c.lo > c.hi ? 0 : std::size_t(c.hi - c.lo + 1); }
inline bool is_empty(const RangeCursor &c) { return c.lo > c.hi; }


/** A set of sorted relations indexed for one traversal order, together with
 * per-relation cursor stacks.  descend(d) binds the next variable of the order
 * to d; ascend() undoes the last descend.  This is the node state of a trace
 * tree walk, shared by enumeration and sampling. */
class PrefixIndex
{
    std::vector<VarId> order_;
    std::size_t domain_size_ = 0;
    std::vector<SortedRelation> relations_;
    std::vector<std::vector<std::size_t>> touched_;  ///< per level: relations having that variable
    std::vector<std::vector<RangeCursor>> stacks_;   ///< per relation
    std::vector<char> consistent_;                   ///< per bound depth, 0..depth()
    std::vector<Code> prefix_;

  public:
    PrefixIndex(std::vector<SortedRelation> relations, std::vector<VarId> order, std::size_t domain_size);

    const std::vector<VarId> & order() const { return order_; }
    std::size_t domain_size() const { return domain_size_; }
    const std::vector<SortedRelation> & relations() const { return relations_; }
    std::size_t num_levels() const { return order_.size(); }

    std::size_t depth() const { return prefix_.size(); }
    bool full() const { return depth() == order_.size(); }
    /// True iff no relation has an empty range at the current prefix.
    bool consistent() const { return consistent_.back(); }
    std::span<const Code> prefix() const { return prefix_; }
    const RangeCursor & cursor(std::size_t relation) const { return stacks_[relation].back(); }
    std::size_t count(std::size_t relation) const { return wcoj::count(cursor(relation)); }
    /// Relations whose next column is the variable bound at `level`.
    const std::vector<std::size_t> & touched(std::size_t level) const { return touched_[level]; }

    void descend(Code value);
    void ascend();
    void reset();
};

/// Sorts every relation of q for `order` and returns the cursor structure at the root.
PrefixIndex index_query(const JoinQuery &q, std::span<const VarId> order);

}
