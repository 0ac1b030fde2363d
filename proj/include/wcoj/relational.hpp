#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wcoj {

/// Dense dictionary code of a domain value, in [0, |D|).
using Code = std::uint32_t;

/// A variable is identified by its position in the owning query's global order.
using VarId = std::uint32_t;

/// Sorted, duplicate-free set of variables.
using VarSet = std::vector<VarId>;

/// A full assignment, indexed by VarId.
using Answer = std::vector<Code>;

VarSet make_varset(std::vector<VarId> vars);
bool is_subset(const VarSet &sub, const VarSet &super);
VarSet set_union(const VarSet &a, const VarSet &b);
VarSet set_intersection(const VarSet &a, const VarSet &b);
VarSet set_difference(const VarSet &a, const VarSet &b);


/** Bijection between raw value tokens and dense codes.  Codes are handed out
 * in order of first appearance. */
class Dictionary
{
    std::unordered_map<std::string, Code> forward_;
    std::vector<std::string> backward_;

  public:
    /// Returns the code of `token`, assigning the next free code if it is new.
    Code intern(std::string_view token);
    std::optional<Code> find(std::string_view token) const;
    const std::string & decode(Code code) const { return backward_.at(code); }
    std::size_t size() const { return backward_.size(); }
};


struct Binding
{
    VarId var;
    Code code;

    friend bool operator==(const Binding&, const Binding&) = default;
};

/** A partial assignment: (variable, code) pairs kept sorted by variable. */
class Tuple
{
    std::vector<Binding> bindings_;

  public:
    Tuple() = default;
    /// Throws InvalidInput if a variable is bound twice.
    explicit Tuple(std::vector<Binding> bindings);

    /// The prefix tuple binding order[0..codes.size()) to `codes`.
    static Tuple prefix(std::span<const VarId> order, std::span<const Code> codes);

    const std::vector<Binding> & bindings() const { return bindings_; }
    std::size_t size() const { return bindings_.size(); }
    bool empty() const { return bindings_.empty(); }
    VarSet vars() const;
    std::optional<Code> get(VarId var) const;

    friend bool operator==(const Tuple&, const Tuple&) = default;
};

/// t restricted to the variables of t that lie in `vars`.
Tuple restrict(const Tuple &t, const VarSet &vars);


/** A set of tuples over the variables `vars()`.  Rows are stored flat, column
 * i holding the code of vars()[i], and kept sorted and deduplicated.  A
 * nullary relation is either {} or {ε}. */
class Relation
{
    std::string name_;
    VarSet vars_;
    std::vector<Code> data_;
    std::size_t size_ = 0;

  public:
    Relation() = default;
    /// Rows are given in the column order of `vars`, which must be sorted.
    Relation(std::string name, VarSet vars, std::vector<std::vector<Code>> rows);
    /// Nullary relation: {ε} if `has_empty_tuple`, else {}.
    static Relation nullary(std::string name, bool has_empty_tuple);

    const std::string & name() const { return name_; }
    const VarSet & vars() const { return vars_; }
    std::size_t arity() const { return vars_.size(); }
    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    std::span<const Code> row(std::size_t i) const {
        return std::span<const Code>(data_).subspan(i * arity(), arity());
    }
    std::vector<std::vector<Code>> rows() const;
    bool contains(std::span<const Code> row) const;

    friend bool operator==(const Relation &a, const Relation &b) {
        return a.vars_ == b.vars_ and a.size_ == b.size_ and a.data_ == b.data_;
    }
};

/// R[t]: the rows of R agreeing with t on shared variables, projected onto X_R - vars(t).
Relation filter(const Relation &r, const Tuple &t);

/// R|Y: deduplicated restrictions of the rows of R to X_R ∩ Y.
Relation project(const Relation &r, const VarSet &vars);


/** A join query: relations over subsets of a global variable order, sharing a
 * single dictionary-encoded domain. */
struct JoinQuery
{
    std::vector<std::string> order;   ///< variable names, indexed by VarId
    std::vector<Relation> relations;
    std::size_t domain_size = 0;
    Dictionary dictionary;

    std::size_t num_vars() const { return order.size(); }
    std::optional<VarId> var(std::string_view name) const;
    /// Identity order (0, 1, ..., n-1).
    std::vector<VarId> default_order() const;
    std::string describe(const Answer &answer) const;
    /// Throws InvalidInput if an invariant is broken.
    void check() const;
};

/// True iff no relation R of q has R[t] empty; for prefix tuples this is
/// exactly t ∈ ans(Q|vars(t)).
bool is_consistent(const JoinQuery &q, const Tuple &t);


/** A named table of raw string rows with a header naming its variables. */
struct RawTable
{
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/** Dictionary-encodes raw tables into a join query over `order`.  Codes are
 * assigned in first-appearance order: tables in the given order, rows top to
 * bottom, columns left to right. */
JoinQuery encode_instance(const std::vector<RawTable> &tables, const std::vector<std::string> &order);

/// Resolves variable names against `order`; throws InvalidInput on unknown names.
std::vector<VarId> resolve_vars(const JoinQuery &q, const std::vector<std::string> &names);

}
