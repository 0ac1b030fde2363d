#include <wcoj/binarisation.hpp>

#include <wcoj/error.hpp>

#include <stdexcept>


namespace wcoj {

BitLayout::BitLayout(std::size_t num_vars, std::size_t bits) : bits_(bits), num_vars_(num_vars)
{
    if (bits_ < 1)
        throw std::invalid_argument("bit layout needs at least one bit per variable");
}

VarSet BitLayout::bin_vars(const VarSet &vars) const
{
    VarSet out;
    out.reserve(vars.size() * bits_);
    for (auto x : vars)
        for (std::size_t i = 1; i <= bits_; ++i)
            out.push_back(bit_var(x, i));
    return out;
}

std::vector<VarId> BitLayout::bin_order(std::span<const VarId> order) const
{
    std::vector<VarId> out;
    out.reserve(order.size() * bits_);
    for (auto x : order)
        for (std::size_t i = 1; i <= bits_; ++i)
            out.push_back(bit_var(x, i));
    return out;
}

std::size_t bit_width(std::size_t domain_size)
{
    std::size_t b = 0;
    while (b < 64 and (std::uint64_t(1) << b) < domain_size)
        ++b;
    return std::max<std::size_t>(1, b);
}

std::vector<Code> bin_value(std::uint64_t k, std::size_t bits)
{
    if (bits < 64 and k >= (std::uint64_t(1) << bits))
        throw std::out_of_range("value " + std::to_string(k) + " does not fit in " + std::to_string(bits) + " bits");
    std::vector<Code> out(bits);
    for (std::size_t i = 0; i != bits; ++i)
        out[i] = Code((k >> (bits - 1 - i)) & 1u);
    return out;
}

JoinQuery bin_query(const JoinQuery &q, const BitLayout &layout)
{
    const std::size_t b = layout.bits();
    JoinQuery out;
    out.order.reserve(layout.num_bin_vars());
    for (const auto &name : q.order)
        for (std::size_t i = 1; i <= b; ++i)
            out.order.push_back(name + "^" + std::to_string(i));
    out.dictionary.intern("0");
    out.dictionary.intern("1");
    out.domain_size = 2;

    for (const auto &r : q.relations) {
        if (r.arity() == 0) {
            out.relations.push_back(Relation::nullary(r.name(), not r.empty()));
            continue;
        }
        std::vector<std::vector<Code>> rows;
        rows.reserve(r.size());
        for (std::size_t i = 0; i != r.size(); ++i) {
            std::vector<Code> bits;
            bits.reserve(r.arity() * b);
            for (auto code : r.row(i)) {
                auto v = bin_value(code, b);
                bits.insert(bits.end(), v.begin(), v.end());
            }
            rows.push_back(std::move(bits));
        }
        out.relations.emplace_back(r.name(), layout.bin_vars(r.vars()), std::move(rows));
    }
    return out;
}

Answer bin_tuple(std::span<const Code> t, const BitLayout &layout)
{
    Answer out;
    out.reserve(t.size() * layout.bits());
    for (auto code : t) {
        auto v = bin_value(code, layout.bits());
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

Answer debin_tuple(std::span<const Code> bits, const BitLayout &layout, std::size_t domain_size)
{
    if (bits.size() != layout.num_bin_vars())
        throw InvalidInput("binarised tuple has the wrong number of bits");
    const std::size_t b = layout.bits();
    Answer out(layout.num_vars());
    for (std::size_t x = 0; x != out.size(); ++x) {
        std::uint64_t value = 0;
        for (std::size_t i = 0; i != b; ++i)
            value = (value << 1) | (bits[x * b + i] & 1u);
        if (value >= domain_size)
            throw InvalidInput("binarised tuple decodes to code " + std::to_string(value) +
                               " outside the domain of size " + std::to_string(domain_size));
        out[x] = Code(value);
    }
    return out;
}

ConstraintSet bin_constraints(const ConstraintSet &cs, const BitLayout &layout)
{
    ConstraintSet out;
    out.variables.reserve(cs.variables.size() * layout.bits());
    for (const auto &name : cs.variables)
        for (std::size_t i = 1; i <= layout.bits(); ++i)
            out.variables.push_back(name + "^" + std::to_string(i));
    for (const auto &e : cs.edges)
        out.edges.push_back(layout.bin_vars(e));
    for (const auto &dc : cs.constraints)
        out.constraints.push_back({layout.bin_vars(dc.a), layout.bin_vars(dc.b), dc.bound, layout.bin_vars(dc.guard)});
    return out;
}

}
