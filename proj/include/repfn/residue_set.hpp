#pragma once

#include "repfn/core_arith.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace repfn {

/// A subset of Z_m stored as a length-m bit sequence (bit a set iff a is a member).
class ResidueSet {
public:
    /// Empty subset of Z_m. Throws UsageError when m < 2.
    explicit ResidueSet(Int m);

    /// Throws RangeError for members outside [0, m). Duplicates collapse.
    static ResidueSet from_members(Int m, std::span<const Int> members);
    static ResidueSet from_members(Int m, std::initializer_list<Int> members);
    /// Bit-pattern encoding; requires m <= 64 and no bits at or above m.
    static ResidueSet from_mask(Int m, std::uint64_t mask);
    static ResidueSet full(Int m);

    Int modulus() const noexcept { return m_; }
    std::size_t size() const noexcept { return bits_.count(); }
    bool empty() const noexcept { return bits_.none(); }
    bool contains(Int a) const { return a >= 0 && a < m_ && bits_.test(static_cast<std::size_t>(a)); }

    void insert(Int a);
    void erase(Int a);

    ResidueSet complement() const;
    std::vector<Int> members() const;

    /// Bit-pattern value; requires m <= 64.
    std::uint64_t mask() const;

    /// "{0,1,5}"
    std::string to_string() const;
    /// "0,1,5", the CLI set literal.
    std::string to_literal() const;

    friend bool operator==(const ResidueSet& a, const ResidueSet& b)
    {
        return a.m_ == b.m_ && a.bits_ == b.bits_;
    }

    /// Orders sets of one modulus by bit-pattern value (member m-1 most significant).
    friend bool operator<(const ResidueSet& a, const ResidueSet& b);

private:
    Int m_;
    boost::dynamic_bitset<> bits_;
};

} // namespace repfn
