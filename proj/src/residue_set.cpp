#include "repfn/residue_set.hpp"

#include "repfn/errors.hpp"

#include <sstream>

namespace repfn {

ResidueSet::ResidueSet(Int m) : m_(m)
{
    if (m < 2) {
        throw UsageError("modulus must be at least 2, got " + std::to_string(m));
    }
    bits_.resize(static_cast<std::size_t>(m));
}

ResidueSet ResidueSet::from_members(Int m, std::span<const Int> members)
{
    ResidueSet s(m);
    for (Int a : members) {
        s.insert(a);
    }
    return s;
}

ResidueSet ResidueSet::from_members(Int m, std::initializer_list<Int> members)
{
    return from_members(m, std::span<const Int>(members.begin(), members.size()));
}

ResidueSet ResidueSet::from_mask(Int m, std::uint64_t mask)
{
    if (m > 64) {
        throw RangeError("bit-pattern encoding supports m <= 64");
    }
    if (m < 64 && (mask >> m) != 0) {
        throw RangeError("bit pattern has bits at or above the modulus");
    }
    ResidueSet s(m);
    for (Int a = 0; a < m; ++a) {
        if ((mask >> a) & 1U) {
            s.bits_.set(static_cast<std::size_t>(a));
        }
    }
    return s;
}

ResidueSet ResidueSet::full(Int m)
{
    ResidueSet s(m);
    s.bits_.set();
    return s;
}

void ResidueSet::insert(Int a)
{
    if (a < 0 || a >= m_) {
        throw RangeError("residue " + std::to_string(a) + " outside [0, " + std::to_string(m_) + ")");
    }
    bits_.set(static_cast<std::size_t>(a));
}

void ResidueSet::erase(Int a)
{
    if (a < 0 || a >= m_) {
        throw RangeError("residue " + std::to_string(a) + " outside [0, " + std::to_string(m_) + ")");
    }
    bits_.reset(static_cast<std::size_t>(a));
}

ResidueSet ResidueSet::complement() const
{
    ResidueSet c(*this);
    c.bits_.flip();
    return c;
}

std::vector<Int> ResidueSet::members() const
{
    std::vector<Int> out;
    out.reserve(bits_.count());
    for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i)) {
        out.push_back(static_cast<Int>(i));
    }
    return out;
}

std::uint64_t ResidueSet::mask() const
{
    if (m_ > 64) {
        throw RangeError("bit-pattern encoding supports m <= 64");
    }
    std::uint64_t mask = 0;
    for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i)) {
        mask |= std::uint64_t{1} << i;
    }
    return mask;
}

std::string ResidueSet::to_literal() const
{
    std::ostringstream os;
    bool first = true;
    for (Int a : members()) {
        os << (first ? "" : ",") << a;
        first = false;
    }
    return os.str();
}

std::string ResidueSet::to_string() const
{
    return "{" + to_literal() + "}";
}

bool operator<(const ResidueSet& a, const ResidueSet& b)
{
    if (a.m_ != b.m_) {
        return a.m_ < b.m_;
    }
    // dynamic_bitset compares lexicographically from the most significant bit.
    return a.bits_ < b.bits_;
}

} // namespace repfn
