#include "repfn/core_arith.hpp"

#include "repfn/errors.hpp"

#include <bit>
#include <cassert>
#include <numeric>
#include <sstream>

namespace repfn {

Int gcd_mod(Int k, Int m) noexcept
{
    return std::gcd(k, m);
}

std::string Instance::to_string() const
{
    std::ostringstream os;
    os << "m=" << m_ << " k=[";
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        os << (i ? "," : "") << weights_[i];
    }
    os << ']';
    return os.str();
}

Instance canonicalize(Int m, std::span<const Int> raw_weights)
{
    if (m < 2) {
        throw UsageError("modulus must be at least 2, got " + std::to_string(m));
    }
    if (raw_weights.empty()) {
        throw UsageError("weight list must not be empty");
    }
    std::vector<Int> weights;
    weights.reserve(raw_weights.size());
    for (Int k : raw_weights) {
        weights.push_back(mod_floor(k, m));
    }
    return Instance(m, std::move(weights));
}

Instance canonicalize(Int m, std::initializer_list<Int> raw_weights)
{
    return canonicalize(m, std::span<const Int>(raw_weights.begin(), raw_weights.size()));
}

GcdProfile gcd_profile(const Instance& inst)
{
    if (inst.arity() != 2) {
        throw UsageError("gcd profile needs exactly two weights, got " + std::to_string(inst.arity()));
    }
    const Int m = inst.modulus();
    GcdProfile p;
    p.d1 = gcd_mod(inst.weight(0), m);
    p.d2 = gcd_mod(inst.weight(1), m);
    p.d3 = std::gcd(p.d1, p.d2);
    p.d = (p.d1 / p.d3) * (p.d2 / p.d3);
    assert(m % p.d == 0);
    return p;
}

Valuation v2(Int k)
{
    if (k < 0) {
        throw RangeError("v2 expects a nonnegative argument");
    }
    if (k == 0) {
        return kInfiniteValuation;
    }
    return static_cast<Valuation>(std::countr_zero(static_cast<std::uint64_t>(k)));
}

} // namespace repfn
