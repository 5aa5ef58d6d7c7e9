#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace repfn {

using Int = std::int64_t;

/// Mathematical remainder, always in [0, m) for m > 0.
constexpr Int mod_floor(Int value, Int m) noexcept
{
    const Int r = value % m;
    return r < 0 ? r + m : r;
}

/// gcd with the residue convention gcd(0, m) = m.
Int gcd_mod(Int k, Int m) noexcept;

/// A problem instance: modulus m >= 2 and weights k_1..k_t reduced into [0, m).
class Instance {
public:
    Int modulus() const noexcept { return m_; }
    const std::vector<Int>& weights() const noexcept { return weights_; }
    std::size_t arity() const noexcept { return weights_.size(); }
    Int weight(std::size_t i) const { return weights_.at(i); }

    std::string to_string() const;

    friend bool operator==(const Instance&, const Instance&) = default;

private:
    friend Instance canonicalize(Int m, std::span<const Int> raw_weights);
    Instance(Int m, std::vector<Int> weights) : m_(m), weights_(std::move(weights)) {}

    Int m_;
    std::vector<Int> weights_;
};

/// Builds an Instance, reducing every weight into [0, m).
/// Throws UsageError when m < 2 or the weight list is empty.
Instance canonicalize(Int m, std::span<const Int> raw_weights);
Instance canonicalize(Int m, std::initializer_list<Int> raw_weights);

/// gcd data for a two-weight instance: d1 = (k1, m), d2 = (k2, m), d3 = (d1, d2),
/// d = d1 d2 / d3^2. Every profile satisfies d | m.
struct GcdProfile {
    Int d1 = 1;
    Int d2 = 1;
    Int d3 = 1;
    Int d = 1;

    /// d1 / d3 and d2 / d3; coprime, with product d.
    Int reduced1() const noexcept { return d1 / d3; }
    Int reduced2() const noexcept { return d2 / d3; }

    friend bool operator==(const GcdProfile&, const GcdProfile&) = default;
};

/// Requires exactly two weights (UsageError otherwise).
GcdProfile gcd_profile(const Instance& inst);

/// 2-adic valuation. kInfiniteValuation stands for v2(0) = +inf, so it
/// compares greater than every finite valuation.
using Valuation = std::uint32_t;
inline constexpr Valuation kInfiniteValuation = std::numeric_limits<Valuation>::max();

/// Requires k >= 0 (RangeError otherwise).
Valuation v2(Int k);

} // namespace repfn
