#include "repfn/repfn.hpp"

#include "repfn/errors.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace repfn {
namespace {

void require_same_modulus(const ResidueSet& set, const Instance& inst)
{
    if (set.modulus() != inst.modulus()) {
        throw ModulusMismatch("set lives in Z_" + std::to_string(set.modulus()) + " but instance has m="
                              + std::to_string(inst.modulus()));
    }
}

void require_pair(const Instance& inst)
{
    if (inst.arity() != 2) {
        throw UsageError("operation needs exactly two weights, got " + std::to_string(inst.arity()));
    }
}

// e^{2 pi i r / m} for r in [0, m).
std::vector<Complex> unit_roots(Int m)
{
    std::vector<Complex> roots(static_cast<std::size_t>(m));
    for (Int r = 0; r < m; ++r) {
        roots[static_cast<std::size_t>(r)] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(m));
    }
    return roots;
}

Complex exp_sum_with(const std::vector<Int>& members, Int m, Int x, const std::vector<Complex>& roots)
{
    const Int step = mod_floor(x, m);
    Complex sum{0.0, 0.0};
    for (Int t : members) {
        sum += roots[static_cast<std::size_t>((t * step) % m)];
    }
    return sum;
}

Complex gap_at(const std::vector<Int>& a, const std::vector<Int>& b, const Instance& inst, Int x,
               const std::vector<Complex>& roots)
{
    const Int m = inst.modulus();
    const Int x1 = inst.weight(0) * x % m;
    const Int x2 = inst.weight(1) * x % m;
    return exp_sum_with(a, m, x1, roots) * exp_sum_with(a, m, x2, roots)
        - exp_sum_with(b, m, x1, roots) * exp_sum_with(b, m, x2, roots);
}

} // namespace

Count RepProfile::total() const noexcept
{
    return std::accumulate(counts.begin(), counts.end(), Count{0});
}

RepProfile rep_naive(const ResidueSet& set, const Instance& inst)
{
    require_same_modulus(set, inst);
    const Int m = inst.modulus();
    const auto& weights = inst.weights();
    const std::size_t t = weights.size();
    const std::vector<Int> members = set.members();

    RepProfile profile{m, std::vector<Count>(static_cast<std::size_t>(m), 0)};
    if (members.empty()) {
        return profile;
    }

    // Odometer over A^t; partial[i] holds the weighted sum of the first i coordinates.
    std::vector<std::size_t> index(t, 0);
    std::vector<Int> partial(t + 1, 0);
    for (std::size_t i = 0; i < t; ++i) {
        partial[i + 1] = (partial[i] + weights[i] * members[0]) % m;
    }
    while (true) {
        ++profile.counts[static_cast<std::size_t>(partial[t])];

        std::size_t pos = t;
        while (pos > 0) {
            --pos;
            if (++index[pos] < members.size()) {
                break;
            }
            index[pos] = 0;
            if (pos == 0) {
                return profile;
            }
        }
        for (std::size_t i = pos; i < t; ++i) {
            partial[i + 1] = (partial[i] + weights[i] * members[index[i]]) % m;
        }
    }
}

WeightedIndicator weighted_indicator(const ResidueSet& set, Int k)
{
    const Int m = set.modulus();
    if (k < 0 || k >= m) {
        throw RangeError("weight must be canonical, in [0, m)");
    }
    WeightedIndicator out{m, std::vector<Count>(static_cast<std::size_t>(m), 0)};
    for (Int a : set.members()) {
        ++out.counts[static_cast<std::size_t>((k * a) % m)];
    }
    return out;
}

std::vector<Count> cyclic_convolve(const std::vector<Count>& lhs, const std::vector<Count>& rhs)
{
    if (lhs.size() != rhs.size()) {
        throw ModulusMismatch("cyclic convolution needs sequences of equal length");
    }
    const std::size_t m = lhs.size();
    std::vector<Count> out(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        if (lhs[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t s = i + j < m ? i + j : i + j - m;
            out[s] += lhs[i] * rhs[j];
        }
    }
    return out;
}

RepProfile rep_convolution(const ResidueSet& set, const Instance& inst)
{
    require_same_modulus(set, inst);
    const auto& weights = inst.weights();
    std::vector<Count> acc = weighted_indicator(set, weights.front()).counts;
    for (std::size_t i = 1; i < weights.size(); ++i) {
        acc = cyclic_convolve(acc, weighted_indicator(set, weights[i]).counts);
    }
    return RepProfile{inst.modulus(), std::move(acc)};
}

Complex exp_sum(const ResidueSet& set, Int x)
{
    const Int m = set.modulus();
    return exp_sum_with(set.members(), m, x, unit_roots(m));
}

Complex spectral_gap(const ResidueSet& set, const Instance& inst, Int x)
{
    require_same_modulus(set, inst);
    require_pair(inst);
    const Int m = inst.modulus();
    return gap_at(set.members(), set.complement().members(), inst, mod_floor(x, m), unit_roots(m));
}

double rep_spectral(const ResidueSet& set, const Instance& inst, Int n)
{
    require_same_modulus(set, inst);
    require_pair(inst);
    const Int m = inst.modulus();
    const auto roots = unit_roots(m);
    const auto a = set.members();
    const Int n0 = mod_floor(n, m);
    Complex sum{0.0, 0.0};
    for (Int x = 0; x < m; ++x) {
        const Complex term = exp_sum_with(a, m, inst.weight(0) * x % m, roots)
            * exp_sum_with(a, m, inst.weight(1) * x % m, roots);
        sum += term * std::conj(roots[static_cast<std::size_t>((n0 * x) % m)]);
    }
    return sum.real() / static_cast<double>(m);
}

double rep_difference_spectral(const ResidueSet& set, const Instance& inst, Int n)
{
    require_same_modulus(set, inst);
    require_pair(inst);
    const Int m = inst.modulus();
    const auto roots = unit_roots(m);
    const Int n0 = mod_floor(n, m);
    const auto a = set.members();
    const auto b = set.complement().members();
    Complex sum{0.0, 0.0};
    for (Int x = 0; x < m; ++x) {
        sum += gap_at(a, b, inst, x, roots) * std::conj(roots[static_cast<std::size_t>((n0 * x) % m)]);
    }
    return sum.real() / static_cast<double>(m);
}

Complex divisor_filtered_exp_sum(const ResidueSet& set, Int k, Int l, Int n)
{
    const Int m = set.modulus();
    const auto roots = unit_roots(m);
    const auto members = set.members();
    const Int k0 = mod_floor(k, m);
    const Int l0 = mod_floor(l, m);
    const Int n0 = mod_floor(n, m);
    Complex sum{0.0, 0.0};
    for (Int x = 0; x < m; ++x) {
        if ((k0 * x) % m != 0) {
            continue;
        }
        sum += exp_sum_with(members, m, (l0 * x) % m, roots) * std::conj(roots[static_cast<std::size_t>((n0 * x) % m)]);
    }
    return sum;
}

Int divisor_filtered_count(const ResidueSet& set, Int k, Int l, Int n)
{
    const Int m = set.modulus();
    const Int g = gcd_mod(mod_floor(k, m), m);
    Int hits = 0;
    for (Int t : set.members()) {
        if (mod_floor(mod_floor(l, g) * t - n, g) == 0) {
            ++hits;
        }
    }
    return g * hits;
}

} // namespace repfn
