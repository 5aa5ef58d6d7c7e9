#include "repfn/characterization.hpp"

#include "repfn/errors.hpp"
#include "repfn/repfn.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

namespace repfn {
namespace {

void require_pair(const Instance& inst)
{
    if (inst.arity() != 2) {
        throw UsageError("characterization needs exactly two weights, got " + std::to_string(inst.arity()));
    }
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw std::overflow_error("count exceeds 64 bits");
    }
    return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) {
        throw std::overflow_error("count exceeds 64 bits");
    }
    return out;
}

bool half_sized(const ResidueSet& set)
{
    const Int m = set.modulus();
    return m % 2 == 0 && static_cast<Int>(set.size()) == m / 2;
}

} // namespace

bool is_uniform_mod(const ResidueSet& set, Int q)
{
    const Int m = set.modulus();
    if (q < 1 || m % q != 0) {
        throw UsageError("uniformity modulus must be a positive divisor of m");
    }
    const auto size = static_cast<Int>(set.size());
    if (size % q != 0) {
        return false;
    }
    std::vector<Int> per_class(static_cast<std::size_t>(q), 0);
    for (Int a : set.members()) {
        ++per_class[static_cast<std::size_t>(a % q)];
    }
    for (Int c : per_class) {
        if (c != size / q) {
            return false;
        }
    }
    return true;
}

bool balanced_predicate(const ResidueSet& set, const Instance& inst)
{
    require_pair(inst);
    if (set.modulus() != inst.modulus()) {
        throw ModulusMismatch("set and instance disagree on the modulus");
    }
    return half_sized(set) && is_uniform_mod(set, gcd_profile(inst).d);
}

bool balanced_predicate_refined(const ResidueSet& set, const Instance& inst)
{
    require_pair(inst);
    if (set.modulus() != inst.modulus()) {
        throw ModulusMismatch("set and instance disagree on the modulus");
    }
    const GcdProfile g = gcd_profile(inst);
    return half_sized(set) && is_uniform_mod(set, g.reduced1()) && is_uniform_mod(set, g.reduced2());
}

bool balanced_oracle(const ResidueSet& set, const Instance& inst)
{
    require_pair(inst);
    return rep_naive(set, inst) == rep_naive(set.complement(), inst);
}

bool exists_divisibility(const Instance& inst)
{
    return inst.modulus() % (2 * gcd_profile(inst).d) == 0;
}

bool exists_parity(const Instance& inst)
{
    require_pair(inst);
    const Int m = inst.modulus();
    if (m % 2 != 0) {
        return false;
    }
    const Int k1 = inst.weight(0);
    const Int k2 = inst.weight(1);
    if (k1 % 2 == k2 % 2) {
        return true;
    }
    const Valuation vm = v2(m);
    for (Int k : {k1, k2}) {
        if (k % 2 == 0 && !(v2(k) < vm)) {
            return false;
        }
    }
    return true;
}

ResidueSet canonical_balanced_set(const Instance& inst)
{
    if (!exists_divisibility(inst)) {
        throw NoBalancedSet("no balanced set exists for " + inst.to_string());
    }
    const Int m = inst.modulus();
    const Int d = gcd_profile(inst).d;
    ResidueSet out(m);
    for (Int i = 1; i <= d; ++i) {
        for (Int l = 1; l <= m / (2 * d); ++l) {
            out.insert((i + d * l) % m);
        }
    }
    return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    __extension__ using Wide = unsigned __int128;
    Wide acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // acc * (n - k + i) / i stays integral at every step.
        acc = acc * (n - k + i) / i;
        if (acc > std::numeric_limits<std::uint64_t>::max()) {
            throw std::overflow_error("binomial exceeds 64 bits");
        }
    }
    return static_cast<std::uint64_t>(acc);
}

std::uint64_t count_balanced(const Instance& inst)
{
    if (!exists_divisibility(inst)) {
        return 0;
    }
    const auto m = static_cast<std::uint64_t>(inst.modulus());
    const auto d = static_cast<std::uint64_t>(gcd_profile(inst).d);
    const std::uint64_t per_class = binomial(m / d, m / (2 * d));
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < d; ++i) {
        out = checked_mul(out, per_class);
    }
    return out;
}

std::uint64_t count_balanced_refined(const Instance& inst)
{
    require_pair(inst);
    const Int m = inst.modulus();
    const GcdProfile g = gcd_profile(inst);
    const Int rows = g.reduced1();
    const Int cols = g.reduced2();
    if (m % 2 != 0 || (m / 2) % rows != 0 || (m / 2) % cols != 0) {
        return 0;
    }
    // Classes mod rows*cols correspond (CRT) to cells (r mod rows, r mod cols);
    // each holds m/(rows*cols) residues. Row totals are m/(2 rows), column totals m/(2 cols).
    const Int cell = m / (rows * cols);
    const Int row_total = m / (2 * rows);
    const Int col_total = m / (2 * cols);

    std::vector<std::uint64_t> ways(static_cast<std::size_t>(cell + 1));
    for (Int x = 0; x <= cell; ++x) {
        ways[static_cast<std::size_t>(x)] = binomial(static_cast<std::uint64_t>(cell), static_cast<std::uint64_t>(x));
    }

    // DP over rows; state is the vector of column totals so far.
    std::map<std::vector<Int>, std::uint64_t> states{{std::vector<Int>(static_cast<std::size_t>(cols), 0), 1}};
    for (Int r = 0; r < rows; ++r) {
        std::map<std::vector<Int>, std::uint64_t> next;
        for (const auto& [sums, weight] : states) {
            // Enumerate one row: picks per column with the row total fixed.
            std::vector<Int> pick(static_cast<std::size_t>(cols), 0);
            auto fill = [&](auto&& self, Int col, Int remaining, std::uint64_t product) -> void {
                if (col == cols - 1) {
                    const auto c = static_cast<std::size_t>(col);
                    if (remaining > cell || sums[c] + remaining > col_total) {
                        return;
                    }
                    std::vector<Int> out = sums;
                    for (std::size_t j = 0; j + 1 < out.size(); ++j) {
                        out[j] += pick[j];
                    }
                    out[c] += remaining;
                    auto& slot = next[out];
                    slot = checked_add(slot, checked_mul(weight, checked_mul(product, ways[static_cast<std::size_t>(remaining)])));
                    return;
                }
                const auto c = static_cast<std::size_t>(col);
                for (Int x = 0; x <= std::min(cell, remaining); ++x) {
                    if (sums[c] + x > col_total) {
                        break;
                    }
                    pick[c] = x;
                    self(self, col + 1, remaining - x, checked_mul(product, ways[static_cast<std::size_t>(x)]));
                }
            };
            fill(fill, 0, row_total, 1);
        }
        states = std::move(next);
    }
    const auto done = states.find(std::vector<Int>(static_cast<std::size_t>(cols), col_total));
    return done == states.end() ? 0 : done->second;
}

} // namespace repfn
