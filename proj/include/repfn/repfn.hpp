#pragma once

// Weighted representation counts on Z_m:
//   r(A, n) = #{(a_1, ..., a_t) in A^t : k_1 a_1 + ... + k_t a_t = n (mod m)}
// computed by three independent routes (tuple enumeration, exact cyclic
// convolution, discrete Fourier sums), plus the exponential-sum identities
// that tie the Fourier route to the counts.

#include "repfn/core_arith.hpp"
#include "repfn/residue_set.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace repfn {

using Count = std::uint64_t;
using Complex = std::complex<double>;

/// counts[n] = r(A, n) for n in [0, m).
struct RepProfile {
    Int m = 0;
    std::vector<Count> counts;

    Count total() const noexcept;

    friend bool operator==(const RepProfile&, const RepProfile&) = default;
};

/// counts[j] = #{a in A : k a = j (mod m)}.
struct WeightedIndicator {
    Int m = 0;
    std::vector<Count> counts;
};

/// Ordered t-tuple enumeration, O(|A|^t). Throws ModulusMismatch.
RepProfile rep_naive(const ResidueSet& set, const Instance& inst);

/// Pushforward of the indicator of A under a -> k a. Requires 0 <= k < m.
WeightedIndicator weighted_indicator(const ResidueSet& set, Int k);

/// Length-m cyclic convolution of exact integer sequences.
std::vector<Count> cyclic_convolve(const std::vector<Count>& lhs, const std::vector<Count>& rhs);

/// Iterated cyclic convolution of the t weighted indicators, O(t m^2).
/// Identical to rep_naive on every input. Throws ModulusMismatch.
RepProfile rep_convolution(const ResidueSet& set, const Instance& inst);

/// S_T(x) = sum_{t in T} e^{2 pi i t x / m}; x is read mod m.
Complex exp_sum(const ResidueSet& set, Int x);

/// S_A(k1 x) S_A(k2 x) - S_B(k1 x) S_B(k2 x), B the complement of A.
/// Vanishes wherever the complement-balance identity has no contribution.
Complex spectral_gap(const ResidueSet& set, const Instance& inst, Int x);

/// (1/m) sum_x S_A(k1 x) S_A(k2 x) e^{-2 pi i n x / m}, real part.
/// Agrees with rep_naive(A)[n] to within 1e-6 at desk scale.
double rep_spectral(const ResidueSet& set, const Instance& inst, Int n);

/// (1/m) sum_x spectral_gap(A, x) e^{-2 pi i n x / m}, real part;
/// equals r(A, n) - r(complement A, n).
double rep_difference_spectral(const ResidueSet& set, const Instance& inst, Int n);

/// sum over x in [0, m) with m | k x of S_T(l x) e^{-2 pi i n x / m}.
Complex divisor_filtered_exp_sum(const ResidueSet& set, Int k, Int l, Int n);

/// (k, m) * #{t in T : (k, m) | l t - n}. Equal to divisor_filtered_exp_sum.
Int divisor_filtered_count(const ResidueSet& set, Int k, Int l, Int n);

} // namespace repfn
