#pragma once

// Complement balance: A is balanced for (m, k1, k2) when
// r(A, n) = r(Z_m \ A, n) for every n in Z_m.

#include "repfn/core_arith.hpp"
#include "repfn/residue_set.hpp"

#include <cstdint>

namespace repfn {

/// True iff every residue class mod q holds exactly |A| / q members of A
/// (so false whenever q does not divide |A|). Throws UsageError unless q >= 1 and q | m.
bool is_uniform_mod(const ResidueSet& set, Int q);

/// The gcd/uniform-distribution characterization: m even, |A| = m/2 and A
/// uniformly distributed mod d = d1 d2 / d3^2.
///
/// Known to disagree with balanced_oracle at m = 12 for twelve weight pairs,
/// e.g. k = (4, 6) and A = {0,1,2,5,6,7}; see balanced_predicate_refined.
bool balanced_predicate(const ResidueSet& set, const Instance& inst);

/// m even, |A| = m/2, and A uniformly distributed mod d1/d3 and mod d2/d3
/// separately. Uniformity modulo two coprime moduli does not imply uniformity
/// modulo their product, which is where this differs from balanced_predicate.
bool balanced_predicate_refined(const ResidueSet& set, const Instance& inst);

/// Ground truth: compares the two representation profiles entry by entry.
bool balanced_oracle(const ResidueSet& set, const Instance& inst);

/// 2d | m. Exactly the condition for a size-m/2 set uniform mod d to exist.
bool exists_divisibility(const Instance& inst);

/// m even and either the weights share parity, or every even weight k has
/// v2(k) < v2(m). Independent restatement of exists_divisibility.
bool exists_parity(const Instance& inst);

/// Union over i = 1..d of {i + d l : l = 1..m/(2d)}, reduced mod m.
/// Throws NoBalancedSet when exists_divisibility is false.
ResidueSet canonical_balanced_set(const Instance& inst);

/// Exact binomial coefficient; throws std::overflow_error past 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// C(m/d, m/(2d))^d when exists_divisibility holds, else 0: the number of
/// sets accepted by balanced_predicate. Throws std::overflow_error past 64 bits.
std::uint64_t count_balanced(const Instance& inst);

/// Number of sets accepted by balanced_predicate_refined: sums, over all
/// d1' x d2' tables of per-class picks with the required row and column
/// totals, the product of binomials. Throws std::overflow_error past 64 bits.
std::uint64_t count_balanced_refined(const Instance& inst);

} // namespace repfn
