#pragma once

// Bounded exhaustive searches over subsets of Z_m. A subset is encoded as an
// m-bit integer (bit a set iff a is a member); the space [0, 2^m) is split
// into contiguous ranges, one per worker, and witnesses are reported in
// ascending bit-pattern order regardless of the worker count.

#include "repfn/core_arith.hpp"
#include "repfn/residue_set.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace repfn {

enum class SearchMode { enumerate, pairs, t_ary };

/// How enumerate_balanced decides balance.
enum class BalanceTest {
    oracle,    // compare representation profiles directly
    predicate, // balanced_predicate
    refined,   // balanced_predicate_refined
};

std::string_view to_string(SearchMode mode) noexcept;
std::string_view to_string(BalanceTest test) noexcept;
std::optional<SearchMode> parse_search_mode(std::string_view text) noexcept;
std::optional<BalanceTest> parse_balance_test(std::string_view text) noexcept;

inline constexpr Int kDefaultOracleBound = 16;
inline constexpr Int kDefaultPredicateBound = 24;
inline constexpr Int kDefaultPairBound = 8;
inline constexpr Int kDefaultTaryBound = 12;
/// Largest m the bit-pattern sweep can represent.
inline constexpr Int kEncodingLimit = 62;

struct SearchOptions {
    /// 0 means std::thread::hardware_concurrency().
    unsigned workers = 1;
    std::size_t witness_cap = 1'000'000;
    /// Replaces the mode's default bound; still capped by kEncodingLimit.
    std::optional<Int> max_m;
    /// Skip |A| != m/2 before testing. Sound for every search here since
    /// equal profiles force |A|^t = |B|^t.
    bool size_prefilter = true;
};

struct SearchReport {
    Instance instance;
    SearchMode mode = SearchMode::enumerate;
    std::optional<BalanceTest> test{};
    std::vector<ResidueSet> witnesses{};
    std::vector<std::pair<ResidueSet, ResidueSet>> witness_pairs{};
    /// Exact number of witnesses found, even when the retained list is truncated.
    std::uint64_t count = 0;
    std::chrono::microseconds elapsed{0};
    bool exhaustive = true;
    bool truncated = false;

    bool found() const noexcept { return count > 0; }

    friend bool operator==(const SearchReport&, const SearchReport&) = default;
};

/// Every A with r(A, .) = r(complement A, .), decided by `test`.
/// Throws BoundExceeded above the bound (16 for oracle, 24 otherwise, unless overridden).
SearchReport enumerate_balanced(const Instance& inst, BalanceTest test, const SearchOptions& options = {});

/// Unordered pairs {A, B}, A != B, with identical profiles, listed as (A, B)
/// with A < B in bit-pattern order. With exclude_trivial, pairs where B is the
/// complement of A are dropped. Default bound m <= 8.
SearchReport pair_search(const Instance& inst, bool exclude_trivial, const SearchOptions& options = {});

/// Complement-balanced sets for t >= 3 weights. Default bound m <= 12.
/// Throws UsageError for t < 3.
SearchReport t_ary_balanced_search(const Instance& inst, const SearchOptions& options = {});

} // namespace repfn
