#include "repfn/search.hpp"

#include "repfn/characterization.hpp"
#include "repfn/errors.hpp"
#include "repfn/repfn.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <thread>

namespace repfn {
namespace {

using Clock = std::chrono::steady_clock;
using Mask = std::uint64_t;

unsigned resolve_workers(unsigned requested)
{
    if (requested != 0) {
        return requested;
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

void check_bound(const Instance& inst, Int default_bound, const SearchOptions& options)
{
    const Int bound = std::min(options.max_m.value_or(default_bound), kEncodingLimit);
    if (inst.modulus() > bound) {
        throw BoundExceeded("m=" + std::to_string(inst.modulus()) + " exceeds the search bound "
                            + std::to_string(bound));
    }
}

struct RangeResult {
    std::vector<Mask> hits;
    std::uint64_t count = 0;
};

// Runs `accept` over [0, 2^m) split into contiguous ranges. Results come back
// in range order, so concatenation is already ascending.
std::vector<RangeResult> sweep(Int m, unsigned workers, std::size_t cap, bool size_prefilter,
                               const std::function<bool(Mask)>& accept)
{
    const Mask end = Mask{1} << m;
    const auto chunks = static_cast<Mask>(std::min<Mask>(workers, end));
    std::vector<RangeResult> results(static_cast<std::size_t>(chunks));

    auto run = [&](Mask index) {
        const Mask lo = end / chunks * index + std::min(index, end % chunks);
        const Mask hi = lo + end / chunks + (index < end % chunks ? 1 : 0);
        auto& out = results[static_cast<std::size_t>(index)];
        for (Mask mask = lo; mask < hi; ++mask) {
            if (size_prefilter && 2 * std::popcount(mask) != m) {
                continue;
            }
            if (accept(mask)) {
                ++out.count;
                if (out.hits.size() < cap) {
                    out.hits.push_back(mask);
                }
            }
        }
    };

    if (chunks == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(chunks));
        for (Mask i = 0; i < chunks; ++i) {
            pool.emplace_back(run, i);
        }
    }
    return results;
}

void collect(SearchReport& report, std::vector<RangeResult> results, std::size_t cap)
{
    std::vector<Mask> all;
    for (auto& r : results) {
        report.count += r.count;
        all.insert(all.end(), r.hits.begin(), r.hits.end());
    }
    std::sort(all.begin(), all.end());
    if (all.size() > cap) {
        all.resize(cap);
    }
    report.truncated = report.count > all.size();
    const Int m = report.instance.modulus();
    report.witnesses.reserve(all.size());
    for (Mask mask : all) {
        report.witnesses.push_back(ResidueSet::from_mask(m, mask));
    }
}

} // namespace

std::string_view to_string(SearchMode mode) noexcept
{
    switch (mode) {
    case SearchMode::enumerate: return "enumerate";
    case SearchMode::pairs: return "pairs";
    case SearchMode::t_ary: return "t-ary";
    }
    return "unknown";
}

std::string_view to_string(BalanceTest test) noexcept
{
    switch (test) {
    case BalanceTest::oracle: return "oracle";
    case BalanceTest::predicate: return "predicate";
    case BalanceTest::refined: return "refined";
    }
    return "unknown";
}

std::optional<SearchMode> parse_search_mode(std::string_view text) noexcept
{
    for (auto mode : {SearchMode::enumerate, SearchMode::pairs, SearchMode::t_ary}) {
        if (to_string(mode) == text) {
            return mode;
        }
    }
    return std::nullopt;
}

std::optional<BalanceTest> parse_balance_test(std::string_view text) noexcept
{
    for (auto test : {BalanceTest::oracle, BalanceTest::predicate, BalanceTest::refined}) {
        if (to_string(test) == text) {
            return test;
        }
    }
    return std::nullopt;
}

SearchReport enumerate_balanced(const Instance& inst, BalanceTest test, const SearchOptions& options)
{
    if (inst.arity() != 2) {
        throw UsageError("enumeration needs exactly two weights");
    }
    check_bound(inst, test == BalanceTest::oracle ? kDefaultOracleBound : kDefaultPredicateBound, options);
    const auto start = Clock::now();
    const Int m = inst.modulus();

    std::function<bool(Mask)> accept;
    switch (test) {
    case BalanceTest::oracle:
        accept = [&](Mask mask) { return balanced_oracle(ResidueSet::from_mask(m, mask), inst); };
        break;
    case BalanceTest::predicate:
        accept = [&](Mask mask) { return balanced_predicate(ResidueSet::from_mask(m, mask), inst); };
        break;
    case BalanceTest::refined:
        accept = [&](Mask mask) { return balanced_predicate_refined(ResidueSet::from_mask(m, mask), inst); };
        break;
    }

    SearchReport report{.instance = inst, .mode = SearchMode::enumerate, .test = test};
    collect(report, sweep(m, resolve_workers(options.workers), options.witness_cap, options.size_prefilter, accept),
            options.witness_cap);
    report.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start);
    return report;
}

SearchReport pair_search(const Instance& inst, bool exclude_trivial, const SearchOptions& options)
{
    if (inst.arity() != 2) {
        throw UsageError("pair search needs exactly two weights");
    }
    check_bound(inst, kDefaultPairBound, options);
    const auto start = Clock::now();
    const Int m = inst.modulus();
    const Mask end = Mask{1} << m;
    const Mask full = end - 1;

    // Profile of every subset, filled in parallel by disjoint ranges.
    std::vector<std::vector<Count>> profiles(static_cast<std::size_t>(end));
    sweep(m, resolve_workers(options.workers), 0, false, [&](Mask mask) {
        profiles[static_cast<std::size_t>(mask)] = rep_convolution(ResidueSet::from_mask(m, mask), inst).counts;
        return false;
    });

    std::map<std::vector<Count>, std::vector<Mask>> classes;
    for (Mask mask = 0; mask < end; ++mask) {
        classes[profiles[static_cast<std::size_t>(mask)]].push_back(mask);
    }

    std::vector<std::pair<Mask, Mask>> pairs;
    std::uint64_t count = 0;
    for (const auto& [profile, members] : classes) {
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                if (exclude_trivial && members[j] == (full & ~members[i])) {
                    continue;
                }
                ++count;
                pairs.emplace_back(members[i], members[j]);
            }
        }
    }
    std::sort(pairs.begin(), pairs.end());

    SearchReport report{.instance = inst, .mode = SearchMode::pairs};
    report.count = count;
    if (pairs.size() > options.witness_cap) {
        pairs.resize(options.witness_cap);
    }
    report.truncated = report.count > pairs.size();
    for (auto [a, b] : pairs) {
        report.witness_pairs.emplace_back(ResidueSet::from_mask(m, a), ResidueSet::from_mask(m, b));
    }
    report.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start);
    return report;
}

SearchReport t_ary_balanced_search(const Instance& inst, const SearchOptions& options)
{
    if (inst.arity() < 3) {
        throw UsageError("t-ary search needs at least three weights, got " + std::to_string(inst.arity()));
    }
    check_bound(inst, kDefaultTaryBound, options);
    const auto start = Clock::now();
    const Int m = inst.modulus();

    auto accept = [&](Mask mask) {
        const ResidueSet set = ResidueSet::from_mask(m, mask);
        return rep_convolution(set, inst) == rep_convolution(set.complement(), inst);
    };

    SearchReport report{.instance = inst, .mode = SearchMode::t_ary};
    collect(report, sweep(m, resolve_workers(options.workers), options.witness_cap, options.size_prefilter, accept),
            options.witness_cap);
    report.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start);
    return report;
}

} // namespace repfn
