// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include "repfn/characterization.hpp"
#include "repfn/repfn.hpp"
#include "repfn/report_json.hpp"
#include "repfn/search.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace repfn;

namespace {

using Clock = std::chrono::steady_clock;
using Mask = std::uint64_t;

constexpr double kSpectralTolerance = 1e-6;
constexpr double kZeroTolerance = 1e-9;

struct Outcome {
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    std::string first;

    void expect(bool ok, const std::function<std::string()>& describe)
    {
        ++cases;
        if (!ok) {
            if (failures++ == 0) {
                first = describe();
            }
        }
    }
};

int g_failed = 0;

void criterion(const char* id, const char* title, double time_limit_s, const std::function<Outcome()>& body)
{
    const auto start = Clock::now();
    const Outcome o = body();
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    const bool in_time = seconds < time_limit_s;
    const bool pass = o.failures == 0 && in_time;
    g_failed += pass ? 0 : 1;
    std::printf("[%s] %s %s: cases=%llu failures=%llu time=%.2fs (limit %.0fs)%s\n", pass ? "PASS" : "FAIL", id, title,
                static_cast<unsigned long long>(o.cases), static_cast<unsigned long long>(o.failures), seconds,
                time_limit_s, in_time ? "" : " TIME EXCEEDED");
    if (o.failures != 0) {
        std::printf("       first failure: %s\n", o.first.c_str());
    }
    std::fflush(stdout);
}

std::string where(const Instance& inst, const ResidueSet& set)
{
    return inst.to_string() + " A=" + set.to_string();
}

ResidueSet random_set(Int m, std::mt19937_64& rng)
{
    ResidueSet set(m);
    for (Int a = 0; a < m; ++a) {
        if (rng() & 1U) {
            set.insert(a);
        }
    }
    return set;
}

Instance random_pair_instance(Int lo, Int hi, std::mt19937_64& rng)
{
    const Int m = std::uniform_int_distribution<Int>(lo, hi)(rng);
    std::uniform_int_distribution<Int> w(0, m - 1);
    return canonicalize(m, {w(rng), w(rng)});
}

SearchOptions bounded(Int m, unsigned workers = 1)
{
    SearchOptions o;
    o.max_m = m;
    o.workers = workers;
    return o;
}

Outcome theorem_exhaustive()
{
    Outcome o;
    for (Int m = 2; m <= 12; ++m) {
        for (Int k1 = 0; k1 < m; ++k1) {
            for (Int k2 = 0; k2 < m; ++k2) {
                const Instance inst = canonicalize(m, {k1, k2});
                for (Mask mask = 0; mask < (Mask{1} << m); ++mask) {
                    const ResidueSet set = ResidueSet::from_mask(m, mask);
                    const bool predicate = balanced_predicate(set, inst);
                    const bool oracle = balanced_oracle(set, inst);
                    o.expect(predicate == oracle, [&] {
                        return where(inst, set) + " predicate=" + (predicate ? "true" : "false")
                            + " oracle=" + (oracle ? "true" : "false");
                    });
                }
            }
        }
    }
    return o;
}

Outcome corollary_equivalence()
{
    Outcome o;
    for (Int m = 2; m <= 64; ++m) {
        for (Int k1 = 0; k1 < m; ++k1) {
            for (Int k2 = 0; k2 < m; ++k2) {
                const Instance inst = canonicalize(m, {k1, k2});
                const bool divisibility = exists_divisibility(inst);
                o.expect(exists_parity(inst) == divisibility, [&] { return inst.to_string() + " parity != divisibility"; });
                if (m <= 12) {
                    const bool found = enumerate_balanced(inst, BalanceTest::oracle, bounded(m)).found();
                    o.expect(found == divisibility, [&] { return inst.to_string() + " enumeration disagrees"; });
                }
            }
        }
    }
    return o;
}

Outcome counting()
{
    Outcome o;
    for (Int m = 2; m <= 12; ++m) {
        for (Int k1 = 0; k1 < m; ++k1) {
            for (Int k2 = 0; k2 < m; ++k2) {
                const Instance inst = canonicalize(m, {k1, k2});
                const auto enumerated = enumerate_balanced(inst, BalanceTest::oracle, bounded(m)).count;
                const auto formula = count_balanced(inst);
                o.expect(enumerated == formula, [&] {
                    return inst.to_string() + " formula=" + std::to_string(formula) + " enumeration=" + std::to_string(enumerated);
                });
            }
        }
    }
    const std::vector<std::pair<Instance, std::uint64_t>> anchors{
        {canonicalize(4, {1, 2}), 4}, {canonicalize(6, {1, 1}), 20}, {canonicalize(12, {4, 6}), 64}};
    for (const auto& [inst, expected] : anchors) {
        const auto formula = count_balanced(inst);
        const auto enumerated = enumerate_balanced(inst, BalanceTest::oracle, bounded(inst.modulus())).count;
        o.expect(formula == expected && enumerated == expected, [&] {
            return "anchor " + inst.to_string() + " expected " + std::to_string(expected) + ", formula="
                + std::to_string(formula) + " enumeration=" + std::to_string(enumerated);
        });
    }
    return o;
}

Outcome route_equivalence()
{
    Outcome o;
    std::mt19937_64 rng(20240601);
    for (int i = 0; i < 1000; ++i) {
        const Instance inst = random_pair_instance(2, 64, rng);
        const ResidueSet set = random_set(inst.modulus(), rng);
        o.expect(rep_convolution(set, inst) == rep_naive(set, inst), [&] { return "convolution " + where(inst, set); });
    }
    for (int i = 0; i < 1000; ++i) {
        const Instance inst = random_pair_instance(2, 32, rng);
        const ResidueSet set = random_set(inst.modulus(), rng);
        const RepProfile exact = rep_naive(set, inst);
        double worst = 0.0;
        for (Int n = 0; n < inst.modulus(); ++n) {
            worst = std::max(worst, std::abs(rep_spectral(set, inst, n) - static_cast<double>(exact.counts[static_cast<std::size_t>(n)])));
        }
        o.expect(worst < kSpectralTolerance, [&] { return "spectral " + where(inst, set) + " residual " + std::to_string(worst); });
    }
    return o;
}

void lemma_checks(Outcome& o, const ResidueSet& set, const Instance& inst)
{
    const Int m = inst.modulus();
    const Int k1 = inst.weight(0);
    const Int k2 = inst.weight(1);
    const bool half = 2 * static_cast<Int>(set.size()) == m;
    for (Int x = 0; x < m; ++x) {
        const bool kills1 = k1 * x % m == 0;
        const bool kills2 = k2 * x % m == 0;
        if (!kills1 && !kills2) {
            o.expect(std::abs(spectral_gap(set, inst, x)) < kZeroTolerance,
                     [&] { return "gap off the annihilators " + where(inst, set) + " x=" + std::to_string(x); });
        }
        if (kills1 && kills2 && half) {
            o.expect(std::abs(spectral_gap(set, inst, x)) < kZeroTolerance,
                     [&] { return "gap at common annihilator " + where(inst, set) + " x=" + std::to_string(x); });
        }
    }
    const RepProfile a = rep_naive(set, inst);
    const RepProfile b = rep_naive(set.complement(), inst);
    for (Int n = 0; n < m; ++n) {
        const auto idx = static_cast<std::size_t>(n);
        const double diff = static_cast<double>(a.counts[idx]) - static_cast<double>(b.counts[idx]);
        o.expect(std::abs(rep_difference_spectral(set, inst, n) - diff) < kSpectralTolerance,
                 [&] { return "difference identity " + where(inst, set) + " n=" + std::to_string(n); });
    }
}

void filtered_sum_check(Outcome& o, const ResidueSet& set, Int k, Int l, Int n)
{
    const Complex lhs = divisor_filtered_exp_sum(set, k, l, n);
    const auto rhs = static_cast<double>(divisor_filtered_count(set, k, l, n));
    o.expect(std::abs(lhs - Complex(rhs, 0.0)) < kSpectralTolerance, [&] {
        std::ostringstream os;
        os << "filtered sum T=" << set.to_string() << " m=" << set.modulus() << " k=" << k << " l=" << l << " n=" << n;
        return os.str();
    });
}

Outcome lemma_suite()
{
    Outcome o;
    for (Int m = 2; m <= 10; ++m) {
        for (Mask mask = 0; mask < (Mask{1} << m); ++mask) {
            const ResidueSet set = ResidueSet::from_mask(m, mask);
            for (Int k1 = 0; k1 < m; ++k1) {
                for (Int k2 = 0; k2 < m; ++k2) {
                    lemma_checks(o, set, canonicalize(m, {k1, k2}));
                }
            }
            for (Int k = 0; k < m; ++k) {
                for (Int l = 0; l < m; ++l) {
                    for (Int n = 0; n < m; ++n) {
                        filtered_sum_check(o, set, k, l, n);
                    }
                }
            }
        }
    }
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        const Instance inst = random_pair_instance(11, 32, rng);
        const Int m = inst.modulus();
        lemma_checks(o, random_set(m, rng), inst);
        if (m % 2 == 0) {
            std::vector<Int> all(static_cast<std::size_t>(m));
            for (Int a = 0; a < m; ++a) {
                all[static_cast<std::size_t>(a)] = a;
            }
            std::shuffle(all.begin(), all.end(), rng);
            lemma_checks(o, ResidueSet::from_members(m, std::span<const Int>(all.data(), all.size() / 2)), inst);
        }
        std::uniform_int_distribution<Int> any(-2 * m, 2 * m);
        const ResidueSet t = random_set(m, rng);
        for (int j = 0; j < 20; ++j) {
            filtered_sum_check(o, t, any(rng), any(rng), any(rng));
        }
    }
    return o;
}

Outcome construction()
{
    Outcome o;
    for (Int m = 2; m <= 64; ++m) {
        for (Int k1 = 0; k1 < m; ++k1) {
            for (Int k2 = 0; k2 < m; ++k2) {
                const Instance inst = canonicalize(m, {k1, k2});
                if (!exists_divisibility(inst)) {
                    continue;
                }
                const ResidueSet set = canonical_balanced_set(inst);
                o.expect(balanced_predicate(set, inst), [&] { return "predicate rejects " + where(inst, set); });
                if (m <= 12) {
                    o.expect(balanced_oracle(set, inst), [&] { return "oracle rejects " + where(inst, set); });
                }
            }
        }
    }
    return o;
}

Outcome determinism()
{
    Outcome o;
    for (const Instance& inst : {canonicalize(12, {4, 6}), canonicalize(10, {1, 1})}) {
        auto bytes = [&](unsigned workers) {
            json list = json::array();
            for (const auto& w : enumerate_balanced(inst, BalanceTest::oracle, bounded(inst.modulus(), workers)).witnesses) {
                list.push_back(to_json(w));
            }
            return list.dump();
        };
        const std::string reference = bytes(1);
        for (unsigned workers : {2U, 8U}) {
            o.expect(bytes(workers) == reference, [&] { return inst.to_string() + " workers=" + std::to_string(workers); });
        }
        o.expect(bytes(1) == reference, [&] { return inst.to_string() + " repeated single-worker run"; });
    }
    return o;
}

Outcome exploratory()
{
    Outcome o;
    const auto zero = ResidueSet::from_members(2, {0});
    const auto one = ResidueSet::from_members(2, {1});
    const auto pairs = pair_search(canonicalize(2, {1, 1}), false).witness_pairs;
    o.expect(std::find(pairs.begin(), pairs.end(), std::pair{zero, one}) != pairs.end(),
             [] { return "pair ({0},{1}) missing for m=2 k=[1,1]"; });
    const auto with = t_ary_balanced_search(canonicalize(2, {1, 1, 2})).witnesses;
    o.expect(std::find(with.begin(), with.end(), zero) != with.end(), [] { return "{0} not found for m=2 k=[1,1,2]"; });
    o.expect(t_ary_balanced_search(canonicalize(2, {1, 1, 1})).count == 0, [] { return "witness found for m=2 k=[1,1,1]"; });
    return o;
}

// Supplementary: uniformity mod d1/d3 and mod d2/d3 separately, against the
// same brute force as A1 and A3. Reported, not gating.
Outcome refined_characterization()
{
    Outcome o;
    for (Int m = 2; m <= 12; ++m) {
        for (Int k1 = 0; k1 < m; ++k1) {
            for (Int k2 = 0; k2 < m; ++k2) {
                const Instance inst = canonicalize(m, {k1, k2});
                for (Mask mask = 0; mask < (Mask{1} << m); ++mask) {
                    const ResidueSet set = ResidueSet::from_mask(m, mask);
                    o.expect(balanced_predicate_refined(set, inst) == balanced_oracle(set, inst),
                             [&] { return "refined " + where(inst, set); });
                }
                const auto enumerated = enumerate_balanced(inst, BalanceTest::oracle, bounded(m)).count;
                o.expect(count_balanced_refined(inst) == enumerated, [&] { return "refined count " + inst.to_string(); });
            }
        }
    }
    return o;
}

} // namespace

int main()
{
    criterion("A1", "characterization vs brute force, m<=12", 60, theorem_exhaustive);
    criterion("A2", "existence criteria equivalence, m<=64", 5, corollary_equivalence);
    criterion("A3", "balanced-set counting vs enumeration, m<=12", 60, counting);
    criterion("A4", "representation route equivalence", 10, route_equivalence);
    criterion("A5", "exponential-sum identities", 30, lemma_suite);
    criterion("A6", "canonical construction validity, m<=64", 10, construction);
    criterion("A7", "determinism across worker counts", 30, determinism);
    criterion("A8", "exploratory search regression", 5, exploratory);

    const int gating_failures = g_failed;
    criterion("S1", "(supplementary, not gating) split-uniformity characterization and count, m<=12", 60,
              refined_characterization);
    g_failed = gating_failures;

    std::printf("%s: %d criterion(s) failed\n", g_failed == 0 ? "ACCEPTED" : "REJECTED", g_failed);
    return g_failed == 0 ? 0 : 1;
}
