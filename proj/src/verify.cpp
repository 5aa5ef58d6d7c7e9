#include "repfn/verify.hpp"

#include "repfn/characterization.hpp"
#include "repfn/errors.hpp"
#include "repfn/repfn.hpp"
#include "repfn/search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <random>
#include <thread>

namespace repfn {
namespace {

using Clock = std::chrono::steady_clock;

constexpr double kSpectralTolerance = 1e-6;
constexpr double kZeroTolerance = 1e-9;

class Recorder {
public:
    explicit Recorder(std::string name) { result_.name = std::move(name); }

    void expect(bool ok, const std::function<std::string()>& describe)
    {
        std::lock_guard lock(mu_);
        ++result_.cases;
        if (!ok) {
            if (result_.failures == 0) {
                result_.first_counterexample = describe();
            }
            ++result_.failures;
        }
    }

    CheckResult finish()
    {
        result_.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start_);
        return result_;
    }

private:
    std::mutex mu_;
    CheckResult result_;
    Clock::time_point start_ = Clock::now();
};

std::vector<std::pair<Int, Int>> weight_pairs(Int m)
{
    std::vector<std::pair<Int, Int>> out;
    for (Int k1 = 0; k1 < m; ++k1) {
        for (Int k2 = 0; k2 < m; ++k2) {
            out.emplace_back(k1, k2);
        }
    }
    return out;
}

// Runs body(i) for i in [0, n) across `workers` threads, striding.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body)
{
    workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) {
                body(i);
            }
        });
    }
}

std::string describe_set(const Instance& inst, const ResidueSet& set)
{
    return inst.to_string() + " A=" + set.to_string();
}

CheckResult check_theorem(const VerifyOptions& o, Int top, bool refined)
{
    Recorder rec(refined ? "theorem_refined" : "theorem");
    for (Int m = 2; m <= top; ++m) {
        const auto pairs = weight_pairs(m);
        parallel_for(pairs.size(), o.workers, [&](std::size_t i) {
            const Instance inst = canonicalize(m, {pairs[i].first, pairs[i].second});
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
                const ResidueSet set = ResidueSet::from_mask(m, mask);
                const bool oracle = balanced_oracle(set, inst);
                const bool claimed = refined ? balanced_predicate_refined(set, inst) : balanced_predicate(set, inst);
                rec.expect(oracle == claimed, [&] {
                    return describe_set(inst, set) + " oracle=" + (oracle ? "true" : "false")
                        + " predicate=" + (claimed ? "true" : "false");
                });
            }
        });
    }
    return rec.finish();
}

CheckResult check_corollary(const VerifyOptions& o, Int top)
{
    Recorder rec("corollary");
    for (Int m = 2; m <= o.max_m; ++m) {
        for (auto [k1, k2] : weight_pairs(m)) {
            const Instance inst = canonicalize(m, {k1, k2});
            const bool divisibility = exists_divisibility(inst);
            const bool parity = exists_parity(inst);
            rec.expect(divisibility == parity, [&] {
                return inst.to_string() + " divisibility=" + (divisibility ? "true" : "false");
            });
            if (m <= top) {
                SearchOptions so;
                so.max_m = m;
                const bool any = enumerate_balanced(inst, BalanceTest::oracle, so).found();
                rec.expect(any == divisibility, [&] {
                    return inst.to_string() + " enumeration found=" + (any ? "true" : "false");
                });
            }
        }
    }
    return rec.finish();
}

CheckResult check_counting(const VerifyOptions& o, Int top, bool refined)
{
    Recorder rec(refined ? "counting_refined" : "counting");
    for (Int m = 2; m <= top; ++m) {
        const auto pairs = weight_pairs(m);
        parallel_for(pairs.size(), o.workers, [&](std::size_t i) {
            const Instance inst = canonicalize(m, {pairs[i].first, pairs[i].second});
            SearchOptions so;
            so.max_m = m;
            const auto enumerated = enumerate_balanced(inst, BalanceTest::oracle, so).count;
            const auto formula = refined ? count_balanced_refined(inst) : count_balanced(inst);
            rec.expect(enumerated == formula, [&] {
                return inst.to_string() + " formula=" + std::to_string(formula)
                    + " enumeration=" + std::to_string(enumerated);
            });
        });
    }
    return rec.finish();
}

ResidueSet random_set(Int m, std::mt19937_64& rng)
{
    ResidueSet set(m);
    std::bernoulli_distribution coin(0.5);
    for (Int a = 0; a < m; ++a) {
        if (coin(rng)) {
            set.insert(a);
        }
    }
    return set;
}

CheckResult check_routes(const VerifyOptions& o)
{
    Recorder rec("routes");
    std::mt19937_64 rng(o.seed);
    const Int spectral_top = std::min<Int>(o.max_m, 32);
    for (std::size_t i = 0; i < o.samples; ++i) {
        const Int m = std::uniform_int_distribution<Int>(2, o.max_m)(rng);
        std::uniform_int_distribution<Int> weight(0, m - 1);
        const Instance inst = canonicalize(m, {weight(rng), weight(rng)});
        const ResidueSet set = random_set(m, rng);
        rec.expect(rep_naive(set, inst) == rep_convolution(set, inst),
                   [&] { return "convolution " + describe_set(inst, set); });
    }
    for (std::size_t i = 0; i < o.samples; ++i) {
        const Int m = std::uniform_int_distribution<Int>(2, spectral_top)(rng);
        std::uniform_int_distribution<Int> weight(0, m - 1);
        const Instance inst = canonicalize(m, {weight(rng), weight(rng)});
        const ResidueSet set = random_set(m, rng);
        const RepProfile exact = rep_naive(set, inst);
        for (Int n = 0; n < m; ++n) {
            const double spectral = rep_spectral(set, inst, n);
            const double exact_n = static_cast<double>(exact.counts[static_cast<std::size_t>(n)]);
            rec.expect(std::abs(spectral - exact_n) < kSpectralTolerance, [&] {
                return "spectral " + describe_set(inst, set) + " n=" + std::to_string(n);
            });
        }
    }
    return rec.finish();
}

// Lemma checks for one (A, k1, k2): gap vanishing, filtered sums, and the
// difference identity for every n.
void lemma_case(Recorder& rec, const ResidueSet& set, const Instance& inst)
{
    const Int m = inst.modulus();
    const Int k1 = inst.weight(0);
    const Int k2 = inst.weight(1);
    const RepProfile a = rep_naive(set, inst);
    const RepProfile b = rep_naive(set.complement(), inst);
    for (Int x = 0; x < m; ++x) {
        const bool kills1 = (k1 * x) % m == 0;
        const bool kills2 = (k2 * x) % m == 0;
        if (!kills1 && !kills2) {
            rec.expect(std::abs(spectral_gap(set, inst, x)) < kZeroTolerance,
                       [&] { return "gap off-support " + describe_set(inst, set) + " x=" + std::to_string(x); });
        }
        if (kills1 && kills2 && 2 * static_cast<Int>(set.size()) == m) {
            rec.expect(std::abs(spectral_gap(set, inst, x)) < kZeroTolerance,
                       [&] { return "gap half-size " + describe_set(inst, set) + " x=" + std::to_string(x); });
        }
    }
    for (Int n = 0; n < m; ++n) {
        const double diff = static_cast<double>(a.counts[static_cast<std::size_t>(n)])
            - static_cast<double>(b.counts[static_cast<std::size_t>(n)]);
        rec.expect(std::abs(rep_difference_spectral(set, inst, n) - diff) < kSpectralTolerance,
                   [&] { return "difference identity " + describe_set(inst, set) + " n=" + std::to_string(n); });
        // Filtered-sum identity with (k, l) drawn from the instance weights.
        for (auto [k, l] : {std::pair{k1, k2}, std::pair{k2, k1}}) {
            const Complex lhs = divisor_filtered_exp_sum(set, k, l, n);
            const auto rhs = static_cast<double>(divisor_filtered_count(set, k, l, n));
            rec.expect(std::abs(lhs - Complex(rhs, 0.0)) < kSpectralTolerance, [&] {
                return "filtered sum " + set.to_string() + " m=" + std::to_string(m) + " k=" + std::to_string(k)
                    + " l=" + std::to_string(l) + " n=" + std::to_string(n);
            });
        }
    }
}

CheckResult check_lemmas(const VerifyOptions& o)
{
    Recorder rec("lemmas");
    const Int exhaustive_top = std::min<Int>({o.max_m, 10, o.exhaustive_limit});
    for (Int m = 2; m <= exhaustive_top; ++m) {
        const auto pairs = weight_pairs(m);
        parallel_for(pairs.size(), o.workers, [&](std::size_t i) {
            const Instance inst = canonicalize(m, {pairs[i].first, pairs[i].second});
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
                lemma_case(rec, ResidueSet::from_mask(m, mask), inst);
            }
        });
    }
    if (o.max_m > exhaustive_top) {
        std::mt19937_64 rng(o.seed ^ 0x9e3779b97f4a7c15ULL);
        const Int sample_top = std::min<Int>(o.max_m, 32);
        for (std::size_t i = 0; i < o.samples / 4; ++i) {
            const Int m = std::uniform_int_distribution<Int>(exhaustive_top + 1, std::max(exhaustive_top + 1, sample_top))(rng);
            std::uniform_int_distribution<Int> weight(0, m - 1);
            const Instance inst = canonicalize(m, {weight(rng), weight(rng)});
            ResidueSet set = random_set(m, rng);
            lemma_case(rec, set, inst);
            // Force a half-size set so the vanishing-at-support case is exercised.
            if (m % 2 == 0) {
                std::vector<Int> all(static_cast<std::size_t>(m));
                for (Int a = 0; a < m; ++a) {
                    all[static_cast<std::size_t>(a)] = a;
                }
                std::shuffle(all.begin(), all.end(), rng);
                lemma_case(rec, ResidueSet::from_members(m, std::span<const Int>(all.data(), all.size() / 2)), inst);
            }
        }
    }
    return rec.finish();
}

CheckResult check_construction(const VerifyOptions& o, Int top)
{
    Recorder rec("construction");
    for (Int m = 2; m <= o.max_m; ++m) {
        for (auto [k1, k2] : weight_pairs(m)) {
            const Instance inst = canonicalize(m, {k1, k2});
            if (!exists_divisibility(inst)) {
                continue;
            }
            const ResidueSet set = canonical_balanced_set(inst);
            rec.expect(balanced_predicate(set, inst), [&] { return "predicate " + describe_set(inst, set); });
            if (m <= top) {
                rec.expect(balanced_oracle(set, inst), [&] { return "oracle " + describe_set(inst, set); });
            }
        }
    }
    return rec.finish();
}

CheckResult check_determinism(Int top)
{
    Recorder rec("determinism");
    std::vector<Instance> instances;
    for (Int m : {Int{12}, Int{10}}) {
        if (m <= top) {
            instances.push_back(canonicalize(m, m == 12 ? std::initializer_list<Int>{4, 6} : std::initializer_list<Int>{1, 1}));
        }
    }
    if (instances.empty()) {
        const Int m = top - top % 2;
        if (m >= 2) {
            instances.push_back(canonicalize(m, {1, 1}));
        }
    }
    for (const Instance& inst : instances) {
        SearchOptions base;
        base.max_m = inst.modulus();
        base.workers = 1;
        const auto reference = enumerate_balanced(inst, BalanceTest::oracle, base).witnesses;
        for (unsigned workers : {2U, 8U}) {
            SearchOptions so = base;
            so.workers = workers;
            const auto witnesses = enumerate_balanced(inst, BalanceTest::oracle, so).witnesses;
            rec.expect(witnesses == reference,
                       [&] { return inst.to_string() + " workers=" + std::to_string(workers); });
        }
    }
    return rec.finish();
}

} // namespace

bool VerifyReport::passed() const noexcept
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

const CheckResult* VerifyReport::first_failure() const noexcept
{
    for (const auto& c : checks) {
        if (!c.passed()) {
            return &c;
        }
    }
    return nullptr;
}

const std::vector<std::string>& check_names()
{
    static const std::vector<std::string> names{"theorem", "theorem_refined", "corollary", "counting",
                                                "counting_refined", "routes", "lemmas", "construction",
                                                "determinism"};
    return names;
}

VerifyReport run_verify(const VerifyOptions& options)
{
    if (options.max_m < 2) {
        throw UsageError("--max-m must be at least 2");
    }
    if (options.max_m > kEncodingLimit) {
        throw RangeError("--max-m above " + std::to_string(kEncodingLimit));
    }
    for (const auto& name : options.scope) {
        if (std::find(check_names().begin(), check_names().end(), name) == check_names().end()) {
            throw UsageError("unknown verify scope '" + name + "'");
        }
    }
    auto wanted = [&](const std::string& name) {
        return options.scope.empty() || std::find(options.scope.begin(), options.scope.end(), name) != options.scope.end();
    };
    const Int top = std::min(options.max_m, options.exhaustive_limit);

    VerifyReport report;
    if (wanted("theorem")) report.checks.push_back(check_theorem(options, top, false));
    if (wanted("theorem_refined")) report.checks.push_back(check_theorem(options, top, true));
    if (wanted("corollary")) report.checks.push_back(check_corollary(options, top));
    if (wanted("counting")) report.checks.push_back(check_counting(options, top, false));
    if (wanted("counting_refined")) report.checks.push_back(check_counting(options, top, true));
    if (wanted("routes")) report.checks.push_back(check_routes(options));
    if (wanted("lemmas")) report.checks.push_back(check_lemmas(options));
    if (wanted("construction")) report.checks.push_back(check_construction(options, top));
    if (wanted("determinism")) report.checks.push_back(check_determinism(top));
    return report;
}

nlohmann::json to_json(const VerifyReport& report)
{
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : report.checks) {
        nlohmann::json entry{{"name", c.name},     {"cases", c.cases},         {"failures", c.failures},
                             {"passed", c.passed()}, {"elapsed_ms", c.elapsed.count()}};
        if (!c.passed()) {
            entry["first_counterexample"] = c.first_counterexample;
        }
        checks.push_back(std::move(entry));
    }
    return nlohmann::json{{"passed", report.passed()}, {"checks", std::move(checks)}};
}

} // namespace repfn
