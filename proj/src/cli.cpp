#include "repfn/cli.hpp"

#include "repfn/characterization.hpp"
#include "repfn/errors.hpp"
#include "repfn/repfn.hpp"
#include "repfn/report_json.hpp"
#include "repfn/search.hpp"
#include "repfn/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

namespace repfn::cli {
namespace {

using Clock = std::chrono::steady_clock;

constexpr Int kDefaultHardCap = 24;
constexpr Int kVerifyDefaultCap = 64;

struct Common {
    Int m = 0;
    std::string weights;
    std::string set;
    std::optional<Int> max_m;
    unsigned workers = 0;
    std::uint64_t seed = 0;
    bool json = false;
    bool csv = false;
    std::string out_path;
    std::size_t witness_cap = 1'000'000;
};

// REPFN_MAX_M raises the ceiling that --max-m may reach.
std::optional<Int> env_max_m()
{
    const char* raw = std::getenv("REPFN_MAX_M");
    if (raw == nullptr || *raw == '\0') {
        return std::nullopt;
    }
    Int value = 0;
    const std::string_view text(raw);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value < 2) {
        throw UsageError("REPFN_MAX_M must be an integer >= 2");
    }
    return std::min(value, kEncodingLimit);
}

Int hard_cap(Int fallback)
{
    return std::max(fallback, env_max_m().value_or(fallback));
}

std::string bool_text(bool b)
{
    return b ? "true" : "false";
}

std::string counts_text(const std::vector<Count>& counts)
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < counts.size(); ++i) {
        os << (i ? "," : "") << counts[i];
    }
    os << ']';
    return os.str();
}

std::string gcd_text(const GcdProfile& g)
{
    std::ostringstream os;
    os << "d1=" << g.d1 << " d2=" << g.d2 << " d3=" << g.d3 << " d=" << g.d;
    return os.str();
}

double elapsed_ms(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Instance make_instance(const Common& c, std::size_t min_arity, std::size_t max_arity)
{
    const auto weights = parse_int_list(c.weights);
    if (weights.size() < min_arity || weights.size() > max_arity) {
        throw UsageError("expected " + (min_arity == max_arity ? std::to_string(min_arity)
                                                                 : "at least " + std::to_string(min_arity))
                         + " weights, got " + std::to_string(weights.size()));
    }
    return canonicalize(c.m, weights);
}

// Writes to --out when given, else to `out`.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback)
    {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw RangeError("cannot open output file " + path);
            }
            stream_ = &file_;
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

std::string csv_quote(const std::string& field)
{
    return "\"" + field + "\"";
}

int cmd_check(const Common& c, std::ostream& out)
{
    const auto start = Clock::now();
    const Instance inst = make_instance(c, 2, 2);
    const ResidueSet set = parse_set_literal(inst.modulus(), c.set);
    const ResidueSet rest = set.complement();
    const GcdProfile g = gcd_profile(inst);
    const RepProfile profile_a = rep_convolution(set, inst);
    const RepProfile profile_b = rep_convolution(rest, inst);

    const bool predicate = balanced_predicate(set, inst);
    const bool refined = balanced_predicate_refined(set, inst);
    std::optional<bool> oracle;
    if (inst.modulus() <= c.max_m.value_or(kDefaultOracleBound)) {
        oracle = balanced_oracle(set, inst);
    }
    const bool balanced = oracle.value_or(predicate);
    const bool disagree = oracle && *oracle != predicate;

    Sink sink(c.out_path, out);
    if (c.json) {
        json doc{{"command", "check"},
                 {"instance", to_json(inst)},
                 {"gcd_profile", to_json(g)},
                 {"set", to_json(set)},
                 {"complement", to_json(rest)},
                 {"verdicts",
                  {{"predicate", predicate},
                   {"refined", refined},
                   {"oracle", oracle ? json(*oracle) : json(nullptr)},
                   {"balanced", balanced},
                   {"agree", !disagree}}},
                 {"profiles", {{"set", to_json(profile_a)}, {"complement", to_json(profile_b)}}},
                 {"counts", {{"size", set.size()}, {"complement_size", rest.size()}}},
                 {"elapsed_ms", elapsed_ms(start)}};
        *sink << doc.dump(2) << '\n';
    } else {
        *sink << "instance: " << inst.to_string() << '\n'
              << "gcd_profile: " << gcd_text(g) << '\n'
              << "set: " << set.to_string() << '\n'
              << "complement: " << rest.to_string() << '\n'
              << "profile(set): " << counts_text(profile_a.counts) << '\n'
              << "profile(complement): " << counts_text(profile_b.counts) << '\n'
              << "predicate: " << bool_text(predicate) << '\n'
              << "refined: " << bool_text(refined) << '\n'
              << "oracle: " << (oracle ? bool_text(*oracle) : "skipped (m above oracle bound)") << '\n'
              << "balanced: " << bool_text(balanced) << '\n';
        if (disagree) {
            *sink << "VIOLATION: predicate and oracle disagree\n";
        }
    }
    if (disagree) {
        return kTheoremViolation;
    }
    return balanced ? kOk : kFalse;
}

int cmd_exists(const Common& c, std::ostream& out)
{
    const auto start = Clock::now();
    const Instance inst = make_instance(c, 2, 2);
    const GcdProfile g = gcd_profile(inst);
    const bool divisibility = exists_divisibility(inst);
    const bool parity = exists_parity(inst);
    const std::uint64_t count = count_balanced(inst);
    const std::uint64_t refined = count_balanced_refined(inst);
    std::optional<ResidueSet> witness;
    if (divisibility) {
        witness = canonical_balanced_set(inst);
    }

    Sink sink(c.out_path, out);
    if (c.json) {
        json doc{{"command", "exists"},
                 {"instance", to_json(inst)},
                 {"gcd_profile", to_json(g)},
                 {"verdicts", {{"divisibility", divisibility}, {"parity", parity}, {"agree", divisibility == parity}}},
                 {"counts", {{"formula", count}, {"refined", refined}}},
                 {"witnesses", witness ? json::array({to_json(*witness)}) : json::array()},
                 {"elapsed_ms", elapsed_ms(start)}};
        *sink << doc.dump(2) << '\n';
    } else {
        *sink << "instance: " << inst.to_string() << '\n'
              << "gcd_profile: " << gcd_text(g) << '\n'
              << "exists (divisibility): " << bool_text(divisibility) << '\n'
              << "exists (parity): " << bool_text(parity) << '\n'
              << "count (formula): " << count << '\n'
              << "count (refined): " << refined << '\n';
        if (witness) {
            *sink << "witness: " << witness->to_string() << '\n';
        }
        if (divisibility != parity) {
            *sink << "VIOLATION: existence criteria disagree\n";
        }
    }
    if (divisibility != parity) {
        return kTheoremViolation;
    }
    return divisibility ? kOk : kFalse;
}

int cmd_profile(const Common& c, const std::string& route, std::ostream& out)
{
    const auto start = Clock::now();
    const Instance inst = make_instance(c, 1, 64);
    const ResidueSet set = parse_set_literal(inst.modulus(), c.set);

    json values = json::array();
    std::string text;
    if (route == "naive" || route == "convolution") {
        const RepProfile p = route == "naive" ? rep_naive(set, inst) : rep_convolution(set, inst);
        values = to_json(p);
        text = counts_text(p.counts);
    } else {
        if (inst.arity() != 2) {
            throw UsageError("the spectral route needs exactly two weights");
        }
        std::ostringstream os;
        os << std::fixed << std::setprecision(9) << '[';
        for (Int n = 0; n < inst.modulus(); ++n) {
            const double v = rep_spectral(set, inst, n);
            values.push_back(v);
            os << (n ? "," : "") << v;
        }
        os << ']';
        text = os.str();
    }

    Sink sink(c.out_path, out);
    if (c.json) {
        json doc{{"command", "profile"},
                 {"instance", to_json(inst)},
                 {"route", route},
                 {"set", to_json(set)},
                 {"profiles", {{"set", values}}},
                 {"counts", {{"size", set.size()}}},
                 {"elapsed_ms", elapsed_ms(start)}};
        if (inst.arity() == 2) {
            doc["gcd_profile"] = to_json(gcd_profile(inst));
        }
        *sink << doc.dump(2) << '\n';
    } else {
        *sink << "instance: " << inst.to_string() << '\n'
              << "set: " << set.to_string() << '\n'
              << "route: " << route << '\n'
              << "profile: " << text << '\n';
    }
    return kOk;
}

SearchOptions search_options(const Common& c)
{
    SearchOptions so;
    so.workers = c.workers;
    so.witness_cap = c.witness_cap;
    if (c.max_m) {
        const Int cap = hard_cap(kDefaultHardCap);
        if (*c.max_m > cap) {
            throw RangeError("--max-m " + std::to_string(*c.max_m) + " exceeds the hard cap " + std::to_string(cap)
                             + " (raise with REPFN_MAX_M)");
        }
        so.max_m = c.max_m;
    }
    return so;
}

int emit_report(const Common& c, const SearchReport& report, std::ostream& out)
{
    Sink sink(c.out_path, out);
    if (c.json) {
        json doc = to_json(report);
        doc["command"] = report.mode == SearchMode::t_ary ? "tary" : std::string(to_string(report.mode));
        *sink << doc.dump(2) << '\n';
    } else if (c.csv) {
        if (report.mode == SearchMode::pairs) {
            *sink << "a,b\n";
            for (const auto& [a, b] : report.witness_pairs) {
                *sink << csv_quote(a.to_literal()) << ',' << csv_quote(b.to_literal()) << '\n';
            }
        } else {
            *sink << "set\n";
            for (const auto& w : report.witnesses) {
                *sink << csv_quote(w.to_literal()) << '\n';
            }
        }
    } else {
        *sink << "instance: " << report.instance.to_string() << '\n' << "mode: " << to_string(report.mode);
        if (report.test) {
            *sink << " (" << to_string(*report.test) << ')';
        }
        *sink << '\n';
        if (report.mode == SearchMode::pairs) {
            for (const auto& [a, b] : report.witness_pairs) {
                *sink << "  " << a.to_string() << " ~ " << b.to_string() << '\n';
            }
        } else {
            for (const auto& w : report.witnesses) {
                *sink << "  " << w.to_string() << '\n';
            }
        }
        *sink << "count: " << report.count << (report.truncated ? " (witness list truncated)" : "") << '\n'
              << "exhaustive: " << bool_text(report.exhaustive) << '\n'
              << "elapsed_ms: " << static_cast<double>(report.elapsed.count()) / 1000.0 << '\n';
    }
    return report.found() ? kOk : kFalse;
}

int cmd_verify(const Common& c, const std::vector<std::string>& scope, std::size_t samples, std::ostream& out)
{
    VerifyOptions vo;
    vo.max_m = c.max_m.value_or(12);
    if (vo.max_m < 2) {
        throw UsageError("--max-m must be at least 2");
    }
    const Int cap = hard_cap(kVerifyDefaultCap);
    if (vo.max_m > cap) {
        throw RangeError("--max-m " + std::to_string(vo.max_m) + " exceeds the hard cap " + std::to_string(cap));
    }
    vo.scope = scope;
    vo.seed = c.seed;
    vo.workers = c.workers == 0 ? std::max(1U, std::thread::hardware_concurrency()) : c.workers;
    vo.samples = samples;
    vo.exhaustive_limit = env_max_m().value_or(vo.exhaustive_limit);

    const VerifyReport report = run_verify(vo);
    Sink sink(c.out_path, out);
    if (c.json) {
        json doc = to_json(report);
        doc["command"] = "verify";
        doc["max_m"] = vo.max_m;
        doc["seed"] = vo.seed;
        *sink << doc.dump(2) << '\n';
    } else {
        for (const auto& check : report.checks) {
            *sink << (check.passed() ? "PASS " : "FAIL ") << std::left << std::setw(17) << check.name
                  << " cases=" << check.cases << " failures=" << check.failures << " (" << check.elapsed.count()
                  << " ms)\n";
        }
        if (const CheckResult* bad = report.first_failure()) {
            *sink << "first counterexample [" << bad->name << "]: " << bad->first_counterexample << '\n';
        }
    }
    return report.passed() ? kOk : kTheoremViolation;
}

void add_instance_flags(CLI::App* sub, Common& c, bool with_set)
{
    sub->add_option("-m,--modulus", c.m, "modulus m >= 2")->required();
    sub->add_option("-k,--weights", c.weights, "comma-separated weights, e.g. 4,6")->required();
    if (with_set) {
        sub->add_option("-A,--set", c.set, "comma-separated residues, e.g. 0,1,5")->required();
    }
}

void add_output_flags(CLI::App* sub, Common& c, bool with_csv)
{
    sub->add_flag("--json", c.json, "emit one JSON document");
    if (with_csv) {
        sub->add_flag("--csv", c.csv, "emit witnesses as CSV, one set literal per row");
    }
    sub->add_option("--out", c.out_path, "write output to PATH instead of stdout");
}

void add_search_flags(CLI::App* sub, Common& c)
{
    sub->add_option("--max-m", c.max_m, "override the search bound");
    sub->add_option("--workers", c.workers, "worker threads (0 = machine parallelism)");
    sub->add_option("--witness-cap", c.witness_cap, "retain at most N witnesses (counts stay exact)");
    sub->add_option("--seed", c.seed, "seed for randomized sampling");
}

} // namespace

std::vector<Int> parse_int_list(std::string_view text)
{
    std::string compact;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            compact.push_back(ch);
        }
    }
    std::vector<Int> values;
    if (compact.empty()) {
        return values;
    }
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = compact.find(',', pos);
        const std::string_view field = std::string_view(compact).substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        Int value = 0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
            throw UsageError("malformed integer list '" + std::string(text) + "'");
        }
        values.push_back(value);
        if (comma == std::string::npos) {
            break;
        }
        pos = comma + 1;
    }
    return values;
}

ResidueSet parse_set_literal(Int m, std::string_view text)
{
    const auto values = parse_int_list(text);
    std::set<Int> seen;
    for (Int v : values) {
        if (!seen.insert(v).second) {
            throw UsageError("duplicate residue " + std::to_string(v) + " in set literal");
        }
    }
    ResidueSet set(m);
    for (Int v : values) {
        set.insert(v);
    }
    return set;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Weighted representation functions on Z_m: complement balance checks and searches", "repfn"};
    app.require_subcommand(1);

    Common c;
    std::string route = "convolution";
    std::string mode = "oracle";
    bool exclude_trivial = false;
    std::vector<std::string> scope;
    std::size_t samples = 1000;

    auto* check = app.add_subcommand("check", "decide complement balance of one set");
    add_instance_flags(check, c, true);
    add_output_flags(check, c, false);
    check->add_option("--max-m", c.max_m, "largest m for which the brute-force oracle runs");

    auto* exists = app.add_subcommand("exists", "existence criteria, count and canonical witness");
    add_instance_flags(exists, c, false);
    add_output_flags(exists, c, false);

    auto* profile = app.add_subcommand("profile", "representation profile of one set");
    add_instance_flags(profile, c, true);
    add_output_flags(profile, c, false);
    profile->add_option("--route", route, "naive, convolution or spectral")
        ->check(CLI::IsMember({"naive", "convolution", "spectral"}));

    auto* enumerate = app.add_subcommand("enumerate", "all complement-balanced sets");
    add_instance_flags(enumerate, c, false);
    add_output_flags(enumerate, c, true);
    add_search_flags(enumerate, c);
    enumerate->add_option("--mode", mode, "oracle, predicate or refined")
        ->check(CLI::IsMember({"oracle", "predicate", "refined"}));

    auto* pairs = app.add_subcommand("pairs", "pairs of distinct sets with identical profiles");
    add_instance_flags(pairs, c, false);
    add_output_flags(pairs, c, true);
    add_search_flags(pairs, c);
    pairs->add_flag("--exclude-trivial", exclude_trivial, "drop complement pairs");

    auto* tary = app.add_subcommand("tary", "complement-balanced sets for three or more weights");
    add_instance_flags(tary, c, false);
    add_output_flags(tary, c, true);
    add_search_flags(tary, c);

    auto* verify = app.add_subcommand("verify", "run the verification sweeps");
    verify->add_option("--max-m", c.max_m, "largest modulus swept (default 12)");
    verify->add_option("--scope", scope, "checks to run (default all)")->delimiter(',');
    verify->add_option("--seed", c.seed, "seed for randomized samples");
    verify->add_option("--workers", c.workers, "worker threads (0 = machine parallelism)");
    verify->add_option("--samples", samples, "random instances per sampled check");
    add_output_flags(verify, c, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*check) return cmd_check(c, out);
        if (*exists) return cmd_exists(c, out);
        if (*profile) return cmd_profile(c, route, out);
        if (*enumerate) {
            const Instance inst = make_instance(c, 2, 2);
            return emit_report(c, enumerate_balanced(inst, *parse_balance_test(mode), search_options(c)), out);
        }
        if (*pairs) {
            const Instance inst = make_instance(c, 2, 2);
            return emit_report(c, pair_search(inst, exclude_trivial, search_options(c)), out);
        }
        if (*tary) {
            const Instance inst = make_instance(c, 3, 64);
            return emit_report(c, t_ary_balanced_search(inst, search_options(c)), out);
        }
        if (*verify) return cmd_verify(c, scope, samples, out);
    } catch (const RangeError& e) {
        err << "error: " << e.what() << '\n';
        return kInputRange;
    } catch (const std::overflow_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputRange;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

} // namespace repfn::cli
