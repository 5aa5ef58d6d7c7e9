#include "repfn/report_json.hpp"

#include "repfn/errors.hpp"

#include <cmath>

namespace repfn {

json to_json(const Instance& inst)
{
    return json{{"m", inst.modulus()}, {"weights", inst.weights()}};
}

json to_json(const GcdProfile& p)
{
    return json{{"d1", p.d1}, {"d2", p.d2}, {"d3", p.d3}, {"d", p.d}};
}

json to_json(const RepProfile& profile)
{
    return json(profile.counts);
}

json to_json(const ResidueSet& set)
{
    return json(set.members());
}

json to_json(const SearchReport& report)
{
    json j;
    j["mode"] = to_string(report.mode);
    j["instance"] = to_json(report.instance);
    if (report.instance.arity() == 2) {
        j["gcd_profile"] = to_json(gcd_profile(report.instance));
    }
    if (report.test) {
        j["test"] = to_string(*report.test);
    }
    json witnesses = json::array();
    if (report.mode == SearchMode::pairs) {
        for (const auto& [a, b] : report.witness_pairs) {
            witnesses.push_back(json::array({to_json(a), to_json(b)}));
        }
    } else {
        for (const auto& w : report.witnesses) {
            witnesses.push_back(to_json(w));
        }
    }
    j["witnesses"] = std::move(witnesses);
    j["counts"] = report.count;
    j["found"] = report.found();
    j["exhaustive"] = report.exhaustive;
    j["truncated"] = report.truncated;
    j["elapsed_ms"] = static_cast<double>(report.elapsed.count()) / 1000.0;
    return j;
}

Instance instance_from_json(const json& j)
{
    try {
        return canonicalize(j.at("m").get<Int>(), j.at("weights").get<std::vector<Int>>());
    } catch (const json::exception& e) {
        throw UsageError(std::string("malformed instance: ") + e.what());
    }
}

ResidueSet residue_set_from_json(Int m, const json& j)
{
    try {
        return ResidueSet::from_members(m, j.get<std::vector<Int>>());
    } catch (const json::exception& e) {
        throw UsageError(std::string("malformed residue set: ") + e.what());
    }
}

SearchReport search_report_from_json(const json& j)
{
    try {
        const auto mode = parse_search_mode(j.at("mode").get<std::string>());
        if (!mode) {
            throw UsageError("unknown search mode");
        }
        SearchReport report{.instance = instance_from_json(j.at("instance")), .mode = *mode};
        if (j.contains("test")) {
            report.test = parse_balance_test(j.at("test").get<std::string>());
            if (!report.test) {
                throw UsageError("unknown balance test");
            }
        }
        const Int m = report.instance.modulus();
        for (const auto& w : j.at("witnesses")) {
            if (*mode == SearchMode::pairs) {
                report.witness_pairs.emplace_back(residue_set_from_json(m, w.at(0)), residue_set_from_json(m, w.at(1)));
            } else {
                report.witnesses.push_back(residue_set_from_json(m, w));
            }
        }
        report.count = j.at("counts").get<std::uint64_t>();
        report.exhaustive = j.at("exhaustive").get<bool>();
        report.truncated = j.at("truncated").get<bool>();
        report.elapsed = std::chrono::microseconds(std::llround(j.at("elapsed_ms").get<double>() * 1000.0));
        return report;
    } catch (const json::exception& e) {
        throw UsageError(std::string("malformed search report: ") + e.what());
    }
}

} // namespace repfn
