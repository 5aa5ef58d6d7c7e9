#pragma once

// JSON encoding of the library's value types. SearchReport round-trips:
// search_report_from_json(to_json(r)) == r.

#include "repfn/characterization.hpp"
#include "repfn/core_arith.hpp"
#include "repfn/repfn.hpp"
#include "repfn/residue_set.hpp"
#include "repfn/search.hpp"

#include <nlohmann/json.hpp>

namespace repfn {

using nlohmann::json;

json to_json(const Instance& inst);
json to_json(const GcdProfile& profile);
json to_json(const RepProfile& profile);
/// Members as an ascending array.
json to_json(const ResidueSet& set);
json to_json(const SearchReport& report);

/// Each throws UsageError on a malformed document.
Instance instance_from_json(const json& j);
ResidueSet residue_set_from_json(Int m, const json& j);
SearchReport search_report_from_json(const json& j);

} // namespace repfn
