#pragma once

#include "repfn/core_arith.hpp"
#include "repfn/residue_set.hpp"

#include <iosfwd>
#include <string_view>
#include <vector>

namespace repfn::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFalse = 1;
inline constexpr int kTheoremViolation = 2;
inline constexpr int kUsage = 64;
inline constexpr int kInputRange = 65;

/// Comma-separated decimal integers; whitespace ignored. Throws UsageError on
/// malformed text or duplicates.
std::vector<Int> parse_int_list(std::string_view text);

/// Set literal such as "0,1,5" (empty text is the empty set). Throws
/// UsageError when malformed, RangeError when a residue is outside [0, m).
ResidueSet parse_set_literal(Int m, std::string_view text);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace repfn::cli
