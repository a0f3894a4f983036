#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lintgrade/taxonomy.hpp"

namespace lintgrade {

// Built-in language-independent checks so the pipeline runs with no external
// tools installed. Rule ids BL001..BL005.
struct BaselineRuleSet {
    int max_line_length = 120;
    int max_function_lines = 40;
    int max_consecutive_blank_lines = 2;
};

inline constexpr std::string_view kBaselineInspector = "baseline";

// BL001: one finding per line longer than `limit` characters, tabs counted
// as 4. metric_value carries the measured length.
std::vector<RawFinding> check_line_length(std::string_view source, int limit);

// BL002: one finding per line ending in a space or tab.
std::vector<RawFinding> check_trailing_whitespace(std::string_view source);

// BL003: one finding per maximal run of blank lines longer than `limit`,
// reported at the run's first line.
std::vector<RawFinding> check_blank_runs(std::string_view source, int limit);

// BL004: one finding per function whose non-blank body line count exceeds
// `limit`. Function detection is heuristic: indentation for Python, brace
// balancing for Java. metric_value carries the body line count.
std::vector<RawFinding> check_function_length(std::string_view source,
                                              const std::string& language, int limit);

// BL005: flags == / != comparisons against boolean literals outside string
// literals and comments. Cross-line state is tracked for Python triple
// quotes only.
std::vector<RawFinding> check_bool_literal_comparison(std::string_view source,
                                                      const std::string& language);

// All baseline checks in rule-id order.
std::vector<RawFinding> run_baseline(std::string_view source, const std::string& language,
                                     const BaselineRuleSet& rules = {});

}  // namespace lintgrade
