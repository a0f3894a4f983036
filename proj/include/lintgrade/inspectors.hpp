#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lintgrade/registry.hpp"
#include "lintgrade/taxonomy.hpp"

namespace lintgrade {

// How to run one external tool. The adapter contributes a pinned canonical
// argument list (forcing a parseable output format); extra_args are appended
// after it.
struct InspectorConfig {
    std::string inspector;
    std::string executable;
    std::vector<std::string> extra_args;
    double timeout_seconds = 30.0;
    bool enabled = true;
};

// Inspector configuration document for one language
// (see schemas/inspectors.schema.json).
std::vector<InspectorConfig> load_inspector_configs(const std::filesystem::path& path);

// Built-in defaults: the baseline inspector plus the standard linters for
// the language.
std::vector<InspectorConfig> default_inspector_configs(const std::string& language);

// True when the named inspector applies to the language ("baseline" applies
// to every language).
bool inspector_supports(std::string_view inspector, std::string_view language);

// Environment variable that overrides PATH when resolving tool executables.
inline constexpr const char* kToolPathEnvVar = "LINTGRADE_TOOL_PATH";

struct RunResult {
    std::string output;  // stdout and stderr, merged
    int exit_status = 0; // negative = killed by that signal
};

// Runs the tool on one source file with the adapter's canonical argument
// list plus cfg.extra_args. The child is killed after cfg.timeout_seconds.
// Throws ToolNotFound, ToolTimeout, SpawnFailure, SourceNotFound.
RunResult run_inspector(const std::filesystem::path& source_path, const InspectorConfig& cfg);

// Parsers for the supported report formats. Lines or elements that cannot be
// interpreted are skipped with a note appended to `warnings` (when given);
// only documents that are malformed as a whole raise ParseError.

// flake8 default text format: `path:row:col: CODE message`.
std::vector<RawFinding> parse_flake8(std::string_view output,
                                     std::vector<std::string>* warnings = nullptr);

// pylint JSON report (--output-format=json).
std::vector<RawFinding> parse_pylint(std::string_view output,
                                     std::vector<std::string>* warnings = nullptr);

// Checkstyle XML report; rule id is the final dotted segment of `source`.
std::vector<RawFinding> parse_checkstyle(std::string_view output,
                                         std::vector<std::string>* warnings = nullptr);

// PMD XML report; rule id is the `rule` attribute, line is `beginline`.
std::vector<RawFinding> parse_pmd(std::string_view output,
                                  std::vector<std::string>* warnings = nullptr);

struct InspectionResult {
    std::vector<Issue> issues;          // sorted by (line, column, rule_id)
    std::vector<std::string> warnings;  // tool failures and parser skips
};

// Runs every enabled inspector that supports the language, parses and
// classifies the findings, and deduplicates exact (inspector, rule_id, line,
// column) tuples. Tool failures degrade to warnings and never abort.
// Throws SourceNotFound.
InspectionResult inspect(const std::filesystem::path& source_path, const std::string& language,
                         const RuleRegistry& registry,
                         const std::vector<InspectorConfig>& configs);

}  // namespace lintgrade
