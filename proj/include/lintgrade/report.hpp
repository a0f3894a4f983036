#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lintgrade/history.hpp"
#include "lintgrade/inspectors.hpp"
#include "lintgrade/penalty.hpp"
#include "lintgrade/registry.hpp"
#include "lintgrade/taxonomy.hpp"

namespace lintgrade {

// Replacement explanations for rules whose stock linter message is too
// terse. Keyed by (inspector, rule_id).
struct MessageCatalog {
    std::map<IssueKey, std::string> entries;

    // Collects the custom_message fields of a registry.
    static MessageCatalog from_registry(const RuleRegistry& registry);
};

// Keeps issues with difficulty <= level: EASY keeps only EASY, HARD keeps all.
std::vector<Issue> filter_by_difficulty(const std::vector<Issue>& issues, Difficulty level);

// Catalog entry when present, otherwise the original linter message.
std::string resolve_message(const Issue& issue, const MessageCatalog& catalog);

struct QualityReport {
    Grade grade = Grade::Excellent;
    int score = 3;
    std::string summary;
    std::vector<Issue> issues;  // messages already resolved
    std::optional<PenaltyResult> penalty;
    std::map<std::string, int> stats_by_category;  // category name -> count, all five keys
    int stats_total = 0;
    std::vector<std::string> warnings;
};

// Number of most recent submissions considered for recurrence detection.
inline constexpr int kDefaultHistoryWindow = 10;

struct ReportOptions {
    Difficulty level = Difficulty::Hard;
    int history_window = kDefaultHistoryWindow;
    const HistoryStore* store = nullptr;  // penalty step skipped when null
    std::string student_id;               // required when store is set
};

// The full pipeline: inspect, filter by difficulty, grade, penalize against
// history (when a store is given), resolve messages, assemble. A record of
// the unfiltered classified issues is appended to the store after grading.
QualityReport build_report(const std::filesystem::path& source_path, const std::string& language,
                           const RuleRegistry& registry,
                           const std::vector<InspectorConfig>& configs,
                           const ReportOptions& options = {});

// build_report on in-memory source text, via a temporary file named with the
// language's extension.
QualityReport grade_source_text(const std::string& source_text, const std::string& language,
                                const RuleRegistry& registry,
                                const std::vector<InspectorConfig>& configs,
                                const ReportOptions& options = {});

// Serialization to the report document (see schemas/report.schema.json).
nlohmann::json report_to_json(const QualityReport& report);

// Canonical document bytes: pretty-printed with a trailing newline. The CLI
// and the service both emit exactly this.
std::string report_to_document(const QualityReport& report);

}  // namespace lintgrade
