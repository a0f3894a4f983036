#include "lintgrade/report.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "lintgrade/errors.hpp"
#include "lintgrade/grading.hpp"

namespace lintgrade {

using nlohmann::json;

MessageCatalog MessageCatalog::from_registry(const RuleRegistry& registry) {
    MessageCatalog catalog;
    for (const RuleDescriptor& rule : registry.rules()) {
        if (rule.custom_message) {
            catalog.entries[IssueKey{rule.inspector, rule.rule_id}] = *rule.custom_message;
        }
    }
    return catalog;
}

std::vector<Issue> filter_by_difficulty(const std::vector<Issue>& issues, Difficulty level) {
    std::vector<Issue> kept;
    kept.reserve(issues.size());
    for (const Issue& issue : issues) {
        if (static_cast<int>(issue.difficulty) <= static_cast<int>(level)) {
            kept.push_back(issue);
        }
    }
    return kept;
}

std::string resolve_message(const Issue& issue, const MessageCatalog& catalog) {
    auto it = catalog.entries.find(IssueKey{issue.inspector, issue.rule_id});
    if (it != catalog.entries.end()) return it->second;
    return issue.message;
}

namespace {

std::string summary_for(Grade grade) {
    switch (grade) {
        case Grade::Excellent:
            return "No common code quality problems were found. Well done!";
        case Grade::Good:
            return "The code is clean overall; a few code quality issues remain.";
        case Grade::Moderate:
            return "The code has noticeable quality issues that make it harder to read and change.";
        case Grade::Bad:
            return "The code has serious quality problems and needs attention.";
    }
    return "";
}

}  // namespace

QualityReport build_report(const std::filesystem::path& source_path, const std::string& language,
                           const RuleRegistry& registry,
                           const std::vector<InspectorConfig>& configs,
                           const ReportOptions& options) {
    InspectionResult inspection = inspect(source_path, language, registry, configs);
    const std::vector<Issue> filtered = filter_by_difficulty(inspection.issues, options.level);

    QualityReport report;
    report.warnings = std::move(inspection.warnings);

    const Grade pre_penalty = aggregate(tally(filtered, registry));
    report.grade = pre_penalty;

    // A window of 0 disables the whole penalty step, appends included.
    if (options.store != nullptr && options.history_window > 0) {
        // Penalty runs on the filtered set, so the grade is always justified
        // by issues the student can see.
        HistoryStore::LoadResult history =
            options.store->load_window(options.student_id, language, options.history_window);
        for (std::string& w : history.warnings) report.warnings.push_back(std::move(w));

        PenaltyResult penalty = compute_penalty(pre_penalty, filtered, history.records,
                                                options.history_window, registry);
        report.grade = penalty.final_grade;
        report.penalty = std::move(penalty);

        // The stored record keeps the unfiltered issues so that raising the
        // difficulty level later still detects old recurrences.
        SubmissionRecord record;
        record.student_id = options.student_id;
        record.language = language;
        record.timestamp = std::chrono::system_clock::now();
        for (const Issue& issue : inspection.issues) {
            record.issue_keys.emplace_back(issue.inspector, issue.rule_id);
        }
        options.store->append(record);
    }

    report.score = grade_to_score(report.grade);
    report.summary = summary_for(report.grade);

    const MessageCatalog catalog = MessageCatalog::from_registry(registry);
    report.issues = filtered;
    for (Issue& issue : report.issues) {
        issue.message = resolve_message(issue, catalog);
        if (issue.message.empty()) {
            issue.message = issue.inspector + " reported rule " + issue.rule_id;
        }
    }

    for (int c = 0; c < kCategoryCount; ++c) {
        report.stats_by_category[std::string(category_name(static_cast<IssueCategory>(c)))] = 0;
    }
    for (const Issue& issue : report.issues) {
        ++report.stats_by_category[std::string(category_name(issue.category))];
    }
    report.stats_total = static_cast<int>(report.issues.size());
    return report;
}

QualityReport grade_source_text(const std::string& source_text, const std::string& language,
                                const RuleRegistry& registry,
                                const std::vector<InspectorConfig>& configs,
                                const ReportOptions& options) {
    const std::string extension = language == "python" ? ".py"
                                  : language == "java" ? ".java"
                                                       : ".txt";
    std::string tmpl = (std::filesystem::temp_directory_path() /
                        ("lintgrade_src_XXXXXX" + extension))
                           .string();
    const int fd = ::mkstemps(tmpl.data(), static_cast<int>(extension.size()));
    if (fd < 0) throw IoError("cannot create temporary source file");
    ::close(fd);

    const std::filesystem::path path = tmpl;
    try {
        std::ofstream out(path, std::ios::binary);
        out << source_text;
        out.close();
        if (!out) throw IoError("cannot write temporary source file " + path.string());
        QualityReport report = build_report(path, language, registry, configs, options);
        std::filesystem::remove(path);
        return report;
    } catch (...) {
        std::error_code ec;
        std::filesystem::remove(path, ec);
        throw;
    }
}

json report_to_json(const QualityReport& report) {
    json issues = json::array();
    for (const Issue& issue : report.issues) {
        issues.push_back(json{{"code", issue.rule_id},
                              {"inspector", issue.inspector},
                              {"line", issue.line},
                              {"column", issue.column},
                              {"category", category_name(issue.category)},
                              {"difficulty", difficulty_name(issue.difficulty)},
                              {"text", issue.message}});
    }

    json doc{{"quality",
              {{"code", grade_name(report.grade)},
               {"score", report.score},
               {"text", report.summary}}},
             {"issues", std::move(issues)},
             {"statistics", {{"by_category", report.stats_by_category},
                             {"total", report.stats_total}}},
             {"warnings", report.warnings}};

    if (report.penalty) {
        json rules = json::array();
        for (const auto& [inspector, rule_id] : report.penalty->influencing_rules) {
            rules.push_back(json{{"inspector", inspector}, {"code", rule_id}});
        }
        doc["penalty"] = json{{"coefficient", report.penalty->coefficient},
                              {"influencing_rules", std::move(rules)}};
    }
    return doc;
}

std::string report_to_document(const QualityReport& report) {
    return report_to_json(report).dump(2) + "\n";
}

}  // namespace lintgrade
