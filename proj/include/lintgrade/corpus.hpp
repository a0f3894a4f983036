#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "lintgrade/inspectors.hpp"
#include "lintgrade/registry.hpp"
#include "lintgrade/report.hpp"

namespace lintgrade {

// Lower median: for an even number of values the smaller middle value.
int lower_median(std::vector<int> values);

struct StudentStats {
    std::vector<int> issue_counts;     // per submission, in submission order
    std::vector<std::string> grades;   // final grade names, same order
    int median = 0;
};

struct CorpusStats {
    std::map<std::string, StudentStats> students;
    std::map<int, int> histogram;  // median issue count -> number of students
    std::vector<std::string> warnings;
};

struct BatchOptions {
    Difficulty level = Difficulty::Hard;
    // Most recent submissions considered for recurrence; 0 disables the
    // penalty step entirely.
    int history_window = kDefaultHistoryWindow;
    // History root; when empty a temporary store is used and discarded.
    std::filesystem::path history_dir;
};

// Grades every submission under `corpus_dir` (layout:
// <student_id>/<submission>.<ext>, ordered lexicographically unless the
// student directory has a manifest.txt naming files in order). History is
// threaded per student in submission order. Per-file failures are logged in
// warnings and skipped; throws only when the corpus root is missing.
CorpusStats run_batch(const std::filesystem::path& corpus_dir, const std::string& language,
                      const RuleRegistry& registry, const std::vector<InspectorConfig>& configs,
                      const BatchOptions& options = {});

struct SubcategoryDistribution {
    SubcatKind kind = SubcatKind::Countable;
    // Observed value (count or worst metric; 0 for untouched submissions)
    // -> number of submissions.
    std::map<double, int> frequencies;
    // Grade name -> fraction of submissions landing in that band under the
    // registry thresholds. Fractions sum to 1 when submissions > 0.
    std::map<std::string, double> bands;
};

struct DistributionStats {
    std::map<std::string, SubcategoryDistribution> subcategories;
    int submissions = 0;
    std::vector<std::string> warnings;
};

// Frequency of per-submission counts (countable) or worst metric values
// (measurable) for every registry subcategory across the corpus: the
// threshold-calibration aid.
DistributionStats run_distribution(const std::filesystem::path& corpus_dir,
                                   const std::string& language, const RuleRegistry& registry,
                                   const std::vector<InspectorConfig>& configs,
                                   Difficulty level = Difficulty::Hard);

nlohmann::json corpus_stats_to_json(const CorpusStats& stats);
nlohmann::json distribution_to_json(const DistributionStats& stats);

// ".py" for python, ".java" for java.
std::string source_extension(const std::string& language);

}  // namespace lintgrade
