#pragma once

#include <chrono>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lintgrade/registry.hpp"
#include "lintgrade/taxonomy.hpp"

namespace lintgrade {

// Issue identity for recurrence detection: (inspector, rule_id). Lines shift
// between attempts, so positions are deliberately ignored.
using IssueKey = std::pair<std::string, std::string>;

// One historical submission, reduced to its issue fingerprints.
struct SubmissionRecord {
    std::string student_id;
    std::string language;
    std::chrono::system_clock::time_point timestamp;
    std::vector<IssueKey> issue_keys;  // multiset; duplicates are meaningful
};

struct PenaltyResult {
    double coefficient = 0.0;                 // in [0, 1]
    std::map<std::string, int> recurring_counts;  // subcategory_id -> count
    std::set<IssueKey> influencing_rules;
    Grade final_grade = Grade::Excellent;
};

// Subset of `current` whose key appears in at least one of the most recent
// `window` records. History must be sorted newest first. Each current
// occurrence counts independently.
std::vector<Issue> find_recurring(const std::vector<Issue>& current,
                                  const std::vector<SubmissionRecord>& history, int window);

// Sum of the three criteria divided by their maximum; 0 when all are 0.
// Range is {0} and [1, 3].
double rule_coefficient(const PenaltyCriteria& c);

// Weighted mean of per-subcategory coefficients over the recurring issues,
// normalized into [0, 1] by the maximum possible rule coefficient (3).
// Non-grading subcategories never contribute: their issues cannot lower a
// grade through any path.
double penalty_coefficient(const std::vector<Issue>& recurring, const RuleRegistry& registry);

// Grade reduction ladder: no reduction below 0.5, then one level per 0.2,
// floored at BAD.
Grade apply_penalty(Grade grade, double coefficient);

// Full penalty step: recurrence detection, coefficient, grade reduction.
PenaltyResult compute_penalty(Grade pre_penalty, const std::vector<Issue>& current,
                              const std::vector<SubmissionRecord>& history, int window,
                              const RuleRegistry& registry);

}  // namespace lintgrade
