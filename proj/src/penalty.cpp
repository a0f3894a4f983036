#include "lintgrade/penalty.hpp"

#include <algorithm>

namespace lintgrade {

std::vector<Issue> find_recurring(const std::vector<Issue>& current,
                                  const std::vector<SubmissionRecord>& history, int window) {
    if (current.empty() || history.empty() || window < 1) return {};

    std::set<IssueKey> seen;
    const std::size_t n = std::min<std::size_t>(history.size(), static_cast<std::size_t>(window));
    for (std::size_t i = 0; i < n; ++i) {
        seen.insert(history[i].issue_keys.begin(), history[i].issue_keys.end());
    }

    std::vector<Issue> recurring;
    for (const Issue& issue : current) {
        if (seen.contains(IssueKey{issue.inspector, issue.rule_id})) {
            recurring.push_back(issue);
        }
    }
    return recurring;
}

double rule_coefficient(const PenaltyCriteria& c) {
    const int mx = std::max({c.prevalence, c.difficulty, c.importance});
    if (mx == 0) return 0.0;
    return static_cast<double>(c.prevalence + c.difficulty + c.importance) / mx;
}

double penalty_coefficient(const std::vector<Issue>& recurring, const RuleRegistry& registry) {
    std::map<std::string, int> counts;
    for (const Issue& issue : recurring) {
        const SubcategorySpec* spec = registry.find_subcategory(issue.subcategory_id);
        if (spec == nullptr || !spec->grading) continue;
        ++counts[issue.subcategory_id];
    }

    double weighted = 0.0;
    long total = 0;
    for (const auto& [subcat, n] : counts) {
        weighted += n * rule_coefficient(registry.subcategory_criteria(subcat));
        total += n;
    }
    if (total == 0) return 0.0;
    return std::clamp(weighted / (3.0 * total), 0.0, 1.0);
}

Grade apply_penalty(Grade grade, double coefficient) {
    int reduction = 0;
    if (coefficient >= 0.9) reduction = 3;
    else if (coefficient >= 0.7) reduction = 2;
    else if (coefficient >= 0.5) reduction = 1;
    const int lowered = std::max(0, static_cast<int>(grade) - reduction);
    return static_cast<Grade>(lowered);
}

PenaltyResult compute_penalty(Grade pre_penalty, const std::vector<Issue>& current,
                              const std::vector<SubmissionRecord>& history, int window,
                              const RuleRegistry& registry) {
    PenaltyResult result;
    const std::vector<Issue> recurring = find_recurring(current, history, window);
    for (const Issue& issue : recurring) {
        const SubcategorySpec* spec = registry.find_subcategory(issue.subcategory_id);
        if (spec == nullptr || !spec->grading) continue;
        ++result.recurring_counts[issue.subcategory_id];
        result.influencing_rules.insert(IssueKey{issue.inspector, issue.rule_id});
    }
    result.coefficient = penalty_coefficient(recurring, registry);
    result.final_grade = apply_penalty(pre_penalty, result.coefficient);
    return result;
}

}  // namespace lintgrade
