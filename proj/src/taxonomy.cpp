#include "lintgrade/taxonomy.hpp"

#include <algorithm>

namespace lintgrade {

Grade grade_min(Grade a, Grade b) {
    return static_cast<int>(a) <= static_cast<int>(b) ? a : b;
}

int grade_to_score(Grade g) {
    return static_cast<int>(g);
}

std::string_view grade_name(Grade g) {
    switch (g) {
        case Grade::Bad: return "BAD";
        case Grade::Moderate: return "MODERATE";
        case Grade::Good: return "GOOD";
        case Grade::Excellent: return "EXCELLENT";
    }
    return "BAD";
}

std::optional<Grade> grade_from_name(std::string_view name) {
    if (name == "BAD") return Grade::Bad;
    if (name == "MODERATE") return Grade::Moderate;
    if (name == "GOOD") return Grade::Good;
    if (name == "EXCELLENT") return Grade::Excellent;
    return std::nullopt;
}

std::string_view category_name(IssueCategory c) {
    switch (c) {
        case IssueCategory::CodeStyle: return "CODE_STYLE";
        case IssueCategory::CodeComplexity: return "CODE_COMPLEXITY";
        case IssueCategory::ErrorProneness: return "ERROR_PRONENESS";
        case IssueCategory::BestPractices: return "BEST_PRACTICES";
        case IssueCategory::MinorIssues: return "MINOR_ISSUES";
    }
    return "CODE_STYLE";
}

std::optional<IssueCategory> category_from_name(std::string_view name) {
    if (name == "CODE_STYLE") return IssueCategory::CodeStyle;
    if (name == "CODE_COMPLEXITY") return IssueCategory::CodeComplexity;
    if (name == "ERROR_PRONENESS") return IssueCategory::ErrorProneness;
    if (name == "BEST_PRACTICES") return IssueCategory::BestPractices;
    if (name == "MINOR_ISSUES") return IssueCategory::MinorIssues;
    return std::nullopt;
}

bool category_grades(IssueCategory c) {
    return c != IssueCategory::MinorIssues;
}

std::string_view difficulty_name(Difficulty d) {
    switch (d) {
        case Difficulty::Easy: return "EASY";
        case Difficulty::Medium: return "MEDIUM";
        case Difficulty::Hard: return "HARD";
    }
    return "EASY";
}

std::optional<Difficulty> difficulty_from_name(std::string_view name) {
    if (name == "EASY") return Difficulty::Easy;
    if (name == "MEDIUM") return Difficulty::Medium;
    if (name == "HARD") return Difficulty::Hard;
    return std::nullopt;
}

}  // namespace lintgrade
