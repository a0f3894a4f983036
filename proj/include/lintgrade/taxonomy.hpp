#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace lintgrade {

// Quality grades, ordered worst to best. The numeric value doubles as the
// report score.
enum class Grade : int {
    Bad = 0,
    Moderate = 1,
    Good = 2,
    Excellent = 3,
};

enum class IssueCategory : int {
    CodeStyle = 0,
    CodeComplexity = 1,
    ErrorProneness = 2,
    BestPractices = 3,
    MinorIssues = 4,  // never lowers a grade
};

inline constexpr int kCategoryCount = 5;

enum class Difficulty : int {
    Easy = 0,
    Medium = 1,
    Hard = 2,
};

// Smaller of two grades under BAD < MODERATE < GOOD < EXCELLENT.
Grade grade_min(Grade a, Grade b);

// EXCELLENT -> 3, GOOD -> 2, MODERATE -> 1, BAD -> 0.
int grade_to_score(Grade g);

std::string_view grade_name(Grade g);
std::optional<Grade> grade_from_name(std::string_view name);

std::string_view category_name(IssueCategory c);
std::optional<IssueCategory> category_from_name(std::string_view name);

// Only MINOR_ISSUES is exempt from grading.
bool category_grades(IssueCategory c);

std::string_view difficulty_name(Difficulty d);
std::optional<Difficulty> difficulty_from_name(std::string_view name);

// Per-rule penalty criteria, each component on a 0..2 scale.
struct PenaltyCriteria {
    int prevalence = 0;
    int difficulty = 0;
    int importance = 0;

    bool operator==(const PenaltyCriteria&) const = default;
};

// One finding as reported by an inspector, before registry classification.
// Columns are tool-native; 0 means unknown or start of line.
struct RawFinding {
    std::string inspector;
    std::string rule_id;
    int line = 1;
    int column = 0;
    std::string message;
    std::optional<double> metric_value;

    bool operator==(const RawFinding&) const = default;
};

// A classified finding. Category, difficulty and subcategory come from the
// registry descriptor for (inspector, rule_id); metric_value is carried
// through from the raw finding so measurable subcategories can be graded.
struct Issue {
    std::string rule_id;
    std::string inspector;
    int line = 1;
    int column = 0;
    std::string message;
    IssueCategory category = IssueCategory::CodeStyle;
    Difficulty difficulty = Difficulty::Easy;
    std::string subcategory_id;
    std::optional<double> metric_value;

    bool operator==(const Issue&) const = default;
};

}  // namespace lintgrade
