#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lintgrade/registry.hpp"
#include "lintgrade/taxonomy.hpp"

namespace lintgrade {

// Per-subcategory grading state: occurrence count for countables, worst
// observed metric for measurables.
struct SubcategoryTally {
    std::string subcategory_id;
    SubcatKind kind = SubcatKind::Countable;
    int count = 0;
    std::optional<double> worst_metric;
    Grade grade = Grade::Excellent;
    bool grading = true;
};

// count <= excellent_max -> EXCELLENT, <= good_max -> GOOD,
// <= moderate_max -> MODERATE, else BAD.
Grade grade_countable(int count, const SubcategorySpec& spec);

// Same ladder applied to the worst observed metric value.
Grade grade_measurable(double worst, const SubcategorySpec& spec);

// One tally per subcategory with at least one issue; untouched subcategories
// are implicitly EXCELLENT and not materialized. Throws UnknownSubcategory
// when an issue refers to a subcategory the registry does not know.
std::vector<SubcategoryTally> tally(const std::vector<Issue>& issues,
                                    const RuleRegistry& registry);

// Minimum grade over tallies of grading subcategories; EXCELLENT when none
// qualify.
Grade aggregate(const std::vector<SubcategoryTally>& tallies);

}  // namespace lintgrade
