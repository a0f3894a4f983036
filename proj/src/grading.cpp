#include "lintgrade/grading.hpp"

#include <algorithm>
#include <map>

#include "lintgrade/errors.hpp"

namespace lintgrade {

namespace {

Grade threshold_ladder(double value, const SubcategorySpec& spec) {
    if (value <= spec.excellent_max) return Grade::Excellent;
    if (value <= spec.good_max) return Grade::Good;
    if (value <= spec.moderate_max) return Grade::Moderate;
    return Grade::Bad;
}

}  // namespace

Grade grade_countable(int count, const SubcategorySpec& spec) {
    return threshold_ladder(static_cast<double>(count), spec);
}

Grade grade_measurable(double worst, const SubcategorySpec& spec) {
    return threshold_ladder(worst, spec);
}

std::vector<SubcategoryTally> tally(const std::vector<Issue>& issues,
                                    const RuleRegistry& registry) {
    std::map<std::string, SubcategoryTally> by_subcat;
    for (const Issue& issue : issues) {
        const SubcategorySpec* spec = registry.find_subcategory(issue.subcategory_id);
        if (spec == nullptr) {
            throw UnknownSubcategory("issue " + issue.inspector + "/" + issue.rule_id +
                                     " refers to unknown subcategory '" + issue.subcategory_id +
                                     "'");
        }
        SubcategoryTally& t = by_subcat[issue.subcategory_id];
        if (t.count == 0) {
            t.subcategory_id = issue.subcategory_id;
            t.kind = spec->kind;
            t.grading = spec->grading;
        }
        ++t.count;
        if (spec->kind == SubcatKind::Measurable) {
            // Findings that carry no metric still count; they contribute 0 to
            // the worst value.
            const double v = issue.metric_value.value_or(0.0);
            t.worst_metric = std::max(t.worst_metric.value_or(0.0), v);
        }
    }

    std::vector<SubcategoryTally> tallies;
    tallies.reserve(by_subcat.size());
    for (auto& [id, t] : by_subcat) {
        const SubcategorySpec* spec = registry.find_subcategory(id);
        t.grade = t.kind == SubcatKind::Measurable ? grade_measurable(*t.worst_metric, *spec)
                                                   : grade_countable(t.count, *spec);
        tallies.push_back(std::move(t));
    }
    return tallies;
}

Grade aggregate(const std::vector<SubcategoryTally>& tallies) {
    Grade result = Grade::Excellent;
    for (const SubcategoryTally& t : tallies) {
        if (!t.grading) continue;
        result = grade_min(result, t.grade);
    }
    return result;
}

}  // namespace lintgrade
