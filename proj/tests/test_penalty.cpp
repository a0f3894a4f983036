#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "json.hpp"
#include "lintgrade/penalty.hpp"
#include "support/test_util.hpp"

using namespace lintgrade;

namespace {

// One rule per subcategory so the subcategory criteria equal the rule's.
RuleRegistry registry_with_criteria(const std::vector<PenaltyCriteria>& criteria) {
    using nlohmann::json;
    json subcats = json::array();
    json rules = json::array();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const std::string id = "sub" + std::to_string(i);
        subcats.push_back(json{{"id", id},
                               {"name", id},
                               {"category", "CODE_STYLE"},
                               {"kind", "COUNTABLE"},
                               {"thresholds", {0, 2, 5}},
                               {"grading", true}});
        rules.push_back(json{{"inspector", "gen"},
                             {"rule_id", "R" + std::to_string(i)},
                             {"subcategory", id},
                             {"difficulty", "EASY"},
                             {"penalty", {criteria[i].prevalence, criteria[i].difficulty,
                                          criteria[i].importance}},
                             {"enabled", true}});
    }
    const json doc{{"language", "python"}, {"subcategories", subcats}, {"rules", rules}};
    return RuleRegistry::from_json_text(doc.dump(), "<criteria>");
}

Issue issue_in(const RuleRegistry& registry, std::size_t subcat_index) {
    const std::string rule_id = "R" + std::to_string(subcat_index);
    const RuleDescriptor* rule = registry.find_rule("gen", rule_id);
    REQUIRE(rule != nullptr);
    Issue issue;
    issue.rule_id = rule->rule_id;
    issue.inspector = rule->inspector;
    issue.line = 1;
    issue.message = "m";
    issue.category = rule->category;
    issue.difficulty = rule->difficulty;
    issue.subcategory_id = rule->subcategory_id;
    return issue;
}

SubmissionRecord record_with(std::vector<IssueKey> keys) {
    SubmissionRecord r;
    r.student_id = "s";
    r.language = "python";
    r.timestamp = std::chrono::system_clock::now();
    r.issue_keys = std::move(keys);
    return r;
}

}  // namespace

TEST_CASE("rule_coefficient is sum over max with a guarded zero") {
    CHECK(rule_coefficient({0, 0, 0}) == 0.0);
    CHECK(rule_coefficient({2, 2, 2}) == 3.0);
    CHECK(rule_coefficient({2, 1, 0}) == doctest::Approx(1.5).epsilon(1e-12));

    SUBCASE("full grid against the direct formula") {
        for (int p = 0; p <= 2; ++p) {
            for (int d = 0; d <= 2; ++d) {
                for (int i = 0; i <= 2; ++i) {
                    const int mx = std::max({p, d, i});
                    const double expected = mx == 0 ? 0.0 : static_cast<double>(p + d + i) / mx;
                    CHECK(rule_coefficient({p, d, i}) == doctest::Approx(expected).epsilon(1e-12));
                    const double c = rule_coefficient({p, d, i});
                    CHECK((c == 0.0 || (c >= 1.0 && c <= 3.0)));
                }
            }
        }
    }
}

TEST_CASE("find_recurring matches keys within the window") {
    const RuleRegistry registry = registry_with_criteria({{2, 1, 1}, {1, 1, 1}});
    const Issue a = issue_in(registry, 0);
    const Issue b = issue_in(registry, 1);

    SUBCASE("both occurrences of a repeated rule are returned") {
        const std::vector<SubmissionRecord> history{record_with({{"gen", "R0"}})};
        const auto recurring = find_recurring({a, a, b}, history, 10);
        REQUIRE(recurring.size() == 2);
        CHECK(recurring[0].rule_id == "R0");
        CHECK(recurring[1].rule_id == "R0");
    }

    SUBCASE("empty history or current yields empty") {
        CHECK(find_recurring({a}, {}, 10).empty());
        CHECK(find_recurring({}, {record_with({{"gen", "R0"}})}, 10).empty());
    }

    SUBCASE("keys outside the window do not count") {
        const std::vector<SubmissionRecord> history{record_with({{"gen", "R1"}}),
                                                    record_with({{"gen", "R0"}})};
        const auto recurring = find_recurring({a}, history, 1);
        CHECK(recurring.empty());  // R0 only in the older record
        CHECK(find_recurring({a}, history, 2).size() == 1);
    }
}

TEST_CASE("penalty_coefficient normalization") {
    SUBCASE("no recurring issues yields 0") {
        const RuleRegistry registry = registry_with_criteria({{2, 2, 2}});
        CHECK(penalty_coefficient({}, registry) == 0.0);
    }

    SUBCASE("uniform maximal criteria saturate at 1") {
        const RuleRegistry registry = registry_with_criteria({{2, 2, 2}});
        const std::vector<Issue> recurring(4, issue_in(registry, 0));
        CHECK(penalty_coefficient(recurring, registry) == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("mixed criteria weighted mean") {
        // two issues with coefficient 3 and two with 1.5: (6 + 3) / 12 = 0.75
        const RuleRegistry registry = registry_with_criteria({{1, 1, 1}, {2, 1, 0}});
        std::vector<Issue> recurring{issue_in(registry, 0), issue_in(registry, 0),
                                     issue_in(registry, 1), issue_in(registry, 1)};
        CHECK(penalty_coefficient(recurring, registry) ==
              doctest::Approx(0.75).epsilon(1e-12));
    }

    SUBCASE("permutation invariance and duplication invariance") {
        std::mt19937 rng(99);
        const RuleRegistry registry =
            registry_with_criteria({{2, 1, 1}, {1, 1, 1}, {2, 0, 0}});
        std::vector<Issue> recurring{issue_in(registry, 0), issue_in(registry, 1),
                                     issue_in(registry, 1), issue_in(registry, 2)};
        const double base = penalty_coefficient(recurring, registry);
        for (int i = 0; i < 20; ++i) {
            std::shuffle(recurring.begin(), recurring.end(), rng);
            CHECK(penalty_coefficient(recurring, registry) ==
                  doctest::Approx(base).epsilon(1e-12));
        }
        std::vector<Issue> doubled = recurring;
        doubled.insert(doubled.end(), recurring.begin(), recurring.end());
        CHECK(penalty_coefficient(doubled, registry) == doctest::Approx(base).epsilon(1e-12));
    }

    SUBCASE("subcategory criteria are the componentwise max over member rules") {
        using nlohmann::json;
        const char* doc = R"({
            "language": "python",
            "subcategories": [{"id": "s", "name": "S", "category": "CODE_STYLE",
                               "kind": "COUNTABLE", "thresholds": [0, 2, 5], "grading": true}],
            "rules": [
                {"inspector": "gen", "rule_id": "A", "subcategory": "s",
                 "difficulty": "EASY", "penalty": [2, 0, 0], "enabled": true},
                {"inspector": "gen", "rule_id": "B", "subcategory": "s",
                 "difficulty": "EASY", "penalty": [0, 1, 1], "enabled": true}]
        })";
        const RuleRegistry registry = RuleRegistry::from_json_text(doc, "<max>");
        const PenaltyCriteria merged = registry.subcategory_criteria("s");
        CHECK(merged == PenaltyCriteria{2, 1, 1});
        // coefficient uses the merged criteria: (2+1+1)/2 = 2 -> 2/3
        Issue a;
        a.rule_id = "A";
        a.inspector = "gen";
        a.line = 1;
        a.subcategory_id = "s";
        CHECK(penalty_coefficient({a}, registry) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    }

    SUBCASE("non-grading subcategories never contribute") {
        const char* doc = R"({
            "language": "python",
            "subcategories": [
                {"id": "minor", "name": "Minor", "category": "MINOR_ISSUES",
                 "kind": "COUNTABLE", "thresholds": [0, 5, 10], "grading": false}],
            "rules": [
                {"inspector": "gen", "rule_id": "M", "subcategory": "minor",
                 "difficulty": "EASY", "penalty": [2, 2, 2], "enabled": true}]
        })";
        const RuleRegistry registry = RuleRegistry::from_json_text(doc, "<minor>");
        Issue m;
        m.rule_id = "M";
        m.inspector = "gen";
        m.line = 1;
        m.category = IssueCategory::MinorIssues;
        m.subcategory_id = "minor";
        CHECK(penalty_coefficient({m, m, m}, registry) == 0.0);

        const PenaltyResult result =
            compute_penalty(Grade::Good, {m, m, m},
                            {record_with({{"gen", "M"}})}, 10, registry);
        CHECK(result.coefficient == 0.0);
        CHECK(result.final_grade == Grade::Good);
        CHECK(result.recurring_counts.empty());
        CHECK(result.influencing_rules.empty());
    }
}

TEST_CASE("penalty_coefficient equals the brute-force oracle on small instances") {
    // Exhaustive over <= 3 subcategories, one criteria triple each, <= 6 issues.
    std::vector<PenaltyCriteria> all_criteria;
    for (int p = 0; p <= 2; ++p)
        for (int d = 0; d <= 2; ++d)
            for (int i = 0; i <= 2; ++i) all_criteria.push_back({p, d, i});

    std::mt19937 rng(4242);
    std::uniform_int_distribution<std::size_t> pick(0, all_criteria.size() - 1);

    for (int round = 0; round < 500; ++round) {
        const std::vector<PenaltyCriteria> criteria{all_criteria[pick(rng)],
                                                    all_criteria[pick(rng)],
                                                    all_criteria[pick(rng)]};
        const RuleRegistry registry = registry_with_criteria(criteria);
        std::uniform_int_distribution<int> count(0, 6);
        int n0 = count(rng), n1 = count(rng), n2 = count(rng);
        while (n0 + n1 + n2 > 6) {
            n0 = count(rng);
            n1 = count(rng);
            n2 = count(rng);
        }
        std::vector<Issue> recurring;
        for (int i = 0; i < n0; ++i) recurring.push_back(issue_in(registry, 0));
        for (int i = 0; i < n1; ++i) recurring.push_back(issue_in(registry, 1));
        for (int i = 0; i < n2; ++i) recurring.push_back(issue_in(registry, 2));

        // Oracle: recompute the weighted sum straight from the raw criteria.
        double weighted = 0.0;
        int total = 0;
        const int counts[] = {n0, n1, n2};
        for (int s = 0; s < 3; ++s) {
            if (counts[s] == 0) continue;
            const auto& c = criteria[s];
            const int mx = std::max({c.prevalence, c.difficulty, c.importance});
            const double coeff =
                mx == 0 ? 0.0
                        : static_cast<double>(c.prevalence + c.difficulty + c.importance) / mx;
            weighted += counts[s] * coeff;
            total += counts[s];
        }
        const double expected =
            total == 0 ? 0.0 : std::clamp(weighted / (3.0 * total), 0.0, 1.0);

        CHECK(penalty_coefficient(recurring, registry) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("apply_penalty grade reduction ladder") {
    CHECK(apply_penalty(Grade::Good, 0.6) == Grade::Moderate);
    CHECK(apply_penalty(Grade::Excellent, 0.9) == Grade::Bad);
    CHECK(apply_penalty(Grade::Bad, 0.3) == Grade::Bad);
    CHECK(apply_penalty(Grade::Moderate, 0.5) == Grade::Bad);

    SUBCASE("monotone non-increasing in the coefficient") {
        for (Grade g : {Grade::Bad, Grade::Moderate, Grade::Good, Grade::Excellent}) {
            Grade previous = g;
            for (double c = 0.0; c <= 1.0001; c += 0.01) {
                const Grade now = apply_penalty(g, std::min(c, 1.0));
                CHECK(static_cast<int>(now) <= static_cast<int>(previous));
                CHECK(static_cast<int>(now) <= static_cast<int>(g));
                previous = now;
            }
        }
    }
}

TEST_CASE("compute_penalty assembles counts, rules and the final grade") {
    const RuleRegistry registry = registry_with_criteria({{2, 1, 1}});
    const Issue a = issue_in(registry, 0);
    const std::vector<SubmissionRecord> history{record_with({{"gen", "R0"}})};

    const PenaltyResult result = compute_penalty(Grade::Good, {a, a}, history, 10, registry);
    CHECK(result.coefficient == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(result.final_grade == Grade::Moderate);
    REQUIRE(result.recurring_counts.size() == 1);
    CHECK(result.recurring_counts.at("sub0") == 2);
    REQUIRE(result.influencing_rules.size() == 1);
    CHECK(result.influencing_rules.contains(IssueKey{"gen", "R0"}));

    SUBCASE("no recurrence keeps the grade and empty details") {
        const PenaltyResult clean = compute_penalty(Grade::Good, {a}, {}, 10, registry);
        CHECK(clean.coefficient == 0.0);
        CHECK(clean.final_grade == Grade::Good);
        CHECK(clean.recurring_counts.empty());
        CHECK(clean.influencing_rules.empty());
    }
}
