#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "lintgrade/errors.hpp"
#include "lintgrade/report.hpp"
#include "support/test_util.hpp"

using namespace lintgrade;

namespace {

std::vector<InspectorConfig> baseline_only() {
    return {{.inspector = "baseline", .executable = "", .extra_args = {},
             .timeout_seconds = 5.0, .enabled = true}};
}

Issue make_issue(const std::string& rule, Difficulty difficulty,
                 IssueCategory category = IssueCategory::CodeStyle) {
    Issue issue;
    issue.rule_id = rule;
    issue.inspector = "gen";
    issue.line = 1;
    issue.message = "original text";
    issue.category = category;
    issue.difficulty = difficulty;
    issue.subcategory_id = "s";
    return issue;
}

void check_report_schema(const QualityReport& report) {
    const auto schema = nlohmann::json::parse(
        testutil::read_file(testutil::schemas_dir() / "report.schema.json"));
    const auto doc = report_to_json(report);
    const auto errors = testutil::validate_against_schema(doc, schema);
    CAPTURE(doc.dump(2));
    for (const auto& error : errors) {
        FAIL_CHECK(error);
    }
    CHECK(doc["quality"]["score"].get<int>() ==
          grade_to_score(*grade_from_name(doc["quality"]["code"].get<std::string>())));
    CHECK(doc["statistics"]["total"].get<int>() == doc["issues"].size());
}

}  // namespace

TEST_CASE("filter_by_difficulty keeps issues at or below the level") {
    const std::vector<Issue> issues{make_issue("a", Difficulty::Easy),
                                    make_issue("b", Difficulty::Medium),
                                    make_issue("c", Difficulty::Hard)};
    const auto easy = filter_by_difficulty(issues, Difficulty::Easy);
    REQUIRE(easy.size() == 1);
    CHECK(easy[0].rule_id == "a");

    CHECK(filter_by_difficulty(issues, Difficulty::Hard) == issues);
    CHECK(filter_by_difficulty({}, Difficulty::Easy).empty());
}

TEST_CASE("difficulty filters are nested over random issue sets") {
    std::mt19937 rng(20240804);
    for (int round = 0; round < 1000; ++round) {
        const RuleRegistry registry = testutil::random_registry(rng);
        const std::vector<Issue> issues = testutil::random_issues(rng, registry, 10);
        const auto easy = filter_by_difficulty(issues, Difficulty::Easy);
        const auto medium = filter_by_difficulty(issues, Difficulty::Medium);
        const auto hard = filter_by_difficulty(issues, Difficulty::Hard);

        CHECK(hard == issues);
        CHECK(easy.size() <= medium.size());
        CHECK(medium.size() <= hard.size());
        // Nesting: every easy issue appears in medium, every medium in hard.
        for (const Issue& i : easy) {
            CHECK(std::count(medium.begin(), medium.end(), i) >=
                  std::count(easy.begin(), easy.end(), i));
        }
        for (const Issue& i : medium) {
            CHECK(std::count(hard.begin(), hard.end(), i) >=
                  std::count(medium.begin(), medium.end(), i));
        }
    }
}

TEST_CASE("resolve_message prefers the catalog entry") {
    MessageCatalog catalog;
    catalog.entries[{"gen", "a"}] = "friendly explanation";

    const Issue with_entry = make_issue("a", Difficulty::Easy);
    const Issue without_entry = make_issue("b", Difficulty::Easy);
    CHECK(resolve_message(with_entry, catalog) == "friendly explanation");
    CHECK(resolve_message(without_entry, catalog) == "original text");
    CHECK(resolve_message(with_entry, MessageCatalog{}) == "original text");
}

TEST_CASE("catalog is collected from registry custom messages") {
    const RuleRegistry registry =
        RuleRegistry::load(testutil::configs_dir() / "registry_python.json");
    const MessageCatalog catalog = MessageCatalog::from_registry(registry);
    CHECK(catalog.entries.contains(IssueKey{"baseline", "BL005"}));
    CHECK(!catalog.entries.contains(IssueKey{"flake8", "E501"}));
    for (const auto& [key, text] : catalog.entries) {
        CHECK(!text.empty());
    }
}

TEST_CASE("build_report on a clean file") {
    const RuleRegistry registry =
        RuleRegistry::load(testutil::configs_dir() / "registry_python.json");
    testutil::TempDir dir;
    const auto file = dir.path() / "clean.py";
    testutil::write_file(file, "");

    const QualityReport report = build_report(file, "python", registry, baseline_only());
    CHECK(report.grade == Grade::Excellent);
    CHECK(report.score == 3);
    CHECK(report.issues.empty());
    CHECK(report.stats_total == 0);
    CHECK(!report.penalty.has_value());
    CHECK(!report.summary.empty());
    check_report_schema(report);
}

TEST_CASE("build_report resolves custom messages and counts categories") {
    const RuleRegistry registry =
        RuleRegistry::load(testutil::configs_dir() / "registry_python.json");
    testutil::TempDir dir;
    const auto file = dir.path() / "flagged.py";
    testutil::write_file(file, "def f(a):\n    if a == True:\n        return 1\n    return 0\n");

    const QualityReport report = build_report(file, "python", registry, baseline_only());
    REQUIRE(report.stats_total == 1);
    CHECK(report.issues[0].rule_id == "BL005");
    CHECK(report.issues[0].message ==
          "Do not compare with boolean literals: use the value itself or negate it.");
    CHECK(report.stats_by_category.at("BEST_PRACTICES") == 1);
    CHECK(report.stats_by_category.at("CODE_STYLE") == 0);
    CHECK(report.grade == Grade::Good);  // bool_idioms count 1, thresholds (0,2,5)
    check_report_schema(report);
}

TEST_CASE("difficulty filtering happens before grading") {
    const RuleRegistry registry =
        RuleRegistry::load(testutil::configs_dir() / "registry_python.json");
    testutil::TempDir dir;
    const auto file = dir.path() / "hard_only.py";
    // BL004 (HARD) wants a 41+ line function body; everything else stays clean.
    std::string source = "def long_function():\n";
    for (int i = 0; i < 45; ++i) source += "    v" + std::to_string(i) + " = 1\n";
    testutil::write_file(file, source);

    ReportOptions easy;
    easy.level = Difficulty::Easy;
    const QualityReport filtered =
        build_report(file, "python", registry, baseline_only(), easy);
    CHECK(filtered.stats_total == 0);
    CHECK(filtered.grade == Grade::Excellent);  // hidden issues do not grade

    const QualityReport full = build_report(file, "python", registry, baseline_only());
    CHECK(full.stats_total == 1);
    CHECK(full.grade == Grade::Good);  // worst 45 against thresholds (40, 60, 100)
    check_report_schema(full);
}

TEST_CASE("history round-trips through the store and penalizes recurrences") {
    const RuleRegistry registry =
        RuleRegistry::load(testutil::configs_dir() / "registry_python.json");
    testutil::TempDir dir;
    testutil::TempDir history_dir;
    HistoryStore store(history_dir.path());

    const auto scenario = testutil::fixtures_dir() / "history_scenario";

    ReportOptions options;
    options.store = &store;
    options.student_id = "student-1";

    const QualityReport first =
        build_report(scenario / "submission1.py", "python", registry, baseline_only(), options);
    REQUIRE(first.penalty.has_value());
    CHECK(first.penalty->coefficient == 0.0);  // no prior history
    CHECK(first.grade == first.penalty->final_grade);

    const QualityReport second =
        build_report(scenario / "submission2.py", "python", registry, baseline_only(), options);
    REQUIRE(second.penalty.has_value());
    CHECK(second.penalty->coefficient > 0.0);  // BL005 recurred

    const QualityReport third =
        build_report(scenario / "submission3.py", "python", registry, baseline_only(), options);
    REQUIRE(third.penalty.has_value());
    CHECK(third.penalty->coefficient == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(third.grade == Grade::Moderate);
    CHECK(third.penalty->influencing_rules.contains(IssueKey{"baseline", "BL005"}));
    check_report_schema(third);

    SUBCASE("the same submission without history keeps the pre-penalty grade") {
        const QualityReport no_history =
            build_report(scenario / "submission3.py", "python", registry, baseline_only());
        CHECK(no_history.grade == Grade::Good);
        CHECK(!no_history.penalty.has_value());
    }

    SUBCASE("stored records keep unfiltered issues") {
        const auto loaded = store.load_window("student-1", "python", 10);
        REQUIRE(loaded.records.size() == 3);
        // submission3 has two BL005 findings
        CHECK(loaded.records[0].issue_keys ==
              std::vector<IssueKey>{{"baseline", "BL005"}, {"baseline", "BL005"}});
    }

    SUBCASE("records store issues hidden by the difficulty filter") {
        ReportOptions easy = options;
        easy.level = Difficulty::Easy;  // BL005 is MEDIUM, so it is filtered out
        const QualityReport filtered = build_report(scenario / "submission3.py", "python",
                                                    registry, baseline_only(), easy);
        CHECK(filtered.stats_total == 0);
        CHECK(filtered.grade == Grade::Excellent);

        const auto loaded = store.load_window("student-1", "python", 10);
        REQUIRE(loaded.records.size() == 4);
        CHECK(loaded.records[0].issue_keys ==
              std::vector<IssueKey>{{"baseline", "BL005"}, {"baseline", "BL005"}});
    }
}

TEST_CASE("repeated E501 across prior submissions drops GOOD to MODERATE") {
    const RuleRegistry registry =
        RuleRegistry::load(testutil::configs_dir() / "registry_python.json");
    testutil::TempDir dir;
    testutil::TempDir history_root;
    HistoryStore store(history_root.path());

    const auto file = dir.path() / "long.py";
    testutil::write_file(file, "x = 1\ny = 2\n");

    // A stand-in flake8 reporting two overlong lines.
    InspectorConfig fake;
    fake.inspector = "flake8";
    fake.executable = "/bin/sh";
    fake.extra_args = {"-c",
                       "printf 'long.py:1:80: E501 line too long (90 > 79 characters)\\n"
                       "long.py:2:80: E501 line too long (85 > 79 characters)\\n'"};
    fake.timeout_seconds = 5.0;
    const std::vector<InspectorConfig> configs{fake};

    // Two prior submissions already carried E501.
    for (int i = 0; i < 2; ++i) {
        SubmissionRecord prior;
        prior.student_id = "e501-student";
        prior.language = "python";
        prior.timestamp = std::chrono::system_clock::now();
        prior.issue_keys = {{"flake8", "E501"}};
        store.append(prior);
    }

    ReportOptions options;
    options.store = &store;
    options.student_id = "e501-student";
    const QualityReport report = build_report(file, "python", registry, configs, options);

    // long_lines criteria (2,0,1) -> coefficient 1.5; 2*1.5 / (3*2) = 0.5
    REQUIRE(report.penalty.has_value());
    CHECK(report.penalty->coefficient == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(report.penalty->influencing_rules.contains(IssueKey{"flake8", "E501"}));
    CHECK(report.grade == Grade::Moderate);  // pre-penalty GOOD, one level down

    const QualityReport no_history = build_report(file, "python", registry, configs);
    CHECK(no_history.grade == Grade::Good);
}

TEST_CASE("issues with an empty linter message get a fallback text") {
    const RuleRegistry registry =
        RuleRegistry::load(testutil::configs_dir() / "registry_python.json");
    testutil::TempDir dir;
    const auto file = dir.path() / "e.py";
    testutil::write_file(file, "x = 1\n");

    // A fake flake8 whose finding has an empty message part.
    std::vector<InspectorConfig> configs;
    InspectorConfig fake;
    fake.inspector = "flake8";
    fake.executable = "/bin/sh";
    fake.extra_args = {"-c", "printf 'e.py:1:1: E501 \\n'"};
    fake.timeout_seconds = 5.0;
    configs.push_back(fake);

    const QualityReport report = build_report(file, "python", registry, configs);
    REQUIRE(report.stats_total == 1);
    CHECK(!report.issues[0].message.empty());
    check_report_schema(report);
}

TEST_CASE("reports are deterministic and serialization is stable") {
    const RuleRegistry registry =
        RuleRegistry::load(testutil::configs_dir() / "registry_python.json");
    testutil::TempDir dir;
    const auto file = dir.path() / "s.py";
    testutil::write_file(file, "x = 1 \ny = 2\t\nif x == True:\n    pass\n");

    const QualityReport a = build_report(file, "python", registry, baseline_only());
    const QualityReport b = build_report(file, "python", registry, baseline_only());
    CHECK(report_to_document(a) == report_to_document(b));
    CHECK(report_to_document(a).back() == '\n');
    check_report_schema(a);
}

TEST_CASE("grade_source_text matches build_report on a real file") {
    const RuleRegistry registry =
        RuleRegistry::load(testutil::configs_dir() / "registry_python.json");
    const std::string source = "if a == True:\n    pass\n";

    const QualityReport from_text =
        grade_source_text(source, "python", registry, baseline_only());

    testutil::TempDir dir;
    const auto file = dir.path() / "t.py";
    testutil::write_file(file, source);
    const QualityReport from_file = build_report(file, "python", registry, baseline_only());

    CHECK(report_to_document(from_text) == report_to_document(from_file));
}
