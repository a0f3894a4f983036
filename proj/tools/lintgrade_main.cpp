#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "httplib.h"
#include "lintgrade/baseline.hpp"
#include "lintgrade/config_paths.hpp"
#include "lintgrade/corpus.hpp"
#include "lintgrade/errors.hpp"
#include "lintgrade/inspectors.hpp"
#include "lintgrade/registry.hpp"
#include "lintgrade/report.hpp"
#include "lintgrade/service.hpp"

namespace {

using namespace lintgrade;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
    std::string language = "python";
    std::string level = "hard";
    std::string registry_file;
    std::string inspectors_file;
    std::string history_dir;
    std::string student;
    bool no_external = false;
    int window = kDefaultHistoryWindow;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt, bool with_history) {
    cmd->add_option("--language", opt.language, "Submission language")
        ->check(CLI::IsMember({"python", "java"}));
    cmd->add_option("--level", opt.level, "Difficulty level of reported issues")
        ->check(CLI::IsMember({"easy", "medium", "hard"}));
    cmd->add_option("--registry", opt.registry_file, "Rule registry file");
    cmd->add_option("--inspectors", opt.inspectors_file, "Inspector configuration file");
    cmd->add_flag("--no-external", opt.no_external,
                  "Run only the built-in baseline inspector");
    if (with_history) {
        cmd->add_option("--history-dir", opt.history_dir,
                        "Submission history root (enables the recurring-error penalty)");
        cmd->add_option("--student", opt.student, "Student identifier for history lookups");
        cmd->add_option("--window", opt.window,
                        "Number of recent submissions considered for recurrence (0 disables)")
            ->check(CLI::NonNegativeNumber);
    }
}

Difficulty parse_level(const std::string& level) {
    if (level == "easy") return Difficulty::Easy;
    if (level == "medium") return Difficulty::Medium;
    return Difficulty::Hard;
}

RuleRegistry load_registry_or_throw(const CommonOptions& opt) {
    const std::filesystem::path path = opt.registry_file.empty()
                                           ? default_registry_path(opt.language)
                                           : std::filesystem::path(opt.registry_file);
    return RuleRegistry::load(path);
}

std::vector<InspectorConfig> load_configs_or_default(const CommonOptions& opt) {
    std::vector<InspectorConfig> configs;
    if (!opt.inspectors_file.empty()) {
        configs = load_inspector_configs(opt.inspectors_file);
    } else if (std::filesystem::exists(default_inspectors_path(opt.language))) {
        configs = load_inspector_configs(default_inspectors_path(opt.language));
    } else {
        configs = default_inspector_configs(opt.language);
    }
    if (opt.no_external) {
        std::erase_if(configs, [](const InspectorConfig& c) {
            return c.inspector != kBaselineInspector;
        });
    }
    return configs;
}

int cmd_grade(const CommonOptions& opt, const std::string& path) {
    if (!opt.history_dir.empty() && opt.student.empty()) {
        std::cerr << "error: --history-dir requires --student\n";
        return kExitUsage;
    }
    const RuleRegistry registry = load_registry_or_throw(opt);
    const std::vector<InspectorConfig> configs = load_configs_or_default(opt);

    ReportOptions options;
    options.level = parse_level(opt.level);
    options.history_window = opt.window;
    std::optional<HistoryStore> store;
    if (!opt.history_dir.empty() && opt.window > 0) {
        store.emplace(opt.history_dir);
        options.store = &*store;
        options.student_id = opt.student;
    }

    const QualityReport report = build_report(path, opt.language, registry, configs, options);
    std::cout << report_to_document(report);
    return kExitOk;
}

int cmd_batch(const CommonOptions& opt, const std::string& corpus_dir) {
    const RuleRegistry registry = load_registry_or_throw(opt);
    const std::vector<InspectorConfig> configs = load_configs_or_default(opt);

    BatchOptions options;
    options.level = parse_level(opt.level);
    options.history_window = opt.window;
    if (!opt.history_dir.empty()) options.history_dir = opt.history_dir;

    const CorpusStats stats = run_batch(corpus_dir, opt.language, registry, configs, options);
    std::cout << corpus_stats_to_json(stats).dump(2) << "\n";
    return kExitOk;
}

int cmd_distribution(const CommonOptions& opt, const std::string& corpus_dir) {
    const RuleRegistry registry = load_registry_or_throw(opt);
    const std::vector<InspectorConfig> configs = load_configs_or_default(opt);
    const DistributionStats stats =
        run_distribution(corpus_dir, opt.language, registry, configs, parse_level(opt.level));
    std::cout << distribution_to_json(stats).dump(2) << "\n";
    return kExitOk;
}

int cmd_rules(const std::string& language) {
    const std::filesystem::path path = default_registry_path(language);
    if (!std::filesystem::exists(path)) {
        std::cerr << "error: no registry shipped for language '" << language << "' (looked at "
                  << path.string() << ")\n";
        return kExitUsage;
    }
    const RuleRegistry registry = RuleRegistry::load(path);
    std::printf("%-10s %-28s %-16s %-22s %-8s %s\n", "INSPECTOR", "RULE", "CATEGORY",
                "SUBCATEGORY", "LEVEL", "CRITERIA");
    int rows = 0;
    for (const RuleDescriptor& rule : registry.rules()) {
        if (!rule.enabled) continue;
        std::printf("%-10s %-28s %-16s %-22s %-8s %d/%d/%d\n", rule.inspector.c_str(),
                    rule.rule_id.c_str(), std::string(category_name(rule.category)).c_str(),
                    rule.subcategory_id.c_str(),
                    std::string(difficulty_name(rule.difficulty)).c_str(),
                    rule.penalty.prevalence, rule.penalty.difficulty, rule.penalty.importance);
        ++rows;
    }
    std::fprintf(stderr, "%d enabled rules for %s\n", rows, registry.language().c_str());
    return kExitOk;
}

int cmd_serve(const CommonOptions& opt, int port) {
    ServiceContext context;
    for (const std::string& language : {std::string("python"), std::string("java")}) {
        const std::filesystem::path path = default_registry_path(language);
        if (!std::filesystem::exists(path)) continue;
        context.registries.emplace(language, RuleRegistry::load(path));
        CommonOptions lang_opt = opt;
        lang_opt.language = language;
        context.inspectors.emplace(language, load_configs_or_default(lang_opt));
    }
    if (context.registries.empty()) {
        std::cerr << "error: no registries found under " << default_config_dir().string() << "\n";
        return kExitIo;
    }
    if (!opt.history_dir.empty()) context.store.emplace(opt.history_dir);
    context.history_window = opt.window;

    httplib::Server server;
    register_routes(server, context);
    std::cerr << "listening on port " << port << "\n";
    if (!server.listen("0.0.0.0", port)) {
        std::cerr << "error: cannot listen on port " << port << "\n";
        return kExitIo;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Code quality grading for student submissions"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string path;
    std::string corpus_dir;
    std::string rules_language;
    int port = 8080;

    CLI::App* grade = app.add_subcommand("grade", "Grade one submission and print the report");
    grade->add_option("path", path, "Source file")->required();
    add_common_flags(grade, opt, true);

    CLI::App* batch = app.add_subcommand(
        "batch", "Grade a corpus (<student>/<submission> layout) and print per-student medians");
    batch->add_option("dir", corpus_dir, "Corpus root directory")->required();
    add_common_flags(batch, opt, true);

    CLI::App* distribution = app.add_subcommand(
        "distribution", "Per-subcategory value distributions and grade bands over a corpus");
    distribution->add_option("dir", corpus_dir, "Corpus root directory")->required();
    add_common_flags(distribution, opt, false);

    CLI::App* rules = app.add_subcommand("rules", "List the enabled rules of a shipped registry");
    rules->add_option("language", rules_language, "Language of the registry")->required();

    CLI::App* serve = app.add_subcommand("serve", "Run the HTTP grading service");
    serve->add_option("--port", port, "TCP port")->required();
    add_common_flags(serve, opt, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(grade)) return cmd_grade(opt, path);
        if (app.got_subcommand(batch)) return cmd_batch(opt, corpus_dir);
        if (app.got_subcommand(distribution)) return cmd_distribution(opt, corpus_dir);
        if (app.got_subcommand(rules)) return cmd_rules(rules_language);
        if (app.got_subcommand(serve)) return cmd_serve(opt, port);
    } catch (const UnknownSubcategory& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
