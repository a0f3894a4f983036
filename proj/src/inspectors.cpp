#include "lintgrade/inspectors.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"
#include "lintgrade/baseline.hpp"
#include "lintgrade/errors.hpp"

namespace lintgrade {

using nlohmann::json;

namespace {

void warn(std::vector<std::string>* warnings, std::string message) {
    if (warnings != nullptr) warnings->push_back(std::move(message));
}

}  // namespace

std::vector<InspectorConfig> load_inspector_configs(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open inspector config: " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("inspectors") || !doc["inspectors"].is_array()) {
        throw ParseError(path.string() + ": expected an object with an 'inspectors' array");
    }

    std::vector<InspectorConfig> configs;
    for (const json& entry : doc["inspectors"]) {
        if (!entry.is_object() || !entry.contains("inspector") ||
            !entry["inspector"].is_string()) {
            throw ParseError(path.string() + ": every inspector entry needs an 'inspector' name");
        }
        InspectorConfig cfg;
        cfg.inspector = entry["inspector"].get<std::string>();
        cfg.executable = entry.value("executable", cfg.inspector);
        if (entry.contains("extra_args")) {
            for (const json& arg : entry["extra_args"]) {
                if (!arg.is_string()) {
                    throw ParseError(path.string() + ": extra_args must be strings");
                }
                cfg.extra_args.push_back(arg.get<std::string>());
            }
        }
        cfg.timeout_seconds = entry.value("timeout_seconds", 30.0);
        if (cfg.timeout_seconds <= 0) {
            throw ValidationError(path.string() + ": timeout_seconds must be > 0");
        }
        cfg.enabled = entry.value("enabled", true);
        configs.push_back(std::move(cfg));
    }
    return configs;
}

std::vector<InspectorConfig> default_inspector_configs(const std::string& language) {
    std::vector<InspectorConfig> configs;
    configs.push_back({.inspector = "baseline", .executable = "", .extra_args = {},
                       .timeout_seconds = 30.0, .enabled = true});
    if (language == "python") {
        configs.push_back({.inspector = "flake8", .executable = "flake8", .extra_args = {},
                           .timeout_seconds = 60.0, .enabled = true});
        configs.push_back({.inspector = "pylint", .executable = "pylint", .extra_args = {},
                           .timeout_seconds = 120.0, .enabled = true});
    } else if (language == "java") {
        configs.push_back({.inspector = "checkstyle", .executable = "checkstyle",
                           .extra_args = {"-c", "/google_checks.xml"},
                           .timeout_seconds = 120.0, .enabled = true});
        configs.push_back({.inspector = "pmd", .executable = "pmd",
                           .extra_args = {"-R", "rulesets/java/quickstart.xml"},
                           .timeout_seconds = 120.0, .enabled = true});
    }
    return configs;
}

bool inspector_supports(std::string_view inspector, std::string_view language) {
    if (inspector == kBaselineInspector) return true;
    if (inspector == "flake8" || inspector == "pylint") return language == "python";
    if (inspector == "checkstyle" || inspector == "pmd") return language == "java";
    return false;
}

namespace {

// Pinned argument lists forcing each tool into the output format the parsers
// expect. The source path is appended last (after "-d" for PMD).
std::vector<std::string> canonical_args(const std::string& inspector) {
    if (inspector == "pylint") return {"--output-format=json", "--score=n"};
    if (inspector == "checkstyle") return {"-f", "xml"};
    if (inspector == "pmd") return {"-no-cache", "-f", "xml"};
    return {};
}

bool is_executable_file(const std::filesystem::path& p) {
    std::error_code ec;
    return std::filesystem::is_regular_file(p, ec) && ::access(p.c_str(), X_OK) == 0;
}

std::string resolve_executable(const std::string& executable) {
    if (executable.find('/') != std::string::npos) {
        if (is_executable_file(executable)) return executable;
        throw ToolNotFound("executable not found: " + executable);
    }
    const char* override_path = std::getenv(kToolPathEnvVar);
    const char* search = override_path != nullptr ? override_path : std::getenv("PATH");
    if (search == nullptr) throw ToolNotFound("executable not found: " + executable);

    std::stringstream ss{std::string(search)};
    std::string dir;
    while (std::getline(ss, dir, ':')) {
        if (dir.empty()) continue;
        const std::filesystem::path candidate = std::filesystem::path(dir) / executable;
        if (is_executable_file(candidate)) return candidate.string();
    }
    throw ToolNotFound("executable not found: " + executable +
                       (override_path != nullptr ? " (searched " + std::string(kToolPathEnvVar) + ")"
                                                 : " (searched PATH)"));
}

}  // namespace

RunResult run_inspector(const std::filesystem::path& source_path, const InspectorConfig& cfg) {
    if (!std::filesystem::exists(source_path)) {
        throw SourceNotFound("source file not found: " + source_path.string());
    }
    const std::string exe = resolve_executable(cfg.executable);

    std::vector<std::string> args;
    args.push_back(exe);
    for (std::string& a : [&] {
             auto c = canonical_args(cfg.inspector);
             c.insert(c.end(), cfg.extra_args.begin(), cfg.extra_args.end());
             if (cfg.inspector == "pmd") c.push_back("-d");
             c.push_back(source_path.string());
             return c;
         }()) {
        args.push_back(std::move(a));
    }

    int out_pipe[2];
    if (::pipe(out_pipe) != 0) throw SpawnFailure("pipe: " + std::string(std::strerror(errno)));
    int err_pipe[2];  // reports exec failure errno back to the parent
    if (::pipe2(err_pipe, O_CLOEXEC) != 0) {
        ::close(out_pipe[0]);
        ::close(out_pipe[1]);
        throw SpawnFailure("pipe2: " + std::string(std::strerror(errno)));
    }

    const pid_t pid = ::fork();
    if (pid < 0) {
        for (int fd : {out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1]}) ::close(fd);
        throw SpawnFailure("fork: " + std::string(std::strerror(errno)));
    }

    if (pid == 0) {
        ::setpgid(0, 0);  // own process group, so a timeout can kill the whole tree
        ::dup2(out_pipe[1], STDOUT_FILENO);
        ::dup2(out_pipe[1], STDERR_FILENO);
        ::close(out_pipe[0]);
        ::close(out_pipe[1]);
        ::close(err_pipe[0]);

        std::vector<char*> argv;
        argv.reserve(args.size() + 1);
        for (std::string& a : args) argv.push_back(a.data());
        argv.push_back(nullptr);
        ::execv(exe.c_str(), argv.data());

        const int err = errno;
        [[maybe_unused]] ssize_t ignored = ::write(err_pipe[1], &err, sizeof(err));
        ::_exit(127);
    }

    ::close(out_pipe[1]);
    ::close(err_pipe[1]);

    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration<double>(cfg.timeout_seconds);
    std::string output;
    char buf[4096];
    bool timed_out = false;

    while (true) {
        const auto remaining = deadline - std::chrono::steady_clock::now();
        if (remaining <= std::chrono::steady_clock::duration::zero()) {
            timed_out = true;
            break;
        }
        const int wait_ms = std::max(
            1, static_cast<int>(
                   std::chrono::duration_cast<std::chrono::milliseconds>(remaining).count()));
        struct pollfd pfd = {out_pipe[0], POLLIN, 0};
        const int rc = ::poll(&pfd, 1, wait_ms);
        if (rc < 0) {
            if (errno == EINTR) continue;
            break;
        }
        if (rc == 0) {
            timed_out = true;
            break;
        }
        const ssize_t n = ::read(out_pipe[0], buf, sizeof(buf));
        if (n < 0) {
            if (errno == EINTR) continue;
            break;
        }
        if (n == 0) break;  // EOF
        output.append(buf, static_cast<std::size_t>(n));
    }
    ::close(out_pipe[0]);

    // A tool that closed its output but keeps running still counts against
    // the deadline.
    int status = 0;
    while (!timed_out) {
        const pid_t reaped = ::waitpid(pid, &status, WNOHANG);
        if (reaped == pid) break;
        if (reaped < 0 && errno != EINTR) break;
        if (std::chrono::steady_clock::now() >= deadline) {
            timed_out = true;
            break;
        }
        ::usleep(2000);
    }

    if (timed_out) {
        ::kill(-pid, SIGKILL);
        ::waitpid(pid, &status, 0);
        ::close(err_pipe[0]);
        throw ToolTimeout(cfg.inspector + " timed out after " +
                          std::to_string(cfg.timeout_seconds) + "s");
    }

    int exec_errno = 0;
    if (::read(err_pipe[0], &exec_errno, sizeof(exec_errno)) == sizeof(exec_errno)) {
        ::close(err_pipe[0]);
        throw SpawnFailure("cannot execute " + exe + ": " + std::strerror(exec_errno));
    }
    ::close(err_pipe[0]);

    RunResult result;
    result.output = std::move(output);
    if (WIFEXITED(status)) result.exit_status = WEXITSTATUS(status);
    else if (WIFSIGNALED(status)) result.exit_status = -WTERMSIG(status);
    return result;
}

std::vector<RawFinding> parse_flake8(std::string_view output,
                                     std::vector<std::string>* warnings) {
    static const std::regex kLine(R"(^(.*):(\d+):(\d+): (\S+) (.*)$)");

    std::vector<RawFinding> findings;
    std::istringstream in{std::string(output)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::smatch m;
        if (!std::regex_match(line, m, kLine)) {
            warn(warnings, "flake8: skipped unparseable line " + std::to_string(line_no));
            continue;
        }
        RawFinding f;
        f.inspector = "flake8";
        f.rule_id = m[4];
        f.line = std::atoi(m[2].str().c_str());
        f.column = std::atoi(m[3].str().c_str());
        f.message = m[5];
        if (f.line < 1 || f.rule_id.empty()) {
            warn(warnings, "flake8: skipped unparseable line " + std::to_string(line_no));
            continue;
        }
        findings.push_back(std::move(f));
    }
    return findings;
}

std::vector<RawFinding> parse_pylint(std::string_view output,
                                     std::vector<std::string>* warnings) {
    json doc;
    try {
        doc = json::parse(output);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("pylint: malformed JSON report: ") + e.what());
    }
    if (!doc.is_array()) throw ParseError("pylint: report must be a JSON array");

    std::vector<RawFinding> findings;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const json& rec = doc[i];
        if (!rec.is_object()) {
            warn(warnings, "pylint: skipped non-object record " + std::to_string(i));
            continue;
        }
        std::string rule_id;
        if (auto it = rec.find("message-id"); it != rec.end() && it->is_string()) {
            rule_id = it->get<std::string>();
        } else if (auto sym = rec.find("symbol"); sym != rec.end() && sym->is_string()) {
            rule_id = sym->get<std::string>();
        }
        auto line_it = rec.find("line");
        if (rule_id.empty() || line_it == rec.end() || !line_it->is_number_integer() ||
            line_it->get<int>() < 1) {
            warn(warnings, "pylint: skipped record " + std::to_string(i) +
                               " without usable message-id/line");
            continue;
        }
        RawFinding f;
        f.inspector = "pylint";
        f.rule_id = std::move(rule_id);
        f.line = line_it->get<int>();
        if (auto col = rec.find("column"); col != rec.end() && col->is_number_integer()) {
            f.column = std::max(0, col->get<int>());
        }
        if (auto msg = rec.find("message"); msg != rec.end() && msg->is_string()) {
            f.message = msg->get<std::string>();
        }
        findings.push_back(std::move(f));
    }
    return findings;
}

namespace {

boost::property_tree::ptree parse_xml_or_throw(std::string_view output, const char* tool) {
    boost::property_tree::ptree pt;
    std::istringstream in{std::string(output)};
    try {
        boost::property_tree::read_xml(in, pt);
    } catch (const boost::property_tree::xml_parser_error& e) {
        throw ParseError(std::string(tool) + ": malformed XML report: " + e.what());
    }
    return pt;
}

std::string trim_text(std::string s) {
    const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && is_space(s.front())) s.erase(s.begin());
    while (!s.empty() && is_space(s.back())) s.pop_back();
    return s;
}

}  // namespace

std::vector<RawFinding> parse_checkstyle(std::string_view output,
                                         std::vector<std::string>* warnings) {
    const auto pt = parse_xml_or_throw(output, "checkstyle");
    auto root = pt.get_child_optional("checkstyle");
    if (!root) throw ParseError("checkstyle: report has no <checkstyle> root element");

    std::vector<RawFinding> findings;
    for (const auto& [file_key, file_node] : *root) {
        if (file_key != "file") continue;
        for (const auto& [err_key, err_node] : file_node) {
            if (err_key != "error") continue;
            auto line = err_node.get_optional<int>("<xmlattr>.line");
            auto source = err_node.get_optional<std::string>("<xmlattr>.source");
            if (!line || *line < 1) {
                warn(warnings, "checkstyle: skipped <error> without a line attribute");
                continue;
            }
            if (!source || source->empty()) {
                warn(warnings, "checkstyle: skipped <error> without a source attribute");
                continue;
            }
            RawFinding f;
            f.inspector = "checkstyle";
            const std::size_t dot = source->find_last_of('.');
            f.rule_id = dot == std::string::npos ? *source : source->substr(dot + 1);
            f.line = *line;
            f.column = std::max(0, err_node.get<int>("<xmlattr>.column", 0));
            f.message = err_node.get<std::string>("<xmlattr>.message", "");
            findings.push_back(std::move(f));
        }
    }
    return findings;
}

std::vector<RawFinding> parse_pmd(std::string_view output,
                                  std::vector<std::string>* warnings) {
    const auto pt = parse_xml_or_throw(output, "pmd");
    auto root = pt.get_child_optional("pmd");
    if (!root) throw ParseError("pmd: report has no <pmd> root element");

    std::vector<RawFinding> findings;
    for (const auto& [file_key, file_node] : *root) {
        if (file_key != "file") continue;
        for (const auto& [v_key, v_node] : file_node) {
            if (v_key != "violation") continue;
            auto beginline = v_node.get_optional<int>("<xmlattr>.beginline");
            auto rule = v_node.get_optional<std::string>("<xmlattr>.rule");
            if (!beginline || *beginline < 1) {
                warn(warnings, "pmd: skipped <violation> without a beginline attribute");
                continue;
            }
            if (!rule || rule->empty()) {
                warn(warnings, "pmd: skipped <violation> without a rule attribute");
                continue;
            }
            RawFinding f;
            f.inspector = "pmd";
            f.rule_id = *rule;
            f.line = *beginline;
            f.column = std::max(0, v_node.get<int>("<xmlattr>.begincolumn", 0));
            f.message = trim_text(v_node.get_value<std::string>());
            findings.push_back(std::move(f));
        }
    }
    return findings;
}

namespace {

std::vector<RawFinding> parse_by_inspector(const std::string& inspector, std::string_view output,
                                           std::vector<std::string>* warnings) {
    if (inspector == "flake8") return parse_flake8(output, warnings);
    if (inspector == "pylint") return parse_pylint(output, warnings);
    if (inspector == "checkstyle") return parse_checkstyle(output, warnings);
    if (inspector == "pmd") return parse_pmd(output, warnings);
    throw ParseError("no parser for inspector '" + inspector + "'");
}

}  // namespace

InspectionResult inspect(const std::filesystem::path& source_path, const std::string& language,
                         const RuleRegistry& registry,
                         const std::vector<InspectorConfig>& configs) {
    if (!std::filesystem::exists(source_path)) {
        throw SourceNotFound("source file not found: " + source_path.string());
    }

    InspectionResult result;
    std::vector<RawFinding> raw;

    for (const InspectorConfig& cfg : configs) {
        if (!cfg.enabled || !inspector_supports(cfg.inspector, language)) continue;

        if (cfg.inspector == kBaselineInspector) {
            std::ifstream in(source_path, std::ios::binary);
            if (!in) {
                result.warnings.push_back("baseline: cannot read " + source_path.string());
                continue;
            }
            std::ostringstream buf;
            buf << in.rdbuf();
            auto findings = run_baseline(buf.str(), language, BaselineRuleSet{});
            raw.insert(raw.end(), std::make_move_iterator(findings.begin()),
                       std::make_move_iterator(findings.end()));
            continue;
        }

        try {
            const RunResult run = run_inspector(source_path, cfg);
            auto findings = parse_by_inspector(cfg.inspector, run.output, &result.warnings);
            raw.insert(raw.end(), std::make_move_iterator(findings.begin()),
                       std::make_move_iterator(findings.end()));
        } catch (const ToolNotFound& e) {
            result.warnings.push_back(cfg.inspector + ": tool not found, skipped (" +
                                      e.what() + ")");
        } catch (const ToolTimeout& e) {
            result.warnings.push_back(cfg.inspector + ": timed out, skipped (" + e.what() + ")");
        } catch (const SpawnFailure& e) {
            result.warnings.push_back(cfg.inspector + ": failed to start, skipped (" + e.what() +
                                      ")");
        } catch (const ParseError& e) {
            result.warnings.push_back(cfg.inspector + ": unparseable output, skipped (" +
                                      e.what() + ")");
        }
    }

    std::set<std::tuple<std::string, std::string, int, int>> seen;
    for (const RawFinding& f : raw) {
        if (!seen.emplace(f.inspector, f.rule_id, f.line, f.column).second) continue;
        if (auto issue = classify_issue(f, registry)) {
            result.issues.push_back(std::move(*issue));
        }
    }

    std::sort(result.issues.begin(), result.issues.end(), [](const Issue& a, const Issue& b) {
        return std::tie(a.line, a.column, a.rule_id, a.inspector) <
               std::tie(b.line, b.column, b.rule_id, b.inspector);
    });
    return result;
}

}  // namespace lintgrade
