#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>

#include "lintgrade/baseline.hpp"
#include "lintgrade/config_paths.hpp"
#include "lintgrade/errors.hpp"
#include "lintgrade/penalty.hpp"
#include "lintgrade/registry.hpp"
#include "lintgrade/report.hpp"

namespace py = pybind11;

namespace {

using namespace lintgrade;

Grade grade_from_name_or_throw(const std::string& name) {
    auto g = grade_from_name(name);
    if (!g) throw std::invalid_argument("unknown grade '" + name + "'");
    return *g;
}

Difficulty level_from_name_or_throw(std::string level) {
    for (char& c : level) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    auto d = difficulty_from_name(level);
    if (!d) throw std::invalid_argument("unknown difficulty level '" + level + "'");
    return *d;
}

std::string grade_document(const std::string& source, const std::string& language,
                           const std::string& level, const std::string& registry_path,
                           const std::string& history_dir, const std::string& student_id,
                           bool external_tools, bool source_is_path) {
    const RuleRegistry registry =
        RuleRegistry::load(registry_path.empty() ? default_registry_path(language)
                                                 : std::filesystem::path(registry_path));
    std::vector<InspectorConfig> configs = default_inspector_configs(language);
    if (!external_tools) {
        std::erase_if(configs, [](const InspectorConfig& c) {
            return c.inspector != kBaselineInspector;
        });
    }

    ReportOptions options;
    options.level = level_from_name_or_throw(level);
    std::optional<HistoryStore> store;
    if (!history_dir.empty()) {
        if (student_id.empty()) {
            throw std::invalid_argument("student_id is required when history_dir is given");
        }
        store.emplace(history_dir);
        options.store = &*store;
        options.student_id = student_id;
    }

    const QualityReport report =
        source_is_path ? build_report(source, language, registry, configs, options)
                       : grade_source_text(source, language, registry, configs, options);
    return report_to_document(report);
}

}  // namespace

PYBIND11_MODULE(_lintgrade, m) {
    m.doc() = "Code quality grading for student submissions";

    m.def(
        "grade_source",
        [](const std::string& source, const std::string& language, const std::string& level,
           const std::string& registry_path, const std::string& history_dir,
           const std::string& student_id, bool external_tools) {
            return grade_document(source, language, level, registry_path, history_dir,
                                  student_id, external_tools, /*source_is_path=*/false);
        },
        py::arg("source"), py::arg("language"), py::arg("level") = "hard",
        py::arg("registry_path") = "", py::arg("history_dir") = "", py::arg("student_id") = "",
        py::arg("external_tools") = false,
        "Grade source text and return the JSON report document.");

    m.def(
        "grade_file",
        [](const std::string& path, const std::string& language, const std::string& level,
           const std::string& registry_path, const std::string& history_dir,
           const std::string& student_id, bool external_tools) {
            return grade_document(path, language, level, registry_path, history_dir, student_id,
                                  external_tools, /*source_is_path=*/true);
        },
        py::arg("path"), py::arg("language"), py::arg("level") = "hard",
        py::arg("registry_path") = "", py::arg("history_dir") = "", py::arg("student_id") = "",
        py::arg("external_tools") = false,
        "Grade a source file and return the JSON report document.");

    m.def(
        "apply_penalty",
        [](const std::string& grade, double coefficient) {
            if (coefficient < 0.0 || coefficient > 1.0) {
                throw std::invalid_argument("coefficient must be in [0, 1]");
            }
            return std::string(grade_name(apply_penalty(grade_from_name_or_throw(grade),
                                                        coefficient)));
        },
        py::arg("grade"), py::arg("coefficient"),
        "Reduce a grade by the recurring-error penalty coefficient.");

    m.def(
        "rule_coefficient",
        [](int prevalence, int difficulty, int importance) {
            return rule_coefficient(PenaltyCriteria{prevalence, difficulty, importance});
        },
        py::arg("prevalence"), py::arg("difficulty"), py::arg("importance"),
        "Sum of the three criteria divided by their maximum (0 when all are 0).");

    m.def(
        "grade_min",
        [](const std::string& a, const std::string& b) {
            return std::string(
                grade_name(grade_min(grade_from_name_or_throw(a), grade_from_name_or_throw(b))));
        },
        py::arg("a"), py::arg("b"));

    m.def(
        "grade_to_score",
        [](const std::string& grade) { return grade_to_score(grade_from_name_or_throw(grade)); },
        py::arg("grade"));

    m.def("default_registry_path",
          [](const std::string& language) { return default_registry_path(language).string(); },
          py::arg("language"));

    m.attr("__version__") = "0.1.0";
}
