#include "lintgrade/corpus.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>

#include "lintgrade/errors.hpp"
#include "lintgrade/grading.hpp"

namespace lintgrade {

using nlohmann::json;

int lower_median(std::vector<int> values) {
    if (values.empty()) throw std::invalid_argument("median of empty value list");
    std::sort(values.begin(), values.end());
    return values[(values.size() - 1) / 2];
}

std::string source_extension(const std::string& language) {
    if (language == "python") return ".py";
    if (language == "java") return ".java";
    return ".txt";
}

namespace {

// Submissions for one student: manifest.txt order when present, otherwise
// lexicographic filename order.
std::vector<std::filesystem::path> student_submissions(const std::filesystem::path& student_dir,
                                                       const std::string& extension,
                                                       std::vector<std::string>* warnings) {
    const std::filesystem::path manifest = student_dir / "manifest.txt";
    std::vector<std::filesystem::path> files;
    if (std::filesystem::exists(manifest)) {
        std::ifstream in(manifest);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            const std::filesystem::path p = student_dir / line;
            if (!std::filesystem::exists(p)) {
                warnings->push_back("manifest entry missing, skipped: " + p.string());
                continue;
            }
            files.push_back(p);
        }
        return files;
    }
    for (const auto& entry : std::filesystem::directory_iterator(student_dir)) {
        if (!entry.is_regular_file()) continue;
        if (entry.path().extension() != extension) continue;
        files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

class ScopedTempDir {
public:
    ScopedTempDir() {
        std::string tmpl =
            (std::filesystem::temp_directory_path() / "lintgrade_hist_XXXXXX").string();
        if (::mkdtemp(tmpl.data()) == nullptr) {
            throw IoError("cannot create temporary history directory");
        }
        path_ = tmpl;
    }
    ~ScopedTempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

void for_each_student(const std::filesystem::path& corpus_dir,
                      const std::function<void(const std::string&,
                                               const std::filesystem::path&)>& fn) {
    if (!std::filesystem::is_directory(corpus_dir)) {
        throw SourceNotFound("corpus directory not found: " + corpus_dir.string());
    }
    std::vector<std::filesystem::path> dirs;
    for (const auto& entry : std::filesystem::directory_iterator(corpus_dir)) {
        if (entry.is_directory()) dirs.push_back(entry.path());
    }
    std::sort(dirs.begin(), dirs.end());
    for (const auto& dir : dirs) {
        fn(dir.filename().string(), dir);
    }
}

}  // namespace

CorpusStats run_batch(const std::filesystem::path& corpus_dir, const std::string& language,
                      const RuleRegistry& registry, const std::vector<InspectorConfig>& configs,
                      const BatchOptions& options) {
    CorpusStats stats;
    const std::string extension = source_extension(language);

    std::optional<ScopedTempDir> temp_dir;
    std::optional<HistoryStore> store;
    if (options.history_window > 0) {
        if (options.history_dir.empty()) {
            temp_dir.emplace();
            store.emplace(temp_dir->path());
        } else {
            store.emplace(options.history_dir);
        }
    }

    for_each_student(corpus_dir, [&](const std::string& student_id,
                                     const std::filesystem::path& dir) {
        StudentStats student;
        for (const std::filesystem::path& file :
             student_submissions(dir, extension, &stats.warnings)) {
            try {
                ReportOptions report_options;
                report_options.level = options.level;
                report_options.history_window = options.history_window;
                if (store) {
                    report_options.store = &*store;
                    report_options.student_id = student_id;
                }
                const QualityReport report =
                    build_report(file, language, registry, configs, report_options);
                student.issue_counts.push_back(report.stats_total);
                student.grades.emplace_back(grade_name(report.grade));
            } catch (const Error& e) {
                stats.warnings.push_back("skipped " + file.string() + ": " + e.what());
            }
        }
        if (student.issue_counts.empty()) return;  // medians need >= 1 submission
        student.median = lower_median(student.issue_counts);
        ++stats.histogram[student.median];
        stats.students.emplace(student_id, std::move(student));
    });
    return stats;
}

DistributionStats run_distribution(const std::filesystem::path& corpus_dir,
                                   const std::string& language, const RuleRegistry& registry,
                                   const std::vector<InspectorConfig>& configs,
                                   Difficulty level) {
    DistributionStats stats;
    const std::string extension = source_extension(language);

    // Per-submission value for every registry subcategory, 0 when untouched.
    std::map<std::string, std::vector<double>> observed;
    for (const SubcategorySpec& spec : registry.subcategories()) {
        observed[spec.id] = {};
    }

    for_each_student(corpus_dir, [&](const std::string&, const std::filesystem::path& dir) {
        for (const std::filesystem::path& file :
             student_submissions(dir, extension, &stats.warnings)) {
            try {
                InspectionResult inspection = inspect(file, language, registry, configs);
                const std::vector<Issue> filtered =
                    filter_by_difficulty(inspection.issues, level);
                std::map<std::string, double> values;
                for (const SubcategoryTally& t : tally(filtered, registry)) {
                    values[t.subcategory_id] = t.kind == SubcatKind::Measurable
                                                   ? t.worst_metric.value_or(0.0)
                                                   : static_cast<double>(t.count);
                }
                for (auto& [id, series] : observed) {
                    auto it = values.find(id);
                    series.push_back(it == values.end() ? 0.0 : it->second);
                }
                ++stats.submissions;
            } catch (const Error& e) {
                stats.warnings.push_back("skipped " + file.string() + ": " + e.what());
            }
        }
    });

    for (const SubcategorySpec& spec : registry.subcategories()) {
        SubcategoryDistribution dist;
        dist.kind = spec.kind;
        std::map<std::string, int> band_counts;
        for (double value : observed[spec.id]) {
            ++dist.frequencies[value];
            const Grade g = spec.kind == SubcatKind::Measurable
                                ? grade_measurable(value, spec)
                                : grade_countable(static_cast<int>(value), spec);
            ++band_counts[std::string(grade_name(g))];
        }
        for (Grade g : {Grade::Excellent, Grade::Good, Grade::Moderate, Grade::Bad}) {
            const std::string name(grade_name(g));
            dist.bands[name] = stats.submissions == 0
                                   ? 0.0
                                   : static_cast<double>(band_counts[name]) / stats.submissions;
        }
        stats.subcategories.emplace(spec.id, std::move(dist));
    }
    return stats;
}

namespace {

// Integral values print without a decimal point so countable frequencies
// read as plain counts.
std::string format_value(double v) {
    if (v == static_cast<long long>(v)) return std::to_string(static_cast<long long>(v));
    json j = v;
    return j.dump();
}

}  // namespace

json corpus_stats_to_json(const CorpusStats& stats) {
    json students = json::object();
    for (const auto& [id, s] : stats.students) {
        students[id] = json{{"median", s.median},
                            {"issue_counts", s.issue_counts},
                            {"grades", s.grades}};
    }
    json histogram = json::object();
    for (const auto& [median, count] : stats.histogram) {
        histogram[std::to_string(median)] = count;
    }
    return json{{"students", std::move(students)},
                {"histogram", std::move(histogram)},
                {"warnings", stats.warnings}};
}

json distribution_to_json(const DistributionStats& stats) {
    json subcats = json::object();
    for (const auto& [id, dist] : stats.subcategories) {
        json freq = json::object();
        for (const auto& [value, count] : dist.frequencies) {
            freq[format_value(value)] = count;
        }
        subcats[id] = json{{"kind", subcat_kind_name(dist.kind)},
                           {"frequencies", std::move(freq)},
                           {"bands", dist.bands}};
    }
    return json{{"subcategories", std::move(subcats)},
                {"submissions", stats.submissions},
                {"warnings", stats.warnings}};
}

}  // namespace lintgrade
