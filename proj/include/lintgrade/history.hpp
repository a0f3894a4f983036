#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lintgrade/penalty.hpp"

namespace lintgrade {

// ISO-8601 UTC with second precision, e.g. "2024-05-01T12:30:00Z".
std::string format_timestamp(std::chrono::system_clock::time_point tp);
std::optional<std::chrono::system_clock::time_point> parse_timestamp(const std::string& text);

// Append-only store of submission records, one JSONL file per
// (student, language) key. Student ids are hashed before use as path
// components. Writes to one file are serialized by an advisory flock; reads
// take a shared lock.
class HistoryStore {
public:
    explicit HistoryStore(std::filesystem::path root);

    // Durably appends one record. Throws IoError.
    void append(const SubmissionRecord& record) const;

    struct LoadResult {
        std::vector<SubmissionRecord> records;  // newest first
        std::vector<std::string> warnings;      // corrupt lines, skipped
    };

    // At most `window` most recent records for the key, newest first. An
    // unknown key yields an empty list. Corrupt lines are skipped with a
    // warning, never fatal.
    LoadResult load_window(const std::string& student_id, const std::string& language,
                           int window) const;

    const std::filesystem::path& root() const { return root_; }

    // Exposed for tests and tooling: file backing one (student, language) key.
    std::filesystem::path record_file(const std::string& student_id,
                                      const std::string& language) const;

private:
    std::filesystem::path root_;
};

}  // namespace lintgrade
