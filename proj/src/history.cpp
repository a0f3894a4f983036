#include "lintgrade/history.hpp"

#include <fcntl.h>
#include <openssl/evp.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <ctime>
#include <fstream>

#include "json.hpp"
#include "lintgrade/errors.hpp"

namespace lintgrade {

using nlohmann::json;

std::string format_timestamp(std::chrono::system_clock::time_point tp) {
    const std::time_t t = std::chrono::system_clock::to_time_t(tp);
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    char buf[32] = {0};
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

std::optional<std::chrono::system_clock::time_point> parse_timestamp(const std::string& text) {
    std::tm tm_utc{};
    const char* end = strptime(text.c_str(), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    if (end == nullptr || *end != '\0') return std::nullopt;
    const std::time_t t = timegm(&tm_utc);
    if (t == static_cast<std::time_t>(-1)) return std::nullopt;
    return std::chrono::system_clock::from_time_t(t);
}

namespace {

std::string sha256_hex(const std::string& text) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(kHex[digest[i] >> 4]);
        out.push_back(kHex[digest[i] & 0xF]);
    }
    return out;
}

std::string safe_language_token(const std::string& language) {
    std::string out;
    for (char c : language) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
        out.push_back(ok ? c : '_');
    }
    return out.empty() ? "unknown" : out;
}

// RAII wrapper around an advisory flock on an open fd.
class LockedFile {
public:
    LockedFile(const std::filesystem::path& path, int open_flags, int lock_mode)
        : fd_(::open(path.c_str(), open_flags, 0644)) {
        if (fd_ < 0) return;
        if (::flock(fd_, lock_mode) != 0) {
            ::close(fd_);
            fd_ = -1;
        }
    }
    ~LockedFile() {
        if (fd_ >= 0) ::close(fd_);  // closing releases the lock
    }
    LockedFile(const LockedFile&) = delete;
    LockedFile& operator=(const LockedFile&) = delete;

    int fd() const { return fd_; }
    bool ok() const { return fd_ >= 0; }

private:
    int fd_;
};

json record_to_json(const SubmissionRecord& record) {
    json keys = json::array();
    for (const auto& [inspector, rule_id] : record.issue_keys) {
        keys.push_back(json::array({inspector, rule_id}));
    }
    return json{{"timestamp", format_timestamp(record.timestamp)},
                {"language", record.language},
                {"issues", std::move(keys)}};
}

std::optional<SubmissionRecord> record_from_json_line(const std::string& line,
                                                      const std::string& student_id) {
    json doc = json::parse(line, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) return std::nullopt;
    auto ts_it = doc.find("timestamp");
    auto lang_it = doc.find("language");
    auto issues_it = doc.find("issues");
    if (ts_it == doc.end() || !ts_it->is_string() || lang_it == doc.end() ||
        !lang_it->is_string() || issues_it == doc.end() || !issues_it->is_array()) {
        return std::nullopt;
    }
    auto ts = parse_timestamp(ts_it->get<std::string>());
    if (!ts) return std::nullopt;

    SubmissionRecord record;
    record.student_id = student_id;
    record.language = lang_it->get<std::string>();
    record.timestamp = *ts;
    for (const json& key : *issues_it) {
        if (!key.is_array() || key.size() != 2 || !key[0].is_string() || !key[1].is_string()) {
            return std::nullopt;
        }
        std::string inspector = key[0].get<std::string>();
        std::string rule_id = key[1].get<std::string>();
        if (inspector.empty() || rule_id.empty()) return std::nullopt;
        record.issue_keys.emplace_back(std::move(inspector), std::move(rule_id));
    }
    return record;
}

}  // namespace

HistoryStore::HistoryStore(std::filesystem::path root) : root_(std::move(root)) {}

std::filesystem::path HistoryStore::record_file(const std::string& student_id,
                                                const std::string& language) const {
    return root_ / (sha256_hex(student_id) + "_" + safe_language_token(language) + ".jsonl");
}

void HistoryStore::append(const SubmissionRecord& record) const {
    std::error_code ec;
    std::filesystem::create_directories(root_, ec);
    if (ec) throw IoError("cannot create history root " + root_.string() + ": " + ec.message());

    const std::filesystem::path path = record_file(record.student_id, record.language);
    const std::string line = record_to_json(record).dump() + "\n";

    LockedFile file(path, O_WRONLY | O_CREAT | O_APPEND, LOCK_EX);
    if (!file.ok()) {
        throw IoError("cannot open history file " + path.string() + ": " +
                      std::strerror(errno));
    }
    std::size_t written = 0;
    while (written < line.size()) {
        const ssize_t n = ::write(file.fd(), line.data() + written, line.size() - written);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw IoError("write failed for " + path.string() + ": " + std::strerror(errno));
        }
        written += static_cast<std::size_t>(n);
    }
}

HistoryStore::LoadResult HistoryStore::load_window(const std::string& student_id,
                                                   const std::string& language,
                                                   int window) const {
    LoadResult result;
    if (window < 1) return result;

    const std::filesystem::path path = record_file(student_id, language);
    if (!std::filesystem::exists(path)) return result;

    LockedFile lock(path, O_RDONLY, LOCK_SH);
    if (!lock.ok()) {
        throw IoError("cannot open history file " + path.string() + ": " +
                      std::strerror(errno));
    }
    std::ifstream in(path);
    if (!in) throw IoError("cannot read history file " + path.string());

    std::vector<SubmissionRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto record = record_from_json_line(line, student_id);
        if (!record) {
            result.warnings.push_back("history " + path.filename().string() + ": skipped corrupt record at line " +
                                      std::to_string(line_no));
            continue;
        }
        if (record->language != language) {
            result.warnings.push_back("history " + path.filename().string() +
                                      ": skipped record for language '" + record->language +
                                      "' at line " + std::to_string(line_no));
            continue;
        }
        records.push_back(std::move(*record));
    }

    // Records are appended oldest to newest; the window is the tail, returned
    // newest first.
    const std::size_t take = std::min<std::size_t>(records.size(), static_cast<std::size_t>(window));
    result.records.reserve(take);
    for (std::size_t i = 0; i < take; ++i) {
        result.records.push_back(std::move(records[records.size() - 1 - i]));
    }
    return result;
}

}  // namespace lintgrade
