#include "lintgrade/baseline.hpp"

#include <algorithm>
#include <cctype>

namespace lintgrade {

namespace {

// Lines without their terminators; a trailing newline does not produce a
// phantom empty line. CRLF is tolerated by stripping the '\r'.
std::vector<std::string_view> split_lines(std::string_view source) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= source.size()) {
        std::size_t end = source.find('\n', start);
        if (end == std::string_view::npos) {
            if (start < source.size()) lines.push_back(source.substr(start));
            break;
        }
        std::string_view line = source.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

bool is_utf8_continuation(char c) {
    return (static_cast<unsigned char>(c) & 0xC0) == 0x80;
}

// Character count with each tab counted as 4.
int display_length(std::string_view line) {
    int n = 0;
    for (char c : line) {
        if (is_utf8_continuation(c)) continue;
        n += c == '\t' ? 4 : 1;
    }
    return n;
}

// 1-based character position of byte offset `pos`.
int char_column(std::string_view line, std::size_t pos) {
    int col = 1;
    for (std::size_t i = 0; i < pos && i < line.size(); ++i) {
        if (!is_utf8_continuation(line[i])) ++col;
    }
    return col;
}

bool is_blank(std::string_view line) {
    return std::all_of(line.begin(), line.end(),
                       [](char c) { return c == ' ' || c == '\t'; });
}

int indent_width(std::string_view line) {
    int w = 0;
    for (char c : line) {
        if (c == ' ') ++w;
        else if (c == '\t') w += 4;
        else break;
    }
    return w;
}

std::string_view strip(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

RawFinding make_finding(std::string rule, int line, int column, std::string message,
                        std::optional<double> metric = std::nullopt) {
    RawFinding f;
    f.inspector = std::string(kBaselineInspector);
    f.rule_id = std::move(rule);
    f.line = line;
    f.column = column;
    f.message = std::move(message);
    f.metric_value = metric;
    return f;
}

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Matches `== True`-style comparisons at byte offset i. Returns the matched
// literal name, or empty when there is none.
std::string_view match_bool_comparison(std::string_view line, std::size_t i,
                                       bool lowercase_literals) {
    if (i + 1 >= line.size()) return {};
    if (!((line[i] == '=' || line[i] == '!') && line[i + 1] == '=')) return {};
    if (i + 2 < line.size() && line[i + 2] == '=') return {};  // ===, ==- etc. stay out
    if (i > 0 && (line[i - 1] == '=' || line[i - 1] == '!' || line[i - 1] == '<' ||
                  line[i - 1] == '>')) {
        return {};
    }
    std::size_t j = i + 2;
    while (j < line.size() && (line[j] == ' ' || line[j] == '\t')) ++j;
    static constexpr std::string_view kPythonLiterals[] = {"True", "False"};
    static constexpr std::string_view kJavaLiterals[] = {"true", "false"};
    const auto& literals = lowercase_literals ? kJavaLiterals : kPythonLiterals;
    for (std::string_view lit : literals) {
        if (line.substr(j, lit.size()) != lit) continue;
        std::size_t end = j + lit.size();
        if (end < line.size() && is_word_char(line[end])) continue;
        return lit;
    }
    return {};
}

}  // namespace

std::vector<RawFinding> check_line_length(std::string_view source, int limit) {
    std::vector<RawFinding> findings;
    const auto lines = split_lines(source);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const int length = display_length(lines[i]);
        if (length <= limit) continue;
        findings.push_back(make_finding(
            "BL001", static_cast<int>(i + 1), limit + 1,
            "line too long (" + std::to_string(length) + " > " + std::to_string(limit) + ")",
            static_cast<double>(length)));
    }
    return findings;
}

std::vector<RawFinding> check_trailing_whitespace(std::string_view source) {
    std::vector<RawFinding> findings;
    const auto lines = split_lines(source);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string_view line = lines[i];
        if (line.empty() || (line.back() != ' ' && line.back() != '\t')) continue;
        std::size_t first = line.size();
        while (first > 0 && (line[first - 1] == ' ' || line[first - 1] == '\t')) --first;
        findings.push_back(make_finding("BL002", static_cast<int>(i + 1),
                                        char_column(line, first), "trailing whitespace"));
    }
    return findings;
}

std::vector<RawFinding> check_blank_runs(std::string_view source, int limit) {
    std::vector<RawFinding> findings;
    const auto lines = split_lines(source);
    std::size_t i = 0;
    while (i < lines.size()) {
        if (!is_blank(lines[i])) {
            ++i;
            continue;
        }
        std::size_t run_start = i;
        while (i < lines.size() && is_blank(lines[i])) ++i;
        const int run = static_cast<int>(i - run_start);
        if (run > limit) {
            findings.push_back(make_finding(
                "BL003", static_cast<int>(run_start + 1), 0,
                std::to_string(run) + " consecutive blank lines (limit " +
                    std::to_string(limit) + ")"));
        }
    }
    return findings;
}

namespace {

bool java_control_keyword(std::string_view word) {
    static constexpr std::string_view kKeywords[] = {
        "if", "for", "while", "switch", "catch", "do", "else", "try",
        "return", "throw", "new", "assert", "synchronized", "super", "this"};
    return std::find(std::begin(kKeywords), std::end(kKeywords), word) != std::end(kKeywords);
}

// Method-like header: at least two identifier tokens before '(' and no
// control keyword in sight. Misses bare constructors; good enough for the
// measurable-grading pathway.
bool looks_like_java_method_header(std::string_view stripped) {
    std::size_t paren = stripped.find('(');
    if (paren == std::string_view::npos || paren == 0) return false;
    if (stripped.back() == ';') return false;

    std::size_t name_end = paren;
    while (name_end > 0 && stripped[name_end - 1] == ' ') --name_end;
    std::size_t name_start = name_end;
    while (name_start > 0 && is_word_char(stripped[name_start - 1])) --name_start;
    if (name_start == name_end) return false;
    std::string_view name = stripped.substr(name_start, name_end - name_start);
    if (java_control_keyword(name)) return false;
    if (!name.empty() && std::isdigit(static_cast<unsigned char>(name.front()))) return false;

    // Require a preceding token (modifier or return type).
    std::string_view before = strip(stripped.substr(0, name_start));
    if (before.empty()) return false;
    std::size_t tok_start = before.size();
    while (tok_start > 0 && (is_word_char(before[tok_start - 1]) || before[tok_start - 1] == '>' ||
                             before[tok_start - 1] == '[' || before[tok_start - 1] == ']' ||
                             before[tok_start - 1] == '<' || before[tok_start - 1] == '.')) {
        --tok_start;
    }
    std::string_view prev = before.substr(tok_start);
    if (prev.empty() || java_control_keyword(prev)) return false;
    return true;
}

std::string_view strip_java_line_comment(std::string_view line) {
    bool in_string = false;
    char quote = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (in_string) {
            if (c == '\\') ++i;
            else if (c == quote) in_string = false;
            continue;
        }
        if (c == '"' || c == '\'') {
            in_string = true;
            quote = c;
        } else if (c == '/' && i + 1 < line.size() && line[i + 1] == '/') {
            return line.substr(0, i);
        }
    }
    return line;
}

int count_braces(std::string_view line, char brace) {
    bool in_string = false;
    char quote = 0;
    int n = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (in_string) {
            if (c == '\\') ++i;
            else if (c == quote) in_string = false;
            continue;
        }
        if (c == '"' || c == '\'') {
            in_string = true;
            quote = c;
        } else if (c == brace) {
            ++n;
        }
    }
    return n;
}

std::vector<RawFinding> python_function_lengths(const std::vector<std::string_view>& lines,
                                                int limit) {
    std::vector<RawFinding> findings;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string_view stripped = strip(lines[i]);
        if (!(stripped.starts_with("def ") || stripped.starts_with("async def "))) continue;
        const int header_indent = indent_width(lines[i]);
        int body_lines = 0;
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            if (is_blank(lines[j])) continue;
            if (indent_width(lines[j]) <= header_indent) break;
            ++body_lines;
        }
        if (body_lines > limit) {
            findings.push_back(make_finding(
                "BL004", static_cast<int>(i + 1), header_indent + 1,
                "function body has " + std::to_string(body_lines) + " lines (limit " +
                    std::to_string(limit) + ")",
                static_cast<double>(body_lines)));
        }
    }
    return findings;
}

std::vector<RawFinding> java_function_lengths(const std::vector<std::string_view>& lines,
                                              int limit) {
    std::vector<RawFinding> findings;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string_view code = strip_java_line_comment(lines[i]);
        std::string_view stripped = strip(code);
        if (stripped.empty() || !looks_like_java_method_header(stripped)) continue;

        // Find the opening brace on this or one of the next few lines.
        int depth = 0;
        std::size_t j = i;
        bool opened = false;
        for (; j < lines.size() && j <= i + 3; ++j) {
            std::string_view body_code = strip_java_line_comment(lines[j]);
            depth += count_braces(body_code, '{');
            if (depth > 0) {
                opened = true;
                depth -= count_braces(body_code, '}');
                break;
            }
            if (strip(body_code).ends_with(";")) break;  // abstract or interface method
        }
        if (!opened) continue;
        if (depth <= 0) continue;  // opened and closed on the same line

        int body_lines = 0;
        std::size_t k = j + 1;
        for (; k < lines.size() && depth > 0; ++k) {
            std::string_view body_code = strip_java_line_comment(lines[k]);
            depth += count_braces(body_code, '{');
            depth -= count_braces(body_code, '}');
            if (depth <= 0) break;
            if (!is_blank(body_code)) ++body_lines;
        }
        if (body_lines > limit) {
            findings.push_back(make_finding(
                "BL004", static_cast<int>(i + 1), indent_width(lines[i]) + 1,
                "method body has " + std::to_string(body_lines) + " lines (limit " +
                    std::to_string(limit) + ")",
                static_cast<double>(body_lines)));
        }
    }
    return findings;
}

}  // namespace

std::vector<RawFinding> check_function_length(std::string_view source,
                                              const std::string& language, int limit) {
    const auto lines = split_lines(source);
    if (language == "python") return python_function_lengths(lines, limit);
    if (language == "java") return java_function_lengths(lines, limit);
    return {};
}

std::vector<RawFinding> check_bool_literal_comparison(std::string_view source,
                                                      const std::string& language) {
    if (language != "python" && language != "java") return {};
    const bool python = language == "python";

    std::vector<RawFinding> findings;
    const auto lines = split_lines(source);
    char triple_quote = 0;  // Python only: 0 when outside a triple-quoted string

    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const std::string_view line = lines[ln];
        std::size_t i = 0;
        while (i < line.size()) {
            if (python && triple_quote != 0) {
                std::size_t close = line.find(std::string(3, triple_quote), i);
                if (close == std::string_view::npos) {
                    i = line.size();
                    break;
                }
                triple_quote = 0;
                i = close + 3;
                continue;
            }
            const char c = line[i];
            if (python && c == '#') break;
            if (!python && c == '/' && i + 1 < line.size()) {
                if (line[i + 1] == '/') break;
                if (line[i + 1] == '*') {
                    std::size_t close = line.find("*/", i + 2);
                    if (close == std::string_view::npos) {
                        i = line.size();
                        break;
                    }
                    i = close + 2;
                    continue;
                }
            }
            if (c == '"' || c == '\'') {
                if (python && line.substr(i, 3) == std::string(3, c)) {
                    std::size_t close = line.find(std::string(3, c), i + 3);
                    if (close == std::string_view::npos) {
                        triple_quote = c;
                        i = line.size();
                        break;
                    }
                    i = close + 3;
                    continue;
                }
                std::size_t j = i + 1;
                while (j < line.size()) {
                    if (line[j] == '\\') j += 2;
                    else if (line[j] == c) break;
                    else ++j;
                }
                i = j < line.size() ? j + 1 : line.size();
                continue;
            }
            if (std::string_view lit = match_bool_comparison(line, i, !python); !lit.empty()) {
                findings.push_back(make_finding(
                    "BL005", static_cast<int>(ln + 1), char_column(line, i),
                    std::string("comparison to ") + std::string(lit) +
                        " literal; use the boolean value directly"));
                i += 2;
                continue;
            }
            ++i;
        }
    }
    return findings;
}

std::vector<RawFinding> run_baseline(std::string_view source, const std::string& language,
                                     const BaselineRuleSet& rules) {
    std::vector<RawFinding> findings = check_line_length(source, rules.max_line_length);
    auto append = [&findings](std::vector<RawFinding> more) {
        findings.insert(findings.end(), std::make_move_iterator(more.begin()),
                        std::make_move_iterator(more.end()));
    };
    append(check_trailing_whitespace(source));
    append(check_blank_runs(source, rules.max_consecutive_blank_lines));
    append(check_function_length(source, language, rules.max_function_lines));
    append(check_bool_literal_comparison(source, language));
    return findings;
}

}  // namespace lintgrade
