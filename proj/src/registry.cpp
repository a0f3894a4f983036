#include "lintgrade/registry.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "lintgrade/errors.hpp"

namespace lintgrade {

using nlohmann::json;

std::string_view subcat_kind_name(SubcatKind k) {
    return k == SubcatKind::Countable ? "COUNTABLE" : "MEASURABLE";
}

std::optional<SubcatKind> subcat_kind_from_name(std::string_view name) {
    if (name == "COUNTABLE") return SubcatKind::Countable;
    if (name == "MEASURABLE") return SubcatKind::Measurable;
    return std::nullopt;
}

namespace {

[[noreturn]] void parse_fail(const std::string& source, const std::string& what) {
    throw ParseError(source + ": " + what);
}

[[noreturn]] void validation_fail(const std::string& source, const std::string& what) {
    throw ValidationError(source + ": " + what);
}

const json& require_key(const json& obj, const char* key, const std::string& source,
                        const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) parse_fail(source, where + ": missing field '" + key + "'");
    return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& source,
                           const std::string& where) {
    const json& v = require_key(obj, key, source, where);
    if (!v.is_string()) parse_fail(source, where + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& source, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.contains(it.key())) {
            parse_fail(source, where + ": unknown field '" + it.key() + "'");
        }
    }
}

SubcategorySpec parse_subcategory(const json& obj, const std::string& source, std::size_t index) {
    const std::string where = "subcategories[" + std::to_string(index) + "]";
    if (!obj.is_object()) parse_fail(source, where + ": expected an object");
    reject_unknown_keys(obj, {"id", "name", "category", "kind", "thresholds", "grading"},
                        source, where);

    SubcategorySpec spec;
    spec.id = require_string(obj, "id", source, where);
    spec.display_name = require_string(obj, "name", source, where);

    const std::string cat = require_string(obj, "category", source, where);
    auto category = category_from_name(cat);
    if (!category) parse_fail(source, where + ": unknown category '" + cat + "'");
    spec.category = *category;

    const std::string kind = require_string(obj, "kind", source, where);
    auto k = subcat_kind_from_name(kind);
    if (!k) parse_fail(source, where + ": unknown kind '" + kind + "'");
    spec.kind = *k;

    const json& thresholds = require_key(obj, "thresholds", source, where);
    if (!thresholds.is_array() || thresholds.size() != 3 ||
        !std::all_of(thresholds.begin(), thresholds.end(),
                     [](const json& v) { return v.is_number(); })) {
        parse_fail(source, where + ": 'thresholds' must be an array of 3 numbers");
    }
    spec.excellent_max = thresholds[0].get<double>();
    spec.good_max = thresholds[1].get<double>();
    spec.moderate_max = thresholds[2].get<double>();

    const json& grading = require_key(obj, "grading", source, where);
    if (!grading.is_boolean()) parse_fail(source, where + ": 'grading' must be a boolean");
    spec.grading = grading.get<bool>();
    return spec;
}

RuleDescriptor parse_rule(const json& obj, const std::string& source, std::size_t index) {
    const std::string where = "rules[" + std::to_string(index) + "]";
    if (!obj.is_object()) parse_fail(source, where + ": expected an object");
    reject_unknown_keys(obj,
                        {"inspector", "rule_id", "subcategory", "difficulty", "penalty",
                         "custom_message", "enabled"},
                        source, where);

    RuleDescriptor rule;
    rule.inspector = require_string(obj, "inspector", source, where);
    rule.rule_id = require_string(obj, "rule_id", source, where);
    rule.subcategory_id = require_string(obj, "subcategory", source, where);

    const std::string diff = require_string(obj, "difficulty", source, where);
    auto d = difficulty_from_name(diff);
    if (!d) parse_fail(source, where + ": unknown difficulty '" + diff + "'");
    rule.difficulty = *d;

    const json& penalty = require_key(obj, "penalty", source, where);
    if (!penalty.is_array() || penalty.size() != 3 ||
        !std::all_of(penalty.begin(), penalty.end(),
                     [](const json& v) { return v.is_number_integer(); })) {
        parse_fail(source, where + ": 'penalty' must be an array of 3 integers");
    }
    rule.penalty.prevalence = penalty[0].get<int>();
    rule.penalty.difficulty = penalty[1].get<int>();
    rule.penalty.importance = penalty[2].get<int>();

    if (auto it = obj.find("custom_message"); it != obj.end()) {
        if (!it->is_string()) parse_fail(source, where + ": 'custom_message' must be a string");
        rule.custom_message = it->get<std::string>();
    }

    const json& enabled = require_key(obj, "enabled", source, where);
    if (!enabled.is_boolean()) parse_fail(source, where + ": 'enabled' must be a boolean");
    rule.enabled = enabled.get<bool>();
    return rule;
}

}  // namespace

RuleRegistry RuleRegistry::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open registry file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str(), path.string());
}

RuleRegistry RuleRegistry::from_json_text(std::string_view text, const std::string& source_name) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        parse_fail(source_name, e.what());
    }
    if (!doc.is_object()) parse_fail(source_name, "top level must be an object");
    reject_unknown_keys(doc, {"language", "subcategories", "rules"}, source_name, "document");

    RuleRegistry registry;
    registry.language_ = require_string(doc, "language", source_name, "document");

    const json& subcats = require_key(doc, "subcategories", source_name, "document");
    if (!subcats.is_array()) parse_fail(source_name, "'subcategories' must be an array");
    for (std::size_t i = 0; i < subcats.size(); ++i) {
        registry.subcategories_.push_back(parse_subcategory(subcats[i], source_name, i));
    }

    const json& rules = require_key(doc, "rules", source_name, "document");
    if (!rules.is_array()) parse_fail(source_name, "'rules' must be an array");
    for (std::size_t i = 0; i < rules.size(); ++i) {
        registry.rules_.push_back(parse_rule(rules[i], source_name, i));
    }

    registry.validate(source_name);
    return registry;
}

void RuleRegistry::validate(const std::string& source_name) {
    if (language_.empty()) validation_fail(source_name, "'language' must be non-empty");

    for (std::size_t i = 0; i < subcategories_.size(); ++i) {
        const SubcategorySpec& s = subcategories_[i];
        if (s.id.empty()) validation_fail(source_name, "subcategory id must be non-empty");
        if (!subcat_index_.emplace(s.id, i).second) {
            validation_fail(source_name, "duplicate subcategory id '" + s.id + "'");
        }
        if (s.excellent_max < 0 || s.good_max < 0 || s.moderate_max < 0) {
            validation_fail(source_name, "subcategory '" + s.id + "': thresholds must be >= 0");
        }
        if (!(s.excellent_max <= s.good_max && s.good_max <= s.moderate_max)) {
            validation_fail(source_name, "subcategory '" + s.id + "': thresholds must be ascending");
        }
        const bool minor = s.category == IssueCategory::MinorIssues;
        if (s.grading == minor) {
            validation_fail(source_name, "subcategory '" + s.id +
                                             "': grading must be false exactly for MINOR_ISSUES");
        }
    }

    std::map<std::string, int> measurable_refs;
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        RuleDescriptor& r = rules_[i];
        if (r.inspector.empty() || r.rule_id.empty()) {
            validation_fail(source_name, "rule inspector and rule_id must be non-empty");
        }
        auto sub = subcat_index_.find(r.subcategory_id);
        if (sub == subcat_index_.end()) {
            validation_fail(source_name, "rule " + r.inspector + "/" + r.rule_id +
                                             ": unknown subcategory '" + r.subcategory_id + "'");
        }
        const SubcategorySpec& spec = subcategories_[sub->second];
        r.category = spec.category;
        for (int c : {r.penalty.prevalence, r.penalty.difficulty, r.penalty.importance}) {
            if (c < 0 || c > 2) {
                validation_fail(source_name, "rule " + r.inspector + "/" + r.rule_id +
                                                 ": penalty components must be in 0..2");
            }
        }
        if (!rule_index_.emplace(std::make_pair(r.inspector, r.rule_id), i).second) {
            validation_fail(source_name,
                            "duplicate rule key " + r.inspector + "/" + r.rule_id);
        }
        if (spec.kind == SubcatKind::Measurable) {
            if (++measurable_refs[r.subcategory_id] > 1) {
                validation_fail(source_name, "measurable subcategory '" + r.subcategory_id +
                                                 "' referenced by more than one rule");
            }
        }
        if (r.custom_message && r.custom_message->empty()) {
            validation_fail(source_name, "rule " + r.inspector + "/" + r.rule_id +
                                             ": custom_message must be non-empty when present");
        }
    }
}

const RuleDescriptor* RuleRegistry::find_rule(std::string_view inspector,
                                              std::string_view rule_id) const {
    auto it = rule_index_.find(std::make_pair(std::string(inspector), std::string(rule_id)));
    if (it == rule_index_.end()) return nullptr;
    return &rules_[it->second];
}

const SubcategorySpec* RuleRegistry::find_subcategory(std::string_view id) const {
    auto it = subcat_index_.find(id);
    if (it == subcat_index_.end()) return nullptr;
    return &subcategories_[it->second];
}

PenaltyCriteria RuleRegistry::subcategory_criteria(std::string_view subcategory_id) const {
    PenaltyCriteria out;
    for (const RuleDescriptor& r : rules_) {
        if (!r.enabled || r.subcategory_id != subcategory_id) continue;
        out.prevalence = std::max(out.prevalence, r.penalty.prevalence);
        out.difficulty = std::max(out.difficulty, r.penalty.difficulty);
        out.importance = std::max(out.importance, r.penalty.importance);
    }
    return out;
}

std::optional<Issue> classify_issue(const RawFinding& raw, const RuleRegistry& registry) {
    const RuleDescriptor* rule = registry.find_rule(raw.inspector, raw.rule_id);
    if (rule == nullptr || !rule->enabled) return std::nullopt;

    Issue issue;
    issue.rule_id = raw.rule_id;
    issue.inspector = raw.inspector;
    issue.line = raw.line;
    issue.column = raw.column;
    issue.message = raw.message;
    issue.category = rule->category;
    issue.difficulty = rule->difficulty;
    issue.subcategory_id = rule->subcategory_id;
    issue.metric_value = raw.metric_value;
    return issue;
}

}  // namespace lintgrade
