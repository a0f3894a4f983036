#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lintgrade/taxonomy.hpp"

namespace lintgrade {

enum class SubcatKind {
    Countable,   // graded by occurrence count
    Measurable,  // graded by the worst observed metric value
};

std::string_view subcat_kind_name(SubcatKind k);
std::optional<SubcatKind> subcat_kind_from_name(std::string_view name);

// A named scoring unit with its grade thresholds. Values at or below
// excellent_max grade EXCELLENT, then GOOD, MODERATE, and BAD above
// moderate_max.
struct SubcategorySpec {
    std::string id;
    std::string display_name;
    IssueCategory category = IssueCategory::CodeStyle;
    SubcatKind kind = SubcatKind::Countable;
    double excellent_max = 0;
    double good_max = 0;
    double moderate_max = 0;
    bool grading = true;
};

// Registry entry for one linter rule. Category is derived from the
// referenced subcategory.
struct RuleDescriptor {
    std::string inspector;
    std::string rule_id;
    IssueCategory category = IssueCategory::CodeStyle;
    Difficulty difficulty = Difficulty::Easy;
    std::string subcategory_id;
    PenaltyCriteria penalty;
    std::optional<std::string> custom_message;
    bool enabled = true;
};

// The whitelist of known rules for one language plus the subcategory
// threshold table. Immutable after loading.
class RuleRegistry {
public:
    RuleRegistry() = default;

    // Loads and validates a registry document (see schemas/registry.schema.json).
    // Throws ParseError on malformed files and ValidationError on invariant
    // violations (dangling subcategory, duplicate rule key, bad thresholds).
    static RuleRegistry load(const std::filesystem::path& path);
    static RuleRegistry from_json_text(std::string_view text, const std::string& source_name);

    const std::string& language() const { return language_; }

    // Lookup by (inspector, rule_id); nullptr when unknown. Disabled rules
    // are retained and returned here with enabled == false.
    const RuleDescriptor* find_rule(std::string_view inspector, std::string_view rule_id) const;

    const SubcategorySpec* find_subcategory(std::string_view id) const;

    const std::vector<RuleDescriptor>& rules() const { return rules_; }
    const std::vector<SubcategorySpec>& subcategories() const { return subcategories_; }

    // Componentwise maximum of the penalty criteria over the enabled rules
    // mapped to the subcategory.
    PenaltyCriteria subcategory_criteria(std::string_view subcategory_id) const;

private:
    void validate(const std::string& source_name);

    std::string language_;
    std::vector<SubcategorySpec> subcategories_;
    std::vector<RuleDescriptor> rules_;
    std::map<std::pair<std::string, std::string>, std::size_t, std::less<>> rule_index_;
    std::map<std::string, std::size_t, std::less<>> subcat_index_;
};

// Classifies a raw finding through the registry. Unknown and disabled rules
// yield nullopt; dropping unmapped findings is the contract, not an error.
std::optional<Issue> classify_issue(const RawFinding& raw, const RuleRegistry& registry);

}  // namespace lintgrade
