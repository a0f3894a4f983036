#pragma once

#include <filesystem>
#include <string>

namespace lintgrade {

// Environment variable pointing at a directory with registry_<lang>.json and
// inspectors_<lang>.json documents; falls back to the build-time default.
inline constexpr const char* kConfigDirEnvVar = "LINTGRADE_CONFIG_DIR";

std::filesystem::path default_config_dir();
std::filesystem::path default_registry_path(const std::string& language);
std::filesystem::path default_inspectors_path(const std::string& language);

}  // namespace lintgrade
