#include "lintgrade/config_paths.hpp"

#include <cstdlib>

#ifndef LINTGRADE_DEFAULT_CONFIG_DIR
#define LINTGRADE_DEFAULT_CONFIG_DIR "configs"
#endif

namespace lintgrade {

std::filesystem::path default_config_dir() {
    if (const char* env = std::getenv(kConfigDirEnvVar); env != nullptr && *env != '\0') {
        return env;
    }
    return LINTGRADE_DEFAULT_CONFIG_DIR;
}

std::filesystem::path default_registry_path(const std::string& language) {
    return default_config_dir() / ("registry_" + language + ".json");
}

std::filesystem::path default_inspectors_path(const std::string& language) {
    return default_config_dir() / ("inspectors_" + language + ".json");
}

}  // namespace lintgrade
