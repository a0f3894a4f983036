#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lintgrade/history.hpp"
#include "lintgrade/inspectors.hpp"
#include "lintgrade/registry.hpp"
#include "lintgrade/report.hpp"

namespace httplib {
class Server;
}

namespace lintgrade {

// Shared state for the HTTP service. Registries and configs are immutable
// after startup; per-student write ordering comes from the history store's
// per-key lock.
struct ServiceContext {
    std::map<std::string, RuleRegistry> registries;                    // by language
    std::map<std::string, std::vector<InspectorConfig>> inspectors;    // by language
    std::optional<HistoryStore> store;
    int history_window = kDefaultHistoryWindow;
};

// Mounts POST /grade and GET /health. The context must outlive the server.
void register_routes(httplib::Server& server, const ServiceContext& context);

}  // namespace lintgrade
